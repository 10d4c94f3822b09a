// Two-qubit engine: every matrix and basis is written out in closed form,
// independently of the general-d constructors, so the two engines can be
// cross-checked.

#include <cmath>
#include <numbers>

#include "engine.hpp"

namespace djrsp::detail {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Matrix dense(std::initializer_list<std::initializer_list<Complex>> rows) {
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        Eigen::Index c = 0;
        for (const auto& v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

// (|0><0| + |1><1|)/sqrt2 Hadamard
Matrix h2() { return dense({{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}); }

// |00><00| + |01><01| + |10><10| - |11><11|
Matrix p2() { return dense({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}); }

// control first: |1><1| (x) sigma_x
Matrix c2() { return dense({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}); }

// acts on the target only when the control is |0>
Matrix c2_primed() { return dense({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}); }

// |00>,|10> fixed; |01> -> (a/b)|01> + s|11>; |11> -> (a/b)|11> - s|01>
Matrix cu2(double alpha, double beta) {
    const double c = std::min(1.0, alpha / beta);
    const double s = std::sqrt(std::max(0.0, (beta - alpha) * (beta + alpha))) / beta;
    return dense({{1, 0, 0, 0}, {0, c, 0, -s}, {0, 0, 1, 0}, {0, s, 0, c}});
}

class ExactD2Engine final : public ProtocolEngine {
public:
    explicit ExactD2Engine(const ProtocolConfig& config)
        : config_(config),
          theta_(config.target.phases()[1]),
          mu_("A", "mu",
              {{config.target.magnitudes()[0], config.target.magnitudes()[1]},
               {config.target.magnitudes()[1], -config.target.magnitudes()[0]}}),
          nu_("e", "nu",
              {{kInvSqrt2, kInvSqrt2 * std::polar(1.0, theta_)},
               {kInvSqrt2 * std::polar(1.0, -theta_), -kInvSqrt2}}) {
        if (config.d() != 2) throw Error(ErrorKind::InvalidConfig, "ExactD2 engine requires d = 2");
    }

    std::vector<UnitaryOp> encoding() const override {
        const double alpha = config_.channel.coefficient(0);
        const double beta = config_.channel.coefficient(1);
        return {
            UnitaryOp("H_A", h2(), {"A"}),
            UnitaryOp("P_AB", p2(), {"A", "B"}),
            UnitaryOp("C_Ae", c2(), {"A", "e"}),
            UnitaryOp("CU_AB", cu2(alpha, beta), {"A", "B"}),
            UnitaryOp("C'_eA", c2_primed(), {"e", "A"}),
            UnitaryOp("C_Af", c2(), {"A", "f"}),
            UnitaryOp("C_eg", c2(), {"e", "g"}),
            UnitaryOp("C_eA", c2(), {"e", "A"}),
        };
    }

    std::vector<UnitaryOp> bob_pre(std::size_t f) const override {
        if (f == 0) return {UnitaryOp("C_gB", c2(), {"g", "B"}), UnitaryOp("C_Bg", c2(), {"B", "g"})};
        return {UnitaryOp("C_Bg", c2(), {"B", "g"})};
    }

    const MeasurementBasis& mu() const override { return mu_; }
    const MeasurementBasis& nu() const override { return nu_; }

    std::optional<UnitaryOp> charlie_gate(std::size_t f, std::size_t p) const override {
        // (f=0, u_0) and (f=1, u_1)
        if (f != p) return std::nullopt;
        return UnitaryOp("P(theta)_e", dense({{1, 0}, {0, std::polar(1.0, 2.0 * theta_)}}), {"e"});
    }

    std::vector<UnitaryOp> bob_post(std::size_t) const override { return {}; }

    Correction correct(const std::vector<std::size_t>& outcomes, std::span<const Complex>) const override {
        const auto name = lookup_rule(exact_d2_rules(), outcomes);
        if (!name) return {"none", std::nullopt, false};
        return {*name, named_pauli(*name).on({"B"}), true};
    }

private:
    ProtocolConfig config_;
    double theta_;
    MeasurementBasis mu_;
    MeasurementBasis nu_;
};

}  // namespace

std::unique_ptr<ProtocolEngine> make_exact_d2_engine(const ProtocolConfig& config) {
    return std::make_unique<ExactD2Engine>(config);
}

}  // namespace djrsp::detail
