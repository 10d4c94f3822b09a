#include "engine.hpp"

namespace djrsp::detail {

namespace {

bool phase_gate_applies(CharliePhaseRule rule, std::size_t f, std::size_t p) {
    switch (rule) {
        case CharliePhaseRule::MatchF: return p == f;
        case CharliePhaseRule::Always: return true;
        case CharliePhaseRule::Never: return false;
        case CharliePhaseRule::FOneOnly: return f == 1;
    }
    return false;
}

class GeneralEngine final : public ProtocolEngine {
public:
    explicit GeneralEngine(const ProtocolConfig& config)
        : config_(config),
          d_(config.d()),
          target_(target_vector(config.target)),
          mu_(mu_basis(amplitude_share(config.target), "A", config.tol).basis),
          nu_(nu_basis(phase_share(config.target), "e")),
          corrections_(weyl_corrections(d_)) {}

    std::vector<UnitaryOp> encoding() const override {
        return {
            hadamard(d_).renamed("H_A").on({"A"}),
            phase_pair(d_).renamed("P_AB").on({"A", "B"}),
            cnot(d_).renamed("C_Ae").on({"A", "e"}),
            controlled_u(config_.channel, config_.pairing()).renamed("CU_AB").on({"A", "B"}),
            cnot_primed(d_, config_.shift).renamed("C'_eA").on({"e", "A"}),
            cnot(d_, 2).renamed("C_Af").on({"A", "f"}),
            cnot(d_).renamed("C_eg").on({"e", "g"}),
            cnot(d_).renamed("C_eA").on({"e", "A"}),
        };
    }

    std::vector<UnitaryOp> bob_pre(std::size_t f) const override {
        if (f == 0) return {cnot(d_).renamed("C_gB").on({"g", "B"}), cnot(d_).renamed("C_Bg").on({"B", "g"})};
        return {cnot(d_).renamed("C_Bg").on({"B", "g"})};
    }

    const MeasurementBasis& mu() const override { return mu_; }
    const MeasurementBasis& nu() const override { return nu_; }

    std::optional<UnitaryOp> charlie_gate(std::size_t f, std::size_t p) const override {
        if (!phase_gate_applies(config_.charlie_phase_rule, f, p)) return std::nullopt;
        return charlie_phase(config_.target.phases()).renamed("P(theta)_e").on({"e"});
    }

    std::vector<UnitaryOp> bob_post(std::size_t f) const override {
        if (f != 0) return {};
        return {hadamard(d_).renamed("H_B").on({"B"}), bob_phase(d_).renamed("P_B").on({"B"})};
    }

    Correction correct(const std::vector<std::size_t>&, std::span<const Complex> bob) const override {
        const auto search = search_corrections(bob, target_, d_, config_.tol.success);
        const std::size_t pick = search.first_match.value_or(search.best);
        const auto& w = corrections_[pick];
        return {w.op.name(), w.op.on({"B"}), search.first_match.has_value()};
    }

private:
    ProtocolConfig config_;
    std::size_t d_;
    CVector target_;
    MeasurementBasis mu_;
    MeasurementBasis nu_;
    std::vector<WeylOp> corrections_;
};

}  // namespace

std::unique_ptr<ProtocolEngine> make_general_engine(const ProtocolConfig& config) {
    return std::make_unique<GeneralEngine>(config);
}

}  // namespace djrsp::detail
