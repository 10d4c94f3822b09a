#include <cmath>

#include "djrsp/protocol.hpp"

namespace djrsp {

CorrectionSearch search_corrections(std::span<const Complex> bob_state, std::span<const Complex> target,
                                    std::size_t d, double success_tol) {
    if (bob_state.size() != d || target.size() != d)
        throw Error(ErrorKind::DimensionMismatch, "correction search: vectors must have dimension d");
    CorrectionSearch out;
    out.best_fidelity = -1.0;
    const auto ops = weyl_corrections(d);
    Eigen::Map<const Eigen::VectorXcd> bob(bob_state.data(), static_cast<Eigen::Index>(d));
    Eigen::Map<const Eigen::VectorXcd> tgt(target.data(), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const double fid = std::norm(tgt.dot(ops[i].op.matrix() * bob));
        if (fid > out.best_fidelity + 1e-15) {
            out.best_fidelity = fid;
            out.best = i;
        }
        if (!out.first_match && fid >= 1.0 - success_tol) out.first_match = i;
    }
    return out;
}

WeylOp resolve_correction(std::span<const Complex> bob_state, std::span<const Complex> target, std::size_t d,
                          double success_tol) {
    const auto search = search_corrections(bob_state, target, d, success_tol);
    if (!search.first_match)
        throw Error(ErrorKind::NoCorrectionFound,
                    "no X^a Z^b reaches the target (best fidelity " + std::to_string(search.best_fidelity) + ")");
    return weyl_corrections(d)[*search.first_match];
}

const std::vector<CorrectionRule>& exact_d2_rules() {
    // keys: (f, u, nu) and (f, u, nu, g)
    static const std::vector<CorrectionRule> rules = {
        {{0, 0, 0}, "iY"},    {{0, 0, 1}, "X"},     {{0, 1, 0}, "I"},     {{0, 1, 1}, "Z"},
        {{1, 0, 0, 0}, "X"},  {{1, 0, 0, 1}, "I"},  {{1, 0, 1, 0}, "iY"}, {{1, 0, 1, 1}, "Z"},
        {{1, 1, 0, 0}, "Z"},  {{1, 1, 0, 1}, "iY"}, {{1, 1, 1, 0}, "I"},  {{1, 1, 1, 1}, "X"},
    };
    return rules;
}

const std::vector<CorrectionRule>& printed_charts() {
    static const std::vector<CorrectionRule> rules = {
        {{0, 0, 0}, "Z"},     {{0, 0, 1}, "X"},     {{0, 1, 0}, "I"},     {{0, 1, 1}, "Z"},
        {{1, 0, 0, 0}, "Z"},  {{1, 0, 0, 1}, "I"},  {{1, 0, 1, 0}, "Z"},  {{1, 0, 1, 1}, "I"},
        {{1, 1, 0, 0}, "I"},  {{1, 1, 0, 1}, "iY"}, {{1, 1, 1, 0}, "I"},  {{1, 1, 1, 1}, "iY"},
    };
    return rules;
}

UnitaryOp named_pauli(std::string_view name) {
    if (name == "I") return pauli_i();
    if (name == "X") return pauli_x();
    if (name == "Y") return pauli_y();
    if (name == "Z") return pauli_z();
    if (name == "iY") return i_pauli_y();
    throw Error(ErrorKind::InvalidConfig, "unknown Pauli '" + std::string(name) + "'");
}

std::optional<std::string> lookup_rule(const std::vector<CorrectionRule>& rules,
                                       const std::vector<std::size_t>& outcomes) {
    for (const auto& r : rules)
        if (r.outcomes == outcomes) return r.correction;
    return std::nullopt;
}

}  // namespace djrsp
