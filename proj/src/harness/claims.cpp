#include <cmath>

#include "djrsp/harness.hpp"

namespace djrsp::harness {

std::string_view to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::Pass: return "pass";
        case ClaimStatus::Fail: return "fail";
        case ClaimStatus::NotApplicable: return "not-applicable";
    }
    return "?";
}

namespace {

ClaimResult compare(std::string id, const std::string& cell, double expected, double measured, double tol) {
    ClaimResult c;
    c.id = std::move(id);
    c.cell = cell;
    c.expected = expected;
    c.measured = measured;
    c.residual = measured - expected;
    c.status = std::abs(c.residual) <= tol ? ClaimStatus::Pass : ClaimStatus::Fail;
    return c;
}

// Largest deviation from 1/d among the conditional outcome probabilities of
// every node measuring `site`.
double equiprobability_gap(const std::vector<MeasurementNode>& nodes, const std::string& site) {
    double gap = 0.0;
    for (const auto& n : nodes) {
        if (n.site != site) continue;
        const double uniform = 1.0 / static_cast<double>(n.probabilities.size());
        for (double p : n.probabilities) gap = std::max(gap, std::abs(p - uniform));
    }
    return gap;
}

}  // namespace

std::vector<ClaimResult> claim_suite(const ProtocolTranscript& t, const std::string& cell) {
    const auto& config = t.config;
    const auto& tol = config.tol;
    const std::size_t d = config.d();
    const double a0 = config.channel.coefficient(0);

    double p_f0_expected = 0.0;
    for (std::size_t k = 1; k < d; ++k) {
        const double ak = config.channel.coefficient(k);
        p_f0_expected += ak * ak - a0 * a0;
    }
    const double identity = 1.0 - static_cast<double>(d - 2) * a0 * a0;
    const double identity_residual = identity - (t.summary.p_f0 + t.summary.p_f1);

    std::vector<ClaimResult> out;
    out.push_back(compare("C1", cell, 1.0, t.summary.total_success_probability, tol.success));

    auto c2 = compare("C2", cell, p_f0_expected, t.summary.p_f0, tol.probability_sum);
    auto c3 = compare("C3", cell, 2.0 * a0 * a0, t.summary.p_f1, tol.probability_sum);
    for (auto* c : {&c2, &c3}) {
        c->identity_value = identity;
        c->identity_residual = identity_residual;
        if (d > 2) c->note = "sum of the stated branch probabilities is 1-(d-2)a0^2, not 1";
    }
    out.push_back(std::move(c2));
    out.push_back(std::move(c3));

    const double gap = std::max(equiprobability_gap(t.nodes, "A"), equiprobability_gap(t.nodes, "e"));
    auto c4 = compare("C4", cell, 0.0, gap, tol.probability_sum);
    c4.note = "max |p - 1/d| over mu and nu outcomes";
    out.push_back(std::move(c4));

    ClaimResult c5;
    c5.id = "C5";
    c5.cell = cell;
    if (d != 2) {
        c5.status = ClaimStatus::NotApplicable;
        c5.note = "printed charts exist for d = 2 only";
    } else {
        const auto target = target_vector(config.target);
        std::size_t evaluable = 0;
        std::size_t reproduced = 0;
        for (const auto& leaf : t.leaves) {
            if (leaf.record.pruned || !leaf.bob_state) continue;
            std::vector<std::size_t> outcomes;
            for (const auto& o : leaf.record.outcome_path) outcomes.push_back(o.index);
            const auto chart = lookup_rule(printed_charts(), outcomes);
            if (!chart) continue;
            ++evaluable;
            const Matrix m = named_pauli(*chart).matrix();
            Eigen::Map<const Eigen::VectorXcd> bob(leaf.bob_state->data(), 2);
            Eigen::Map<const Eigen::VectorXcd> tgt(target.data(), 2);
            if (std::norm(tgt.dot(m * bob)) >= 1.0 - tol.success) ++reproduced;
        }
        c5.expected = static_cast<double>(evaluable);
        c5.measured = static_cast<double>(reproduced);
        c5.residual = c5.measured - c5.expected;
        c5.status = reproduced == evaluable ? ClaimStatus::Pass : ClaimStatus::Fail;
        c5.note = "leaves on which the printed chart correction reaches the target";
    }
    out.push_back(std::move(c5));
    return out;
}

}  // namespace djrsp::harness
