#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "djrsp/protocol.hpp"
#include "engine.hpp"

namespace djrsp {

std::string_view to_string(Engine e) { return e == Engine::ExactD2 ? "exact-d2" : "general-d"; }

std::string_view to_string(CharliePhaseRule r) {
    switch (r) {
        case CharliePhaseRule::MatchF: return "match-f";
        case CharliePhaseRule::Always: return "always";
        case CharliePhaseRule::Never: return "never";
        case CharliePhaseRule::FOneOnly: return "f1-only";
    }
    return "?";
}

Engine parse_engine(std::string_view s) {
    if (s == "exact-d2") return Engine::ExactD2;
    if (s == "general-d") return Engine::GeneralD;
    throw Error(ErrorKind::InvalidConfig, "unknown engine '" + std::string(s) + "'");
}

CharliePhaseRule parse_phase_rule(std::string_view s) {
    for (auto r : {CharliePhaseRule::MatchF, CharliePhaseRule::Always, CharliePhaseRule::Never,
                   CharliePhaseRule::FOneOnly})
        if (to_string(r) == s) return r;
    throw Error(ErrorKind::InvalidConfig, "unknown phase rule '" + std::string(s) + "'");
}

void ProtocolConfig::validate() const {
    const std::size_t n = d();
    if (n < 2) throw Error(ErrorKind::InvalidConfig, "d must be at least 2");
    if (target.dimension() != n)
        throw Error(ErrorKind::InvalidConfig, "target dimension " + std::to_string(target.dimension()) +
                                                  " does not match channel dimension " + std::to_string(n));
    if (shift == 0 || shift >= n) throw Error(ErrorKind::InvalidConfig, "shift must lie in [1, d-1]");
    if (engine == Engine::ExactD2 && n != 2) throw Error(ErrorKind::InvalidConfig, "exact-d2 engine needs d = 2");
    if (cu_pairing && cu_pairing->dimension() != n)
        throw Error(ErrorKind::InvalidConfig, "pairing dimension does not match d");
}

LevelPairing ProtocolConfig::pairing() const {
    if (cu_pairing) return *cu_pairing;
    return LevelPairing::from_shift(d(), shift);
}

StateVector prepare_initial(const ProtocolConfig& config) {
    config.validate();
    const auto layout = protocol_layout(config.d());
    CVector amps(layout.total_dimension(), Complex{});
    for (std::size_t k = 0; k < config.d(); ++k)
        amps[layout.flat_index({k, k, 0, 0, 0})] = config.channel.coefficient(k);
    return StateVector(layout, std::move(amps), config.tol.norm);
}

namespace {

StateVector apply_all(StateVector state, const std::vector<UnitaryOp>& ops) {
    for (const auto& op : ops) state = embed_and_apply(state, op);
    return state;
}

}  // namespace

StateVector alice_encoding(const StateVector& state, const ProtocolConfig& config) {
    config.validate();
    return apply_all(state, detail::make_engine(config)->encoding());
}

CVector closed_form_encoded_ket(const ProtocolConfig& config) {
    const std::size_t d = config.d();
    const auto layout = protocol_layout(d);
    const double a0 = config.channel.coefficient(0);
    CVector ket(layout.total_dimension(), Complex{});
    auto add = std::function<void(std::size_t, std::size_t, std::size_t, std::size_t, std::size_t, double)>(
        [&](std::size_t a, std::size_t b, std::size_t e, std::size_t g, std::size_t f, double c) {
            ket[layout.flat_index({a, b, e, f, g})] += c;
        });
    for (std::size_t r = 1; r < d; ++r) {
        for (std::size_t k = 1; k < d; ++k) {
            const double ak = config.channel.coefficient(k);
            const double w = std::sqrt(std::max(0.0, ak * ak - a0 * a0));
            add(r, 0, 0, 0, 1, a0);
            add(0, 0, r, r, 1, a0);
            add(r, k, 0, 0, 1, a0);
            add(0, k, r, r, 1, a0);
            add(0, k, 0, 0, 0, w);
            add(r, k, r, r, 0, w);
        }
    }
    return ket;
}

EncodingConformance encoding_conformance(const StateVector& encoded, const ProtocolConfig& config) {
    const std::size_t d = config.d();
    const auto ket = closed_form_encoded_ket(config);
    const auto& sim = encoded.amplitudes();
    EncodingConformance c;
    c.stated_prefactor = std::sqrt(1.0 / static_cast<double>(d * (d - 1)));
    const double n = vector_norm(ket);
    c.required_prefactor = n > 0.0 ? 1.0 / n : 0.0;
    const double support_floor = 1e-12;
    for (std::size_t i = 0; i < sim.size(); ++i) {
        const double closed = std::abs(ket[i]) * c.required_prefactor;
        c.magnitude_residual = std::max(c.magnitude_residual, std::abs(std::abs(sim[i]) - closed));
        if (std::abs(ket[i]) > support_floor) ++c.closed_form_support;
        if (std::abs(sim[i]) > support_floor) ++c.simulated_support;
    }
    if (n > 0.0) c.signed_overlap = std::norm(inner_product(ket, sim)) / (n * n);
    return c;
}

// ---- branch walker -------------------------------------------------------------

namespace {

using Chooser = std::function<std::vector<std::size_t>(const std::vector<BranchRecord>&)>;

std::vector<std::size_t> all_outcomes(const std::vector<BranchRecord>& records) {
    std::vector<std::size_t> idx(records.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
}

std::vector<std::size_t> outcome_indices(const OutcomePath& path) {
    std::vector<std::size_t> out;
    out.reserve(path.size());
    for (const auto& o : path) out.push_back(o.index);
    return out;
}

// Principal eigenvector of a Hermitian matrix, phase-fixed like site_state.
CVector principal_vector(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const auto v = es.eigenvectors().col(es.eigenvalues().size() - 1);
    CVector out(v.data(), v.data() + v.size());
    for (const auto& a : out) {
        if (std::abs(a) > 1e-12) {
            const Complex phase = std::conj(a) / std::abs(a);
            for (auto& x : out) x *= phase;
            break;
        }
    }
    return out;
}

class Walker {
public:
    Walker(const ProtocolConfig& config, const detail::ProtocolEngine& engine, Chooser choose)
        : config_(config), engine_(engine), choose_(std::move(choose)), target_(target_vector(config.target)) {}

    BranchRun run;

    void measure_f(const StateVector& encoded) {
        step(encoded, MeasurementBasis::computational("f", 2), {}, 1.0,
             [this](const StateVector& s, std::size_t f, const OutcomePath& path, double joint) {
                 after_f(s, f, path, joint);
             });
    }

    void after_f(const StateVector& collapsed, std::size_t f, const OutcomePath& path, double joint) {
        const StateVector s = apply_all(collapsed, engine_.bob_pre(f));
        step(s, engine_.mu(), path, joint,
             [this, f](const StateVector& s2, std::size_t p, const OutcomePath& path2, double joint2) {
                 StateVector t = s2;
                 if (auto gate = engine_.charlie_gate(f, p)) t = embed_and_apply(t, *gate);
                 step(t, engine_.nu(), path2, joint2,
                      [this, f](const StateVector& s3, std::size_t, const OutcomePath& path3, double joint3) {
                          if (f == 1) {
                              step(s3, MeasurementBasis::computational("g", config_.d()), path3, joint3,
                                   [this, f](const StateVector& s4, std::size_t, const OutcomePath& path4,
                                             double joint4) { finish(s4, f, path4, joint4); });
                          } else {
                              finish(s3, f, path3, joint3);
                          }
                      });
             });
    }

private:
    using Next = std::function<void(const StateVector&, std::size_t, const OutcomePath&, double)>;

    void step(const StateVector& state, const MeasurementBasis& basis, const OutcomePath& prefix, double joint,
              const Next& next) {
        auto records = measure_exhaustive(state, basis, config_.tol);
        MeasurementNode node{prefix, basis.site(), basis.name(), {}, joint};
        for (const auto& r : records) node.probabilities.push_back(r.probability);
        run.nodes.push_back(std::move(node));
        for (std::size_t i : choose_(records)) {
            auto& r = records[i];
            OutcomePath path = prefix;
            path.push_back(r.outcome_path.front());
            const double p = joint * r.probability;
            if (r.pruned) {
                Leaf leaf;
                leaf.record.outcome_path = path;
                leaf.record.probability = p;
                leaf.record.pruned = true;
                run.leaves.push_back(std::move(leaf));
                continue;
            }
            next(*r.post_state, i, path, p);
        }
    }

    void finish(const StateVector& measured, std::size_t, const OutcomePath& path, double joint) {
        const StateVector state = apply_all(measured, engine_.bob_post(path.front().index));
        Leaf leaf;
        leaf.record.outcome_path = path;
        leaf.record.probability = joint;
        const auto outcomes = outcome_indices(path);

        const Matrix rho = reduced_density(state, "B");
        const bool pure = purity(rho) >= 1.0 - config_.tol.purity;
        const CVector bob = pure ? site_state(state, "B", config_.tol) : principal_vector(rho);
        if (pure) leaf.bob_state = bob;
        leaf.residual_entanglement = !pure;

        const auto corr = engine_.correct(outcomes, bob);
        leaf.correction_found = corr.found;
        leaf.record.applied_correction = corr.name;
        Eigen::Map<const Eigen::VectorXcd> t(target_.data(), static_cast<Eigen::Index>(target_.size()));
        if (corr.op) {
            const Matrix& c = corr.op->matrix();
            const Matrix rotated = c * rho * c.adjoint();
            leaf.record.fidelity = std::real(t.dot(rotated * t));
            if (pure) leaf.record.post_state = embed_and_apply(state, *corr.op);
        }
        leaf.success = leaf.record.fidelity && *leaf.record.fidelity >= 1.0 - config_.tol.success;

        if (!pure)
            run.findings.push_back({ErrorKind::ResidualEntanglement, to_string(path),
                                    "purity of B is " + std::to_string(purity(rho))});
        if (!corr.found)
            run.findings.push_back({ErrorKind::NoCorrectionFound, to_string(path),
                                    "best fidelity " + std::to_string(leaf.record.fidelity.value_or(0.0))});
        run.leaves.push_back(std::move(leaf));
    }

    const ProtocolConfig& config_;
    const detail::ProtocolEngine& engine_;
    Chooser choose_;
    CVector target_;
};

void sort_run(BranchRun& run) {
    std::stable_sort(run.leaves.begin(), run.leaves.end(), [](const Leaf& a, const Leaf& b) {
        return path_less(a.record.outcome_path, b.record.outcome_path);
    });
    std::stable_sort(run.nodes.begin(), run.nodes.end(), [](const MeasurementNode& a, const MeasurementNode& b) {
        return path_less(a.prefix, b.prefix);
    });
}

BranchRun run_branch(const StateVector& state, const ProtocolConfig& config, double reach, std::size_t f) {
    config.validate();
    const auto engine = detail::make_engine(config);
    Walker w(config, *engine, all_outcomes);
    const OutcomePath prefix = {Outcome{"f", "computational", f}};
    w.after_f(state, f, prefix, reach);
    sort_run(w.run);
    return std::move(w.run);
}

TranscriptSummary summarize(const std::vector<Leaf>& leaves, const std::vector<MeasurementNode>& nodes,
                            double success_tol) {
    TranscriptSummary s;
    double weighted = 0.0;
    double weight = 0.0;
    bool any = false;
    for (const auto& leaf : leaves) {
        ++s.leaf_count;
        s.leaf_probability_sum += leaf.record.probability;
        if (leaf.record.pruned) {
            ++s.pruned_count;
            continue;
        }
        const double fid = leaf.record.fidelity.value_or(0.0);
        if (fid >= 1.0 - success_tol) s.total_success_probability += leaf.record.probability;
        else ++s.failed_count;
        s.min_fidelity = any ? std::min(s.min_fidelity, fid) : fid;
        any = true;
        weighted += leaf.record.probability * fid;
        weight += leaf.record.probability;
    }
    s.mean_fidelity = weight > 0.0 ? weighted / weight : 0.0;
    for (const auto& n : nodes) {
        if (n.prefix.empty() && n.site == "f") {
            s.p_f0 = n.probabilities.at(0);
            s.p_f1 = n.probabilities.at(1);
        }
    }
    return s;
}

}  // namespace

BranchRun run_branch_zero_f(const StateVector& state, const ProtocolConfig& config, double reach_probability) {
    return run_branch(state, config, reach_probability, 0);
}

BranchRun run_branch_one_f(const StateVector& state, const ProtocolConfig& config, double reach_probability) {
    return run_branch(state, config, reach_probability, 1);
}

// ---- runner ----------------------------------------------------------------------

ProtocolRunner::ProtocolRunner(ProtocolConfig config)
    : config_((config.validate(), std::move(config))),
      encoded_(alice_encoding(prepare_initial(config_), config_)) {}

ProtocolTranscript ProtocolRunner::enumerate() const {
    const auto engine = detail::make_engine(config_);
    Walker w(config_, *engine, all_outcomes);
    w.measure_f(encoded_);
    sort_run(w.run);

    ProtocolTranscript t{config_, protocol_gate_log(config_), encoding_conformance(encoded_, config_),
                         std::move(w.run.nodes), std::move(w.run.leaves), std::move(w.run.findings), {}};
    t.summary = summarize(t.leaves, t.nodes, config_.tol.success);
    return t;
}

Leaf ProtocolRunner::sample(std::mt19937_64& rng) const {
    const auto engine = detail::make_engine(config_);
    auto choose = [&rng](const std::vector<BranchRecord>& records) {
        // 53-bit uniform in [0, 1), identical on every platform
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double acc = 0.0;
        std::size_t last = records.size();
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (records[i].pruned) continue;
            last = i;
            acc += records[i].probability;
            if (u < acc) return std::vector<std::size_t>{i};
        }
        return last == records.size() ? std::vector<std::size_t>{} : std::vector<std::size_t>{last};
    };
    Walker w(config_, *engine, choose);
    w.measure_f(encoded_);
    if (w.run.leaves.empty()) throw Error(ErrorKind::InvalidConfig, "sampling reached no leaf");
    return std::move(w.run.leaves.front());
}

ProtocolTranscript enumerate(const ProtocolConfig& config) { return ProtocolRunner(config).enumerate(); }

Leaf sample_trajectory(const ProtocolConfig& config, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return ProtocolRunner(config).sample(rng);
}

// ---- gate log --------------------------------------------------------------------

std::vector<LogEntry> protocol_gate_log(const ProtocolConfig& config) {
    const auto engine = detail::make_engine(config);
    std::vector<LogEntry> log;
    const auto gate = [&log](std::string branch, std::string actor, const UnitaryOp& op, std::string detail = {}) {
        log.push_back({std::move(branch), std::move(actor), "gate", op.name(), op.targets(), std::move(detail)});
    };
    const auto event = [&log](std::string branch, std::string actor, std::string kind, std::string name,
                              std::vector<std::string> sites, std::string detail) {
        log.push_back({std::move(branch), std::move(actor), std::move(kind), std::move(name), std::move(sites),
                       std::move(detail)});
    };

    event("", "Alice", "distribute", "channel", {"A", "B"}, "B to Bob");
    event("", "Alice", "prepare", "ancillas", {"e", "f", "g"}, "|0>|0>|0>");
    auto encoding = engine->encoding();
    for (const auto& op : encoding) {
        std::string detail;
        if (op.name() == "H_A") detail = "1/sqrt(" + std::to_string(config.d()) + ")";
        if (op.name() == "CU_AB") detail = "pairing " + config.pairing().to_string();
        if (op.name() == "C'_eA") detail = "shift " + std::to_string(config.shift);
        gate("", "Alice", op, detail);
    }
    event("", "Alice", "distribute", "e", {"e"}, "to Charlie");
    event("", "Alice", "distribute", "g", {"g"}, "to Bob");
    event("", "Alice", "measure", "f", {"f"}, "computational");
    event("", "Alice", "classical", "f", {}, "Alice -> Bob, Charlie");

    const std::size_t d = config.d();
    for (std::size_t f = 0; f < 2; ++f) {
        const std::string fb = "f=" + std::to_string(f);
        for (const auto& op : engine->bob_pre(f)) gate(fb, "Bob", op);
        event(fb, "Alice", "measure", engine->mu().name(), {"A"}, "");
        event(fb, "Alice", "classical", "mu", {}, "Alice -> Bob, Charlie");
        for (std::size_t p = 0; p < d; ++p)
            if (auto g = engine->charlie_gate(f, p)) gate(fb + "/mu=" + std::to_string(p), "Charlie", *g);
        event(fb, "Charlie", "measure", engine->nu().name(), {"e"}, "");
        event(fb, "Charlie", "classical", "nu", {}, "Charlie -> Bob");
        if (f == 1) event(fb, "Bob", "measure", "g", {"g"}, "computational");
        for (const auto& op : engine->bob_post(f)) gate(fb, "Bob", op);
        event(fb, "Bob", "correct", "B", {"B"},
              config.engine == Engine::ExactD2 ? "rule table" : "Weyl search");
    }
    return log;
}

}  // namespace djrsp
