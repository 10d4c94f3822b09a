#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "djrsp/bases.hpp"
#include "djrsp/errors.hpp"
#include "djrsp/gates.hpp"
#include "djrsp/measurement.hpp"
#include "djrsp/state_vector.hpp"
#include "djrsp/tolerances.hpp"

namespace djrsp {

enum class Engine { ExactD2, GeneralD };

/// When Charlie applies P(theta)_e before the nu measurement (GeneralD only;
/// ExactD2 always follows the two-qubit derivation, which equals MatchF).
enum class CharliePhaseRule {
    MatchF,  // iff the mu outcome index equals the f outcome
    Always,
    Never,
    FOneOnly,  // every mu outcome of the f=1 branch
};

std::string_view to_string(Engine e);
std::string_view to_string(CharliePhaseRule r);
Engine parse_engine(std::string_view s);
CharliePhaseRule parse_phase_rule(std::string_view s);

struct ProtocolConfig {
    ChannelSpec channel;
    TargetState target;
    std::size_t shift = 1;
    Engine engine = Engine::GeneralD;
    std::optional<LevelPairing> cu_pairing;
    CharliePhaseRule charlie_phase_rule = CharliePhaseRule::MatchF;
    Tolerances tol = default_tolerances();

    std::size_t d() const noexcept { return channel.dimension(); }
    /// Throws InvalidConfig.
    void validate() const;
    /// Explicit pairing if given, else derived from the shift.
    LevelPairing pairing() const;
};

struct LogEntry {
    std::string branch;  // "" for the shared encoding, otherwise the branch pattern
    std::string actor;
    std::string kind;    // gate | measure | classical | distribute
    std::string name;
    std::vector<std::string> sites;
    std::string detail;
};

/// How the simulated encoded state compares with the closed-form ket the
/// derivation writes down (built term by term from its double sum).
struct EncodingConformance {
    double stated_prefactor = 0.0;    // sqrt(1/(d(d-1)))
    double required_prefactor = 0.0;  // 1 / ||unnormalized closed-form ket||
    double magnitude_residual = 0.0;  // max_i | |sim_i| - |closed_i| |
    double signed_overlap = 0.0;      // |<closed|sim>|^2 (both normalized)
    std::size_t closed_form_support = 0;
    std::size_t simulated_support = 0;
};

struct MeasurementNode {
    OutcomePath prefix;
    std::string site;
    std::string basis;
    std::vector<double> probabilities;  // conditional on the prefix
    double joint_probability = 0.0;     // of reaching this node
};

struct Finding {
    ErrorKind kind;
    std::string path;
    std::string detail;
};

struct Leaf {
    BranchRecord record;  // probability is the joint path probability
    bool success = false;
    bool residual_entanglement = false;
    bool correction_found = false;
    std::optional<CVector> bob_state;  // B before correction, when pure
};

struct TranscriptSummary {
    double total_success_probability = 0.0;
    double min_fidelity = 1.0;
    double mean_fidelity = 0.0;  // probability-weighted over non-pruned leaves
    double leaf_probability_sum = 0.0;
    double p_f0 = 0.0;
    double p_f1 = 0.0;
    std::size_t leaf_count = 0;
    std::size_t pruned_count = 0;
    std::size_t failed_count = 0;
};

struct ProtocolTranscript {
    ProtocolConfig config;
    std::vector<LogEntry> gate_log;
    EncodingConformance conformance;
    std::vector<MeasurementNode> nodes;
    std::vector<Leaf> leaves;  // sorted by outcome path
    std::vector<Finding> findings;
    TranscriptSummary summary;
};

// ---- individual steps --------------------------------------------------------

/// sum_k a_k |kk>_AB |0>_e |0>_f |0>_g on the (A, B, e, f, g) layout.
StateVector prepare_initial(const ProtocolConfig& config);

/// Alice's encoding circuit, applied right-to-left as written:
/// C_eA C_eg C_Af C'_eA CU_AB C_Ae P_AB H_A.
StateVector alice_encoding(const StateVector& state, const ProtocolConfig& config);

/// Unnormalized ket of the closed-form encoded state (double sum over
/// r, k in [1, d-1]), on the protocol layout.
CVector closed_form_encoded_ket(const ProtocolConfig& config);
EncodingConformance encoding_conformance(const StateVector& encoded, const ProtocolConfig& config);

/// Sub-tree after the f measurement collapsed onto 0 (resp. 1). `state` is
/// the collapsed state; `reach_probability` is P(f).
struct BranchRun {
    std::vector<MeasurementNode> nodes;
    std::vector<Leaf> leaves;
    std::vector<Finding> findings;
};
BranchRun run_branch_zero_f(const StateVector& state, const ProtocolConfig& config, double reach_probability = 1.0);
BranchRun run_branch_one_f(const StateVector& state, const ProtocolConfig& config, double reach_probability = 1.0);

// ---- corrections ---------------------------------------------------------------

struct CorrectionSearch {
    std::optional<std::size_t> first_match;  // index into weyl_corrections(d)
    std::size_t best = 0;
    double best_fidelity = 0.0;
};

CorrectionSearch search_corrections(std::span<const Complex> bob_state, std::span<const Complex> target,
                                    std::size_t d, double success_tol = default_tolerances().success);

/// First X^a Z^b (lexicographic in (a, b)) mapping bob_state onto target with
/// fidelity >= 1 - success_tol. Throws NoCorrectionFound.
WeylOp resolve_correction(std::span<const Complex> bob_state, std::span<const Complex> target, std::size_t d,
                          double success_tol = default_tolerances().success);

/// Two-qubit correction table: outcome path -> named Pauli. Keys are
/// (f, u, nu) for f = 0 and (f, u, nu, g) for f = 1.
struct CorrectionRule {
    std::vector<std::size_t> outcomes;
    std::string correction;  // I, X, Z or iY
};

/// Table verified against the closed-form two-qubit algebra; every entry
/// reconstructs the target.
const std::vector<CorrectionRule>& exact_d2_rules();
/// The charts exactly as printed in the d=2 derivation (f=0 branch from
/// the prose, f=1 branch from the two tables). Reference data only.
const std::vector<CorrectionRule>& printed_charts();
UnitaryOp named_pauli(std::string_view name);
std::optional<std::string> lookup_rule(const std::vector<CorrectionRule>& rules,
                                       const std::vector<std::size_t>& outcomes);

// ---- whole protocol -------------------------------------------------------------

/// Holds the encoded state so repeated sampling does not redo the encoding.
class ProtocolRunner {
public:
    explicit ProtocolRunner(ProtocolConfig config);

    const ProtocolConfig& config() const noexcept { return config_; }
    const StateVector& encoded() const noexcept { return encoded_; }

    ProtocolTranscript enumerate() const;

    /// One outcome per measurement, drawn with `rng`.
    Leaf sample(std::mt19937_64& rng) const;

private:
    ProtocolConfig config_;
    StateVector encoded_;
};

ProtocolTranscript enumerate(const ProtocolConfig& config);

/// Deterministic for a given seed.
Leaf sample_trajectory(const ProtocolConfig& config, std::uint64_t seed);

std::vector<LogEntry> protocol_gate_log(const ProtocolConfig& config);

}  // namespace djrsp
