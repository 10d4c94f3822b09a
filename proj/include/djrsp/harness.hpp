#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "djrsp/protocol.hpp"

namespace djrsp::harness {

enum class Mode { Enumerate, Sample, Sweep, Claims };
enum class Format { Json, Csv };

std::string_view to_string(Mode m);
std::string_view to_string(Format f);
/// Throws InvalidRequest.
Mode parse_mode(std::string_view s);
Format parse_format(std::string_view s);

struct TargetInput {
    std::vector<double> magnitudes;
    std::vector<double> phases;  // empty means all zero
};

/// "0.6,0.8" -> {0.6, 0.8}. Throws InvalidRequest.
std::vector<double> parse_list(std::string_view text);
/// "0.6,0.8@0,1.0472". Throws InvalidRequest.
TargetInput parse_target(std::string_view text);
/// "0-1,2-3". Throws InvalidRequest on bad syntax (not on bad pairs).
std::vector<LevelPairing::Pair> parse_pairs(std::string_view text);

struct RunRequest {
    Mode mode = Mode::Enumerate;
    std::vector<std::size_t> dims;                 // from --d or --dims
    std::vector<std::vector<double>> channels;     // explicit coefficient lists
    std::vector<double> a0_grid;                   // channels with_smallest(d, a0)
    std::vector<TargetInput> targets;
    std::size_t random_targets = 0;
    bool equatorial = false;                       // random targets on the equator
    std::uint64_t seed = 1;
    std::size_t shots = 1000;
    std::optional<std::vector<LevelPairing::Pair>> pairing;
    std::optional<std::size_t> shift;
    Engine engine = Engine::GeneralD;
    CharliePhaseRule phase_rule = CharliePhaseRule::MatchF;
    Format format = Format::Json;
    std::optional<std::string> out;
    Tolerances tol = default_tolerances();

    /// Throws InvalidRequest.
    void validate() const;
};

/// One protocol configuration of a request; construction problems are kept
/// as data so a sweep can report them.
struct Cell {
    std::string key;
    std::size_t d = 0;
    std::vector<double> channel;
    TargetInput target;
    std::optional<ProtocolConfig> config;
    std::optional<ErrorKind> error;
    std::string error_detail;
};

/// Deterministic expansion of the grids, ordered by (d, channel, target).
std::vector<Cell> expand_cells(const RunRequest& request);

/// Default level pairing for d: shift d/2 when d is even, otherwise
/// (0,1), (2,3), ... leaving the last level unpaired.
std::vector<LevelPairing::Pair> default_pairs(std::size_t d);

struct BranchRow {
    std::string path;
    double probability = 0.0;
    std::string correction;
    std::optional<double> fidelity;
    bool pruned = false;
    bool residual_entanglement = false;
    // sample mode only
    std::optional<std::size_t> count;
    std::optional<double> expected_probability;
    std::optional<double> z_score;
};

struct SampleSummary {
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    double empirical_p_f0 = 0.0;
    double max_abs_z = 0.0;
};

struct RunResult {
    std::string key;
    ProtocolConfig config;
    std::vector<LogEntry> gate_log;
    EncodingConformance conformance;
    std::vector<BranchRow> branches;
    TranscriptSummary summary;
    std::optional<SampleSummary> sampling;
};

enum class ClaimStatus { Pass, Fail, NotApplicable };
std::string_view to_string(ClaimStatus s);

struct ClaimResult {
    std::string id;    // C1..C5
    std::string cell;
    double expected = 0.0;
    double measured = 0.0;
    double residual = 0.0;
    ClaimStatus status = ClaimStatus::NotApplicable;
    std::optional<double> identity_value;     // 1 - (d-2) a_0^2
    std::optional<double> identity_residual;  // identity_value - (P(f=0) + P(f=1))
    std::string note;
};

/// C1..C5 for one enumerated cell.
std::vector<ClaimResult> claim_suite(const ProtocolTranscript& transcript, const std::string& cell);

struct FindingRow {
    std::string cell;
    std::string kind;
    std::string path;
    std::string detail;
};

struct Report {
    std::string version;
    RunRequest request;
    std::vector<RunResult> runs;
    std::vector<ClaimResult> claims;
    std::vector<FindingRow> findings;
};

/// Runs every cell (in parallel) and merges results in cell order.
Report execute(const RunRequest& request);

std::string render_json(const Report& report);
std::string render_csv(const Report& report);
std::string render(const Report& report, Format format);

/// Writes to request.out or stdout. Returns the process exit code
/// (0 success, 2 invalid request, 3 I/O failure); messages go to stderr.
int run(const RunRequest& request);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidRequest = 2;
inline constexpr int kExitIoFailure = 3;

std::string_view version();

}  // namespace djrsp::harness
