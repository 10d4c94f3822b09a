#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "djrsp/tolerances.hpp"
#include "djrsp/unitary_op.hpp"

namespace djrsp {

/// Real non-negative Schmidt coefficients of the shared pair sum_k a_k |kk>.
/// a_0 must be the smallest coefficient so that sqrt(a_k^2 - a_0^2) is real.
class ChannelSpec {
public:
    /// Throws InvalidChannel.
    static ChannelSpec create(std::vector<double> coefficients, const Tolerances& tol = default_tolerances());
    /// a_0 given, remaining weight spread evenly over k >= 1.
    static ChannelSpec with_smallest(std::size_t d, double a0, const Tolerances& tol = default_tolerances());
    static ChannelSpec uniform(std::size_t d);

    std::size_t dimension() const noexcept { return coefficients_.size(); }
    double coefficient(std::size_t k) const { return coefficients_.at(k); }
    const std::vector<double>& coefficients() const noexcept { return coefficients_; }
    bool is_uniform(double tol = 1e-12) const;

private:
    explicit ChannelSpec(std::vector<double> c) : coefficients_(std::move(c)) {}
    std::vector<double> coefficients_;
};

/// Disjoint pairs of A-levels rotated by the controlled-U. Levels not named
/// in any pair are left untouched.
class LevelPairing {
public:
    using Pair = std::pair<std::size_t, std::size_t>;

    /// Pairs r <-> r+s; only a partition when 2s = 0 mod d. Throws UnpairablePairing.
    static LevelPairing from_shift(std::size_t d, std::size_t shift);
    /// Throws UnpairablePairing on overlapping, degenerate or out-of-range pairs.
    static LevelPairing explicit_pairs(std::size_t d, std::vector<Pair> pairs);

    std::size_t dimension() const noexcept { return d_; }
    const std::vector<Pair>& pairs() const noexcept { return pairs_; }
    std::string to_string() const;

private:
    LevelPairing(std::size_t d, std::vector<Pair> p) : d_(d), pairs_(std::move(p)) {}
    std::size_t d_;
    std::vector<Pair> pairs_;
};

enum class GateKind {
    HadamardD,
    PhasePairD,
    CnotD,
    CnotPrimedD,
    ControlledU,
    CharliePhase,
    BobPhase,
    PauliX,
    PauliY,
    PauliZ,
    WeylX,
    WeylZ,
};

std::string_view to_string(GateKind kind);

// Generalized Fourier gate, entry (r,k) = e^{2 pi i k r / d} / sqrt(d).
UnitaryOp hadamard(std::size_t d);

// Two-site diagonal phase, |r,k> -> e^{-2 pi i k r / d} |r,k>. Carries no
// 1/sqrt(d) prefactor.
UnitaryOp phase_pair(std::size_t d);

// SUM gate: |r>|k> -> |r>|k + r mod d_target>.
UnitaryOp cnot(std::size_t d);
UnitaryOp cnot(std::size_t control_dim, std::size_t target_dim);

// Shifts the target by s only when the control is |0>.
UnitaryOp cnot_primed(std::size_t d, std::size_t shift);

/// For each B-value k, rotates every pair (r1, r2) of A-levels by
/// cos = a_0/a_k, sin = sqrt(1 - a_0^2/a_k^2):
///   |r1 k> -> cos|r1 k> + sin|r2 k>,   |r2 k> -> cos|r2 k> - sin|r1 k>.
/// Acts on (A, B) with A most significant.
UnitaryOp controlled_u(const ChannelSpec& channel, const LevelPairing& pairing);
UnitaryOp controlled_u(const ChannelSpec& channel, std::size_t shift);

/// Charlie's diagonal phase gate, entry e^{2i(theta_r - theta_0)} at |r>.
/// The outcome-dependent 2 pi r q / d part of theta_{r_q} cancels in the
/// difference, so the gate does not depend on q.
UnitaryOp charlie_phase(const std::vector<double>& phases);

/// Inverse Fourier gate, entry (r,k) = e^{-2 pi i k r / d} / sqrt(d).
UnitaryOp bob_phase(std::size_t d);

UnitaryOp pauli_i();
UnitaryOp pauli_x();
UnitaryOp pauli_y();
UnitaryOp pauli_z();
UnitaryOp i_pauli_y();  // i sigma_y = [[0, 1], [-1, 0]]

struct WeylOp {
    std::size_t a = 0;  // power of the shift X|k> = |k+1>
    std::size_t b = 0;  // power of the clock Z|k> = e^{2 pi i k/d}|k>
    UnitaryOp op;
};

UnitaryOp weyl_shift(std::size_t d);
UnitaryOp weyl_clock(std::size_t d);
/// X^a Z^b.
WeylOp weyl(std::size_t d, std::size_t a, std::size_t b);
/// All d^2 operators X^a Z^b in (a, b) lexicographic order.
std::vector<WeylOp> weyl_corrections(std::size_t d);

/// Descriptor for gate-log entries and generic construction.
struct GateSpec {
    GateKind kind = GateKind::HadamardD;
    std::size_t d = 2;
    std::size_t shift = 1;
    std::vector<double> phases;
};

/// Builds the gates whose parameters fit in a GateSpec (everything except
/// ControlledU, which needs a channel).
UnitaryOp make_gate(const GateSpec& spec);

/// True if a == e^{i phi} b for some phi (|tr(a^dag b)| = dim).
bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol = 1e-9);

}  // namespace djrsp
