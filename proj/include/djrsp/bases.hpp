#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "djrsp/measurement.hpp"
#include "djrsp/state_vector.hpp"
#include "djrsp/tolerances.hpp"

namespace djrsp {

/// Target state sum_k |x_k| e^{i theta_k} |k> with theta_0 = 0.
class TargetState {
public:
    /// Throws InvalidTarget. An empty phase list means all phases zero.
    static TargetState create(std::vector<double> magnitudes, std::vector<double> phases = {},
                              const Tolerances& tol = default_tolerances());

    std::size_t dimension() const noexcept { return magnitudes_.size(); }
    const std::vector<double>& magnitudes() const noexcept { return magnitudes_; }
    const std::vector<double>& phases() const noexcept { return phases_; }
    bool is_equatorial(double tol = 1e-12) const;

private:
    TargetState(std::vector<double> m, std::vector<double> p) : magnitudes_(std::move(m)), phases_(std::move(p)) {}
    std::vector<double> magnitudes_;
    std::vector<double> phases_;
};

// What Alice knows.
struct AmplitudeShare {
    std::vector<double> magnitudes;
};

// What Charlie knows.
struct PhaseShare {
    std::vector<double> phases;
};

AmplitudeShare amplitude_share(const TargetState& target);
PhaseShare phase_share(const TargetState& target);

CVector target_vector(const TargetState& target);

enum class MuConstruction { QubitRotation, EquatorialFourier, OrthogonalDesign4 };
std::string_view to_string(MuConstruction c);

/// Which magnitude each overlap <mu_p|k> carries.
enum class OverlapIndexing {
    Cyclic,  // |x_{(k+p) mod d}|
    Xor,     // |x_{k xor p}| (the order-4 real orthogonal design)
};

struct MuBasis {
    MeasurementBasis basis;
    MuConstruction construction;
    OverlapIndexing indexing;
};

/// Alice's amplitude basis. Tries, in order: the d=2 rotation basis, the
/// equatorial Fourier basis, the d=4 orthogonal design. Throws
/// BasisNotRealizable for any other (d, magnitudes) combination.
MuBasis mu_basis(const AmplitudeShare& share, const std::string& site = "A",
                 const Tolerances& tol = default_tolerances());

/// Charlie's phase basis |nu_q> = d^{-1/2} sum_r e^{i(theta_r + 2 pi r q/d)} |r>.
/// Orthonormal for every phase list.
MeasurementBasis nu_basis(const PhaseShare& share, const std::string& site = "e");

/// max_{p,k} | |<mu_p|k>| - |x_{index(p,k)}| |
double overlap_defect(const MuBasis& mu, const AmplitudeShare& share);

/// Multiplies each vector by the phase that makes its first non-negligible
/// component real positive.
void fix_global_phases(std::vector<CVector>& vectors);

}  // namespace djrsp
