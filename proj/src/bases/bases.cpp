#include "djrsp/bases.hpp"

#include <cmath>
#include <numbers>

#include "djrsp/errors.hpp"

namespace djrsp {

std::string_view to_string(MuConstruction c) {
    switch (c) {
        case MuConstruction::QubitRotation: return "qubit-rotation";
        case MuConstruction::EquatorialFourier: return "equatorial-fourier";
        case MuConstruction::OrthogonalDesign4: return "orthogonal-design-4";
    }
    return "?";
}

TargetState TargetState::create(std::vector<double> magnitudes, std::vector<double> phases, const Tolerances& tol) {
    const std::size_t d = magnitudes.size();
    if (d < 2) throw Error(ErrorKind::InvalidTarget, "target dimension must be at least 2");
    if (phases.empty()) phases.assign(d, 0.0);
    if (phases.size() != d) throw Error(ErrorKind::InvalidTarget, "phase count does not match magnitude count");
    double sum = 0.0;
    for (double m : magnitudes) {
        if (!std::isfinite(m) || m < 0.0) throw Error(ErrorKind::InvalidTarget, "magnitudes must be finite and >= 0");
        sum += m * m;
    }
    if (std::abs(sum - 1.0) > tol.norm)
        throw Error(ErrorKind::InvalidTarget, "sum of squared magnitudes is " + std::to_string(sum));
    for (double t : phases)
        if (!std::isfinite(t)) throw Error(ErrorKind::InvalidTarget, "phases must be finite");
    if (phases[0] != 0.0) throw Error(ErrorKind::InvalidTarget, "theta_0 must be 0 (global phase convention)");
    return TargetState(std::move(magnitudes), std::move(phases));
}

bool TargetState::is_equatorial(double tol) const {
    const double e = 1.0 / std::sqrt(static_cast<double>(dimension()));
    for (double m : magnitudes_)
        if (std::abs(m - e) > tol) return false;
    return true;
}

AmplitudeShare amplitude_share(const TargetState& target) { return {target.magnitudes()}; }
PhaseShare phase_share(const TargetState& target) { return {target.phases()}; }

CVector target_vector(const TargetState& target) {
    CVector v(target.dimension());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::polar(target.magnitudes()[k], target.phases()[k]);
    return v;
}

void fix_global_phases(std::vector<CVector>& vectors) {
    for (auto& v : vectors) {
        for (const auto& a : v) {
            if (std::abs(a) > 1e-12) {
                const Complex phase = std::conj(a) / std::abs(a);
                for (auto& b : v) b *= phase;
                break;
            }
        }
    }
}

namespace {

bool equatorial(const std::vector<double>& m, double tol) {
    const double e = 1.0 / std::sqrt(static_cast<double>(m.size()));
    for (double x : m)
        if (std::abs(x - e) > tol) return false;
    return true;
}

}  // namespace

MuBasis mu_basis(const AmplitudeShare& share, const std::string& site, const Tolerances& tol) {
    const auto& m = share.magnitudes;
    const std::size_t d = m.size();
    double sum = 0.0;
    for (double x : m) sum += x * x;
    if (d < 2 || std::abs(sum - 1.0) > tol.norm)
        throw Error(ErrorKind::InvalidTarget, "amplitude share is not a normalized magnitude list");

    std::vector<CVector> vectors;
    MuConstruction kind;
    OverlapIndexing indexing;

    if (d == 2) {
        vectors = {{m[0], m[1]}, {m[1], -m[0]}};
        kind = MuConstruction::QubitRotation;
        indexing = OverlapIndexing::Cyclic;
    } else if (equatorial(m, tol.norm)) {
        const double s = 1.0 / std::sqrt(static_cast<double>(d));
        vectors.assign(d, CVector(d));
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t k = 0; k < d; ++k)
                vectors[p][k] = std::polar(
                    s, -2.0 * std::numbers::pi * static_cast<double>((p * k) % d) / static_cast<double>(d));
        kind = MuConstruction::EquatorialFourier;
        indexing = OverlapIndexing::Cyclic;
    } else if (d == 4) {
        // Real orthogonal design of order 4; row p carries |x_{k xor p}|.
        const double a = m[0], b = m[1], c = m[2], e = m[3];
        vectors = {{a, b, c, e}, {b, -a, e, -c}, {c, -e, -a, b}, {e, c, -b, -a}};
        kind = MuConstruction::OrthogonalDesign4;
        indexing = OverlapIndexing::Xor;
    } else {
        throw Error(ErrorKind::BasisNotRealizable,
                    "no amplitude basis for d=" + std::to_string(d) + " with non-equatorial magnitudes");
    }
    fix_global_phases(vectors);
    return MuBasis{MeasurementBasis(site, "mu", std::move(vectors), tol.orthonormality), kind, indexing};
}

MeasurementBasis nu_basis(const PhaseShare& share, const std::string& site) {
    const std::size_t d = share.phases.size();
    if (d < 2) throw Error(ErrorKind::InvalidTarget, "phase share needs at least two phases");
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<CVector> vectors(d, CVector(d));
    for (std::size_t q = 0; q < d; ++q)
        for (std::size_t r = 0; r < d; ++r) {
            const double angle = share.phases[r] + 2.0 * std::numbers::pi * static_cast<double>((r * q) % d) /
                                                       static_cast<double>(d);
            vectors[q][r] = std::polar(s, angle);
        }
    fix_global_phases(vectors);
    return MeasurementBasis(site, "nu", std::move(vectors));
}

double overlap_defect(const MuBasis& mu, const AmplitudeShare& share) {
    const auto& vs = mu.basis.vectors();
    const std::size_t d = vs.size();
    double worst = 0.0;
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t idx = (mu.indexing == OverlapIndexing::Cyclic) ? (k + p) % d : (k ^ p);
            worst = std::max(worst, std::abs(std::abs(vs[p][k]) - share.magnitudes.at(idx)));
        }
    return worst;
}

}  // namespace djrsp
