#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "djrsp/state_vector.hpp"
#include "djrsp/tolerances.hpp"
#include "djrsp/unitary_op.hpp"

namespace djrsp {

/// Orthonormal basis for one site. Validated on construction.
class MeasurementBasis {
public:
    MeasurementBasis(std::string site, std::string name, std::vector<CVector> vectors,
                     double tol = default_tolerances().orthonormality);

    static MeasurementBasis computational(std::string site, std::size_t dimension);

    const std::string& site() const noexcept { return site_; }
    const std::string& name() const noexcept { return name_; }
    const std::vector<CVector>& vectors() const noexcept { return vectors_; }
    std::size_t size() const noexcept { return vectors_.size(); }

    MeasurementBasis on(std::string site) const;

private:
    std::string site_;
    std::string name_;
    std::vector<CVector> vectors_;
};

/// max_ij | <v_i|v_j> - delta_ij |
double orthonormality_defect(const std::vector<CVector>& vectors);

struct Outcome {
    std::string site;
    std::string basis;
    std::size_t index = 0;

    bool operator==(const Outcome&) const = default;
};

using OutcomePath = std::vector<Outcome>;

std::string to_string(const OutcomePath& path);
/// Orders paths by their outcome indices, then by length.
bool path_less(const OutcomePath& a, const OutcomePath& b);

struct BranchRecord {
    OutcomePath outcome_path;
    double probability = 0.0;
    std::optional<StateVector> post_state;  // absent when pruned
    bool pruned = false;
    std::optional<std::string> applied_correction;
    std::optional<double> fidelity;
};

/// One record per basis vector. Probabilities below the configured floor are
/// flagged as pruned and carry no post-state.
std::vector<BranchRecord> measure_exhaustive(const StateVector& state, const MeasurementBasis& basis,
                                             const Tolerances& tol = default_tolerances());

/// Collapse onto a single outcome. Throws InvalidConfig if the outcome has
/// probability below the floor.
BranchRecord collapse(const StateVector& state, const MeasurementBasis& basis, std::size_t outcome,
                      const Tolerances& tol = default_tolerances());

StateVector embed_and_apply(const StateVector& state, const UnitaryOp& op);

Matrix reduced_density(const StateVector& state, std::string_view site);
double purity(const Matrix& rho);

/// Pure state of `site`, defined up to global phase. Throws
/// ResidualEntanglement if the site is not in a product state with the rest.
CVector site_state(const StateVector& state, std::string_view site,
                   const Tolerances& tol = default_tolerances());

/// |<reference|site>|^2 for a site in a product state with everything else.
/// Throws ResidualEntanglement otherwise.
double fidelity(const StateVector& state, std::span<const Complex> reference, std::string_view site,
                const Tolerances& tol = default_tolerances());

}  // namespace djrsp
