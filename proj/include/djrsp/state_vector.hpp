#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "djrsp/register_layout.hpp"
#include "djrsp/tolerances.hpp"

namespace djrsp {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

double vector_norm(std::span<const Complex> v);
Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);

/// Normalized pure state over a RegisterLayout. Immutable after
/// construction; every operation returns a new value.
class StateVector {
public:
    /// Throws NonNormalized if | ||amplitudes|| - 1 | exceeds `norm_tol`,
    /// DimensionMismatch on a length mismatch.
    StateVector(RegisterLayout layout, CVector amplitudes,
                double norm_tol = default_tolerances().norm);

    struct Normalized;
    /// Renormalizes an arbitrary nonzero vector and reports the constant that
    /// was applied (1/||v||).
    static Normalized normalize(RegisterLayout layout, CVector amplitudes);

    static StateVector basis_state(RegisterLayout layout, const std::vector<std::size_t>& digits);

    const RegisterLayout& layout() const noexcept { return layout_; }
    const CVector& amplitudes() const noexcept { return amplitudes_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    Complex amplitude(const std::vector<std::size_t>& digits) const;
    double norm() const { return vector_norm(amplitudes_); }

private:
    RegisterLayout layout_;
    CVector amplitudes_;
};

struct StateVector::Normalized {
    StateVector state;
    double constant;
};

}  // namespace djrsp
