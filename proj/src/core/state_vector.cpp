#include "djrsp/state_vector.hpp"

#include <cmath>

#include "djrsp/errors.hpp"

namespace djrsp {

double vector_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return std::sqrt(s);
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
    if (bra.size() != ket.size()) throw Error(ErrorKind::DimensionMismatch, "inner product of unequal lengths");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
    return s;
}

StateVector::StateVector(RegisterLayout layout, CVector amplitudes, double norm_tol)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != layout_.total_dimension())
        throw Error(ErrorKind::DimensionMismatch,
                    "amplitude count " + std::to_string(amplitudes_.size()) + " != total dimension " +
                        std::to_string(layout_.total_dimension()));
    const double n = vector_norm(amplitudes_);
    if (std::abs(n - 1.0) > norm_tol)
        throw Error(ErrorKind::NonNormalized, "state norm " + std::to_string(n));
}

StateVector::Normalized StateVector::normalize(RegisterLayout layout, CVector amplitudes) {
    const double n = vector_norm(amplitudes);
    if (n == 0.0) throw Error(ErrorKind::NonNormalized, "cannot normalize the zero vector");
    for (auto& a : amplitudes) a /= n;
    return {StateVector(std::move(layout), std::move(amplitudes)), 1.0 / n};
}

StateVector StateVector::basis_state(RegisterLayout layout, const std::vector<std::size_t>& digits) {
    CVector amps(layout.total_dimension(), Complex{0.0, 0.0});
    amps[layout.flat_index(digits)] = 1.0;
    return StateVector(std::move(layout), std::move(amps));
}

Complex StateVector::amplitude(const std::vector<std::size_t>& digits) const {
    return amplitudes_[layout_.flat_index(digits)];
}

}  // namespace djrsp
