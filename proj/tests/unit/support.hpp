#pragma once

#include <cmath>
#include <random>

#include "djrsp/state_vector.hpp"
#include "djrsp/unitary_op.hpp"

namespace testing {

using djrsp::Complex;
using djrsp::CVector;
using djrsp::Matrix;

inline double uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline CVector random_unit_vector(std::size_t n, std::mt19937_64& g) {
    std::normal_distribution<double> n01;
    CVector v(n);
    double s = 0.0;
    for (auto& a : v) {
        a = {n01(g), n01(g)};
        s += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(s);
    return v;
}

// Haar-ish unitary from the QR decomposition of a Gaussian matrix.
inline Matrix random_unitary(std::size_t n, std::mt19937_64& g) {
    std::normal_distribution<double> n01;
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = {n01(g), n01(g)};
    Eigen::HouseholderQR<Matrix> qr(m);
    return qr.householderQ() * Matrix::Identity(n, n);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline double max_abs_diff(const CVector& a, const CVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace testing
