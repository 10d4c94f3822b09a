#include "djrsp/gates.hpp"

#include <cmath>
#include <numbers>

#include "djrsp/errors.hpp"
#include "djrsp/state_vector.hpp"

namespace djrsp {

namespace {

using Idx = Eigen::Index;

void require_dimension(std::size_t d) {
    if (d < 2) throw Error(ErrorKind::InvalidConfig, "gate dimension must be at least 2");
}

Complex root_of_unity(std::size_t d, long long power) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % static_cast<long long>(d)) /
                         static_cast<double>(d);
    return std::polar(1.0, angle);
}

Matrix fourier(std::size_t d, int sign) {
    Matrix m(static_cast<Idx>(d), static_cast<Idx>(d));
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k)
            m(static_cast<Idx>(r), static_cast<Idx>(k)) =
                scale * root_of_unity(d, sign * static_cast<long long>(r * k));
    return m;
}

Matrix matrix2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::HadamardD: return "H";
        case GateKind::PhasePairD: return "P";
        case GateKind::CnotD: return "C";
        case GateKind::CnotPrimedD: return "C'";
        case GateKind::ControlledU: return "CU";
        case GateKind::CharliePhase: return "P(theta)";
        case GateKind::BobPhase: return "P_B";
        case GateKind::PauliX: return "X";
        case GateKind::PauliY: return "Y";
        case GateKind::PauliZ: return "Z";
        case GateKind::WeylX: return "WX";
        case GateKind::WeylZ: return "WZ";
    }
    return "?";
}

UnitaryOp hadamard(std::size_t d) {
    require_dimension(d);
    return UnitaryOp("H", fourier(d, +1));
}

UnitaryOp bob_phase(std::size_t d) {
    require_dimension(d);
    return UnitaryOp("P_B", fourier(d, -1));
}

UnitaryOp phase_pair(std::size_t d) {
    require_dimension(d);
    const auto n = static_cast<Idx>(d * d);
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) {
            const auto i = static_cast<Idx>(r * d + k);
            m(i, i) = root_of_unity(d, -static_cast<long long>(r * k));
        }
    return UnitaryOp("P", std::move(m));
}

UnitaryOp cnot(std::size_t d) { return cnot(d, d); }

UnitaryOp cnot(std::size_t control_dim, std::size_t target_dim) {
    require_dimension(control_dim);
    require_dimension(target_dim);
    const auto n = static_cast<Idx>(control_dim * target_dim);
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t r = 0; r < control_dim; ++r)
        for (std::size_t k = 0; k < target_dim; ++k)
            m(static_cast<Idx>(r * target_dim + (k + r) % target_dim), static_cast<Idx>(r * target_dim + k)) = 1.0;
    return UnitaryOp("C", std::move(m));
}

UnitaryOp cnot_primed(std::size_t d, std::size_t shift) {
    require_dimension(d);
    if (shift == 0 || shift >= d) throw Error(ErrorKind::InvalidConfig, "C' shift must lie in [1, d-1]");
    const auto n = static_cast<Idx>(d * d);
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t out = (r == 0) ? (k + shift) % d : k;
            m(static_cast<Idx>(r * d + out), static_cast<Idx>(r * d + k)) = 1.0;
        }
    return UnitaryOp("C'", std::move(m));
}

UnitaryOp controlled_u(const ChannelSpec& channel, const LevelPairing& pairing) {
    const std::size_t d = channel.dimension();
    if (pairing.dimension() != d)
        throw Error(ErrorKind::DimensionMismatch, "pairing dimension does not match channel dimension");
    const auto n = static_cast<Idx>(d * d);
    Matrix m = Matrix::Identity(n, n);
    const double a0 = channel.coefficient(0);
    for (std::size_t k = 0; k < d; ++k) {
        const double ak = channel.coefficient(k);
        if (a0 > ak + default_tolerances().channel)
            throw Error(ErrorKind::InvalidChannel, "a_0 > a_" + std::to_string(k));
        const double c = std::min(1.0, a0 / ak);
        // factored so that near-equal coefficients keep their small sine
        const double s = std::sqrt(std::max(0.0, (ak - a0) * (ak + a0))) / ak;
        for (const auto& [r1, r2] : pairing.pairs()) {
            const auto i1 = static_cast<Idx>(r1 * d + k);
            const auto i2 = static_cast<Idx>(r2 * d + k);
            m(i1, i1) = c;
            m(i2, i2) = c;
            m(i2, i1) = s;
            m(i1, i2) = -s;
        }
    }
    return UnitaryOp("CU", std::move(m));
}

UnitaryOp controlled_u(const ChannelSpec& channel, std::size_t shift) {
    return controlled_u(channel, LevelPairing::from_shift(channel.dimension(), shift));
}

UnitaryOp charlie_phase(const std::vector<double>& phases) {
    require_dimension(phases.size());
    const auto d = static_cast<Idx>(phases.size());
    Matrix m = Matrix::Zero(d, d);
    for (Idx r = 0; r < d; ++r) m(r, r) = std::polar(1.0, 2.0 * (phases[static_cast<std::size_t>(r)] - phases[0]));
    return UnitaryOp("P(theta)", std::move(m));
}

UnitaryOp pauli_i() { return UnitaryOp("I", Matrix::Identity(2, 2)); }
UnitaryOp pauli_x() { return UnitaryOp("X", matrix2(0, 1, 1, 0)); }
UnitaryOp pauli_y() { return UnitaryOp("Y", matrix2(0, Complex(0, -1), Complex(0, 1), 0)); }
UnitaryOp pauli_z() { return UnitaryOp("Z", matrix2(1, 0, 0, -1)); }
UnitaryOp i_pauli_y() { return UnitaryOp("iY", matrix2(0, 1, -1, 0)); }

UnitaryOp weyl_shift(std::size_t d) {
    require_dimension(d);
    Matrix m = Matrix::Zero(static_cast<Idx>(d), static_cast<Idx>(d));
    for (std::size_t k = 0; k < d; ++k) m(static_cast<Idx>((k + 1) % d), static_cast<Idx>(k)) = 1.0;
    return UnitaryOp("WX", std::move(m));
}

UnitaryOp weyl_clock(std::size_t d) {
    require_dimension(d);
    Matrix m = Matrix::Zero(static_cast<Idx>(d), static_cast<Idx>(d));
    for (std::size_t k = 0; k < d; ++k) m(static_cast<Idx>(k), static_cast<Idx>(k)) = root_of_unity(d, static_cast<long long>(k));
    return UnitaryOp("WZ", std::move(m));
}

WeylOp weyl(std::size_t d, std::size_t a, std::size_t b) {
    require_dimension(d);
    a %= d;
    b %= d;
    // (X^a Z^b)|k> = e^{2 pi i b k/d} |k + a>
    Matrix m = Matrix::Zero(static_cast<Idx>(d), static_cast<Idx>(d));
    for (std::size_t k = 0; k < d; ++k)
        m(static_cast<Idx>((k + a) % d), static_cast<Idx>(k)) = root_of_unity(d, static_cast<long long>(b * k));
    std::string name = "X^" + std::to_string(a) + "Z^" + std::to_string(b);
    return WeylOp{a, b, UnitaryOp(std::move(name), std::move(m))};
}

std::vector<WeylOp> weyl_corrections(std::size_t d) {
    std::vector<WeylOp> ops;
    ops.reserve(d * d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) ops.push_back(weyl(d, a, b));
    return ops;
}

UnitaryOp make_gate(const GateSpec& spec) {
    switch (spec.kind) {
        case GateKind::HadamardD: return hadamard(spec.d);
        case GateKind::PhasePairD: return phase_pair(spec.d);
        case GateKind::CnotD: return cnot(spec.d);
        case GateKind::CnotPrimedD: return cnot_primed(spec.d, spec.shift);
        case GateKind::CharliePhase: return charlie_phase(spec.phases);
        case GateKind::BobPhase: return bob_phase(spec.d);
        case GateKind::PauliX: return pauli_x();
        case GateKind::PauliY: return pauli_y();
        case GateKind::PauliZ: return pauli_z();
        case GateKind::WeylX: return weyl_shift(spec.d);
        case GateKind::WeylZ: return weyl_clock(spec.d);
        case GateKind::ControlledU: break;
    }
    throw Error(ErrorKind::InvalidConfig, "controlled-U needs a channel; use controlled_u()");
}

bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    const double overlap = std::abs((a.adjoint() * b).trace());
    return std::abs(overlap - static_cast<double>(a.rows())) <= tol;
}

}  // namespace djrsp
