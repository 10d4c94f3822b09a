#pragma once

// Amplitude kernels over a flat row-major register. Each kernel has a
// straightforward serial reference (digit decomposition per amplitude) and a
// block-structured OpenMP version; tests hold them to agreement and
// bench/ compares their throughput.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace djrsp::kernels {

using Complex = std::complex<double>;

struct SiteSelection {
    std::vector<std::size_t> dims;     // all site dimensions, most significant first
    std::vector<std::size_t> targets;  // ordered target site indices
};

std::size_t local_dimension(const SiteSelection& sel);

// out = (M on targets) (x) I elsewhere, applied to `in`.
std::vector<Complex> apply_serial(std::span<const Complex> in, const SiteSelection& sel,
                                  const Eigen::MatrixXcd& m);
std::vector<Complex> apply_parallel(std::span<const Complex> in, const SiteSelection& sel,
                                    const Eigen::MatrixXcd& m);

// out = (|v><v| on a single site) (x) I elsewhere. Not renormalized.
std::vector<Complex> project_serial(std::span<const Complex> in, const std::vector<std::size_t>& dims,
                                    std::size_t site, std::span<const Complex> v);
std::vector<Complex> project_parallel(std::span<const Complex> in, const std::vector<std::size_t>& dims,
                                      std::size_t site, std::span<const Complex> v);

// Squared norms of every projection onto the rows of `basis` (one per basis
// vector), computed in one pass.
std::vector<double> projection_weights(std::span<const Complex> in, const std::vector<std::size_t>& dims,
                                       std::size_t site, const std::vector<std::vector<Complex>>& basis);

// Below this many independent blocks the parallel kernels stay serial.
inline constexpr std::size_t kParallelBlockThreshold = 2048;

}  // namespace djrsp::kernels
