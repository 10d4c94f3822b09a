// Reference kernels: every output amplitude is computed independently from
// its digit decomposition. Slow, but a direct transcription of the
// definition of an embedded operator.

#include <stdexcept>

#include "djrsp/kernels.hpp"

namespace djrsp::kernels {

namespace {

std::vector<std::size_t> to_digits(std::size_t flat, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> d(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        d[i] = flat % dims[i];
        flat /= dims[i];
    }
    return d;
}

std::size_t from_digits(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& dims) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) flat = flat * dims[i] + digits[i];
    return flat;
}

std::size_t total(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    return n;
}

}  // namespace

std::size_t local_dimension(const SiteSelection& sel) {
    std::size_t m = 1;
    for (auto t : sel.targets) m *= sel.dims.at(t);
    return m;
}

std::vector<Complex> apply_serial(std::span<const Complex> in, const SiteSelection& sel,
                                  const Eigen::MatrixXcd& m) {
    const std::size_t n = total(sel.dims);
    const std::size_t local = local_dimension(sel);
    if (in.size() != n || static_cast<std::size_t>(m.rows()) != local)
        throw std::invalid_argument("apply_serial: size mismatch");

    std::vector<std::size_t> target_dims;
    for (auto t : sel.targets) target_dims.push_back(sel.dims[t]);

    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto digits = to_digits(i, sel.dims);
        std::vector<std::size_t> row_digits;
        for (auto t : sel.targets) row_digits.push_back(digits[t]);
        const std::size_t row = from_digits(row_digits, target_dims);

        Complex acc{0.0, 0.0};
        for (std::size_t col = 0; col < local; ++col) {
            auto col_digits = to_digits(col, target_dims);
            auto src = digits;
            for (std::size_t k = 0; k < sel.targets.size(); ++k) src[sel.targets[k]] = col_digits[k];
            acc += m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) * in[from_digits(src, sel.dims)];
        }
        out[i] = acc;
    }
    return out;
}

std::vector<Complex> project_serial(std::span<const Complex> in, const std::vector<std::size_t>& dims,
                                    std::size_t site, std::span<const Complex> v) {
    const std::size_t n = total(dims);
    if (in.size() != n || v.size() != dims.at(site)) throw std::invalid_argument("project_serial: size mismatch");
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto digits = to_digits(i, dims);
        Complex overlap{0.0, 0.0};
        for (std::size_t j = 0; j < v.size(); ++j) {
            auto src = digits;
            src[site] = j;
            overlap += std::conj(v[j]) * in[from_digits(src, dims)];
        }
        out[i] = v[digits[site]] * overlap;
    }
    return out;
}

}  // namespace djrsp::kernels
