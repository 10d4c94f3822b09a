#include <stdexcept>

#include "djrsp/kernels.hpp"

namespace djrsp::kernels {

namespace {

// Block decomposition of a register: every flat index is base(b) + offset(j)
// where j runs over the local (target) space and b over the complement.
struct Blocks {
    std::vector<std::size_t> offsets;  // one per local index
    std::vector<std::size_t> rest_dims;
    std::vector<std::size_t> rest_strides;
    std::size_t count = 1;

    std::size_t base(std::size_t b) const {
        std::size_t flat = 0;
        for (std::size_t i = rest_dims.size(); i-- > 0;) {
            flat += (b % rest_dims[i]) * rest_strides[i];
            b /= rest_dims[i];
        }
        return flat;
    }
};

Blocks make_blocks(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& targets) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];

    std::vector<bool> is_target(dims.size(), false);
    for (auto t : targets) {
        if (t >= dims.size() || is_target[t]) throw std::invalid_argument("invalid target selection");
        is_target[t] = true;
    }

    Blocks blocks;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (is_target[i]) continue;
        blocks.rest_dims.push_back(dims[i]);
        blocks.rest_strides.push_back(strides[i]);
        blocks.count *= dims[i];
    }

    std::size_t local = 1;
    for (auto t : targets) local *= dims[t];
    blocks.offsets.assign(local, 0);
    for (std::size_t j = 0; j < local; ++j) {
        std::size_t rem = j;
        std::size_t off = 0;
        for (std::size_t k = targets.size(); k-- > 0;) {
            off += (rem % dims[targets[k]]) * strides[targets[k]];
            rem /= dims[targets[k]];
        }
        blocks.offsets[j] = off;
    }
    return blocks;
}

}  // namespace

std::vector<Complex> apply_parallel(std::span<const Complex> in, const SiteSelection& sel,
                                    const Eigen::MatrixXcd& m) {
    const Blocks blocks = make_blocks(sel.dims, sel.targets);
    const std::size_t local = blocks.offsets.size();
    if (static_cast<std::size_t>(m.rows()) != local || in.size() != blocks.count * local)
        throw std::invalid_argument("apply_parallel: size mismatch");

    std::vector<Complex> out(in.size());
    const auto count = static_cast<std::ptrdiff_t>(blocks.count);

#pragma omp parallel if (blocks.count >= kParallelBlockThreshold)
    {
        std::vector<Complex> gathered(local);
#pragma omp for schedule(static)
        for (std::ptrdiff_t b = 0; b < count; ++b) {
            const std::size_t base = blocks.base(static_cast<std::size_t>(b));
            for (std::size_t j = 0; j < local; ++j) gathered[j] = in[base + blocks.offsets[j]];
            for (std::size_t r = 0; r < local; ++r) {
                Complex acc{0.0, 0.0};
                for (std::size_t c = 0; c < local; ++c)
                    acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * gathered[c];
                out[base + blocks.offsets[r]] = acc;
            }
        }
    }
    return out;
}

std::vector<Complex> project_parallel(std::span<const Complex> in, const std::vector<std::size_t>& dims,
                                      std::size_t site, std::span<const Complex> v) {
    const Blocks blocks = make_blocks(dims, {site});
    const std::size_t local = blocks.offsets.size();
    if (v.size() != local || in.size() != blocks.count * local)
        throw std::invalid_argument("project_parallel: size mismatch");

    std::vector<Complex> out(in.size());
    const auto count = static_cast<std::ptrdiff_t>(blocks.count);

#pragma omp parallel for schedule(static) if (blocks.count >= kParallelBlockThreshold)
    for (std::ptrdiff_t b = 0; b < count; ++b) {
        const std::size_t base = blocks.base(static_cast<std::size_t>(b));
        Complex overlap{0.0, 0.0};
        for (std::size_t j = 0; j < local; ++j) overlap += std::conj(v[j]) * in[base + blocks.offsets[j]];
        for (std::size_t j = 0; j < local; ++j) out[base + blocks.offsets[j]] = v[j] * overlap;
    }
    return out;
}

std::vector<double> projection_weights(std::span<const Complex> in, const std::vector<std::size_t>& dims,
                                       std::size_t site, const std::vector<std::vector<Complex>>& basis) {
    const Blocks blocks = make_blocks(dims, {site});
    const std::size_t local = blocks.offsets.size();
    if (in.size() != blocks.count * local) throw std::invalid_argument("projection_weights: size mismatch");

    // Per-block partial sums followed by a serial reduction, so the result
    // does not depend on the thread count.
    std::vector<double> weights(basis.size(), 0.0);
    std::vector<double> partial(blocks.count);
    const auto count = static_cast<std::ptrdiff_t>(blocks.count);
    for (std::size_t q = 0; q < basis.size(); ++q) {
        const auto& v = basis[q];
        if (v.size() != local) throw std::invalid_argument("projection_weights: basis vector length");
#pragma omp parallel for schedule(static) if (blocks.count >= kParallelBlockThreshold)
        for (std::ptrdiff_t b = 0; b < count; ++b) {
            const std::size_t base = blocks.base(static_cast<std::size_t>(b));
            Complex overlap{0.0, 0.0};
            for (std::size_t j = 0; j < local; ++j) overlap += std::conj(v[j]) * in[base + blocks.offsets[j]];
            partial[static_cast<std::size_t>(b)] = std::norm(overlap);
        }
        double w = 0.0;
        for (double x : partial) w += x;
        weights[q] = w;
    }
    return weights;
}

}  // namespace djrsp::kernels
