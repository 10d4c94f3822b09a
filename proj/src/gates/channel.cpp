#include <algorithm>
#include <cmath>
#include <set>

#include "djrsp/errors.hpp"
#include "djrsp/gates.hpp"

namespace djrsp {

ChannelSpec ChannelSpec::create(std::vector<double> c, const Tolerances& tol) {
    if (c.size() < 2) throw Error(ErrorKind::InvalidChannel, "channel needs at least two coefficients");
    double sum = 0.0;
    for (double a : c) {
        if (!std::isfinite(a) || a <= 0.0)
            throw Error(ErrorKind::InvalidChannel, "channel coefficients must be finite and positive");
        sum += a * a;
    }
    if (std::abs(sum - 1.0) > tol.channel)
        throw Error(ErrorKind::InvalidChannel, "sum of squared coefficients is " + std::to_string(sum));
    for (std::size_t k = 1; k < c.size(); ++k)
        if (c[0] > c[k] + tol.channel)
            throw Error(ErrorKind::InvalidChannel, "a_0 must not exceed a_" + std::to_string(k));
    return ChannelSpec(std::move(c));
}

ChannelSpec ChannelSpec::with_smallest(std::size_t d, double a0, const Tolerances& tol) {
    if (d < 2) throw Error(ErrorKind::InvalidChannel, "dimension must be at least 2");
    if (!(a0 > 0.0) || a0 * a0 * static_cast<double>(d) > 1.0 + tol.channel)
        throw Error(ErrorKind::InvalidChannel, "a_0 must lie in (0, 1/sqrt(d)]");
    const double rest = std::sqrt(std::max(0.0, (1.0 - a0 * a0) / static_cast<double>(d - 1)));
    std::vector<double> c(d, rest);
    c[0] = std::min(a0, rest);
    return create(std::move(c), tol);
}

ChannelSpec ChannelSpec::uniform(std::size_t d) {
    return create(std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

bool ChannelSpec::is_uniform(double tol) const {
    const auto [lo, hi] = std::minmax_element(coefficients_.begin(), coefficients_.end());
    return *hi - *lo <= tol;
}

LevelPairing LevelPairing::from_shift(std::size_t d, std::size_t shift) {
    if (d < 2 || shift == 0 || shift >= d)
        throw Error(ErrorKind::UnpairablePairing, "shift must lie in [1, d-1]");
    if ((2 * shift) % d != 0)
        throw Error(ErrorKind::UnpairablePairing,
                    "r <-> r+" + std::to_string(shift) + " does not partition " + std::to_string(d) +
                        " levels into disjoint pairs; supply an explicit pairing");
    std::vector<Pair> pairs;
    for (std::size_t r = 0; r < d; ++r)
        if (r < (r + shift) % d) pairs.emplace_back(r, (r + shift) % d);
    return LevelPairing(d, std::move(pairs));
}

LevelPairing LevelPairing::explicit_pairs(std::size_t d, std::vector<Pair> pairs) {
    std::set<std::size_t> used;
    for (const auto& [r1, r2] : pairs) {
        if (r1 >= d || r2 >= d || r1 == r2)
            throw Error(ErrorKind::UnpairablePairing, "pair (" + std::to_string(r1) + "," + std::to_string(r2) +
                                                          ") is out of range or degenerate");
        if (!used.insert(r1).second || !used.insert(r2).second)
            throw Error(ErrorKind::UnpairablePairing, "pairs overlap at level " +
                                                          std::to_string(used.count(r1) ? r1 : r2));
    }
    if (pairs.empty()) throw Error(ErrorKind::UnpairablePairing, "empty pairing");
    return LevelPairing(d, std::move(pairs));
}

std::string LevelPairing::to_string() const {
    std::string s;
    for (const auto& [a, b] : pairs_) {
        if (!s.empty()) s += ',';
        s += std::to_string(a) + "-" + std::to_string(b);
    }
    return s;
}

}  // namespace djrsp
