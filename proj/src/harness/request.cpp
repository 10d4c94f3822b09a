#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "djrsp/harness.hpp"

namespace djrsp::harness {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidRequest, what); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        invalid("not a number: '" + std::string(s) + "'");
    return v;
}

std::size_t parse_index(std::string_view s) {
    s = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        invalid("not a level index: '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
    return s;
}

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

TargetInput random_target(std::size_t d, bool equatorial, std::mt19937_64& gen) {
    TargetInput t;
    t.magnitudes.assign(d, 1.0 / std::sqrt(static_cast<double>(d)));
    if (!equatorial) {
        // exponential weights give a uniform point on the probability simplex
        double total = 0.0;
        for (auto& m : t.magnitudes) {
            m = -std::log(1.0 - uniform01(gen));
            total += m;
        }
        for (auto& m : t.magnitudes) m = std::sqrt(m / total);
    }
    t.phases.assign(d, 0.0);
    for (std::size_t r = 1; r < d; ++r) t.phases[r] = 2.0 * std::numbers::pi * uniform01(gen);
    return t;
}

TargetState make_target(const TargetInput& t, const Tolerances& tol) {
    return TargetState::create(t.magnitudes, t.phases, tol);
}

}  // namespace

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::Enumerate: return "enumerate";
        case Mode::Sample: return "sample";
        case Mode::Sweep: return "sweep";
        case Mode::Claims: return "claims";
    }
    return "?";
}

std::string_view to_string(Format f) { return f == Format::Json ? "json" : "csv"; }

Mode parse_mode(std::string_view s) {
    for (auto m : {Mode::Enumerate, Mode::Sample, Mode::Sweep, Mode::Claims})
        if (to_string(m) == s) return m;
    invalid("unknown mode '" + std::string(s) + "'");
}

Format parse_format(std::string_view s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    invalid("unknown format '" + std::string(s) + "'");
}

std::vector<double> parse_list(std::string_view text) {
    if (trim(text).empty()) invalid("empty number list");
    std::vector<double> out;
    for (auto part : split(text, ',')) out.push_back(parse_double(part));
    return out;
}

TargetInput parse_target(std::string_view text) {
    const auto at = text.find('@');
    TargetInput t;
    t.magnitudes = parse_list(text.substr(0, at));
    if (at != std::string_view::npos) {
        t.phases = parse_list(text.substr(at + 1));
        if (t.phases.size() != t.magnitudes.size())
            invalid("target '" + std::string(text) + "': phase list length differs from magnitude list");
    }
    return t;
}

std::vector<LevelPairing::Pair> parse_pairs(std::string_view text) {
    if (trim(text).empty()) invalid("empty pairing");
    std::vector<LevelPairing::Pair> pairs;
    for (auto part : split(text, ',')) {
        const auto ends = split(part, '-');
        if (ends.size() != 2) invalid("pairing entry '" + std::string(part) + "' is not of the form r-s");
        pairs.emplace_back(parse_index(ends[0]), parse_index(ends[1]));
    }
    return pairs;
}

std::vector<LevelPairing::Pair> default_pairs(std::size_t d) {
    std::vector<LevelPairing::Pair> pairs;
    if (d % 2 == 0) {
        for (std::size_t r = 0; r < d / 2; ++r) pairs.emplace_back(r, r + d / 2);
    } else {
        for (std::size_t r = 0; r + 1 < d; r += 2) pairs.emplace_back(r, r + 1);
    }
    return pairs;
}

void RunRequest::validate() const {
    if (dims.empty()) invalid("no dimension given (--d or --dims)");
    for (auto d : dims)
        if (d < 2) invalid("dimension must be at least 2");
    if (channels.empty() && a0_grid.empty()) invalid("no channel given (--channel or --a0-grid)");
    if (targets.empty() && random_targets == 0) invalid("no target given (--target or --random-targets)");
    if (mode == Mode::Sample && shots == 0) invalid("--shots must be positive");
    if (engine == Engine::ExactD2 && std::any_of(dims.begin(), dims.end(), [](auto d) { return d != 2; }))
        invalid("engine exact-d2 only supports d = 2");
    if (mode == Mode::Sweep) {
        const bool grid = !a0_grid.empty() || dims.size() > 1 || random_targets > 0 || channels.size() > 1 ||
                          targets.size() > 1;
        if (!grid) invalid("sweep needs at least one grid (--a0-grid, --dims, --random-targets or repeated values)");
    }
    if (!(tol.success > 0.0 && tol.success < 1.0)) invalid("--tol must lie in (0, 1)");
    for (const auto& c : channels) {
        if (std::find(dims.begin(), dims.end(), c.size()) == dims.end())
            invalid("channel '" + join(c) + "' does not match any requested dimension");
        try {
            (void)ChannelSpec::create(c, tol);
        } catch (const Error& e) {
            throw;
        }
    }
    for (const auto& t : targets) {
        if (std::find(dims.begin(), dims.end(), t.magnitudes.size()) == dims.end())
            invalid("target '" + join(t.magnitudes) + "' does not match any requested dimension");
        try {
            (void)make_target(t, tol);
        } catch (const Error& e) {
            throw;
        }
    }
}

std::vector<Cell> expand_cells(const RunRequest& request) {
    request.validate();
    std::vector<std::size_t> dims = request.dims;
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

    std::vector<Cell> cells;
    for (const auto d : dims) {
        std::vector<std::vector<double>> channels;
        for (const auto& c : request.channels)
            if (c.size() == d) channels.push_back(c);
        for (const double a0 : request.a0_grid) {
            try {
                channels.push_back(ChannelSpec::with_smallest(d, a0, request.tol).coefficients());
            } catch (const Error& e) {
                Cell cell;
                cell.d = d;
                cell.key = "d=" + std::to_string(d) + ";a0=" + format_number(a0);
                cell.error = e.kind();
                cell.error_detail = e.what();
                cells.push_back(std::move(cell));
            }
        }

        std::vector<TargetInput> targets;
        for (const auto& t : request.targets)
            if (t.magnitudes.size() == d) targets.push_back(t);
        std::seed_seq seq{static_cast<std::uint32_t>(request.seed), static_cast<std::uint32_t>(request.seed >> 32),
                          static_cast<std::uint32_t>(d)};
        std::mt19937_64 gen(seq);
        for (std::size_t i = 0; i < request.random_targets; ++i)
            targets.push_back(random_target(d, request.equatorial, gen));

        for (const auto& channel : channels) {
            for (const auto& target : targets) {
                Cell cell;
                cell.d = d;
                cell.channel = channel;
                cell.target = target;
                cell.key = "d=" + std::to_string(d) + ";channel=" + join(channel) + ";target=" +
                           join(target.magnitudes) + "@" +
                           join(target.phases.empty() ? std::vector<double>(d, 0.0) : target.phases);
                try {
                    ProtocolConfig config{.channel = ChannelSpec::create(channel, request.tol),
                                          .target = make_target(target, request.tol),
                                          .shift = request.shift.value_or(1),
                                          .engine = request.engine,
                                          .cu_pairing = std::nullopt,
                                          .charlie_phase_rule = request.phase_rule,
                                          .tol = request.tol};
                    if (request.pairing)
                        config.cu_pairing = LevelPairing::explicit_pairs(d, *request.pairing);
                    else if (!request.shift)
                        config.cu_pairing = LevelPairing::explicit_pairs(d, default_pairs(d));
                    config.validate();
                    (void)config.pairing();
                    cell.config = std::move(config);
                } catch (const Error& e) {
                    cell.error = e.kind();
                    cell.error_detail = e.what();
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

}  // namespace djrsp::harness
