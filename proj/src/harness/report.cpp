#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

#include "djrsp/harness.hpp"

#ifndef DJRSP_VERSION
#define DJRSP_VERSION "0.0.0"
#endif

namespace djrsp::harness {

using json = nlohmann::ordered_json;

std::string_view version() { return DJRSP_VERSION; }

namespace {

struct CellOutcome {
    std::optional<RunResult> run;
    std::vector<ClaimResult> claims;
    std::vector<FindingRow> findings;
};

BranchRow row_from_leaf(const Leaf& leaf) {
    BranchRow row;
    row.path = to_string(leaf.record.outcome_path);
    row.probability = leaf.record.probability;
    row.correction = leaf.record.applied_correction.value_or("");
    row.fidelity = leaf.record.fidelity;
    row.pruned = leaf.record.pruned;
    row.residual_entanglement = leaf.residual_entanglement;
    return row;
}

std::vector<BranchRow> sample_rows(const ProtocolRunner& runner, const ProtocolTranscript& t, std::size_t shots,
                                   std::uint64_t seed, std::size_t cell_index, SampleSummary& summary) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(cell_index)};
    std::mt19937_64 rng(seq);
    std::map<std::string, std::size_t> counts;
    std::size_t f0 = 0;
    for (std::size_t i = 0; i < shots; ++i) {
        const Leaf leaf = runner.sample(rng);
        ++counts[to_string(leaf.record.outcome_path)];
        if (leaf.record.outcome_path.front().index == 0) ++f0;
    }

    const double n = static_cast<double>(shots);
    summary.shots = shots;
    summary.seed = seed;
    summary.empirical_p_f0 = static_cast<double>(f0) / n;

    std::vector<BranchRow> rows;
    for (const auto& leaf : t.leaves) {
        if (leaf.record.pruned) continue;
        BranchRow row = row_from_leaf(leaf);
        const auto it = counts.find(row.path);
        const std::size_t c = it == counts.end() ? 0 : it->second;
        if (it != counts.end()) counts.erase(it);
        const double p = leaf.record.probability;
        const double sd = std::sqrt(n * p * (1.0 - p));
        row.count = c;
        row.expected_probability = p;
        row.probability = static_cast<double>(c) / n;
        row.z_score = sd > 0.0 ? (static_cast<double>(c) - n * p) / sd : 0.0;
        summary.max_abs_z = std::max(summary.max_abs_z, std::abs(*row.z_score));
        rows.push_back(std::move(row));
    }
    // sampled paths the enumeration pruned
    for (const auto& [path, c] : counts) {
        BranchRow row;
        row.path = path;
        row.count = c;
        row.probability = static_cast<double>(c) / n;
        row.expected_probability = 0.0;
        row.pruned = true;
        rows.push_back(std::move(row));
    }
    return rows;
}

CellOutcome run_cell(const RunRequest& request, const Cell& cell, std::size_t index) {
    CellOutcome out;
    if (cell.error) {
        out.findings.push_back({cell.key, std::string(to_string(*cell.error)), "", cell.error_detail});
        return out;
    }
    try {
        const ProtocolRunner runner(*cell.config);
        const auto t = runner.enumerate();
        RunResult r{cell.key, t.config, t.gate_log, t.conformance, {}, t.summary, std::nullopt};
        if (request.mode == Mode::Sample) {
            SampleSummary s;
            r.branches = sample_rows(runner, t, request.shots, request.seed, index, s);
            r.sampling = s;
        } else {
            for (const auto& leaf : t.leaves) r.branches.push_back(row_from_leaf(leaf));
        }
        for (const auto& f : t.findings)
            out.findings.push_back({cell.key, std::string(to_string(f.kind)), f.path, f.detail});
        if (request.mode == Mode::Claims) out.claims = claim_suite(t, cell.key);
        out.run = std::move(r);
    } catch (const Error& e) {
        out.findings.push_back({cell.key, std::string(to_string(e.kind())), "", e.what()});
    }
    return out;
}

std::string number17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json target_json(const TargetInput& t) {
    return json{{"magnitudes", t.magnitudes}, {"phases", t.phases}};
}

json request_json(const RunRequest& r) {
    json targets = json::array();
    for (const auto& t : r.targets) targets.push_back(target_json(t));
    json pairing = nullptr;
    if (r.pairing) {
        pairing = json::array();
        for (const auto& [a, b] : *r.pairing) pairing.push_back({a, b});
    }
    return json{
        {"mode", to_string(r.mode)},
        {"dims", r.dims},
        {"channels", r.channels},
        {"a0_grid", r.a0_grid},
        {"targets", targets},
        {"random_targets", r.random_targets},
        {"equatorial", r.equatorial},
        {"seed", r.seed},
        {"shots", r.shots},
        {"pairing", pairing},
        {"shift", r.shift ? json(*r.shift) : json(nullptr)},
        {"engine", to_string(r.engine)},
        {"phase_rule", to_string(r.phase_rule)},
        {"format", to_string(r.format)},
        {"tol", r.tol.success},
    };
}

json config_json(const std::string& key, const ProtocolConfig& c) {
    return json{
        {"key", key},
        {"d", c.d()},
        {"channel", c.channel.coefficients()},
        {"target", json{{"magnitudes", c.target.magnitudes()}, {"phases", c.target.phases()}}},
        {"engine", to_string(c.engine)},
        {"phase_rule", to_string(c.charlie_phase_rule)},
        {"shift", c.shift},
        {"pairing", c.pairing().to_string()},
    };
}

json run_json(const RunResult& r) {
    json log = json::array();
    for (const auto& e : r.gate_log)
        log.push_back({{"branch", e.branch}, {"actor", e.actor}, {"kind", e.kind}, {"name", e.name},
                       {"sites", e.sites}, {"detail", e.detail}});
    json branches = json::array();
    for (const auto& b : r.branches) {
        json row{{"path", b.path},
                 {"probability", b.probability},
                 {"correction", b.correction},
                 {"fidelity", optional_number(b.fidelity)},
                 {"pruned", b.pruned},
                 {"residual_entanglement", b.residual_entanglement}};
        if (b.count) {
            row["count"] = *b.count;
            row["expected_probability"] = optional_number(b.expected_probability);
            row["z_score"] = optional_number(b.z_score);
        }
        branches.push_back(std::move(row));
    }
    const auto& s = r.summary;
    json summary{{"total_success_probability", s.total_success_probability},
                 {"min_fidelity", s.min_fidelity},
                 {"mean_fidelity", s.mean_fidelity},
                 {"leaf_probability_sum", s.leaf_probability_sum},
                 {"p_f0", s.p_f0},
                 {"p_f1", s.p_f1},
                 {"leaf_count", s.leaf_count},
                 {"pruned_count", s.pruned_count},
                 {"failed_count", s.failed_count}};
    if (r.sampling)
        summary["sampling"] = {{"shots", r.sampling->shots},
                               {"seed", r.sampling->seed},
                               {"empirical_p_f0", r.sampling->empirical_p_f0},
                               {"max_abs_z", r.sampling->max_abs_z}};
    const auto& c = r.conformance;
    json conformance{{"stated_prefactor", c.stated_prefactor},
                     {"required_prefactor", c.required_prefactor},
                     {"magnitude_residual", c.magnitude_residual},
                     {"signed_overlap", c.signed_overlap},
                     {"closed_form_support", c.closed_form_support},
                     {"simulated_support", c.simulated_support}};
    return json{{"config", config_json(r.key, r.config)},
                {"gate_log", std::move(log)},
                {"conformance", std::move(conformance)},
                {"branches", std::move(branches)},
                {"summary", std::move(summary)}};
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

std::string csv_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + number17(v[i]);
    return s;
}

}  // namespace

Report execute(const RunRequest& request) {
    const auto cells = expand_cells(request);
    std::vector<CellOutcome> outcomes(cells.size());
    std::vector<std::string> failures(cells.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cells.size()); ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            outcomes[k] = run_cell(request, cells[k], k);
        } catch (const std::exception& e) {
            failures[k] = e.what();
        }
    }
    for (const auto& f : failures)
        if (!f.empty()) throw std::runtime_error(f);

    Report report{std::string(version()), request, {}, {}, {}};
    for (auto& o : outcomes) {
        if (o.run) report.runs.push_back(std::move(*o.run));
        for (auto& c : o.claims) report.claims.push_back(std::move(c));
        for (auto& f : o.findings) report.findings.push_back(std::move(f));
    }
    return report;
}

std::string render_json(const Report& report) {
    json runs = json::array();
    for (const auto& r : report.runs) runs.push_back(run_json(r));
    json claims = json::array();
    for (const auto& c : report.claims) {
        json row{{"id", c.id},
                 {"cell", c.cell},
                 {"expected", c.expected},
                 {"measured", c.measured},
                 {"residual", c.residual},
                 {"status", to_string(c.status)}};
        if (c.identity_value) row["identity_value"] = *c.identity_value;
        if (c.identity_residual) row["identity_residual"] = *c.identity_residual;
        if (!c.note.empty()) row["note"] = c.note;
        claims.push_back(std::move(row));
    }
    json findings = json::array();
    for (const auto& f : report.findings)
        findings.push_back({{"cell", f.cell}, {"kind", f.kind}, {"path", f.path}, {"detail", f.detail}});
    const json doc{{"version", report.version},
                   {"request", request_json(report.request)},
                   {"runs", std::move(runs)},
                   {"claims", std::move(claims)},
                   {"findings", std::move(findings)}};
    return doc.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
    std::string out = "d,channel,target,path,probability,correction,fidelity\n";
    for (const auto& r : report.runs) {
        const auto& c = r.config;
        const std::string channel = csv_quote(csv_list(c.channel.coefficients()));
        const std::string target =
            csv_quote(csv_list(c.target.magnitudes()) + "@" + csv_list(c.target.phases()));
        for (const auto& b : r.branches) {
            out += std::to_string(c.d()) + "," + channel + "," + target + "," + b.path + "," +
                   number17(b.probability) + "," + b.correction + "," +
                   (b.fidelity ? number17(*b.fidelity) : std::string()) + "\n";
        }
    }
    return out;
}

std::string render(const Report& report, Format format) {
    return format == Format::Json ? render_json(report) : render_csv(report);
}

int run(const RunRequest& request) {
    std::string text;
    try {
        text = render(execute(request), request.format);
    } catch (const Error& e) {
        std::cerr << "djrsp: " << e.what() << "\n";
        return e.kind() == ErrorKind::IoFailure ? kExitIoFailure : kExitInvalidRequest;
    } catch (const std::exception& e) {
        std::cerr << "djrsp: " << e.what() << "\n";
        return kExitInvalidRequest;
    }

    if (!request.out) {
        std::cout << text << std::flush;
        return std::cout ? kExitOk : kExitIoFailure;
    }
    std::ofstream file(*request.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        std::cerr << "djrsp: cannot open '" << *request.out << "' for writing\n";
        return kExitIoFailure;
    }
    file << text;
    file.close();
    if (!file) {
        std::cerr << "djrsp: failed writing '" << *request.out << "'\n";
        return kExitIoFailure;
    }
    return kExitOk;
}

}  // namespace djrsp::harness
