#include <iostream>

#include "CLI11.hpp"
#include "djrsp/harness.hpp"

using namespace djrsp;
using namespace djrsp::harness;

int main(int argc, char** argv) {
    CLI::App app{"Joint remote state preparation: branch enumeration, sampling and claim checks"};
    app.set_version_flag("--version", std::string(version()));

    std::string mode;
    std::optional<std::size_t> d;
    std::string dims;
    std::vector<std::string> channels;
    std::vector<std::string> targets;
    std::string a0_grid;
    std::string pairing;
    std::optional<std::size_t> shift;
    std::string engine = "general-d";
    std::string phase_rule = "match-f";
    std::string format = "json";
    RunRequest request;
    double tol = request.tol.success;

    app.add_option("mode", mode, "enumerate | sample | sweep | claims")->required();
    app.add_option("--d", d, "qudit dimension");
    app.add_option("--dims", dims, "comma-separated dimension grid, e.g. 3,4,5");
    app.add_option("--channel", channels, "channel coefficients a_0,...,a_{d-1} (repeatable)");
    app.add_option("--a0-grid", a0_grid, "smallest channel coefficients; the rest share the remaining weight");
    app.add_option("--target", targets, "target magnitudes@phases, e.g. 0.6,0.8@0,1.0 (repeatable)");
    app.add_option("--random-targets", request.random_targets, "number of seeded random targets per dimension");
    app.add_flag("--equatorial", request.equatorial, "random targets with equal magnitudes");
    app.add_option("--seed", request.seed, "seed for sampling and random targets");
    app.add_option("--shots", request.shots, "samples per cell in sample mode");
    app.add_option("--pairing", pairing, "controlled-U level pairs, e.g. 0-1,2-3");
    app.add_option("--shift", shift, "C' shift s; without --pairing also pairs r with r+s");
    app.add_option("--engine", engine, "general-d | exact-d2");
    app.add_option("--phase-rule", phase_rule, "match-f | always | never | f1-only");
    app.add_option("--format", format, "json | csv");
    app.add_option("--out", request.out, "output file (default stdout)");
    app.add_option("--tol", tol, "leaf success tolerance: fidelity >= 1 - tol");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidRequest;
    }

    try {
        request.mode = parse_mode(mode);
        request.format = parse_format(format);
        request.engine = parse_engine(engine);
        request.phase_rule = parse_phase_rule(phase_rule);
        request.tol.success = tol;
        request.shift = shift;
        for (const auto& c : channels) request.channels.push_back(parse_list(c));
        for (const auto& t : targets) request.targets.push_back(parse_target(t));
        if (!a0_grid.empty()) request.a0_grid = parse_list(a0_grid);
        if (!pairing.empty()) request.pairing = parse_pairs(pairing);
        if (!dims.empty())
            for (double v : parse_list(dims)) {
                if (v < 2 || v != static_cast<double>(static_cast<std::size_t>(v)))
                    throw Error(ErrorKind::InvalidRequest, "--dims entries must be integers >= 2");
                request.dims.push_back(static_cast<std::size_t>(v));
            }
        if (d) request.dims.push_back(*d);
        if (request.dims.empty() && !request.channels.empty()) request.dims.push_back(request.channels.front().size());
        request.validate();
    } catch (const Error& e) {
        std::cerr << "djrsp: " << e.what() << "\n";
        return kExitInvalidRequest;
    }
    return run(request);
}
