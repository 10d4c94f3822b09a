#include "doctest.h"
#include "djrsp/errors.hpp"
#include "djrsp/harness.hpp"

using namespace djrsp;
using namespace djrsp::harness;

namespace {

RunRequest qubit_request(Mode mode) {
    RunRequest r;
    r.mode = mode;
    r.dims = {2};
    r.channels = {{0.6, 0.8}};
    r.targets = {parse_target("0.6,0.8@0,1.0")};
    return r;
}

const ClaimResult& claim(const Report& r, const std::string& id) {
    for (const auto& c : r.claims)
        if (c.id == id) return c;
    throw std::runtime_error("missing claim " + id);
}

}  // namespace

TEST_SUITE("request parsing") {
    TEST_CASE("lists, targets and pairings") {
        CHECK(parse_list("0.6, 0.8") == std::vector<double>{0.6, 0.8});
        CHECK_THROWS_AS(parse_list(""), Error);
        CHECK_THROWS_AS(parse_list("0.6,x"), Error);
        const auto t = parse_target("0.6,0.8@0,1.0472");
        CHECK(t.magnitudes == std::vector<double>{0.6, 0.8});
        CHECK(t.phases == std::vector<double>{0.0, 1.0472});
        CHECK(parse_target("0.6,0.8").phases.empty());
        CHECK_THROWS_AS(parse_target("0.6,0.8@0"), Error);
        CHECK(parse_pairs("0-1,2-3") == std::vector<LevelPairing::Pair>{{0, 1}, {2, 3}});
        CHECK_THROWS_AS(parse_pairs("0-1-2"), Error);
        CHECK(parse_mode("claims") == Mode::Claims);
        CHECK_THROWS_AS(parse_mode("plot"), Error);
    }

    TEST_CASE("validation") {
        auto r = qubit_request(Mode::Enumerate);
        CHECK_NOTHROW(r.validate());
        r.mode = Mode::Sweep;
        CHECK_THROWS_AS(r.validate(), Error);  // no grid
        r.a0_grid = {0.3, 0.5};
        CHECK_NOTHROW(r.validate());
        auto bad = qubit_request(Mode::Enumerate);
        bad.channels = {{0.8, 0.6}};
        CHECK_THROWS_AS(bad.validate(), Error);
        bad = qubit_request(Mode::Enumerate);
        bad.targets = {parse_target("0.6,0.8,0.0")};
        CHECK_THROWS_AS(bad.validate(), Error);
        bad = qubit_request(Mode::Enumerate);
        bad.dims = {3};
        bad.engine = Engine::ExactD2;
        CHECK_THROWS_AS(bad.validate(), Error);
    }

    TEST_CASE("default pairings") {
        CHECK(default_pairs(2) == std::vector<LevelPairing::Pair>{{0, 1}});
        CHECK(default_pairs(4) == std::vector<LevelPairing::Pair>{{0, 2}, {1, 3}});
        CHECK(default_pairs(5) == std::vector<LevelPairing::Pair>{{0, 1}, {2, 3}});
    }

    TEST_CASE("cell expansion is ordered and keeps construction errors") {
        RunRequest r;
        r.mode = Mode::Sweep;
        r.dims = {3, 2};
        r.a0_grid = {0.3, 0.65};
        r.random_targets = 2;
        r.equatorial = true;
        const auto cells = expand_cells(r);
        // d=2: 2 channels x 2 targets; d=3: a0=0.65 is not the smallest, one error cell
        CHECK(cells.size() == 4 + 1 + 2);
        CHECK(cells.front().d == 2);
        CHECK(cells.back().d == 3);
        std::size_t errors = 0;
        for (const auto& c : cells) errors += c.error.has_value();
        CHECK(errors == 1);
        CHECK(expand_cells(r).front().key == cells.front().key);
    }
}

TEST_SUITE("report") {
    TEST_CASE("enumerate run") {
        const auto rep = execute(qubit_request(Mode::Enumerate));
        REQUIRE(rep.runs.size() == 1);
        const auto& s = rep.runs[0].summary;
        CHECK(s.total_success_probability == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(s.p_f0 == doctest::Approx(0.28).epsilon(1e-12));
        CHECK(s.p_f1 == doctest::Approx(0.72).epsilon(1e-12));
        CHECK(rep.claims.empty());
        CHECK(rep.findings.empty());
        CHECK(rep.runs[0].branches.size() == 12);
    }

    TEST_CASE("json and csv are deterministic") {
        auto r = qubit_request(Mode::Sample);
        r.shots = 500;
        r.seed = 99;
        CHECK(render_json(execute(r)) == render_json(execute(r)));
        r.mode = Mode::Sweep;
        r.a0_grid = {0.2, 0.4, 0.6};
        r.random_targets = 3;
        CHECK(render_csv(execute(r)) == render_csv(execute(r)));
    }

    TEST_CASE("json schema fields") {
        const auto text = render_json(execute(qubit_request(Mode::Claims)));
        for (const char* key : {"\"version\"", "\"request\"", "\"runs\"", "\"config\"", "\"gate_log\"", "\"branches\"",
                                "\"path\"", "\"probability\"", "\"correction\"", "\"fidelity\"", "\"summary\"",
                                "\"claims\"", "\"expected\"", "\"measured\"", "\"residual\"", "\"status\"",
                                "\"findings\""})
            CHECK(text.find(key) != std::string::npos);
    }

    TEST_CASE("csv has one row per leaf") {
        const auto csv = render_csv(execute(qubit_request(Mode::Enumerate)));
        CHECK(csv.rfind("d,channel,target,path,probability,correction,fidelity\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
    }

    TEST_CASE("sample histogram") {
        auto r = qubit_request(Mode::Sample);
        r.shots = 2000;
        const auto rep = execute(r);
        REQUIRE(rep.runs[0].sampling);
        std::size_t total = 0;
        for (const auto& b : rep.runs[0].branches) total += b.count.value_or(0);
        CHECK(total == 2000);
        CHECK(rep.runs[0].sampling->empirical_p_f0 == doctest::Approx(0.28).epsilon(0.05));
    }
}

TEST_SUITE("claims") {
    TEST_CASE("qubit cell") {
        const auto rep = execute(qubit_request(Mode::Claims));
        CHECK(claim(rep, "C1").status == ClaimStatus::Pass);
        CHECK(claim(rep, "C2").status == ClaimStatus::Pass);
        CHECK(claim(rep, "C3").status == ClaimStatus::Pass);
        CHECK(claim(rep, "C4").status == ClaimStatus::Pass);
        // the printed charts do not reproduce every leaf
        CHECK(claim(rep, "C5").status == ClaimStatus::Fail);
        CHECK(claim(rep, "C5").expected == 12.0);
    }

    TEST_CASE("maximal channel: C2 measured 0, expected 0") {
        auto r = qubit_request(Mode::Claims);
        r.channels = {{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}};
        const auto rep = execute(r);
        CHECK(claim(rep, "C2").expected == 0.0);
        CHECK(std::abs(claim(rep, "C2").measured) < 1e-12);
    }

    TEST_CASE("d=3 cell carries the identity residual") {
        RunRequest r;
        r.mode = Mode::Claims;
        r.dims = {3};
        r.a0_grid = {0.3};
        r.random_targets = 1;
        r.equatorial = true;
        const auto rep = execute(r);
        const auto& c2 = claim(rep, "C2");
        REQUIRE(c2.identity_value);
        CHECK(*c2.identity_value == doctest::Approx(1 - 0.09));
        REQUIRE(c2.identity_residual);
        CHECK(*c2.identity_residual ==
              doctest::Approx(*c2.identity_value - rep.runs[0].summary.p_f0 - rep.runs[0].summary.p_f1));
        CHECK(claim(rep, "C5").status == ClaimStatus::NotApplicable);
    }

    TEST_CASE("unrealizable cells become findings") {
        RunRequest r;
        r.mode = Mode::Claims;
        r.dims = {3};
        r.a0_grid = {0.3};
        r.random_targets = 2;
        const auto rep = execute(r);
        CHECK(rep.runs.empty());
        REQUIRE(rep.findings.size() == 2);
        CHECK(rep.findings[0].kind == "BasisNotRealizable");
    }
}
