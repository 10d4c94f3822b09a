#include <numbers>

#include "doctest.h"
#include "djrsp/errors.hpp"
#include "djrsp/protocol.hpp"
#include "support.hpp"

using namespace djrsp;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1 / std::numbers::sqrt2;

ProtocolConfig qubit_config(double alpha, std::vector<double> mags, double theta, Engine engine = Engine::GeneralD) {
    ProtocolConfig c{.channel = ChannelSpec::create({alpha, std::sqrt(1 - alpha * alpha)}),
                     .target = TargetState::create(std::move(mags), {0.0, theta}),
                     .shift = 1,
                     .engine = engine,
                     .cu_pairing = LevelPairing::explicit_pairs(2, {{0, 1}}),
                     .charlie_phase_rule = CharliePhaseRule::MatchF,
                     .tol = default_tolerances()};
    return c;
}

ProtocolConfig equatorial_config(std::size_t d, double a0, std::vector<LevelPairing::Pair> pairs, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<double> th(d, 0.0);
    for (std::size_t r = 1; r < d; ++r) th[r] = 2 * kPi * testing::uniform(g);
    return ProtocolConfig{.channel = ChannelSpec::with_smallest(d, a0),
                          .target = TargetState::create(std::vector<double>(d, 1 / std::sqrt(double(d))), th),
                          .shift = 1,
                          .engine = Engine::GeneralD,
                          .cu_pairing = LevelPairing::explicit_pairs(d, std::move(pairs)),
                          .charlie_phase_rule = CharliePhaseRule::MatchF,
                          .tol = default_tolerances()};
}

std::vector<std::size_t> indices(const OutcomePath& p) {
    std::vector<std::size_t> out;
    for (const auto& o : p) out.push_back(o.index);
    return out;
}

StateVector f_collapse(const ProtocolConfig& c, std::size_t f, double* prob = nullptr) {
    const auto enc = alice_encoding(prepare_initial(c), c);
    auto rec = collapse(enc, MeasurementBasis::computational("f", 2), f);
    if (prob) *prob = rec.probability;
    return *rec.post_state;
}

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("validation") {
        auto c = qubit_config(0.6, {0.6, 0.8}, 1.0);
        CHECK_NOTHROW(c.validate());
        c.shift = 2;
        CHECK_THROWS_AS(c.validate(), Error);
        auto e = equatorial_config(3, 0.3, {{0, 1}}, 1);
        e.engine = Engine::ExactD2;
        CHECK_THROWS_AS(e.validate(), Error);
        CHECK(parse_engine("exact-d2") == Engine::ExactD2);
        CHECK(parse_phase_rule("f1-only") == CharliePhaseRule::FOneOnly);
        CHECK_THROWS_AS(parse_phase_rule("sometimes"), Error);
    }

    TEST_CASE("pairing falls back to the shift") {
        auto c = equatorial_config(4, 0.3, {{0, 1}, {2, 3}}, 1);
        c.cu_pairing.reset();
        c.shift = 2;
        CHECK(c.pairing().to_string() == "0-2,1-3");
        c.shift = 1;
        CHECK_THROWS_AS((void)c.pairing(), Error);
    }
}

TEST_SUITE("preparation and encoding") {
    TEST_CASE("initial state") {
        const auto s = prepare_initial(qubit_config(0.6, {0.6, 0.8}, 1.0));
        CHECK(s.amplitude({0, 0, 0, 0, 0}) == Complex(0.6));
        CHECK(s.amplitude({1, 1, 0, 0, 0}) == Complex(0.8));
        std::size_t nonzero = 0;
        for (const auto& a : s.amplitudes()) nonzero += std::abs(a) > 0;
        CHECK(nonzero == 2);
        const auto bell = prepare_initial(qubit_config(kInvSqrt2, {0.6, 0.8}, 1.0));
        CHECK(std::abs(bell.amplitude({1, 1, 0, 0, 0}) - kInvSqrt2) < 1e-15);
    }

    TEST_CASE("two-qubit encoded state, six amplitudes") {
        for (auto engine : {Engine::ExactD2, Engine::GeneralD}) {
            const auto c = qubit_config(0.6, {0.6, 0.8}, 1.0, engine);
            const auto s = alice_encoding(prepare_initial(c), c);
            const double big = 0.6 * kInvSqrt2;
            const double small = std::sqrt(0.14);
            // digits are (A, B, e, f, g)
            const std::vector<std::pair<std::vector<std::size_t>, double>> expected{
                {{1, 0, 0, 1, 0}, big},  {{0, 0, 1, 1, 1}, big}, {{1, 1, 0, 1, 0}, big},
                {{0, 1, 1, 1, 1}, big},  {{0, 1, 0, 0, 0}, small},
                {{1, 1, 1, 0, 1}, -small},  // sign forced by the CU matrix
            };
            double mass = 0.0;
            for (const auto& [digits, value] : expected) {
                CHECK(std::abs(s.amplitude(digits) - value) < 1e-12);
                mass += value * value;
            }
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(s.norm() - 1.0) < 1e-12);
        }
    }

    TEST_CASE("maximal channel empties the f=0 half") {
        auto c = qubit_config(kInvSqrt2, {0.6, 0.8}, 1.0);
        c.channel = ChannelSpec::uniform(2);
        const auto s = alice_encoding(prepare_initial(c), c);
        const auto& l = s.layout();
        for (std::size_t i = 0; i < l.total_dimension(); ++i)
            if (l.digits(i)[3] == 0) CHECK(std::abs(s.amplitudes()[i]) < 1e-15);
    }

    TEST_CASE("norm preserved for random channels up to d=6") {
        std::mt19937_64 g(41);
        for (std::size_t d = 2; d <= 6; ++d) {
            std::vector<LevelPairing::Pair> pairs;
            for (std::size_t r = 0; r + 1 < d; r += 2) pairs.emplace_back(r, r + 1);
            const auto c = equatorial_config(d, 0.1 + 0.2 * testing::uniform(g) / std::sqrt(double(d)), pairs, g());
            const auto s = alice_encoding(prepare_initial(c), c);
            CHECK(std::abs(s.norm() - 1.0) < 1e-12);
        }
    }

    TEST_CASE("conformance against the closed-form ket") {
        const auto c = qubit_config(0.6, {0.6, 0.8}, 1.0);
        const auto conf = encoding_conformance(alice_encoding(prepare_initial(c), c), c);
        CHECK(conf.magnitude_residual < 1e-12);
        CHECK(conf.closed_form_support == 6);
        CHECK(conf.simulated_support == 6);
        CHECK(conf.stated_prefactor == doctest::Approx(kInvSqrt2));
        CHECK(conf.required_prefactor == doctest::Approx(kInvSqrt2));
        // one amplitude differs in sign: overlap (1 - 2 * 0.14)^2
        CHECK(conf.signed_overlap == doctest::Approx(0.72 * 0.72).epsilon(1e-12));

        const auto c3 = equatorial_config(3, 0.3, {{0, 1}}, 5);
        const auto conf3 = encoding_conformance(alice_encoding(prepare_initial(c3), c3), c3);
        CHECK(conf3.stated_prefactor != doctest::Approx(conf3.required_prefactor));
    }
}

TEST_SUITE("branches") {
    TEST_CASE("f probabilities") {
        const auto c = qubit_config(0.6, {0.6, 0.8}, 1.0);
        const auto recs = measure_exhaustive(alice_encoding(prepare_initial(c), c), MeasurementBasis::computational("f", 2));
        CHECK(recs[0].probability == doctest::Approx(0.28).epsilon(1e-12));
        CHECK(recs[1].probability == doctest::Approx(0.72).epsilon(1e-12));
    }

    TEST_CASE("mu outcomes in the f=0 branch are equiprobable") {
        const auto c = qubit_config(0.6, {0.6, 0.8}, 1.0);
        auto s = f_collapse(c, 0);
        s = embed_and_apply(s, cnot(2).on({"g", "B"}));
        s = embed_and_apply(s, cnot(2).on({"B", "g"}));
        const auto mu = mu_basis(amplitude_share(c.target)).basis;
        const auto recs = measure_exhaustive(s, mu);
        CHECK(recs[0].probability == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(recs[1].probability == doctest::Approx(0.5).epsilon(1e-12));
    }

    TEST_CASE("f=0 branch: four leaves at 1/4, all reconstructed") {
        for (auto engine : {Engine::ExactD2, Engine::GeneralD}) {
            const auto c = qubit_config(0.6, {0.6, 0.8}, 1.0, engine);
            double p = 0.0;
            const auto run = run_branch_zero_f(f_collapse(c, 0, &p), c, 1.0);
            REQUIRE(run.leaves.size() == 4);
            for (const auto& leaf : run.leaves) {
                CHECK(leaf.record.probability == doctest::Approx(0.25).epsilon(1e-12));
                REQUIRE(leaf.record.fidelity);
                CHECK(*leaf.record.fidelity >= 1 - 1e-9);
                CHECK(leaf.success);
            }
            CHECK(run.findings.empty());
            CHECK(indices(run.leaves[2].record.outcome_path) == std::vector<std::size_t>{0, 1, 0});
            if (engine == Engine::ExactD2) CHECK(*run.leaves[2].record.applied_correction == "I");
        }
    }

    TEST_CASE("f=1 branch: eight leaves summing to one") {
        const auto c = qubit_config(0.6, {0.6, 0.8}, 1.0, Engine::ExactD2);
        const auto run = run_branch_one_f(f_collapse(c, 1), c, 1.0);
        REQUIRE(run.leaves.size() == 8);
        double sum = 0.0;
        for (const auto& leaf : run.leaves) {
            sum += leaf.record.probability;
            CHECK(leaf.success);
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // (u0, nu0, g=1) needs no correction
        CHECK(indices(run.leaves[1].record.outcome_path) == std::vector<std::size_t>{1, 0, 0, 1});
        CHECK(*run.leaves[1].record.applied_correction == "I");
    }
}

TEST_SUITE("corrections") {
    TEST_CASE("resolver basics") {
        const CVector t{0.6, Complex(0.0, 0.8)};
        const auto id = resolve_correction(t, t, 2);
        CHECK(id.a == 0);
        CHECK(id.b == 0);
        const CVector zt{0.6, Complex(0.0, -0.8)};
        const auto z = resolve_correction(zt, t, 2);
        CHECK(z.a == 0);
        CHECK(z.b == 1);
        const CVector plus{kInvSqrt2, kInvSqrt2};
        try {
            (void)resolve_correction(plus, CVector{1.0, 0.0}, 2);
            FAIL("expected NoCorrectionFound");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NoCorrectionFound);
        }
        const auto s = search_corrections(plus, CVector{1.0, 0.0}, 2);
        CHECK(!s.first_match);
        CHECK(s.best_fidelity == doctest::Approx(0.5));
    }

    TEST_CASE("qubit rule table is total and every entry is a named Pauli") {
        const auto& rules = exact_d2_rules();
        CHECK(rules.size() == 12);
        for (std::size_t p = 0; p < 2; ++p)
            for (std::size_t q = 0; q < 2; ++q) {
                CHECK(lookup_rule(rules, {0, p, q}));
                for (std::size_t g = 0; g < 2; ++g) CHECK(lookup_rule(rules, {1, p, q, g}));
            }
        for (const auto& r : rules) CHECK_NOTHROW(named_pauli(r.correction));
        CHECK(printed_charts().size() == 12);
    }

    TEST_CASE("resolver agrees with the rule table on all twelve leaves") {
        std::mt19937_64 g(19);
        for (int t = 0; t < 25; ++t) {
            const double x0 = testing::uniform(g);
            const auto c = qubit_config(0.05 + 0.65 * testing::uniform(g), {x0, std::sqrt(1 - x0 * x0)},
                                        2 * kPi * testing::uniform(g), Engine::ExactD2);
            const auto tr = enumerate(c);
            const auto target = target_vector(c.target);
            for (const auto& leaf : tr.leaves) {
                if (leaf.record.pruned) continue;
                REQUIRE(leaf.bob_state);
                const auto w = resolve_correction(*leaf.bob_state, target, 2);
                const auto rule = lookup_rule(exact_d2_rules(), indices(leaf.record.outcome_path));
                REQUIRE(rule);
                const Matrix m = named_pauli(*rule).matrix();
                // both reach the target; for generic targets they are the same operator
                Eigen::Map<const Eigen::VectorXcd> b(leaf.bob_state->data(), 2);
                Eigen::Map<const Eigen::VectorXcd> tv(target.data(), 2);
                CHECK(std::norm(tv.dot(m * b)) >= 1 - 1e-9);
                if (x0 > 1e-3 && x0 < 1 - 1e-3) CHECK(equal_up_to_phase(w.op.matrix(), m));
            }
        }
    }
}

TEST_SUITE("whole protocol") {
    TEST_CASE("qubit headline numbers") {
        const auto t = enumerate(qubit_config(0.6, {0.6, 0.8}, 1.0));
        CHECK(t.summary.total_success_probability == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(t.summary.p_f0 == doctest::Approx(0.28).epsilon(1e-12));
        CHECK(t.summary.p_f1 == doctest::Approx(0.72).epsilon(1e-12));
        CHECK(t.summary.leaf_count == 12);
        CHECK(t.summary.failed_count == 0);
        CHECK(std::abs(t.summary.leaf_probability_sum - 1.0) < 1e-12);
        for (std::size_t i = 1; i < t.leaves.size(); ++i)
            CHECK(path_less(t.leaves[i - 1].record.outcome_path, t.leaves[i].record.outcome_path));
    }

    TEST_CASE("maximal channel populates only f=1") {
        const auto t = enumerate(qubit_config(kInvSqrt2, {0.6, 0.8}, 1.0));
        CHECK(t.summary.total_success_probability == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(t.summary.pruned_count == 1);
        CHECK(t.leaves.front().record.pruned);
        CHECK(!t.leaves.front().record.fidelity);
    }

    TEST_CASE("every leaf has a fidelity or a flag") {
        for (std::size_t d : {3, 4, 5}) {
            std::vector<LevelPairing::Pair> pairs = d == 4 ? std::vector<LevelPairing::Pair>{{0, 2}, {1, 3}}
                                                           : std::vector<LevelPairing::Pair>{{0, 1}};
            if (d == 5) pairs.emplace_back(2, 3);
            const auto t = enumerate(equatorial_config(d, 0.25, pairs, d));
            CHECK(std::abs(t.summary.leaf_probability_sum - 1.0) < 1e-12);
            for (const auto& leaf : t.leaves) CHECK((leaf.record.pruned || leaf.record.fidelity.has_value()));
            for (const auto& n : t.nodes) {
                double s = 0.0;
                for (double p : n.probabilities) s += p;
                CHECK(std::abs(s - 1.0) < 1e-12);
            }
        }
    }

    TEST_CASE("non-equatorial d=3 target cannot be measured") {
        ProtocolConfig c{.channel = ChannelSpec::with_smallest(3, 0.3),
                         .target = TargetState::create({0.6, 0.64, std::sqrt(1 - 0.36 - 0.4096)}),
                         .shift = 1,
                         .engine = Engine::GeneralD,
                         .cu_pairing = LevelPairing::explicit_pairs(3, {{0, 1}}),
                         .charlie_phase_rule = CharliePhaseRule::MatchF,
                         .tol = default_tolerances()};
        try {
            (void)enumerate(c);
            FAIL("expected BasisNotRealizable");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::BasisNotRealizable);
        }
    }

    TEST_CASE("engines agree leaf by leaf at d=2") {
        std::mt19937_64 g(77);
        for (int t = 0; t < 20; ++t) {
            const double alpha = 0.05 + 0.65 * testing::uniform(g);
            const double x0 = testing::uniform(g);
            const double th = 2 * kPi * testing::uniform(g);
            const auto a = enumerate(qubit_config(alpha, {x0, std::sqrt(1 - x0 * x0)}, th, Engine::ExactD2));
            const auto b = enumerate(qubit_config(alpha, {x0, std::sqrt(1 - x0 * x0)}, th, Engine::GeneralD));
            REQUIRE(a.leaves.size() == b.leaves.size());
            for (std::size_t i = 0; i < a.leaves.size(); ++i) {
                CHECK(a.leaves[i].record.outcome_path == b.leaves[i].record.outcome_path);
                CHECK(std::abs(a.leaves[i].record.probability - b.leaves[i].record.probability) <= 1e-12);
                CHECK(std::abs(a.leaves[i].record.fidelity.value_or(-1) - b.leaves[i].record.fidelity.value_or(-1)) <= 1e-9);
            }
        }
    }

    TEST_CASE("phase-gate placement matters") {
        auto c = qubit_config(0.6, {0.6, 0.8}, 1.0);
        c.charlie_phase_rule = CharliePhaseRule::Never;
        CHECK(enumerate(c).summary.total_success_probability < 1 - 1e-6);
    }

    TEST_CASE("sampling is deterministic and consistent with enumeration") {
        const auto c = qubit_config(0.6, {0.6, 0.8}, 1.0);
        const auto t = enumerate(c);
        for (std::uint64_t seed : {1ULL, 2ULL, 12345ULL}) {
            const auto a = sample_trajectory(c, seed);
            const auto b = sample_trajectory(c, seed);
            CHECK(a.record.outcome_path == b.record.outcome_path);
            for (const auto& leaf : t.leaves)
                if (leaf.record.outcome_path == a.record.outcome_path)
                    CHECK(std::abs(*leaf.record.fidelity - *a.record.fidelity) < 1e-12);
        }
    }

    TEST_CASE("gate log lists the encoding in application order") {
        const auto log = protocol_gate_log(qubit_config(0.6, {0.6, 0.8}, 1.0));
        std::vector<std::string> gates;
        for (const auto& e : log)
            if (e.branch.empty() && e.kind == "gate") gates.push_back(e.name);
        CHECK(gates == std::vector<std::string>{"H_A", "P_AB", "C_Ae", "CU_AB", "C'_eA", "C_Af", "C_eg", "C_eA"});
        bool has_classical = false;
        for (const auto& e : log) has_classical |= e.kind == "classical";
        CHECK(has_classical);
    }
}
