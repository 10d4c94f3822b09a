#include <numbers>

#include "doctest.h"
#include "djrsp/errors.hpp"
#include "djrsp/gates.hpp"
#include "djrsp/kernels.hpp"
#include "djrsp/measurement.hpp"
#include "djrsp/register_layout.hpp"
#include "support.hpp"

using namespace djrsp;
using testing::kron;

namespace {

RegisterLayout layout_of(std::vector<std::size_t> dims) {
    std::vector<Site> sites;
    for (std::size_t i = 0; i < dims.size(); ++i) sites.push_back({std::string(1, char('a' + i)), dims[i], Party::Alice});
    return RegisterLayout(sites);
}

Eigen::VectorXcd as_eigen(const CVector& v) {
    return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

TEST_SUITE("layout") {
    TEST_CASE("validation") {
        CHECK_THROWS_AS(RegisterLayout({}), Error);
        CHECK_THROWS_AS(layout_of({2, 1}), Error);
        CHECK_THROWS_AS(RegisterLayout({{"x", 2, Party::Alice}, {"x", 3, Party::Bob}}), Error);
    }

    TEST_CASE("total dimension, strides and digit round trip") {
        const auto l = protocol_layout(3);
        CHECK(l.total_dimension() == 3 * 3 * 3 * 2 * 3);
        CHECK(l.stride(0) == 54);
        CHECK(l.stride(4) == 1);
        for (std::size_t i = 0; i < l.total_dimension(); ++i) CHECK(l.flat_index(l.digits(i)) == i);
        CHECK(l.index_of("f") == 3);
        try {
            (void)l.index_of("z");
            FAIL("expected UnknownSite");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UnknownSite);
        }
    }

    TEST_CASE("protocol ownership") {
        const auto l = protocol_layout(2);
        CHECK(l.site(0).owner == Party::Alice);
        CHECK(l.site(1).owner == Party::Bob);
        CHECK(l.site(2).owner == Party::Charlie);
        CHECK(l.site(3).owner == Party::Alice);
        CHECK(l.site(4).owner == Party::Bob);
    }
}

TEST_SUITE("state vector") {
    TEST_CASE("norm is checked and normalize reports the constant") {
        const auto l = layout_of({2, 2});
        CHECK_THROWS_AS(StateVector(l, {1, 1, 0, 0}), Error);
        CHECK_THROWS_AS(StateVector(l, {1, 0, 0}), Error);
        const auto n = StateVector::normalize(l, {1, 1, 0, 0});
        CHECK(n.constant == doctest::Approx(1 / std::numbers::sqrt2).epsilon(1e-15));
        CHECK(n.state.norm() == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_SUITE("kernels") {
    TEST_CASE("apply matches a Kronecker-product oracle") {
        std::mt19937_64 g(11);
        const std::vector<std::size_t> dims{3, 2, 4};
        const auto v = testing::random_unit_vector(24, g);
        const Matrix u = testing::random_unitary(2, g);
        const Matrix full = kron(kron(Matrix::Identity(3, 3), u), Matrix::Identity(4, 4));
        const Eigen::VectorXcd expect = full * as_eigen(v);
        const kernels::SiteSelection sel{dims, {1}};
        const auto serial = kernels::apply_serial(v, sel, u);
        const auto parallel = kernels::apply_parallel(v, sel, u);
        for (std::size_t i = 0; i < v.size(); ++i) {
            CHECK(std::abs(serial[i] - expect(static_cast<Eigen::Index>(i))) < 1e-13);
            CHECK(std::abs(parallel[i] - serial[i]) < 1e-13);
        }
    }

    TEST_CASE("serial and parallel agree above the parallel threshold") {
        std::mt19937_64 g(5);
        const std::vector<std::size_t> dims{4, 4, 4, 2, 4, 3};
        std::size_t n = 1;
        for (auto d : dims) n *= d;
        const auto v = testing::random_unit_vector(n, g);
        for (const auto& targets : std::vector<std::vector<std::size_t>>{{0}, {5}, {2, 4}, {4, 2}, {0, 3, 5}}) {
            std::size_t m = 1;
            for (auto t : targets) m *= dims[t];
            const Matrix u = testing::random_unitary(m, g);
            const kernels::SiteSelection sel{dims, targets};
            CHECK(testing::max_abs_diff(kernels::apply_serial(v, sel, u), kernels::apply_parallel(v, sel, u)) < 1e-13);
        }
        const auto w = testing::random_unit_vector(4, g);
        for (std::size_t site = 0; site < dims.size(); ++site) {
            if (dims[site] != 4) continue;
            CHECK(testing::max_abs_diff(kernels::project_serial(v, dims, site, w),
                                        kernels::project_parallel(v, dims, site, w)) < 1e-14);
        }
    }

    TEST_CASE("projection weights sum to one and are thread-count independent") {
        std::mt19937_64 g(9);
        const std::vector<std::size_t> dims{5, 5, 5, 2, 5};
        const auto v = testing::random_unit_vector(1250, g);
        const Matrix u = testing::random_unitary(5, g);
        std::vector<std::vector<Complex>> basis;
        for (int c = 0; c < 5; ++c) basis.emplace_back(u.col(c).data(), u.col(c).data() + 5);
        const auto w1 = kernels::projection_weights(v, dims, 2, basis);
        const auto w2 = kernels::projection_weights(v, dims, 2, basis);
        double s = 0.0;
        for (std::size_t i = 0; i < w1.size(); ++i) {
            s += w1[i];
            CHECK(w1[i] == w2[i]);
        }
        CHECK(std::abs(s - 1.0) < 1e-12);
    }
}

TEST_SUITE("embed and apply") {
    TEST_CASE("identity leaves the state unchanged") {
        std::mt19937_64 g(1);
        const auto l = protocol_layout(2);
        const StateVector s(l, testing::random_unit_vector(l.total_dimension(), g));
        const auto out = embed_and_apply(s, UnitaryOp("I", Matrix::Identity(2, 2), {"e"}));
        CHECK(testing::max_abs_diff(out.amplitudes(), s.amplitudes()) == 0.0);
    }

    TEST_CASE("Hadamard on f") {
        const auto l = protocol_layout(2);
        const auto s = StateVector::basis_state(l, {1, 0, 1, 0, 0});
        const auto out = embed_and_apply(s, hadamard(2).on({"f"}));
        CHECK(std::abs(out.amplitude({1, 0, 1, 0, 0}) - 1 / std::numbers::sqrt2) < 1e-15);
        CHECK(std::abs(out.amplitude({1, 0, 1, 1, 0}) - 1 / std::numbers::sqrt2) < 1e-15);
    }

    TEST_CASE("C-NOT from A onto e copies the channel") {
        const auto l = protocol_layout(2);
        CVector amps(l.total_dimension());
        amps[l.flat_index({0, 0, 0, 0, 0})] = 0.6;
        amps[l.flat_index({1, 1, 0, 0, 0})] = 0.8;
        const auto out = embed_and_apply(StateVector(l, amps), cnot(2).on({"A", "e"}));
        CHECK(std::abs(out.amplitude({0, 0, 0, 0, 0}) - 0.6) < 1e-15);
        CHECK(std::abs(out.amplitude({1, 1, 1, 0, 0}) - 0.8) < 1e-15);
        CHECK(std::abs(out.amplitude({1, 1, 0, 0, 0})) < 1e-15);
    }

    TEST_CASE("errors") {
        const auto l = protocol_layout(2);
        const auto s = StateVector::basis_state(l, {0, 0, 0, 0, 0});
        CHECK_THROWS_AS(embed_and_apply(s, hadamard(2).on({"z"})), Error);
        CHECK_THROWS_AS(embed_and_apply(s, hadamard(3).on({"A"})), Error);
        CHECK_THROWS_AS(embed_and_apply(s, cnot(2).on({"A", "A"})), Error);
        CHECK_THROWS_AS(UnitaryOp("bad", Matrix::Ones(2, 2)), Error);
    }

    TEST_CASE("site order: U on (i,j) equals swapped U on (j,i)") {
        std::mt19937_64 g(3);
        const auto l = layout_of({2, 3, 2});
        const StateVector s(l, testing::random_unit_vector(12, g));
        for (int trial = 0; trial < 20; ++trial) {
            const Matrix u = testing::random_unitary(6, g);
            // permutation |x y> -> |y x> between (a: 2) (b: 3) and (b: 3) (a: 2)
            Matrix p = Matrix::Zero(6, 6);
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 3; ++y) p(y * 2 + x, x * 3 + y) = 1.0;
            const Matrix swapped = p * u * p.adjoint();
            const auto a = embed_and_apply(s, UnitaryOp("u", u, {"a", "b"}));
            const auto b = embed_and_apply(s, UnitaryOp("u", swapped, {"b", "a"}));
            CHECK(testing::max_abs_diff(a.amplitudes(), b.amplitudes()) < 1e-13);
        }
    }

    TEST_CASE("norm conservation over long random sequences") {
        std::mt19937_64 g(17);
        const auto l = protocol_layout(3);
        StateVector s(l, testing::random_unit_vector(l.total_dimension(), g));
        const std::vector<std::string> labels{"A", "B", "e", "g"};
        for (int i = 0; i < 50; ++i) {
            const std::size_t a = g() % 4;
            const std::size_t b = (a + 1 + g() % 3) % 4;
            s = embed_and_apply(s, UnitaryOp("u", testing::random_unitary(9, g), {labels[a], labels[b]}));
            CHECK(std::abs(s.norm() - 1.0) <= 1e-12 * (i + 1));
        }
    }
}

TEST_SUITE("measurement") {
    TEST_CASE("basis validation") {
        CHECK_THROWS_AS(MeasurementBasis("A", "bad", {{1, 0}, {1, 0}}), Error);
        CHECK_THROWS_AS(MeasurementBasis("A", "short", {{1, 0}}), Error);
    }

    TEST_CASE("measuring a basis state in its own basis") {
        const auto l = protocol_layout(3);
        const auto s = StateVector::basis_state(l, {2, 1, 0, 1, 2});
        const auto recs = measure_exhaustive(s, MeasurementBasis::computational("B", 3));
        REQUIRE(recs.size() == 3);
        CHECK(recs[1].probability == doctest::Approx(1.0));
        CHECK(recs[0].pruned);
        CHECK(!recs[0].post_state);
        CHECK(recs[2].pruned);
    }

    TEST_CASE("probability completeness and collapse idempotence on random states") {
        std::mt19937_64 g(23);
        const auto l = protocol_layout(3);
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector s(l, testing::random_unit_vector(l.total_dimension(), g));
            const Matrix u = testing::random_unitary(3, g);
            std::vector<CVector> vs;
            for (int c = 0; c < 3; ++c) vs.emplace_back(u.col(c).data(), u.col(c).data() + 3);
            const MeasurementBasis basis("e", "random", vs);
            const auto recs = measure_exhaustive(s, basis);
            double sum = 0.0;
            for (const auto& r : recs) sum += r.probability;
            CHECK(std::abs(sum - 1.0) < 1e-12);
            for (std::size_t i = 0; i < recs.size(); ++i) {
                REQUIRE(recs[i].post_state);
                CHECK(std::abs(recs[i].post_state->norm() - 1.0) < 1e-12);
                const auto again = measure_exhaustive(*recs[i].post_state, basis);
                CHECK(again[i].probability == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("collapse refuses pruned outcomes") {
        const auto s = StateVector::basis_state(protocol_layout(2), {0, 0, 0, 0, 0});
        CHECK_THROWS_AS(collapse(s, MeasurementBasis::computational("A", 2), 1), Error);
        CHECK(collapse(s, MeasurementBasis::computational("A", 2), 0).probability == doctest::Approx(1.0));
    }

    TEST_CASE("fidelity is phase invariant and detects entanglement") {
        const auto l = protocol_layout(2);
        CVector amps(l.total_dimension());
        amps[l.flat_index({0, 0, 0, 0, 0})] = 0.6;
        amps[l.flat_index({0, 1, 0, 0, 0})] = Complex(0, 0.8);
        const StateVector s(l, amps);
        const CVector ref{Complex(0, 0.6), Complex(-0.8, 0)};
        CHECK(fidelity(s, ref, "B") == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(fidelity(s, CVector{Complex(0.8, 0), Complex(0, -0.6)}, "B") == doctest::Approx(0.0).epsilon(1e-15));

        CVector bell(l.total_dimension());
        bell[l.flat_index({0, 0, 0, 0, 0})] = 1 / std::numbers::sqrt2;
        bell[l.flat_index({1, 1, 0, 0, 0})] = 1 / std::numbers::sqrt2;
        try {
            (void)fidelity(StateVector(l, bell), ref, "B");
            FAIL("expected ResidualEntanglement");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ResidualEntanglement);
        }
        CHECK(purity(reduced_density(StateVector(l, bell), "B")) == doctest::Approx(0.5));
    }

    TEST_CASE("path formatting and ordering") {
        const OutcomePath a{{"f", "computational", 0}, {"A", "mu", 1}};
        const OutcomePath b{{"f", "computational", 1}};
        CHECK(to_string(a) == "f=0/mu=1");
        CHECK(path_less(a, b));
        CHECK(!path_less(b, a));
    }
}
