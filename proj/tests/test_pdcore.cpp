#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdmeans/harness.hpp"
#include "pdmeans/matrix.hpp"
#include "pdmeans/means_two.hpp"
#include "pdmeans/metrics.hpp"
#include "pdmeans/order.hpp"
#include "pdmeans/spd.hpp"

using namespace pdmeans;

namespace {

double rel_fro(const SymMatrix& a, const SymMatrix& b) {
    return (a - b).frobenius_norm() / b.frobenius_norm();
}

}  // namespace

TEST_CASE("SymMatrix symmetrizes on construction") {
    Matrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 2.0;
    m(1, 0) = 4.0;
    m(1, 1) = 3.0;
    const SymMatrix s(m);
    CHECK(s(0, 1) == 3.0);
    CHECK(s(0, 1) == s(1, 0));
}

TEST_CASE("SPD construction rejects indefinite and near-singular input") {
    CHECK_THROWS_AS(SPDMatrix(SymMatrix::diagonal({1.0, -2.0})), NotPositiveDefiniteError);
    CHECK_THROWS_AS(SPDMatrix(SymMatrix::diagonal({1.0, 0.0})), NotPositiveDefiniteError);
    // relative floor: min eig must clear n * eps * max eig
    CHECK_THROWS_AS(SPDMatrix(SymMatrix::diagonal({1.0, 1e-17})), NotPositiveDefiniteError);
    CHECK_NOTHROW(SPDMatrix(SymMatrix::diagonal({1.0, 1e-10})));
}

TEST_CASE("eigendecomposition reconstructs and sorts descending") {
    const SPDMatrix a = random_spd(6, 1e6, 123);
    const auto& es = a.eigensystem();
    for (std::size_t i = 1; i < es.values.size(); ++i) CHECK(es.values[i - 1] >= es.values[i]);
    const SymMatrix rebuilt = es.apply([](double x) { return x; });
    CHECK((rebuilt - a.sym()).frobenius_norm() <= 1e-12 * a.sym().frobenius_norm());
}

TEST_CASE("matrix_fn: diagonal square root") {
    const SPDMatrix a(SymMatrix::diagonal({4.0, 9.0}));
    const SymMatrix r = matrix_fn(a, [](double x) { return std::sqrt(x); });
    CHECK(r(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r(1, 1) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(r(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("matrix_fn: identity map returns the operand") {
    const SPDMatrix a = random_spd(4, 100.0, 7);
    const SymMatrix r = matrix_fn(a, [](double x) { return x; });
    CHECK(rel_fro(r, a.sym()) <= 1e-13);
}

TEST_CASE("matrix_fn: log then exp round-trips a random 5x5") {
    const SPDMatrix a = random_spd(5, 1000.0, 99);
    const SymMatrix back = sym_exp(a.log()).sym();
    CHECK(rel_fro(back, a.sym()) <= 1e-12);
}

TEST_CASE("matrix_fn: non-finite value names the eigenvalue") {
    const SPDMatrix a(SymMatrix::diagonal({2.0, 0.5}));
    CHECK_THROWS_WITH_AS(matrix_fn(a, [](double x) { return std::log(x - 1.0); }),
                         doctest::Contains("0.5"), DomainError);
}

TEST_CASE("matrix power t has eigenvalues lambda^t with the same eigenvectors") {
    const SPDMatrix a = random_spd(4, 50.0, 5);
    for (const double t : {0.0, 0.25, 0.5, 1.0}) {
        const SPDMatrix at = a.power(t);
        const auto& la = a.eigenvalues();
        const auto& lat = at.eigenvalues();
        for (std::size_t i = 0; i < la.size(); ++i)
            CHECK(lat[i] == doctest::Approx(std::pow(la[i], t)).epsilon(1e-12));
        // same eigenvectors: reconstruct from a's system directly
        const SymMatrix expect = a.eigensystem().apply([t](double x) { return std::pow(x, t); });
        CHECK((at.sym() - expect).frobenius_norm() <= 1e-12 * expect.frobenius_norm());
    }
}

TEST_CASE("congruence: identity and diagonal examples") {
    const SPDMatrix a = random_spd(3, 10.0, 2);
    const SPDMatrix same = congruence(Matrix::identity(3), a);
    CHECK(rel_fro(same.sym(), a.sym()) <= 1e-14);

    const SPDMatrix d = congruence(Matrix::diagonal({2.0, 1.0}),
                                   SPDMatrix(SymMatrix::diagonal({1.0, 1.0})));
    CHECK(d(0, 0) == doctest::Approx(4.0));
    CHECK(d(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("congruence with a random S stays SPD; singular S rejected") {
    Rng rng(11);
    const SPDMatrix a = random_spd(4, 100.0, 3);
    Matrix s(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) s(i, j) = rng.gaussian();
    const SPDMatrix r = congruence(s, a);  // construction validates eigenvalues
    CHECK(r.lambda_min() > 0.0);

    Matrix sing(2, 2);
    sing(0, 0) = 1.0;
    sing(0, 1) = 1.0;
    sing(1, 0) = 1.0;
    sing(1, 1) = 1.0;
    CHECK_THROWS_AS(congruence(sing, SPDMatrix::identity(2)), SingularError);
}

TEST_CASE("distance: zero at equal arguments, all kinds") {
    const SPDMatrix a = random_spd(3, 30.0, 17);
    for (const Metric k : {Metric::riemannian, Metric::thompson, Metric::wasserstein,
                           Metric::spectral_semi})
        CHECK(distance(k, a, a) <= 1e-7);
}

TEST_CASE("distance: commuting riemannian formula gives sqrt(5)") {
    const SPDMatrix a = SPDMatrix::identity(2);
    const SPDMatrix b(SymMatrix::diagonal({std::exp(2.0), std::exp(-1.0)}));
    CHECK(distance(Metric::riemannian, a, b) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("distance: 1x1 wasserstein is |sqrt(a)-sqrt(b)|") {
    const SPDMatrix a(SymMatrix::diagonal({1.0}));
    const SPDMatrix b(SymMatrix::diagonal({9.0}));
    CHECK(distance(Metric::wasserstein, a, b) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("distance: dimension mismatch throws") {
    CHECK_THROWS_AS(distance(Metric::riemannian, SPDMatrix::identity(2),
                             SPDMatrix::identity(3)),
                    DimensionError);
}

TEST_CASE("thompson distance satisfies the triangle inequality") {
    Rng rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const SPDMatrix a = random_spd(n, 100.0, rng);
        const SPDMatrix b = random_spd(n, 1000.0, rng);
        const SPDMatrix c = random_spd(n, 10.0, rng);
        CHECK(thompson_distance(a, c) <=
              thompson_distance(a, b) + thompson_distance(b, c) + 1e-10);
    }
}

TEST_CASE("order_check: log-majorization examples") {
    const SPDMatrix a(SymMatrix::diagonal({3.0, 2.0}));
    CHECK(order_check(OrderRelation::log_major, a, a, 1e-12).holds);

    const SPDMatrix b(SymMatrix::diagonal({4.0, 1.5}));
    CHECK(order_check(OrderRelation::log_major, a, b, 1e-12).holds);
    CHECK_FALSE(order_check(OrderRelation::log_major, b, a, 1e-12).holds);
}

TEST_CASE("order_check: 1x1 near order is the scalar order") {
    for (const auto& [x, y, expect] : {std::tuple{1.0, 2.0, true},
                                       std::tuple{2.0, 1.0, false},
                                       std::tuple{1.5, 1.5, true}}) {
        const auto rep = order_check(OrderRelation::near, SPDMatrix(SymMatrix::diagonal({x})),
                                     SPDMatrix(SymMatrix::diagonal({y})), 1e-12);
        CHECK(rep.holds == expect);
    }
}

TEST_CASE("order_check: non-SPD operand rejected for near order") {
    const SymMatrix indefinite = SymMatrix::diagonal({1.0, -1.0});
    CHECK_THROWS_AS(order_check(OrderRelation::near, indefinite, SymMatrix::identity(2), 1e-12),
                    NotPositiveDefiniteError);
}

TEST_CASE("order implication chain: loewner => near => eig_pointwise => weak_log_major") {
    Rng rng(31);
    int hits = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const SPDMatrix a = random_spd(n, 50.0, rng);
        SymMatrix bump = random_spd(n, 5.0, rng).sym();
        const SPDMatrix b(a.sym() + SymMatrix(0.5 * bump));  // a <= b by construction
        REQUIRE(order_check(OrderRelation::loewner, a, b, 1e-10).holds);
        ++hits;
        CHECK(order_check(OrderRelation::near, a, b, 1e-10).holds);
        CHECK(order_check(OrderRelation::eig_pointwise, a, b, 1e-10).holds);
        CHECK(order_check(OrderRelation::weak_log_major, a, b, 1e-10).holds);
    }
    CHECK(hits == 200);
}

TEST_CASE("compound: 2x2 with k=2 is the determinant") {
    const SPDMatrix a = random_spd(2, 20.0, 41);
    const SymMatrix c = compound(a.sym(), 2);
    CHECK(c.dim() == 1);
    CHECK(c(0, 0) == doctest::Approx(a.det()).epsilon(1e-12));
}

TEST_CASE("compound: diag(1,2,3) k=2 gives diag(2,3,6)") {
    const SymMatrix c = compound(SymMatrix::diagonal({1.0, 2.0, 3.0}), 2);
    REQUIRE(c.dim() == 3);
    CHECK(c(0, 0) == doctest::Approx(2.0));
    CHECK(c(1, 1) == doctest::Approx(3.0));
    CHECK(c(2, 2) == doctest::Approx(6.0));
    CHECK(std::fabs(c(0, 1)) + std::fabs(c(0, 2)) + std::fabs(c(1, 2)) <= 1e-14);
}

TEST_CASE("compound is multiplicative over products (random 4x4)") {
    Rng rng(53);
    Matrix a(4, 4), b(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            a(i, j) = rng.gaussian();
            b(i, j) = rng.gaussian();
        }
    const Matrix lhs = compound(a * b, 2);
    const Matrix rhs = compound(a, 2) * compound(b, 2);
    CHECK((lhs - rhs).frobenius_norm() <= 1e-12 * rhs.frobenius_norm());
}

TEST_CASE("compound of SPD is SPD with top eigenvalue = product of top-k eigenvalues") {
    const SPDMatrix a = random_spd(4, 200.0, 61);
    const SPDMatrix c(compound(a.sym(), 2));
    CHECK(c.lambda_max() ==
          doctest::Approx(a.eigenvalues()[0] * a.eigenvalues()[1]).epsilon(1e-10));
    CHECK_THROWS_AS(compound(a.sym(), 5), DomainError);
    CHECK_THROWS_AS(compound(a.sym(), 0), DomainError);
}

TEST_CASE("WeightVector renormalizes and rejects nonpositive entries") {
    const WeightVector w({2.0, 2.0});
    CHECK(w[0] == doctest::Approx(0.5));
    CHECK_THROWS_AS(WeightVector({1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(WeightVector({1.0, -1.0}), DomainError);
}

TEST_CASE("n=1 matrices work end to end") {
    const SPDMatrix a(SymMatrix::diagonal({4.0}));
    CHECK(matrix_fn(a, [](double x) { return std::sqrt(x); })(0, 0) == doctest::Approx(2.0));
    CHECK(a.det() == doctest::Approx(4.0));
    CHECK(compound(a.sym(), 1)(0, 0) == doctest::Approx(4.0));
}
