#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdmeans/harness.hpp"
#include "pdmeans/means_two.hpp"
#include "pdmeans/metrics.hpp"
#include "pdmeans/order.hpp"

using namespace pdmeans;

namespace {

double rel_fro(const SymMatrix& a, const SymMatrix& b) {
    return (a - b).frobenius_norm() / b.frobenius_norm();
}

SPDMatrix le2(const SPDMatrix& a, const SPDMatrix& b, double t) {
    return sym_exp((1.0 - t) * a.log() + t * b.log());
}

}  // namespace

TEST_CASE("geo_mean_t: idempotence, diagonal case, inverse pair") {
    const SPDMatrix a = random_spd(3, 100.0, 1);
    for (const double t : {0.0, 0.3, 1.0, 1.7, -0.5})
        CHECK(rel_fro(geo_mean_t(a, a, t).sym(), a.sym()) <= 1e-12);

    const SPDMatrix d1(SymMatrix::diagonal({1.0, 4.0}));
    const SPDMatrix d2(SymMatrix::diagonal({9.0, 16.0}));
    const SPDMatrix g = geo_mean_t(d1, d2, 0.5);
    CHECK(g(0, 0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(g(1, 1) == doctest::Approx(8.0).epsilon(1e-13));

    const SPDMatrix i2 = geo_mean(a, a.inverse());
    CHECK((i2.sym() - SymMatrix::identity(3)).frobenius_norm() <= 1e-12);
}

TEST_CASE("geo_mean is symmetric in its arguments") {
    const SPDMatrix a = random_spd(4, 1000.0, 3);
    const SPDMatrix b = random_spd(4, 10.0, 4);
    CHECK(rel_fro(geo_mean(a, b).sym(), geo_mean(b, a).sym()) <= 1e-12);
}

TEST_CASE("geo_mean_t extends the geodesic outside [0,1]") {
    const SPDMatrix a = random_spd(3, 50.0, 5);
    const SPDMatrix b = random_spd(3, 50.0, 6);
    // gamma(2) inverts gamma(0) about gamma(1): A #_2 B = B A^{-1} B
    const Matrix bm = b.sym().to_matrix();
    const SymMatrix expect(bm * a.inverse().sym().to_matrix() * bm);
    CHECK(rel_fro(geo_mean_t(a, b, 2.0).sym(), expect) <= 1e-11);
}

TEST_CASE("riccati_solve returns A # B and checks its own residual") {
    const SPDMatrix i2 = SPDMatrix::identity(2);
    const SPDMatrix b(SymMatrix::diagonal({4.0, 9.0}));
    CHECK(rel_fro(riccati_solve(i2, b).sym(), SymMatrix::diagonal({2.0, 3.0})) <= 1e-13);

    const SPDMatrix d1(SymMatrix::diagonal({1.0, 4.0}));
    const SPDMatrix d2(SymMatrix::diagonal({9.0, 16.0}));
    const SPDMatrix x = riccati_solve(d1, d2);
    CHECK(x(0, 0) == doctest::Approx(3.0));
    CHECK(x(1, 1) == doctest::Approx(8.0));

    const SPDMatrix a = random_spd(4, 100.0, 9);
    const SPDMatrix c = random_spd(4, 100.0, 10);
    const SPDMatrix g = riccati_solve(a, c);
    const Matrix gm = g.sym().to_matrix();
    const SymMatrix resid(gm * a.inverse().sym().to_matrix() * gm);
    CHECK((resid - c.sym()).frobenius_norm() <= 1e-10 * c.sym().frobenius_norm());
}

TEST_CASE("spectral_mean_t: identity anchor gives powers of B") {
    const SPDMatrix b = random_spd(3, 80.0, 11);
    for (const double t : {0.25, 0.5, 0.75})
        CHECK(rel_fro(spectral_mean_t(SPDMatrix::identity(3), b, t).sym(),
                      b.power(t).sym()) <= 1e-12);
}

TEST_CASE("spectral_mean_t: idempotence and commuting case") {
    const SPDMatrix a = random_spd(3, 30.0, 12);
    CHECK(rel_fro(spectral_mean_t(a, a, 0.3).sym(), a.sym()) <= 1e-12);

    const SPDMatrix d1(SymMatrix::diagonal({1.0, 4.0}));
    const SPDMatrix d2(SymMatrix::diagonal({9.0, 16.0}));
    const SPDMatrix s = spectral_mean_t(d1, d2, 0.5);
    CHECK(s(0, 0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(s(1, 1) == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("spectral_mean at t=1/2 has the spectrum of (AB)^{1/2}") {
    const SPDMatrix a = random_spd(4, 100.0, 13);
    const SPDMatrix b = random_spd(4, 100.0, 14);
    const SPDMatrix nat = spectral_mean_t(a, b, 0.5);
    // eigenvalues of AB = squared eigenvalues of A^{1/2} B A^{1/2}, etc.
    const Matrix ah = a.sqrt().sym().to_matrix();
    const SPDMatrix prod(SymMatrix(ah * b.sym().to_matrix() * ah));
    const auto& ln = nat.eigenvalues();
    const auto& lp = prod.eigenvalues();
    for (std::size_t i = 0; i < ln.size(); ++i)
        CHECK(ln[i] == doctest::Approx(std::sqrt(lp[i])).epsilon(1e-10));
}

TEST_CASE("spectral_mean_t rejects t outside [0,1]") {
    const SPDMatrix a = random_spd(2, 10.0, 15);
    CHECK_THROWS_AS(spectral_mean_t(a, a, 1.5), DomainError);
    CHECK_THROWS_AS(wasserstein2_t(a, a, -0.1), DomainError);
}

TEST_CASE("wasserstein2_t: scalar case, endpoints, idempotence") {
    const SPDMatrix s1(SymMatrix::diagonal({1.0}));
    const SPDMatrix s9(SymMatrix::diagonal({9.0}));
    CHECK(wasserstein2_t(s1, s9, 0.5)(0, 0) == doctest::Approx(4.0).epsilon(1e-14));

    const SPDMatrix a = random_spd(3, 60.0, 16);
    const SPDMatrix b = random_spd(3, 60.0, 17);
    CHECK(rel_fro(wasserstein2_t(a, b, 0.0).sym(), a.sym()) <= 1e-13);
    CHECK(rel_fro(wasserstein2_t(a, a, 0.7).sym(), a.sym()) <= 1e-12);
}

TEST_CASE("wasserstein2_t matches the expanded quadratic form") {
    Rng rng(18);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const SPDMatrix a = random_spd(n, 100.0, rng);
        const SPDMatrix b = random_spd(n, 100.0, rng);
        const double t = 0.1 * (1 + trial % 9);
        const SPDMatrix g = geo_mean(a.inverse(), b);
        const Matrix am = a.sym().to_matrix();
        const Matrix gm = g.sym().to_matrix();
        SymMatrix expanded =
            SymMatrix((1 - t) * (1 - t) * a.sym() + t * t * SymMatrix(gm * am * gm));
        expanded += SymMatrix(t * (1 - t) * SymMatrix(am * gm + gm * am));
        CHECK(rel_fro(wasserstein2_t(a, b, t).sym(), expanded) <= 1e-12);
    }
}

TEST_CASE("alt_mean: representing-function consistency") {
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const SPDMatrix a = random_spd(n, 100.0, rng);
        const SPDMatrix b = random_spd(n, 100.0, rng);
        const double t = 0.1 * (1 + trial % 9);
        CHECK(rel_fro(alt_mean(a, b, RepFunction::f_power(t)).sym(),
                      spectral_mean_t(a, b, t).sym()) <= 1e-12);
        CHECK(rel_fro(alt_mean(a, b, RepFunction::f_arithmetic(t)).sym(),
                      wasserstein2_t(a, b, t).sym()) <= 1e-12);
    }
}

TEST_CASE("alt_mean with f = 1 returns the first argument") {
    const SPDMatrix a = random_spd(3, 40.0, 20);
    const SPDMatrix b = random_spd(3, 40.0, 21);
    CHECK(rel_fro(alt_mean(a, b, RepFunction::f_power(0.0)).sym(), a.sym()) <= 1e-12);
}

TEST_CASE("verify_alt_equation certifies alt_mean and rejects perturbations") {
    Rng rng(22);
    const SPDMatrix a = random_spd(3, 50.0, rng);
    const SPDMatrix b = random_spd(3, 50.0, rng);
    for (const auto& f : {RepFunction::f_power(0.3), RepFunction::f_arithmetic(0.6),
                          RepFunction::f_harmonic(0.4)}) {
        const SPDMatrix x = alt_mean(a, b, f);
        CHECK(verify_alt_equation(a, b, f, x) <= 1e-10);

        EigenSystem es = x.eigensystem();
        for (double& v : es.values) v *= 2.0;
        CHECK(verify_alt_equation(a, b, f, SPDMatrix::from_eigensystem(std::move(es))) > 1e-3);
    }
    // A = B = X: both operands of sigma_f are the identity
    CHECK(verify_alt_equation(a, a, RepFunction::f_power(0.3), a) <= 1e-12);
}

TEST_CASE("spectral geodesic property for d_S") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const SPDMatrix a = random_spd(n, 100.0, rng);
        const SPDMatrix b = random_spd(n, 1000.0, rng);
        const double dab = distance(Metric::spectral_semi, a, b);
        for (const auto& [s, t] : {std::pair{0.1, 0.8}, std::pair{0.0, 1.0}, std::pair{0.4, 0.6}}) {
            const double lhs = distance(Metric::spectral_semi, spectral_mean_t(a, b, s),
                                        spectral_mean_t(a, b, t));
            CHECK(std::fabs(lhs - std::fabs(s - t) * dab) <= 1e-9);
        }
    }
}

TEST_CASE("determinant of the spectral mean multiplies") {
    Rng rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        const SPDMatrix a = random_spd(3, 100.0, rng);
        const SPDMatrix b = random_spd(3, 100.0, rng);
        const double t = 0.1 + 0.8 * rng.uniform01();
        const double expected = (1 - t) * a.log_det() + t * b.log_det();
        CHECK(spectral_mean_t(a, b, t).log_det() == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("two-variable chain holds on random pairs") {
    Rng rng(25);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const SPDMatrix a = random_spd(n, 200.0, rng);
        const SPDMatrix b = random_spd(n, 200.0, rng);
        for (const double t : {0.1, 0.5, 0.9}) {
            const SPDMatrix geo = geo_mean_t(a, b, t);
            const SPDMatrix le = le2(a, b, t);
            const SPDMatrix nat = spectral_mean_t(a, b, t);
            const SPDMatrix was = wasserstein2_t(a, b, t);
            CHECK(order_check(OrderRelation::log_major, geo, le, 1e-9).holds);
            CHECK(order_check(OrderRelation::log_major, le, nat, 1e-9).holds);
            CHECK(order_check(OrderRelation::near, nat, was, 1e-9).holds);
        }
    }
}

TEST_CASE("RepFunction catalog validates its normalization") {
    CHECK(RepFunction::g_log().g(1.0) == 0.0);
    CHECK(RepFunction::g_power(0.5).g(4.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(RepFunction::g_power(0.0), DomainError);
    CHECK_THROWS_AS(RepFunction::from_g_name("unknown", 0.0), DomainError);
    CHECK_THROWS_AS(RepFunction::from_f_name("unknown", 0.5), DomainError);
    const RepFunction h = RepFunction::f_harmonic(0.4);
    const double y = h.f(3.0);
    CHECK(h.f_inverse(y) == doctest::Approx(3.0).epsilon(1e-12));
}
