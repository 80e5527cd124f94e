#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdmeans/counterexample.hpp"
#include "pdmeans/harness.hpp"
#include "pdmeans/means_two.hpp"
#include "pdmeans/metrics.hpp"
#include "pdmeans/spectral_equation.hpp"

using namespace pdmeans;

TEST_CASE("instance construction: X0, A1 and determinants") {
    const Counterexample ce;
    CHECK(ce.x0()(0, 0) == doctest::Approx(std::exp(3.0)).epsilon(1e-15));
    CHECK(ce.x0()(1, 1) == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));
    CHECK(ce.x0()(0, 1) == 0.0);

    // A1 = B1 X0 B1 = diag(e^9, e^-9)
    const SPDMatrix& a1 = ce.problem().matrix(0);
    CHECK(a1(0, 0) == doctest::Approx(std::exp(9.0)).epsilon(1e-13));
    CHECK(a1(1, 1) == doctest::Approx(std::exp(-9.0)).epsilon(1e-13));

    for (const auto& a : ce.problem().matrices())
        CHECK(a.det() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(ce.problem().weight(0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("X0 solves the equation (closed-form field and generic path)") {
    const Counterexample ce;
    const auto [f1, f2] = ce.f_uv(3.0, 0.0);
    // || F1 S + F2 T ||_F = sqrt(2 (F1^2 + F2^2))
    CHECK(std::sqrt(2.0 * (f1 * f1 + f2 * f2)) <= 1e-12);
    CHECK(residual(ce.problem(), ce.x0()).norm <= 1e-10);
}

TEST_CASE("x_of_uv closed form") {
    CHECK((Counterexample::x_of_uv(0.0, 0.0).sym() - SymMatrix::identity(2))
              .frobenius_norm() == 0.0);

    const SPDMatrix x30 = Counterexample::x_of_uv(3.0, 0.0);
    CHECK(x30(0, 0) == doctest::Approx(std::exp(3.0)).epsilon(1e-15));
    CHECK(x30(1, 1) == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));

    const double v = 0.8;
    const SPDMatrix x0v = Counterexample::x_of_uv(0.0, v);
    CHECK(x0v(0, 0) == doctest::Approx(std::cosh(v)).epsilon(1e-15));
    CHECK(x0v(0, 1) == doctest::Approx(std::sinh(v)).epsilon(1e-15));

    // det X(u,v) = 1 everywhere; exp(uS + vT) matches the generic matrix exponential
    Rng rng(1);
    for (int k = 0; k < 25; ++k) {
        const double u = rng.uniform(-3.5, 3.5);
        const double w = rng.uniform(-3.5, 3.5);
        const SPDMatrix x = Counterexample::x_of_uv(u, w);
        CHECK(x.det() == doctest::Approx(1.0).epsilon(1e-13));
        SymMatrix h(2);
        h.set(0, 0, u);
        h.set(1, 1, -u);
        h.set(0, 1, w);
        CHECK((x.sym() - sym_exp(h).sym()).frobenius_norm() <=
              1e-12 * x.sym().frobenius_norm());
    }
}

TEST_CASE("log2x2_det1: identity, closed-form diagonal, eigen oracle") {
    CHECK(log2x2_det1(SPDMatrix::identity(2)).frobenius_norm() == 0.0);

    const SymMatrix l = log2x2_det1(SPDMatrix(SymMatrix::diagonal({2.0, 0.5})));
    CHECK(l(0, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(l(1, 1) == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
    CHECK(l(0, 1) == doctest::Approx(0.0));

    Rng rng(2);
    for (int k = 0; k < 30; ++k) {
        // random det-1 SPD via the exponential parametrization
        const SPDMatrix g =
            Counterexample::x_of_uv(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        CHECK((log2x2_det1(g) - g.log()).frobenius_norm() <= 1e-12);
    }

    CHECK_THROWS_AS(log2x2_det1(SPDMatrix(SymMatrix::diagonal({2.0, 1.0}))), DomainError);
    CHECK_THROWS_AS(log2x2_det1(SPDMatrix::identity(3)), DimensionError);
}

TEST_CASE("f_uv agrees with the generic residual everywhere sampled") {
    const Counterexample ce;
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        const double u = rng.uniform(-1.0, 4.0);
        const double v = rng.uniform(-1.5, 1.5);
        const auto [f1, f2] = ce.f_uv(u, v);
        SymMatrix combo(2);
        combo.set(0, 0, f1);
        combo.set(1, 1, -f1);
        combo.set(0, 1, f2);
        const SymMatrix generic = residual(ce.problem(), Counterexample::x_of_uv(u, v)).matrix;
        CHECK((combo - generic).frobenius_norm() <= 1e-10);
    }
}

TEST_CASE("closed-form geometric means inside f_uv match geo_mean") {
    const Counterexample ce;
    Rng rng(4);
    for (int k = 0; k < 10; ++k) {
        const double u = rng.uniform(0.0, 3.0);
        const double v = rng.uniform(-1.0, 1.0);
        const SPDMatrix x = Counterexample::x_of_uv(u, v);
        const SPDMatrix xi = x.inverse();
        for (const auto& a : ce.problem().matrices()) {
            // G = (A + X^{-1}) / sqrt(det(A + X^{-1}))
            SymMatrix num = a.sym() + xi.sym();
            const double det =
                num(0, 0) * num(1, 1) - num(0, 1) * num(0, 1);
            const SymMatrix g = SymMatrix((1.0 / std::sqrt(det)) * num);
            const SymMatrix viageo = geo_mean(a, xi).sym();
            CHECK((g - viageo).frobenius_norm() <= 1e-12 * viageo.frobenius_norm());
            CHECK(SPDMatrix(g).det() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("miranda_certify: linear field sanity") {
    const auto field = [](double u, double v) { return std::pair{-u, -v}; };
    const MirandaReport good =
        miranda_certify(field, Rect2(-1.0, 1.0, -1.0, 1.0), 64, 0.5);
    CHECK(good.certified);
    CHECK(good.left_min_f1 == doctest::Approx(1.0));
    CHECK(good.right_max_f1 == doctest::Approx(-1.0));

    // wrong orientation cannot certify
    const auto flipped = [](double u, double v) { return std::pair{u, v}; };
    CHECK_FALSE(miranda_certify(flipped, Rect2(-1.0, 1.0, -1.0, 1.0), 64, 0.0).certified);

    CHECK_THROWS_AS(miranda_certify(field, Rect2(-1.0, 1.0, -1.0, 1.0), 1, 0.0), DomainError);
    CHECK_THROWS_AS(Rect2(1.0, 1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("the reference rectangle certifies with the documented margins") {
    const Counterexample ce;
    const MirandaReport rep =
        ce.certify(Counterexample::second_solution_rect(), 4096, 1e-6, 2);
    CHECK(rep.certified);
    // margins land within a factor of two of the documented bounds
    CHECK(rep.left_min_f1 >= 0.5 * 1.0174896754e-4);
    CHECK(rep.right_max_f1 <= -0.5 * 9.2173535435e-5);
    CHECK(rep.bottom_min_f2 >= 0.5 * 9.9667442521e-6);
    CHECK(rep.top_max_f2 <= -0.5 * 4.7891817896e-6);
}

TEST_CASE("a translated rectangle does not certify") {
    const Counterexample ce;
    Rect2 r = Counterexample::second_solution_rect();
    const MirandaReport rep =
        ce.certify(Rect2(r.u_lo + 0.5, r.u_hi + 0.5, r.v_lo, r.v_hi), 512, 1e-6);
    CHECK_FALSE(rep.certified);
}

TEST_CASE("find_second_solution: root inside, distinct from X0, det 1") {
    const Counterexample ce;
    const Rect2 rect = Counterexample::second_solution_rect();
    const SecondSolution sol = ce.find_second_solution(rect);
    REQUIRE(sol.converged);
    CHECK(rect.contains(sol.u, sol.v));
    const auto [f1, f2] = ce.f_uv(sol.u, sol.v);
    CHECK(std::fabs(f1) <= 1e-12);
    CHECK(std::fabs(f2) <= 1e-12);
    CHECK(residual(ce.problem(), sol.x).norm <= 1e-10);
    CHECK(thompson_distance(sol.x, ce.x0()) > 0.1);
    CHECK(sol.x.det() == doctest::Approx(1.0).epsilon(1e-12));
}
