#include <doctest.h>

#include <cmath>
#include <memory>

#include "ridgekit/errors.hpp"
#include "ridgekit/rng.hpp"
#include "ridgekit/spaces.hpp"

using namespace ridgekit;

namespace {
TargetFunction constant_target(double c) {
    TargetFunction t = zero_target(1);
    t.eval = [c](const double*, double* out) { *out = c; };
    t.partial = [c](const int* a, const double*, double* out) {
        *out = (a[0] == 0) ? c : 0.0;
    };
    return t;
}
}  // namespace

TEST_CASE("weight constants: closed forms") {
    // U = [0,1], w0 uniform on [0,1]: gamma=0 reduces to total mass
    const Domain U = Domain::box({{0.0, 1.0}});
    WeightSpec w = WeightSpec::uniform_w(0.0, 1.0, 0.0, 2.0);
    CHECK(weight_constant(U, w) == doctest::Approx(1.0).epsilon(1e-12));

    // gamma=1, p=1: int_0^1 (1+u) du = 1.5
    w = WeightSpec::uniform_w(0.0, 1.0, 1.0, 1.0);
    CHECK(weight_constant(U, w) == doctest::Approx(1.5).epsilon(1e-12));

    // gamma=0 with any normalized weight is 1
    const Domain R1 = Domain::truncated(1, 40.0);
    CHECK(weight_constant(R1, WeightSpec::gaussian_w(0.0, 2.0)) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("divergent weights are detected") {
    const Domain R1 = Domain::truncated(1, 50.0);
    CHECK_THROWS_AS(weight_constant(R1, WeightSpec::cauchy_w(1.0, 1.0)),
                    DivergentWeight);
    CHECK_THROWS_AS(one_dim_weight_constant(WeightSpec::cauchy_w(1.0, 2.0)),
                    DivergentWeight);
    // gamma*p < 1 still converges for the Cauchy weight
    CHECK(one_dim_weight_constant(WeightSpec::cauchy_w(0.4, 1.0)) > 1.0);
}

TEST_CASE("product weight bound: trivial case and MC cross-check") {
    // gamma=0: C_{R,w0} = 1, bound = m^{1/p}
    CHECK(product_weight_bound(WeightSpec::gaussian_w(0.0, 2.0), 4) ==
          doctest::Approx(2.0).epsilon(1e-10));

    // 1-D constant for the standard gaussian, gamma=1, p=2, against Monte Carlo
    const WeightSpec w = WeightSpec::gaussian_w(1.0, 2.0);
    const double quad_value = one_dim_weight_constant(w);
    RandomStream rs(20240811u);
    const int n = 1000000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = rs.normal();
        acc += (1.0 + std::abs(s)) * (1.0 + std::abs(s));
    }
    const double mc = std::sqrt(acc / n);
    CHECK(std::abs(mc - quad_value) <= 1e-2 * quad_value);
    // closed form: E[(1+|s|)^2] = 2 + 2 sqrt(2/pi)
    CHECK(quad_value ==
          doctest::Approx(std::sqrt(2.0 + 2.0 * std::sqrt(2.0 / M_PI))).epsilon(1e-9));
}

TEST_CASE("product-weight inequality: constant <= bound") {
    for (int m = 1; m <= 3; ++m) {
        const Domain U = Domain::truncated(m, 12.0);
        for (double gamma : {0.0, 1.0}) {
            for (double p : {1.0, 2.0}) {
                const WeightSpec w = WeightSpec::gaussian_w(gamma, p);
                CHECK(weight_constant(U, w) <= product_weight_bound(w, m) + 1e-12);
            }
        }
    }
}

TEST_CASE("weighted sobolev norm: constants, homogeneity, gaussian closed form") {
    const Domain U = Domain::box({{0.0, 1.0}});
    const WeightSpec w = WeightSpec::uniform_w(0.0, 1.0, 0.0, 2.0);

    // constant function, k=0, unit mass -> |c|
    CHECK(weighted_sobolev_norm(constant_target(-2.5), U, w, 0) ==
          doctest::Approx(2.5).epsilon(1e-12));

    // homogeneity: ||c f|| = |c| ||f||
    const TargetFunction g = gaussian_target(1);
    const double base = weighted_sobolev_norm(g, U, w, 0);
    CHECK(weighted_sobolev_norm(scale_target(g, 3.0), U, w, 0) ==
          doctest::Approx(3.0 * base).epsilon(1e-12));

    // m=1 standard gaussian on [-5,5], uniform-normalized weight, k=1, p=2:
    // (1/10)(int e^{-u^2} + int u^2 e^{-u^2}) du with erf closed form
    const Domain U5 = Domain::box({{-5.0, 5.0}});
    const WeightSpec w5 = WeightSpec::uniform_w(-5.0, 5.0, 0.0, 2.0);
    const double v = weighted_sobolev_norm(g, U5, w5, 1);
    const double erf5 = std::erf(5.0);
    const double i0 = std::sqrt(M_PI) * erf5;
    const double i1 = 0.5 * std::sqrt(M_PI) * erf5 - 5.0 * std::exp(-25.0);
    const double closed = std::sqrt((i0 + i1) / 10.0);
    CHECK(v == doctest::Approx(closed).epsilon(1e-6));

    CHECK_THROWS_AS(weighted_sobolev_norm(g, U, w, 9), MissingDerivatives);
}

TEST_CASE("norm properties: homogeneity and triangle inequality on random pairs") {
    const Domain U = Domain::truncated(1, 8.0);
    const WeightSpec w = WeightSpec::gaussian_w(0.0, 2.0);
    RandomStream rs(99u);
    for (int trial = 0; trial < 5; ++trial) {
        const double a1 = 0.5 + rs.uniform(), s1 = 0.5 + rs.uniform();
        const double a2 = 0.5 + rs.uniform(), s2 = 0.5 + rs.uniform();
        const TargetFunction f = gaussian_target(1, a1, s1);
        const TargetFunction g = gaussian_target(1, a2, s2);
        const double nf = weighted_sobolev_norm(f, U, w, 1);
        const double ng = weighted_sobolev_norm(g, U, w, 1);
        const double nsum = weighted_sobolev_norm(add_targets(f, g), U, w, 1);
        CHECK(nsum <= nf + ng + 1e-8);
        CHECK(weighted_sobolev_norm(scale_target(f, -2.0), U, w, 1) ==
              doctest::Approx(2.0 * nf).epsilon(1e-10));
    }
}

TEST_CASE("quadrature refinement: doubled node counts move norms by <= 1e-4") {
    const Domain U = Domain::truncated(2, 8.0);
    const WeightSpec w = WeightSpec::gaussian_w(1.0, 2.0);
    const TargetFunction g = gaussian_target(2);
    const double coarse = weighted_sobolev_norm(g, U, w, 1, 64);
    const double fine = weighted_sobolev_norm(g, U, w, 1, 128);
    CHECK(std::abs(coarse - fine) <= 1e-4 * fine);
}

TEST_CASE("weighted ck norm") {
    const Domain U = Domain::box({{0.0, 1.0}});
    CHECK(weighted_ck_norm(constant_target(1.0), U, 0.0, 0) == doctest::Approx(1.0));

    // f(u) = u on [0,1], gamma=0, k=1: the derivative term dominates
    TargetFunction lin = zero_target(1);
    lin.eval = [](const double* u, double* out) { *out = u[0]; };
    lin.partial = [](const int* a, const double* u, double* out) {
        *out = (a[0] == 0) ? u[0] : (a[0] == 1 ? 1.0 : 0.0);
    };
    CHECK(weighted_ck_norm(lin, U, 0.0, 1) == doctest::Approx(1.0));

    // grid-refinement agreement for the gaussian with gamma=2
    const Domain U5 = Domain::box({{-5.0, 5.0}});
    const TargetFunction g = gaussian_target(1);
    const double coarse = weighted_ck_norm(g, U5, 2.0, 0, 81);
    const double fine = weighted_ck_norm(g, U5, 2.0, 0, 801);
    CHECK(std::abs(coarse - fine) <= 1e-4 * fine);
}

TEST_CASE("barron estimate: zero, scaling, stability") {
    auto pr = std::make_shared<RidgeletProfile>(1.0, 2.0);
    BarronQuad quad;
    quad.refine_check = false;
    CHECK(barron_norm_estimate(*pr, zero_target(1), 0, 0.0, quad) == 0.0);

    const TargetFunction g = gaussian_target(1);
    const double b1 = barron_norm_estimate(*pr, g, 0, 0.0, quad);
    const double b2 = barron_norm_estimate(*pr, scale_target(g, 2.0), 0, 0.0, quad);
    CHECK(b2 == doctest::Approx(2.0 * b1).epsilon(1e-12));
    CHECK(b1 > 0.0);

    // with the refinement check on, the default truncation must be stable
    BarronQuad checked;
    const double stable = barron_norm_estimate(*pr, g, 0, 0.0, checked);
    CHECK(std::abs(stable - b1) <= 0.02 * stable);
}

TEST_CASE("fourier bound: zero, scaling, dominates the estimate") {
    auto pr = std::make_shared<RidgeletProfile>(1.0, 2.0);
    CHECK(barron_fourier_bound(zero_target(1), *pr, 0.0, 0) == 0.0);
    const TargetFunction g = gaussian_target(1);
    const double f1 = barron_fourier_bound(g, *pr, 0.0, 0);
    const double f2 = barron_fourier_bound(scale_target(g, 2.0), *pr, 0.0, 0);
    CHECK(f2 == doctest::Approx(2.0 * f1).epsilon(1e-10));

    BarronQuad quad;
    quad.refine_check = false;
    CHECK(barron_norm_estimate(*pr, g, 0, 0.0, quad) <= f1);
}
