#include <doctest.h>

#include <cmath>
#include <complex>

#include "ridgekit/errors.hpp"
#include "ridgekit/quadrature.hpp"
#include "ridgekit/targets.hpp"

using namespace ridgekit;
using cd = std::complex<double>;

namespace {

// direct quadrature of the Fourier definition, m = 1
cd fourier_direct(const TargetFunction& g, double xi) {
    return adaptive_gk_complex(
        [&](double u) {
            double gv;
            g.eval(&u, &gv);
            return gv * std::exp(cd(0.0, -xi * u));
        },
        -30.0, 30.0, 1e-12, 1e-11);
}

} // namespace

TEST_CASE("hermite recursion") {
    CHECK(hermite_he(0, 1.7) == 1.0);
    CHECK(hermite_he(1, 1.7) == 1.7);
    CHECK(hermite_he(2, 1.7) == doctest::Approx(1.7 * 1.7 - 1.0));
    CHECK(hermite_he(3, 2.0) == doctest::Approx(2.0 * 2.0 * 2.0 - 3.0 * 2.0));
}

TEST_CASE("closed-form fourier transforms match direct quadrature") {
    for (const auto& g :
         {gaussian_target(1), gaussian_target(1, 2.0, 0.7),
          hermite_gaussian_target(1, {1}), hermite_gaussian_target(1, {2}, 0.5)}) {
        for (double xi : {-1.3, 0.0, 0.42, 2.1}) {
            const cd closed = g.fourier1(&xi);
            const cd direct = fourier_direct(g, xi);
            CHECK(std::abs(closed - direct) <=
                  1e-5 * (1.0 + std::abs(closed)));
        }
    }
}

TEST_CASE("partials match finite differences") {
    const double h = 1e-5;
    for (const auto& g :
         {gaussian_target(2, 1.5, 0.8), hermite_gaussian_target(2, {1, 2})}) {
        for (double x : {-0.7, 0.4}) {
            const double u[2] = {x, 0.3};
            const int a10[2] = {1, 0};
            const int a00[2] = {0, 0};
            double up, um, an;
            const double upv[2] = {x + h, 0.3};
            const double umv[2] = {x - h, 0.3};
            g.eval(upv, &up);
            g.eval(umv, &um);
            g.partial(a10, u, &an);
            CHECK(std::abs(an - (up - um) / (2 * h)) <= 1e-6 * (1.0 + std::abs(an)));

            double plain, via_partial;
            g.eval(u, &plain);
            g.partial(a00, u, &via_partial);
            CHECK(plain == doctest::Approx(via_partial).epsilon(1e-14));
        }
    }
}

TEST_CASE("fourier partials match finite differences of the closed-form FT") {
    const double h = 1e-5;
    const TargetFunction g = hermite_gaussian_target(1, {1});
    for (double xi : {-0.9, 0.6}) {
        const int b1[1] = {1};
        cd fp, fup, fum;
        g.fourier_partial(b1, &xi, &fp);
        const double xp = xi + h, xm = xi - h;
        g.fourier(&xp, &fup);
        g.fourier(&xm, &fum);
        CHECK(std::abs(fp - (fup - fum) / (2 * h)) <= 1e-6 * (1.0 + std::abs(fp)));
    }
}

TEST_CASE("catalog lookup and argument parsing") {
    const TargetFunction g = target_by_name("gaussian:sigma=2,amp=3", 1);
    const double zero = 0.0;
    CHECK(g.eval1(&zero) == doctest::Approx(3.0));
    const TargetFunction hm = target_by_name("hermite:orders=1|2", 2);
    CHECK(hm.dim_in == 2);
    CHECK_THROWS_AS(target_by_name("spline", 1), InvalidInput);
    CHECK_THROWS_AS(target_by_name("gaussian:width=2", 1), InvalidInput);
}
