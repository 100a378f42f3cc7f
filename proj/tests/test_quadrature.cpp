#include <doctest.h>

#include <cmath>

#include "ridgekit/errors.hpp"
#include "ridgekit/quadrature.hpp"

using namespace ridgekit;

TEST_CASE("gauss-legendre integrates polynomials of matching degree exactly") {
    // order n is exact through degree 2n-1
    for (int n : {4, 8, 16}) {
        const double v = gl_integrate(
            [n](double x) { return std::pow(x, 2 * n - 1) + std::pow(x, 2 * n - 2); },
            -1.0, 1.0, n);
        const double exact = 2.0 / (2 * n - 1);  // odd part cancels
        CHECK(v == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("adaptive gk reproduces closed forms") {
    CHECK(adaptive_gk([](double x) { return std::exp(-x * x); }, -10.0, 10.0) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(adaptive_gk([](double x) { return std::cos(7.0 * x); }, 0.0, 2.0) ==
          doctest::Approx(std::sin(14.0) / 7.0).epsilon(1e-11));
    const auto z = adaptive_gk_complex(
        [](double x) { return std::exp(std::complex<double>(0.0, 3.0 * x)); }, 0.0,
        1.0);
    CHECK(z.real() == doctest::Approx(std::sin(3.0) / 3.0).epsilon(1e-12));
    CHECK(z.imag() == doctest::Approx((1.0 - std::cos(3.0)) / 3.0).epsilon(1e-12));
}

TEST_CASE("tensor box integration in 2-D and 3-D") {
    const double lo2[2] = {0.0, -1.0}, hi2[2] = {1.0, 1.0};
    const double v2 = tensor_box_integrate(
        [](const double* u) { return u[0] * u[0] + u[1] * u[1]; },
        std::span<const double>(lo2, 2), std::span<const double>(hi2, 2), 16);
    CHECK(v2 == doctest::Approx(2.0 / 3.0 + 2.0 / 3.0).epsilon(1e-13));

    const double lo3[3] = {0.0, 0.0, 0.0}, hi3[3] = {1.0, 1.0, 1.0};
    const double v3 = tensor_box_integrate(
        [](const double* u) { return u[0] * u[1] * u[2]; },
        std::span<const double>(lo3, 3), std::span<const double>(hi3, 3), 8);
    CHECK(v3 == doctest::Approx(0.125).epsilon(1e-13));
}

TEST_CASE("multi-index enumeration") {
    const auto idx = multi_indices(2, 2);
    CHECK(idx.size() == 6);  // (0,0),(0,1),(1,0),(0,2),(1,1),(2,0)
    CHECK(idx.front() == std::vector<int>{0, 0});
    int max_total = 0;
    for (const auto& a : idx) max_total = std::max(max_total, a[0] + a[1]);
    CHECK(max_total == 2);

    CHECK(multi_indices(3, 1).size() == 4);
    CHECK_THROWS_AS(multi_indices(0, 1), InvalidInput);
}

TEST_CASE("quadrature failure surfaces as an exception") {
    // non-integrable singularity exhausts the interval budget
    CHECK_THROWS_AS(adaptive_gk([](double x) { return 1.0 / x; }, 1e-300, 1.0,
                                1e-14, 1e-14, 50),
                    QuadratureFailure);
}
