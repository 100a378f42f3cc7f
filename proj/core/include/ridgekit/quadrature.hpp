#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace ridgekit {

/// Gauss-Legendre rule on [-1,1]. Nodes/weights computed once per order by
/// Newton iteration on the Legendre recurrence and memoized.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

/// Fixed Gauss-Legendre integral of f over [a,b].
template <typename F>
auto gl_integrate(F&& f, double a, double b, int order) {
    const GaussLegendre& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    using R = decltype(f(mid));
    R acc{};
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

/// Composite Gauss-Legendre over equal panels.
template <typename F>
auto composite_gl(F&& f, double a, double b, int panels, int order) {
    using R = decltype(f(a));
    R acc{};
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        acc += gl_integrate(f, a + p * h, a + (p + 1) * h, order);
    return acc;
}

/// Adaptive Gauss-Kronrod 7-15 on [a,b]. Throws QuadratureFailure if the
/// interval budget is exhausted before the tolerances are met.
double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol = 1e-10, double rel_tol = 1e-10,
                   int max_intervals = 4000);

std::complex<double> adaptive_gk_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol = 1e-10, double rel_tol = 1e-10, int max_intervals = 4000);

/// Tensorized Gauss-Legendre over an axis-aligned box, dim <= 3.
double tensor_box_integrate(const std::function<double(const double*)>& f,
                            std::span<const double> lo,
                            std::span<const double> hi, int order_per_axis);

/// All multi-indices alpha in N_0^m with |alpha| <= k, ordered by |alpha|
/// then lexicographically.
std::vector<std::vector<int>> multi_indices(int m, int k);

} // namespace ridgekit
