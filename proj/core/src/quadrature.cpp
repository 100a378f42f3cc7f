#include "ridgekit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "ridgekit/errors.hpp"

namespace ridgekit {

namespace {

GaussLegendre compute_gauss_legendre(int n) {
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

// Gauss-Kronrod 7-15 node/weight table (positive half; node 0 first).
// nodes, Kronrod weights, Gauss-7 weights (zero at the Kronrod-only nodes).
constexpr double kGK15[8][3] = {
    {0.000000000000000000, 0.209482141084727828, 0.417959183673469388},
    {0.207784955007898468, 0.204432940075298892, 0.000000000000000000},
    {0.405845151377397167, 0.190350578064785410, 0.381830050505118945},
    {0.586087235467691130, 0.169004726639267903, 0.000000000000000000},
    {0.741531185599394440, 0.140653259715525919, 0.279705391489276668},
    {0.864864423359769073, 0.104790010322250184, 0.000000000000000000},
    {0.949107912342758525, 0.063092092629978553, 0.129484966168869693},
    {0.991455371120812639, 0.022935322010529225, 0.000000000000000000},
};

template <typename R, typename F>
R gk15(const F& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    R y0 = f(mid);
    R k15 = kGK15[0][1] * y0;
    R g7 = kGK15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15[i][0];
        R yi = f(mid + dx) + f(mid - dx);
        k15 += kGK15[i][1] * yi;
        g7 += kGK15[i][2] * yi;
    }
    k15 *= half;
    g7 *= half;
    const double diff = std::abs(k15 - g7);
    err = std::pow(200.0 * diff, 1.5);
    return k15;
}

template <typename R, typename F>
R adaptive_impl(const F& f, double a, double b, double abs_tol, double rel_tol,
                int max_intervals) {
    struct Seg {
        double a, b;
    };
    std::vector<Seg> stack{{a, b}};
    stack.reserve(64);
    R total{};
    int used = 1;
    while (!stack.empty()) {
        const Seg seg = stack.back();
        stack.pop_back();
        double err = 0.0;
        R val = gk15<R>(f, seg.a, seg.b, err);
        if (err <= abs_tol || err <= rel_tol * std::abs(val) ||
            (seg.b - seg.a) < 1e-14 * (std::abs(seg.a) + std::abs(seg.b) + 1.0)) {
            total += val;
            continue;
        }
        if (used + 2 > max_intervals)
            throw QuadratureFailure("adaptive quadrature interval budget exhausted");
        const double mid = 0.5 * (seg.a + seg.b);
        stack.push_back({seg.a, mid});
        stack.push_back({mid, seg.b});
        used += 2;
    }
    return total;
}

} // namespace

const GaussLegendre& gauss_legendre(int order) {
    if (order < 1) throw InvalidInput("gauss_legendre order must be >= 1");
    static std::map<int, GaussLegendre> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, double rel_tol, int max_intervals) {
    return adaptive_impl<double>(f, a, b, abs_tol, rel_tol, max_intervals);
}

std::complex<double> adaptive_gk_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol, double rel_tol, int max_intervals) {
    return adaptive_impl<std::complex<double>>(f, a, b, abs_tol, rel_tol,
                                               max_intervals);
}

double tensor_box_integrate(const std::function<double(const double*)>& f,
                            std::span<const double> lo,
                            std::span<const double> hi, int order) {
    const int m = static_cast<int>(lo.size());
    if (m < 1 || m > 3 || hi.size() != lo.size())
        throw InvalidInput("tensor_box_integrate supports dim 1..3");
    const GaussLegendre& rule = gauss_legendre(order);
    double u[3];
    double total = 0.0;
    const int n = order;
    auto node = [&](int axis, int i) {
        return 0.5 * (lo[axis] + hi[axis]) + 0.5 * (hi[axis] - lo[axis]) * rule.nodes[i];
    };
    const double jac0 = 0.5 * (hi[0] - lo[0]);
    if (m == 1) {
        for (int i = 0; i < n; ++i) {
            u[0] = node(0, i);
            total += rule.weights[i] * f(u);
        }
        return total * jac0;
    }
    const double jac1 = 0.5 * (hi[1] - lo[1]);
    if (m == 2) {
        for (int i = 0; i < n; ++i) {
            u[0] = node(0, i);
            double inner = 0.0;
            for (int j = 0; j < n; ++j) {
                u[1] = node(1, j);
                inner += rule.weights[j] * f(u);
            }
            total += rule.weights[i] * inner;
        }
        return total * jac0 * jac1;
    }
    const double jac2 = 0.5 * (hi[2] - lo[2]);
    for (int i = 0; i < n; ++i) {
        u[0] = node(0, i);
        double mid = 0.0;
        for (int j = 0; j < n; ++j) {
            u[1] = node(1, j);
            double inner = 0.0;
            for (int k = 0; k < n; ++k) {
                u[2] = node(2, k);
                inner += rule.weights[k] * f(u);
            }
            mid += rule.weights[j] * inner;
        }
        total += rule.weights[i] * mid;
    }
    return total * jac0 * jac1 * jac2;
}

std::vector<std::vector<int>> multi_indices(int m, int k) {
    if (m < 1 || k < 0) throw InvalidInput("multi_indices: m >= 1, k >= 0");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m, 0);
    std::function<void(int, int)> rec = [&](int axis, int remaining) {
        if (axis == m - 1) {
            for (int j = 0; j <= remaining; ++j) {
                cur[axis] = j;
                out.push_back(cur);
            }
            cur[axis] = 0;
            return;
        }
        for (int j = 0; j <= remaining; ++j) {
            cur[axis] = j;
            rec(axis + 1, remaining - j);
        }
        cur[axis] = 0;
    };
    // group by total order so alpha = 0 comes first
    std::vector<std::vector<int>> ordered;
    rec(0, k);
    for (int total = 0; total <= k; ++total)
        for (const auto& alpha : out) {
            int s = 0;
            for (int v : alpha) s += v;
            if (s == total) ordered.push_back(alpha);
        }
    return ordered;
}

} // namespace ridgekit
