#include "ridgekit/activations.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "ridgekit/errors.hpp"
#include "ridgekit/quadrature.hpp"

namespace ridgekit {

namespace {

constexpr int kMaxClosedOrder = 8;

// Derivatives of sigmoid and tanh are integer polynomials in the function
// value itself: sigma' = x(1-x), tanh' = 1-x^2. The coefficient tables are
// generated once from those recursions (exact in double up to order 8).
using Poly = std::vector<double>;

Poly derive(const Poly& p, const Poly& xdot) {
    // d/ds P(x(s)) = P'(x) * xdot(x)
    Poly dp(p.size() > 1 ? p.size() - 1 : 1, 0.0);
    if (p.size() > 1)
        for (size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * static_cast<double>(i);
    Poly out(dp.size() + xdot.size() - 1, 0.0);
    for (size_t i = 0; i < dp.size(); ++i)
        for (size_t j = 0; j < xdot.size(); ++j) out[i + j] += dp[i] * xdot[j];
    return out;
}

double poly_eval(const Poly& p, double x) {
    double acc = 0.0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

const std::array<Poly, kMaxClosedOrder + 1>& sigmoid_polys() {
    static const auto polys = [] {
        std::array<Poly, kMaxClosedOrder + 1> t;
        t[0] = {0.0, 1.0};             // P_0(x) = x
        const Poly xdot = {0.0, 1.0, -1.0}; // x(1-x)
        for (int j = 1; j <= kMaxClosedOrder; ++j) t[j] = derive(t[j - 1], xdot);
        return t;
    }();
    return polys;
}

const std::array<Poly, kMaxClosedOrder + 1>& tanh_polys() {
    static const auto polys = [] {
        std::array<Poly, kMaxClosedOrder + 1> t;
        t[0] = {0.0, 1.0};              // P_0(x) = x
        const Poly xdot = {1.0, 0.0, -1.0}; // 1 - x^2
        for (int j = 1; j <= kMaxClosedOrder; ++j) t[j] = derive(t[j - 1], xdot);
        return t;
    }();
    return polys;
}

double sigmoid(double s) {
    if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

double softplus(double s) {
    if (s > 30.0) return s + std::exp(-s);
    if (s < -30.0) return std::exp(s);
    return std::log1p(std::exp(s));
}

double eval_impl(Activation kind, int j, double s) {
    switch (kind) {
        case Activation::sigmoid:
            if (j == 0) return sigmoid(s);
            return poly_eval(sigmoid_polys()[j], sigmoid(s));
        case Activation::tanh:
            if (j == 0) return std::tanh(s);
            return poly_eval(tanh_polys()[j], std::tanh(s));
        case Activation::softplus:
            if (j == 0) return softplus(s);
            if (j == 1) return sigmoid(s);
            return poly_eval(sigmoid_polys()[j - 1], sigmoid(s));
        case Activation::relu:
            return s > 0.0 ? s : 0.0;
    }
    throw InvalidInput("unknown activation");
}

// Tail limit of |rho^{(j)}(s)| / (1+|s|)^gamma as |s| -> infinity. All four
// catalog activations have monotone tails, so the sup is either an interior
// grid point or this limit.
double tail_limit(Activation kind, int j, double gamma) {
    switch (kind) {
        case Activation::sigmoid:
        case Activation::tanh:
            return (j == 0 && gamma == 0.0) ? 1.0 : 0.0;
        case Activation::softplus:
        case Activation::relu:
            return (j == 0 && gamma == 1.0) ? 1.0 : 0.0;
    }
    return 0.0;
}

const ActivationSpec kCatalog[4] = {
    {Activation::sigmoid, "sigmoid", kUnboundedOrder, 0.0},
    {Activation::tanh, "tanh", kUnboundedOrder, 0.0},
    {Activation::softplus, "softplus", kUnboundedOrder, 1.0},
    {Activation::relu, "relu", 0, 1.0},
};

} // namespace

double ActivationSpec::eval(int j, double s) const {
    if (!std::isfinite(s)) throw InvalidInput("activation argument must be finite");
    if (j < 0 || j > k_max)
        throw UnsupportedDerivative("derivative order " + std::to_string(j) +
                                    " not supported by " + std::string(name));
    if (j > kMaxClosedOrder)
        throw UnsupportedDerivative("closed-form derivatives tabulated up to order 8");
    return eval_impl(kind, j, s);
}

std::complex<double> ActivationSpec::fourier_density(double xi) const {
    if (!std::isfinite(xi)) throw InvalidInput("frequency must be finite");
    if (xi == 0.0) throw SingularPoint("fourier density is defined on R \\ {0}");
    using namespace std::complex_literals;
    switch (kind) {
        case Activation::sigmoid:
            return -1i * (M_PI / std::sinh(M_PI * xi));
        case Activation::tanh:
            return -1i * (M_PI / std::sinh(M_PI * xi / 2.0));
        case Activation::softplus:
            return std::complex<double>(-M_PI / (xi * std::sinh(M_PI * xi)), 0.0);
        case Activation::relu:
            return std::complex<double>(-1.0 / (xi * xi), 0.0);
    }
    throw InvalidInput("unknown activation");
}

const ActivationSpec& activation(Activation kind) {
    return kCatalog[static_cast<int>(kind)];
}

const ActivationSpec& activation_by_name(std::string_view name) {
    for (const auto& spec : kCatalog)
        if (spec.name == name) return spec;
    throw InvalidInput("unknown activation '" + std::string(name) + "'");
}

double activation_eval(const ActivationSpec& spec, int j, double s) {
    return spec.eval(j, s);
}

std::complex<double> fourier_density(const ActivationSpec& spec, double xi) {
    return spec.fourier_density(xi);
}

double growth_norm(const ActivationSpec& spec, int k, double gamma) {
    if (k < 0 || k > spec.k_max)
        throw UnsupportedDerivative("growth_norm order exceeds k_max");
    if (gamma < spec.gamma_min)
        throw NormDiverges("C^k_{pol,gamma} norm is infinite for gamma < " +
                           std::to_string(spec.gamma_min));
    const int kk = std::min(k, kMaxClosedOrder);
    double best = 0.0;
    // log-spaced grid on (0, 50] both signs, plus 0
    constexpr int kGrid = 10000;
    constexpr double kSmin = 1e-4, kSmax = 50.0;
    const double ratio = std::log(kSmax / kSmin) / (kGrid - 1);
    for (int j = 0; j <= kk; ++j) {
        double sup = std::abs(spec.eval(j, 0.0));
        for (int i = 0; i < kGrid; ++i) {
            const double s = kSmin * std::exp(ratio * i);
            const double w = std::pow(1.0 + s, gamma);
            sup = std::max(sup, std::abs(spec.eval(j, s)) / w);
            sup = std::max(sup, std::abs(spec.eval(j, -s)) / w);
        }
        sup = std::max(sup, tail_limit(spec.kind, j, gamma));
        best = std::max(best, sup);
    }
    return best;
}

TestFunction bump_test(double lo, double hi) {
    TestFunction t;
    t.name = "bump[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
    t.lo = lo;
    t.hi = hi;
    t.eval = [lo, hi](double x) {
        if (x <= lo || x >= hi) return 0.0;
        return std::exp(-1.0 / ((x - lo) * (hi - x)));
    };
    return t;
}

TestFunction tilted_bump_test(double lo, double hi) {
    TestFunction t = bump_test(lo, hi);
    const double mid = 0.5 * (lo + hi);
    auto base = t.eval;
    t.name = "tilted_" + t.name;
    t.eval = [base, mid](double x) { return (x - mid) * base(x); };
    return t;
}

TestFunction zero_test(double lo, double hi) {
    TestFunction t;
    t.name = "zero";
    t.lo = lo;
    t.hi = hi;
    t.eval = [](double) { return 0.0; };
    return t;
}

double pairing_check(const ActivationSpec& spec, const TestFunction& test,
                     const PairingQuad& quad) {
    if (!(test.lo < test.hi))
        throw InvalidTestFunction("empty test function support");
    if (test.lo <= 0.0 && test.hi >= 0.0)
        throw InvalidTestFunction("test function support must avoid 0");

    const bool premultiply =
        spec.kind == Activation::softplus || spec.kind == Activation::relu;
    auto tfun = [&](double x) {
        const double v = test.eval(x);
        return premultiply ? x * v : v;
    };

    // density side: int f(xi) t(xi) dxi over the support
    const std::complex<double> rhs = adaptive_gk_complex(
        [&](double xi) { return spec.fourier_density(xi) * tfun(xi); }, test.lo,
        test.hi, quad.abs_tol, 1e-12);

    // activation side: int rho(s) \hat{t}(s) ds, truncated at |s| <= s_limit.
    // \hat{t}(s) needs panels proportional to |s| * support width to resolve
    // the oscillation; the outer integrand decays super-polynomially in s.
    const double width = test.hi - test.lo;
    auto t_hat = [&](double s) {
        const int panels = std::max(4, static_cast<int>(std::abs(s) * width / 4.0) + 1);
        return composite_gl(
            [&](double xi) {
                return tfun(xi) * std::exp(std::complex<double>(0.0, -s * xi));
            },
            test.lo, test.hi, panels, 16);
    };
    const int outer_panels =
        std::max(8, static_cast<int>(2.0 * quad.s_limit / quad.outer_panel));
    const std::complex<double> lhs = composite_gl(
        [&](double s) { return spec.eval(0, s) * t_hat(s); }, -quad.s_limit,
        quad.s_limit, outer_panels, 12);

    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

} // namespace ridgekit
