#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

namespace ridgekit {

enum class Activation { sigmoid, tanh, softplus, relu };

/// One activation from the catalog: closed-form derivatives, growth
/// parameters, and the locally integrable density representing the
/// distributional Fourier transform on the punctured line.
struct ActivationSpec {
    Activation kind;
    std::string_view name;
    int k_max;        // max supported derivative order (kUnboundedOrder = smooth)
    double gamma_min; // minimal growth exponent with finite C^k_{pol,gamma} norm

    /// rho^{(j)}(s); throws UnsupportedDerivative / InvalidInput.
    double eval(int j, double s) const;

    /// density on R \ {0}; throws SingularPoint at xi = 0.
    std::complex<double> fourier_density(double xi) const;

    bool supports_order(int j) const { return j >= 0 && j <= k_max; }
};

inline constexpr int kUnboundedOrder = std::numeric_limits<int>::max();

const ActivationSpec& activation(Activation kind);
const ActivationSpec& activation_by_name(std::string_view name);

double activation_eval(const ActivationSpec& spec, int j, double s);
std::complex<double> fourier_density(const ActivationSpec& spec, double xi);

/// max_{0<=j<=k} sup_s |rho^{(j)}(s)| / (1+|s|)^gamma, grid + analytic tail.
double growth_norm(const ActivationSpec& spec, int k, double gamma);

/// Smooth test function with compact support [lo,hi] bounded away from 0.
struct TestFunction {
    std::string name;
    double lo = 0.0, hi = 0.0;
    std::function<double(double)> eval;
};

/// exp(-1/((x-lo)(hi-x))) on (lo,hi), zero outside.
TestFunction bump_test(double lo, double hi);
/// (x - midpoint) * bump -- sign-changing variant.
TestFunction tilted_bump_test(double lo, double hi);
TestFunction zero_test(double lo, double hi);

struct PairingQuad {
    double s_limit = 300.0;    // truncation of the activation-side integral
    double abs_tol = 1e-11;    // tolerance of the density-side quadrature
    double outer_panel = 0.5;  // panel width of the activation-side integral
};

/// Relative defect of the distributional identity \hat{T_rho}(t) = T_rho(\hat{t}).
/// For softplus and relu the test function is premultiplied by xi, matching
/// the identity the densities were derived through.
double pairing_check(const ActivationSpec& spec, const TestFunction& test,
                     const PairingQuad& quad = {});

} // namespace ridgekit
