#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace ridgekit {

/// A target g: R^m -> R^d with evaluators for g, its partials, its Fourier
/// transform, and partials of the Fourier transform. Everything in the
/// default catalog is closed-form (Hermite recursions), so each evaluator is
/// exact to rounding.
struct TargetFunction {
    int dim_in = 1;
    int dim_out = 1;
    int max_partial_order = 0;
    int max_fourier_partial_order = 0;

    std::function<void(const double* u, double* out)> eval;
    std::function<void(const int* alpha, const double* u, double* out)> partial;
    std::function<void(const double* xi, std::complex<double>* out)> fourier;
    std::function<void(const int* beta, const double* xi, std::complex<double>* out)>
        fourier_partial;

    double eval1(const double* u) const;
    std::complex<double> fourier1(const double* xi) const;
};

/// A * exp(-||u||^2 / (2 sigma^2))
TargetFunction gaussian_target(int m, double amplitude = 1.0, double sigma = 1.0);

/// A * prod_l He_{q_l}(u_l) * exp(-||u||^2/2)  (probabilists' Hermite)
TargetFunction hermite_gaussian_target(int m, const std::vector<int>& orders,
                                       double amplitude = 1.0);

TargetFunction zero_target(int m);

TargetFunction scale_target(const TargetFunction& f, double c);
TargetFunction add_targets(const TargetFunction& f, const TargetFunction& g);

/// Catalog lookup used by the CLI: "gaussian", "gaussian:sigma=..,amp=..",
/// "hermite:orders=q1|q2,amp=..", "zero".
TargetFunction target_by_name(const std::string& id, int m);

/// probabilists' Hermite polynomial He_n(x)
double hermite_he(int n, double x);

} // namespace ridgekit
