#pragma once

#include <array>
#include <vector>

#include "ridgekit/ridgelet.hpp"
#include "ridgekit/targets.hpp"

namespace ridgekit {

struct Domain {
    enum class Kind { box, full_space_truncated };
    Kind kind = Kind::box;
    int dim = 1;
    std::vector<std::array<double, 2>> bounds;  // per axis
    double truncation_radius = 0.0;

    static Domain box(std::vector<std::array<double, 2>> bounds);
    static Domain truncated(int m, double radius);
};

/// Product weight w(u) = prod_l w0(u_l) with a closed-form 1-D density, plus
/// the (gamma, p) exponents it is paired with.
struct WeightSpec {
    enum class Family { gaussian, uniform, cauchy };
    Family family = Family::gaussian;
    double lo = -1.0, hi = 1.0;  // uniform support
    double gamma = 0.0;
    double p = 2.0;

    double w0(double s) const;
    double w(const double* u, int m) const;

    static WeightSpec gaussian_w(double gamma, double p);
    static WeightSpec uniform_w(double lo, double hi, double gamma, double p);
    static WeightSpec cauchy_w(double gamma, double p);
};

/// C^{(gamma,p)}_{U,w} = (int_U (1+||u||)^{gamma p} w du)^{1/p}.
/// Throws DivergentWeight when the value is still growing under truncation
/// doubling.
double weight_constant(const Domain& U, const WeightSpec& w);

/// 1-D constant C^{(gamma,p)}_{R,w0}.
double one_dim_weight_constant(const WeightSpec& w);

/// C^{(gamma,p)}_{R,w0} * m^{gamma + 1/p}
double product_weight_bound(const WeightSpec& w, int m);

/// (sum_{|alpha|<=k} int_U ||partial_alpha f||^p w du)^{1/p}, tensor
/// Gauss-Legendre, m <= 3.
double weighted_sobolev_norm(const TargetFunction& f, const Domain& U,
                             const WeightSpec& w, int k, int order_per_axis = 64);

/// max_{|alpha|<=k} sup over grid of ||partial_alpha f|| / (1+||u||)^gamma.
double weighted_ck_norm(const TargetFunction& f, const Domain& U, double gamma,
                        int k, int grid_per_axis = 81);

struct BarronQuad {
    double a_max = 9.0;
    int a_panels = 32;
    int a_order = 8;
    double b_max = 300.0;
    double b_step = 0.25;
    int sphere_nodes = 32;
    bool refine_check = true;
    double refine_rel_tol = 0.02;
};

/// Representative-based upper estimate of the ridgelet-Barron norm: the
/// weighted L^2 integral of the reconstruction-normalized coefficient of g
/// itself (no infimum over extensions is taken).
double barron_norm_estimate(const RidgeletProfile& profile, const TargetFunction& g,
                            int k, double gamma, const BarronQuad& quad = {});

/// Fourier-side upper bound with the proof-level constant
/// C_1 = 2^{ceil(gamma)/2} pi^{-1/2} (ceil(gamma)+2)! max_j int |hat{psi}^{(j)}|.
double barron_fourier_bound(const TargetFunction& f, const RidgeletProfile& profile,
                            double gamma, int k, double xi_max = 12.0,
                            int xi_order = 64);

} // namespace ridgekit
