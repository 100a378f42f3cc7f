#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "ridgekit/activations.hpp"
#include "ridgekit/targets.hpp"

namespace ridgekit {

struct ProfileParams {
    double s_max = 1000.0;      // cache radius; order-5 moments need the long tail
    double step = 0.01;         // main-grid spacing
    double tail_start = 600.0;  // beyond this the tail is built in quad precision
    double tail_step = 0.1;
    int build_panels = 256;     // frequency-side quadrature of the cache build
    int build_order = 8;
};

/// Schwartz profile psi defined through its compactly supported Fourier bump
/// hat{psi}(xi) = exp(-1/((xi-zeta1)(zeta2-xi))) on (zeta1, zeta2).
/// psi itself is tabulated once (values are memoized process-wide per
/// parameter set) and evaluated by cubic interpolation.
class RidgeletProfile {
public:
    RidgeletProfile(double zeta1, double zeta2, ProfileParams params = {});

    double zeta1() const { return zeta1_; }
    double zeta2() const { return zeta2_; }
    double s_max() const;

    double hat_psi(double xi) const;
    /// j-th derivative of the bump; interior points via a Cauchy-circle
    /// trapezoid sum (spectrally accurate), edge layer clamped to 0.
    double hat_psi_derivative(int j, double xi) const;
    /// int_{zeta1}^{zeta2} |hat{psi}^{(j)}|
    double hat_psi_abs_integral(int j) const;

    /// psi(s) = (1/2pi) int hat{psi}(xi) e^{i s xi} dxi; zero beyond the
    /// cache radius (|psi| is below 1e-18 there).
    std::complex<double> psi(double s) const;

    /// Same value by direct quadrature, bypassing the cache. Slower; used
    /// where the interpolated table would share error between two routes
    /// that are meant to cross-check each other.
    std::complex<double> psi_quadrature(double s) const;

    /// |int_{-s_max}^{s_max} s^j psi(s) ds| on the cache grid, 0 <= j <= 8.
    double moment(int j) const;

    struct Cache;  // opaque tabulation, shared between equal profiles

private:
    double zeta1_, zeta2_;
    ProfileParams params_;
    std::shared_ptr<const Cache> cache_;
};

/// (2pi)^{m-1} int conj(hat{psi}) f_density / |xi|^m over the support.
/// The density overload is the raw integral (used by oracles and for
/// hypothetical activations); the catalog overload throws
/// DegenerateAdmissibility when the modulus is below 1e-14.
std::complex<double> admissibility_constant(
    const RidgeletProfile& profile,
    const std::function<std::complex<double>(double)>& density, int m);
std::complex<double> admissibility_constant(const RidgeletProfile& profile,
                                            const ActivationSpec& activation,
                                            int m);

struct AdmissiblePair {
    std::shared_ptr<const RidgeletProfile> profile;
    const ActivationSpec* activation = nullptr;
    int m = 1;
    std::complex<double> constant;
};

AdmissiblePair make_admissible_pair(std::shared_ptr<const RidgeletProfile> profile,
                                    Activation activation, int m);

struct SliceQuad {
    int order = 8;            // Gauss-Legendre order per frequency panel
    double panel_rads = 4.0;  // phase radians per panel (panels scale with |b|)
    int base_panels = 12;
    double b_cutoff = 1000.0; // coefficient decays below ~1e-18 relative there
};

/// Spec-normalized slice transform (1/2pi) int hat{g}(xi v) conj(hat{psi}(xi s)) e^{i xi t} dxi
/// with v = a/||a||, s = 1/||a||, t = b/||a||. Throws InvalidDirection at a = 0.
void ridgelet_transform_slice(const RidgeletProfile& profile,
                              const TargetFunction& g, std::span<const double> a,
                              double b, std::complex<double>* out,
                              const SliceQuad& quad = {});

/// Reconstruction-normalized coefficient (1/2pi) int hat{g}(z a) hat{psi}(z) e^{i z b} dz.
/// This is the quantity whose backprojection against rho reproduces
/// C_m^{(psi,rho)} g; it equals the slice transform divided by ||a|| and is
/// what the randomized readout and the Barron integrand consume.
void ridgelet_coefficient(const RidgeletProfile& profile, const TargetFunction& g,
                          std::span<const double> a, double b,
                          std::complex<double>* out, const SliceQuad& quad = {});

struct DirectQuad {
    double box_half = 8.5;  // truncation box per axis
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_intervals = 60000;
    bool exact_psi = true;  // evaluate psi by quadrature, not the shared cache
};

/// Direct route: int conj(psi(a.u - b)) g(u) ||a|| du by tensorized adaptive
/// quadrature. m <= 3 only (throws UseSliceRoute beyond).
void ridgelet_transform_direct(const RidgeletProfile& profile,
                               const TargetFunction& g, std::span<const double> a,
                               double b, std::complex<double>* out,
                               const DirectQuad& quad = {});

// convenience wrappers for d-dim vectors
std::vector<std::complex<double>> ridgelet_transform_slice_v(
    const RidgeletProfile&, const TargetFunction&, std::span<const double> a,
    double b, const SliceQuad& = {});
std::vector<std::complex<double>> ridgelet_transform_direct_v(
    const RidgeletProfile&, const TargetFunction&, std::span<const double> a,
    double b, const DirectQuad& = {});

struct TruncationParams {
    double delta1 = 0.05;
    double delta2 = 40.0;
    double t_max = 40.0;
    int sphere_nodes = 64;   // m=2 angular grid; m=3 Lebedev point budget
    int s_panels = 160;      // log-spaced scale panels
    int s_order = 4;
    double tau_step = 0.0625;  // t-grid spacing in units of the scale s
    double tau_max = 150.0;    // slice support in t/s units
};

struct Reconstruction {
    std::vector<double> value;         // Re of the backprojection / C_m
    std::vector<double> refined_value; // same at (delta1/2, 2*delta2, 2*t_max)
    double imag_residue = 0.0;         // max |Im| over components
    double refinement_delta = 0.0;     // max |refined - value|
    bool truncation_warning = false;   // imag residue > 5% of |value|
};

/// (1/C_m) int int r_psi g (a,b) rho(a.u - b) db da in polar form
/// (v, s, t) over v in S^{m-1}, s in [delta1, delta2], t in [-t_max, t_max],
/// backprojection measure s^{-(m+1)} dt ds dv.
Reconstruction reconstruct(const AdmissiblePair& pair, const TargetFunction& g,
                           std::span<const double> u,
                           const TruncationParams& trunc = {});

/// Shared-slice batch evaluation over many points; identical results to
/// calling reconstruct per point.
std::vector<Reconstruction> reconstruct_batch(const AdmissiblePair& pair,
                                              const TargetFunction& g,
                                              const std::vector<std::vector<double>>& us,
                                              const TruncationParams& trunc = {});

/// Unit-sphere quadrature used by the polar form: m=1 the two signs, m=2 a
/// uniform angular grid, m=3 a Lebedev set (6/14/26 points).
struct SphereRule {
    std::vector<std::vector<double>> nodes;
    std::vector<double> weights;  // sum to surface measure of S^{m-1}
};
SphereRule sphere_rule(int m, int requested_nodes);

} // namespace ridgekit
