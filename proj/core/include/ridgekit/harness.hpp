#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ridgekit/sampler.hpp"

namespace ridgekit {

struct ExperimentConfig {
    std::string target = "gaussian";
    int m = 1;
    std::string activation = "tanh";
    double zeta1 = 1.0, zeta2 = 2.0;
    double domain_radius = 8.0;  // truncated full-space domain
    std::string weight_family = "gaussian";
    double weight_lo = -1.0, weight_hi = 1.0;
    double gamma = 0.0;
    int k = 0;
    double p = 2.0;
    std::vector<int> n_grid = {16, 64, 256, 1024, 4096};
    std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
    // reconstruction sweep
    double grid_lo = -3.0, grid_hi = 3.0, grid_step = 0.25;
    TruncationParams trunc;
    // error quadrature
    int error_panels = 96;
    int error_order = 8;
    std::string output;

    WeightSpec weight_spec() const;
    Domain domain() const;
    void validate_rate() const;
};

/// || f - phi ||_{W^{k,p}(U,w)} on a composite Gauss-Legendre grid.
double network_error_norm(const Network& net, const TargetFunction& f,
                          const Domain& U, const WeightSpec& w, int k,
                          int panels = 96, int order = 8);

struct RateRow {
    int n = 0;
    std::vector<double> per_seed;
    double median = 0.0;
};

std::vector<RateRow> run_rate_experiment(const ExperimentConfig& cfg);

/// Ordinary least squares slope of log(error) against log(N).
double fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

struct RateBoundComponents {
    double Cp = 1.0;
    double rho_norm = 1.0;
    double C_weight = 1.0;
    int m = 1;
    int k = 0;
    double p = 2.0;
    double C_adm_modulus = 1.0;
    double barron = 1.0;
    double N = 1.0;
};

/// Cp ||rho|| C_w m^{k/p} pi^{(m+1)/4} / (|C_m| Gamma((m+1)/2)^{1/2})
///   * barron / N^{1 - 1/min(2,p)}
double rate_bound_rhs(const RateBoundComponents& c);

/// ceil(C2 m^{C3} eps^{-min(2,p)/(min(2,p)-1)}), with a relative-epsilon
/// nudge so that exact integers survive floating-point roundoff.
long long plan_neurons(double C2, double C3, int m, double p, double eps);

struct ReconRow {
    std::vector<double> u;
    double g = 0.0;
    double reconstruction = 0.0;
    double abs_error = 0.0;
    double imag_residue = 0.0;
    double refined = 0.0;
};

std::vector<ReconRow> run_reconstruction_experiment(const ExperimentConfig& cfg);

// CSV emission with fixed, documented column order
void write_rate_csv(const std::vector<RateRow>& rows,
                    const std::vector<uint64_t>& seeds, std::ostream& os);
void write_recon_csv(const std::vector<ReconRow>& rows, int m, std::ostream& os);
std::string format_double(double v);

/// Flat JSON run manifest: config echo, seeds, library version, wall time.
std::string run_manifest(const ExperimentConfig& cfg, double wall_time_s);

const char* library_version();

} // namespace ridgekit
