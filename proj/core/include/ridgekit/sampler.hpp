#pragma once

#include <cstdint>
#include <vector>

#include "ridgekit/network.hpp"
#include "ridgekit/ridgelet.hpp"
#include "ridgekit/spaces.hpp"

namespace ridgekit {

/// Student-t (nu = 1) density Gamma((m+1)/2) / pi^{(m+1)/2} (1+||a||^2)^{-(m+1)/2}.
double student_t_pdf(int m, const double* a);
double student_t_pdf(int m, const std::vector<double>& a);

/// Deterministic Student-t sampler. Draw n is generated from substream n of
/// the master seed (splitmix64 derivation; see rng.hpp), so parallel and
/// sequential consumption produce identical values. Each draw is an
/// m-variate standard Gaussian divided by |N(0,1)| (the nu = 1 multivariate-t
/// construction); the pair variant appends an independent t_1 bias.
class StudentTSampler {
public:
    StudentTSampler(int m, uint64_t seed);

    int dim() const { return m_; }
    uint64_t seed() const { return seed_; }
    uint64_t counter() const { return counter_; }

    /// sequential t_m draw (advances the counter)
    std::vector<double> sample();

    /// draw (a, b) ~ t_m (x) t_1 from substream `index`
    void draw_pair_at(uint64_t index, double* a, double* b) const;

    /// reserve n sequential indices and return the first
    uint64_t advance(uint64_t n);

private:
    int m_;
    uint64_t seed_;
    uint64_t counter_ = 0;
};

struct NeuronDraw {
    std::vector<double> a;
    double b = 0.0;
    std::vector<double> y;
};

/// One randomized neuron: (a,b) ~ t_m (x) t_1 and readout
/// y = Re(coef(a,b) / (C_m p_a(a) p_b(b))) with the reconstruction-normalized
/// ridgelet coefficient via the slice route.
NeuronDraw draw_neuron(const AdmissiblePair& pair, const TargetFunction& g,
                       StudentTSampler& sampler, const SliceQuad& quad = {});

/// N-neuron network phi_N = (1/N) sum R_n with the averaging folded into the
/// stored readouts. Draw n uses substream (base + n), deterministically.
Network build_network(const AdmissiblePair& pair, const TargetFunction& g, int N,
                      StudentTSampler& sampler, const SliceQuad& quad = {});

struct SecondMomentAudit {
    double estimate = 0.0;        // MC estimate of E[||R_1||^2_{W^{k,p}}]^{1/2}
    double estimate_std_err = 0.0;  // standard error of the squared-norm mean
    double bound = 0.0;           // explicit constant chain, Barron factor included
    double barron = 0.0;
    double weight_const = 0.0;
    double rho_norm = 0.0;
    // extreme-draw sensitivity diagnostics (readouts are not clipped)
    double max_readout = 0.0;
    double max_sq_share = 0.0;  // largest single draw's share of the mean
};

/// Monte-Carlo second moment of a randomized neuron in W^{k,p}(U,w) against
/// the explicit bound 2^{4+1/p} pi ||rho|| C_w m^{k/p} pi^{(m+1)/4} /
/// (|C_m| Gamma((m+1)/2)^{1/2}) * barron_norm_estimate.
SecondMomentAudit second_moment_audit(const AdmissiblePair& pair,
                                      const TargetFunction& g, const WeightSpec& w,
                                      const Domain& U, int k, double p,
                                      int n_samples, StudentTSampler& sampler,
                                      const BarronQuad& barron_quad = {});

} // namespace ridgekit
