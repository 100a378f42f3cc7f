#include "ridgekit/sampler.hpp"

#include <cmath>

#include "ridgekit/errors.hpp"
#include "ridgekit/parallel.hpp"
#include "ridgekit/quadrature.hpp"
#include "ridgekit/rng.hpp"

namespace ridgekit {

using cd = std::complex<double>;

double student_t_pdf(int m, const double* a) {
    if (m < 1) throw InvalidInput("dimension must be >= 1");
    double q = 0.0;
    for (int l = 0; l < m; ++l) q += a[l] * a[l];
    return std::tgamma(0.5 * (m + 1)) / std::pow(M_PI, 0.5 * (m + 1)) *
           std::pow(1.0 + q, -0.5 * (m + 1));
}

double student_t_pdf(int m, const std::vector<double>& a) {
    if (static_cast<int>(a.size()) != m)
        throw InvalidInput("student_t_pdf: dimension mismatch");
    return student_t_pdf(m, a.data());
}

StudentTSampler::StudentTSampler(int m, uint64_t seed) : m_(m), seed_(seed) {
    if (m < 1) throw InvalidInput("sampler dimension must be >= 1");
}

std::vector<double> StudentTSampler::sample() {
    std::vector<double> a(m_);
    double b;
    draw_pair_at(counter_++, a.data(), &b);
    return a;
}

void StudentTSampler::draw_pair_at(uint64_t index, double* a, double* b) const {
    RandomStream rs(substream_seed(seed_, index));
    // consumption order: z_1..z_m, w_a, z_b, w_b
    for (int l = 0; l < m_; ++l) a[l] = rs.normal();
    const double wa = std::abs(rs.normal());
    for (int l = 0; l < m_; ++l) a[l] /= wa;
    const double zb = rs.normal();
    const double wb = std::abs(rs.normal());
    *b = zb / wb;
}

uint64_t StudentTSampler::advance(uint64_t n) {
    const uint64_t base = counter_;
    counter_ += n;
    return base;
}

namespace {

void readout(const AdmissiblePair& pair, const TargetFunction& g, const double* a,
             double b, const SliceQuad& quad, double* y) {
    const int m = pair.m;
    const int d = g.dim_out;
    cd coef[4];
    ridgelet_coefficient(*pair.profile, g, std::span<const double>(a, m), b, coef,
                         quad);
    const double pa = student_t_pdf(m, a);
    const double pb = student_t_pdf(1, &b);
    const cd denom = pair.constant * pa * pb;
    for (int i = 0; i < d; ++i) y[i] = (coef[i] / denom).real();
}

} // namespace

NeuronDraw draw_neuron(const AdmissiblePair& pair, const TargetFunction& g,
                       StudentTSampler& sampler, const SliceQuad& quad) {
    if (sampler.dim() != pair.m)
        throw InvalidInput("sampler dimension does not match the pair");
    NeuronDraw draw;
    draw.a.resize(pair.m);
    draw.y.resize(g.dim_out);
    const uint64_t idx = sampler.advance(1);
    sampler.draw_pair_at(idx, draw.a.data(), &draw.b);
    readout(pair, g, draw.a.data(), draw.b, quad, draw.y.data());
    return draw;
}

Network build_network(const AdmissiblePair& pair, const TargetFunction& g, int N,
                      StudentTSampler& sampler, const SliceQuad& quad) {
    if (N < 1) throw InvalidInput("neuron count must be >= 1");
    if (sampler.dim() != pair.m)
        throw InvalidInput("sampler dimension does not match the pair");
    Network net;
    net.activation = pair.activation->kind;
    net.m = pair.m;
    net.d = g.dim_out;
    net.neurons.resize(N);
    const uint64_t base = sampler.advance(N);
    const double invN = 1.0 / N;
    parallel_for(static_cast<size_t>(N), [&](size_t n) {
        Neuron& neuron = net.neurons[n];
        neuron.a.resize(net.m);
        neuron.y.resize(net.d);
        sampler.draw_pair_at(base + n, neuron.a.data(), &neuron.b);
        readout(pair, g, neuron.a.data(), neuron.b, quad, neuron.y.data());
        for (double& v : neuron.y) v *= invN;  // 1/N average folded into readouts
    });
    return net;
}

namespace {

// || y rho(a.u - b) ||_{W^{k,p}(U,w)}^2 for a single neuron; m = 1 uses
// adaptive quadrature (resolves the 1/|a| transition layer), m >= 2 falls
// back to a tensor rule.
double neuron_wkp_sq(const ActivationSpec& rho, const double* a, double b,
                     const double* y, int m, int d, const Domain& U,
                     const WeightSpec& w, int k) {
    double ynorm2 = 0.0;
    for (int i = 0; i < d; ++i) ynorm2 += y[i] * y[i];
    if (ynorm2 == 0.0) return 0.0;
    const double ynorm = std::sqrt(ynorm2);

    const auto alphas = multi_indices(m, k);
    double total = 0.0;
    if (m == 1) {
        const double lo = U.bounds[0][0], hi = U.bounds[0][1];
        // per order j the integral is shared across all alpha with |alpha| = j
        std::vector<double> ij(k + 1, -1.0);
        for (const auto& alpha : alphas) {
            const int j = alpha[0];
            if (ij[j] < 0.0) {
                ij[j] = adaptive_gk(
                    [&](double u) {
                        return std::pow(std::abs(rho.eval(j, a[0] * u - b)), w.p) *
                               w.w0(u);
                    },
                    lo, hi, 1e-14, 1e-8, 20000);
            }
            total += std::pow(std::abs(std::pow(a[0], alpha[0])) * ynorm, w.p) *
                     ij[alpha[0]];
        }
    } else {
        std::vector<double> lo(m), hi(m);
        for (int l = 0; l < m; ++l) {
            lo[l] = U.bounds[l][0];
            hi[l] = U.bounds[l][1];
        }
        for (const auto& alpha : alphas) {
            int j = 0;
            double apow = 1.0;
            for (int l = 0; l < m; ++l) {
                j += alpha[l];
                for (int q = 0; q < alpha[l]; ++q) apow *= a[l];
            }
            const double integral = tensor_box_integrate(
                [&](const double* u) {
                    double dot = -b;
                    for (int l = 0; l < m; ++l) dot += a[l] * u[l];
                    return std::pow(std::abs(rho.eval(j, dot)), w.p) * w.w(u, m);
                },
                lo, hi, 48);
            total += std::pow(std::abs(apow) * ynorm, w.p) * integral;
        }
    }
    return std::pow(total, 2.0 / w.p);
}

} // namespace

SecondMomentAudit second_moment_audit(const AdmissiblePair& pair,
                                      const TargetFunction& g, const WeightSpec& w,
                                      const Domain& U, int k, double p,
                                      int n_samples, StudentTSampler& sampler,
                                      const BarronQuad& barron_quad) {
    if (n_samples < 1) throw InvalidInput("need at least one sample");
    if (w.p != p) {
        // the weight spec carries p; keep them consistent for callers that
        // pass p separately
        WeightSpec adjusted = w;
        adjusted.p = p;
        return second_moment_audit(pair, g, adjusted, U, k, p, n_samples, sampler,
                                   barron_quad);
    }
    const int m = pair.m;
    const int d = g.dim_out;
    const ActivationSpec& rho = *pair.activation;

    SecondMomentAudit audit;
    audit.rho_norm = growth_norm(rho, k, w.gamma);
    audit.weight_const = weight_constant(U, w);
    audit.barron = barron_norm_estimate(*pair.profile, g, k, w.gamma, barron_quad);
    audit.bound = std::pow(2.0, 4.0 + 1.0 / p) * M_PI * audit.rho_norm *
                  audit.weight_const * std::pow(m, k / p) *
                  std::pow(M_PI, 0.25 * (m + 1)) /
                  (std::abs(pair.constant) * std::sqrt(std::tgamma(0.5 * (m + 1)))) *
                  audit.barron;

    const uint64_t base = sampler.advance(n_samples);
    std::vector<double> sq(n_samples, 0.0);
    std::vector<double> ymax(n_samples, 0.0);
    parallel_for(static_cast<size_t>(n_samples), [&](size_t n) {
        std::vector<double> a(m), y(d);
        double b;
        sampler.draw_pair_at(base + n, a.data(), &b);
        readout(pair, g, a.data(), b, SliceQuad{}, y.data());
        sq[n] = neuron_wkp_sq(rho, a.data(), b, y.data(), m, d, U, w, k);
        double yn = 0.0;
        for (int i = 0; i < d; ++i) yn += y[i] * y[i];
        ymax[n] = std::sqrt(yn);
    });
    double mean = 0.0, top = 0.0;
    for (double v : sq) {
        mean += v;
        top = std::max(top, v);
    }
    mean /= n_samples;
    double var = 0.0;
    for (double v : sq) var += (v - mean) * (v - mean);
    var /= std::max(1, n_samples - 1);
    audit.estimate = std::sqrt(mean);
    audit.estimate_std_err = std::sqrt(var / n_samples);
    for (double v : ymax) audit.max_readout = std::max(audit.max_readout, v);
    audit.max_sq_share = (mean > 0.0) ? top / (mean * n_samples) : 0.0;
    return audit;
}

} // namespace ridgekit
