#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "ridgekit/errors.hpp"
#include "ridgekit/quadrature.hpp"
#include "ridgekit/sampler.hpp"

using namespace ridgekit;

TEST_CASE("student-t density values and normalization") {
    const double zero = 0.0;
    CHECK(student_t_pdf(1, &zero) == doctest::Approx(1.0 / M_PI).epsilon(1e-15));
    const double one = 1.0;
    CHECK(student_t_pdf(1, &one) ==
          doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-15));

    // normalization via the radial tan-substitution: the integral over R^m
    // becomes |S^{m-1}| Gamma((m+1)/2)/pi^{(m+1)/2} int_0^{pi/2} sin^{m-1}
    for (int m = 1; m <= 3; ++m) {
        const double surface =
            2.0 * std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m);
        const double mass =
            surface * std::tgamma(0.5 * (m + 1)) / std::pow(M_PI, 0.5 * (m + 1)) *
            adaptive_gk([&](double th) { return std::pow(std::sin(th), m - 1); },
                        0.0, 0.5 * M_PI, 1e-13, 1e-13);
        CHECK(std::abs(mass - 1.0) <= 1e-8);
    }
}

TEST_CASE("sampler determinism and the substream contract") {
    StudentTSampler s1(2, 42u), s2(2, 42u), s3(2, 43u);
    for (int i = 0; i < 32; ++i) {
        const auto a = s1.sample();
        const auto b = s2.sample();
        CHECK(a == b);
    }
    CHECK(s1.sample() != s3.sample());

    // indexed draws equal sequential draws
    StudentTSampler seq(1, 7u), idx(1, 7u);
    std::vector<double> a(1);
    double b;
    const auto first = seq.sample();
    idx.draw_pair_at(0, a.data(), &b);
    CHECK(first[0] == a[0]);
}

TEST_CASE("m=1 samples follow the standard Cauchy law") {
    StudentTSampler sampler(1, 1234u);
    const int n = 200000;
    std::vector<double> abs_draws(n), draws(n);
    for (int i = 0; i < n; ++i) {
        const double v = sampler.sample()[0];
        draws[i] = v;
        abs_draws[i] = std::abs(v);
    }
    std::sort(abs_draws.begin(), abs_draws.end());
    // |Cauchy| has median 1
    const double med = 0.5 * (abs_draws[n / 2 - 1] + abs_draws[n / 2]);
    CHECK(med == doctest::Approx(1.0).epsilon(0.01));

    // Kolmogorov-Smirnov against F(a) = 1/2 + atan(a)/pi
    std::sort(draws.begin(), draws.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double F = 0.5 + std::atan(draws[i]) / M_PI;
        ks = std::max(ks, std::abs(F - (i + 1.0) / n));
        ks = std::max(ks, std::abs(F - static_cast<double>(i) / n));
    }
    CHECK(ks <= 0.005);  // acceptance runs the tight 1e6-draw version
}

TEST_CASE("radial law for m = 2, 3 via equal-probability chi-square bins") {
    // radial CDF: m=2: 1 - (1+r^2)^{-1/2};  m=3: (2/pi)(atan r - r/(1+r^2))
    for (int m : {2, 3}) {
        auto radial_cdf = [m](double r) {
            if (m == 2) return 1.0 - 1.0 / std::sqrt(1.0 + r * r);
            return (2.0 / M_PI) * (std::atan(r) - r / (1.0 + r * r));
        };
        const int bins = 64;
        std::vector<double> edges(bins + 1, 0.0);
        for (int i = 1; i < bins; ++i) {
            // invert the CDF by bisection
            double lo = 0.0, hi = 1e9;
            const double target = static_cast<double>(i) / bins;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (radial_cdf(mid) < target ? lo : hi) = mid;
            }
            edges[i] = lo;
        }
        edges[bins] = 1e300;

        StudentTSampler sampler(m, 77u);
        const int n = 200000;
        std::vector<int> counts(bins, 0);
        for (int i = 0; i < n; ++i) {
            const auto a = sampler.sample();
            double r = 0.0;
            for (double v : a) r += v * v;
            r = std::sqrt(r);
            const auto it = std::upper_bound(edges.begin(), edges.end(), r);
            counts[std::min<int>(bins - 1, static_cast<int>(it - edges.begin()) - 1)]++;
        }
        double chi2 = 0.0;
        const double expect = static_cast<double>(n) / bins;
        for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
        // p > 0.001 ~ chi2 below the Wilson-Hilferty 0.999 quantile
        const int dof = bins - 1;
        const double z = 3.0902;  // Phi^{-1}(0.999)
        const double crit =
            dof * std::pow(1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof)), 3);
        CHECK(chi2 < crit);
    }
}

TEST_CASE("draw_neuron: zero target and finite real readouts") {
    auto pr = std::make_shared<RidgeletProfile>(1.0, 2.0);
    const AdmissiblePair pair = make_admissible_pair(pr, Activation::tanh, 1);
    StudentTSampler sampler(1, 5u);
    const NeuronDraw z = draw_neuron(pair, zero_target(1), sampler);
    CHECK(z.y[0] == 0.0);

    const TargetFunction g = gaussian_target(1);
    StudentTSampler s2(1, 6u);
    for (int i = 0; i < 1000; ++i) {
        const NeuronDraw d = draw_neuron(pair, g, s2);
        CHECK(std::isfinite(d.y[0]));
        CHECK(std::isfinite(d.a[0]));
        CHECK(std::isfinite(d.b));
    }
}

TEST_CASE("build_network: count, zero target, determinism") {
    auto pr = std::make_shared<RidgeletProfile>(1.0, 2.0);
    const AdmissiblePair pair = make_admissible_pair(pr, Activation::tanh, 1);
    const TargetFunction g = gaussian_target(1);

    StudentTSampler s1(1, 9u);
    const Network n1 = build_network(pair, g, 64, s1);
    CHECK(n1.neurons.size() == 64);

    StudentTSampler s2(1, 9u);
    const Network n2 = build_network(pair, g, 64, s2);
    std::stringstream a, b;
    save_network(n1, a);
    save_network(n2, b);
    CHECK(a.str() == b.str());

    StudentTSampler s3(1, 9u);
    const Network nz = build_network(pair, zero_target(1), 1, s3);
    const double u[1] = {0.7};
    CHECK(network_eval(nz, u)[0] == 0.0);
}

TEST_CASE("MC mean of the randomized neuron reproduces the target") {
    auto pr = std::make_shared<RidgeletProfile>(1.0, 2.0);
    const AdmissiblePair pair = make_admissible_pair(pr, Activation::tanh, 1);
    const TargetFunction g = gaussian_target(1);
    StudentTSampler sampler(1, 2024u);
    const int n = 20000;
    const double us[3] = {-1.0, 0.0, 1.0};
    double mean[3] = {0, 0, 0}, m2[3] = {0, 0, 0};
    const ActivationSpec& rho = *pair.activation;
    for (int i = 0; i < n; ++i) {
        const NeuronDraw d = draw_neuron(pair, g, sampler);
        for (int j = 0; j < 3; ++j) {
            const double r = d.y[0] * rho.eval(0, d.a[0] * us[j] - d.b);
            const double delta = r - mean[j];
            mean[j] += delta / (i + 1);
            m2[j] += delta * (r - mean[j]);
        }
    }
    for (int j = 0; j < 3; ++j) {
        const double se = std::sqrt(m2[j] / (n - 1.0) / n);
        double gv;
        g.eval(&us[j], &gv);
        CHECK(std::abs(mean[j] - gv) <= 4.0 * se);
    }
}

TEST_CASE("second-moment audit: zero target, scaling, bound holds") {
    auto pr = std::make_shared<RidgeletProfile>(1.0, 2.0);
    const AdmissiblePair pair = make_admissible_pair(pr, Activation::tanh, 1);
    const Domain U = Domain::truncated(1, 8.0);
    const WeightSpec w = WeightSpec::gaussian_w(0.0, 2.0);
    BarronQuad bq;
    bq.refine_check = false;

    {
        StudentTSampler s(1, 31u);
        const auto audit =
            second_moment_audit(pair, zero_target(1), w, U, 0, 2.0, 64, s, bq);
        CHECK(audit.estimate == 0.0);
        CHECK(audit.bound == 0.0);
    }
    const TargetFunction g = gaussian_target(1);
    StudentTSampler sa(1, 31u), sb(1, 31u);
    const auto a1 = second_moment_audit(pair, g, w, U, 0, 2.0, 512, sa, bq);
    const auto a2 =
        second_moment_audit(pair, scale_target(g, 2.0), w, U, 0, 2.0, 512, sb, bq);
    CHECK(a2.estimate == doctest::Approx(2.0 * a1.estimate).epsilon(1e-10));
    CHECK(a2.bound == doctest::Approx(2.0 * a1.bound).epsilon(1e-10));
    CHECK(a1.estimate <= a1.bound);
}
