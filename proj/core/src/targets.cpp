#include "ridgekit/targets.hpp"

#include <cmath>
#include <sstream>

#include "ridgekit/errors.hpp"

namespace ridgekit {

double hermite_he(int n, double x) {
    if (n < 0) throw InvalidInput("hermite order must be >= 0");
    double h0 = 1.0, h1 = x;
    if (n == 0) return h0;
    if (n == 1) return h1;
    for (int k = 1; k < n; ++k) {
        const double h2 = x * h1 - k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

double TargetFunction::eval1(const double* u) const {
    double v;
    eval(u, &v);
    return v;
}

std::complex<double> TargetFunction::fourier1(const double* xi) const {
    std::complex<double> v;
    fourier(xi, &v);
    return v;
}

TargetFunction gaussian_target(int m, double amplitude, double sigma) {
    if (m < 1 || sigma <= 0.0) throw InvalidInput("gaussian_target: m >= 1, sigma > 0");
    TargetFunction t;
    t.dim_in = m;
    t.dim_out = 1;
    t.max_partial_order = 8;
    t.max_fourier_partial_order = 8;
    const double inv_s = 1.0 / sigma;

    t.eval = [m, amplitude, inv_s](const double* u, double* out) {
        double q = 0.0;
        for (int l = 0; l < m; ++l) q += u[l] * u[l];
        *out = amplitude * std::exp(-0.5 * q * inv_s * inv_s);
    };
    // d^n/du^n e^{-u^2/(2 s^2)} = (-1/s)^n He_n(u/s) e^{-u^2/(2 s^2)}
    t.partial = [m, amplitude, inv_s](const int* alpha, const double* u, double* out) {
        double v = amplitude;
        for (int l = 0; l < m; ++l) {
            const double x = u[l] * inv_s;
            v *= std::pow(-inv_s, alpha[l]) * hermite_he(alpha[l], x) *
                 std::exp(-0.5 * x * x);
        }
        *out = v;
    };
    // per axis: sigma sqrt(2 pi) e^{-sigma^2 xi^2 / 2}
    const double famp = amplitude;
    t.fourier = [m, famp, sigma](const double* xi, std::complex<double>* out) {
        double v = famp;
        for (int l = 0; l < m; ++l)
            v *= sigma * std::sqrt(2.0 * M_PI) * std::exp(-0.5 * sigma * sigma * xi[l] * xi[l]);
        *out = v;
    };
    t.fourier_partial = [m, famp, sigma](const int* beta, const double* xi,
                                         std::complex<double>* out) {
        double v = famp;
        for (int l = 0; l < m; ++l) {
            const double y = sigma * xi[l];
            v *= sigma * std::sqrt(2.0 * M_PI) * std::pow(-sigma, beta[l]) *
                 hermite_he(beta[l], y) * std::exp(-0.5 * y * y);
        }
        *out = v;
    };
    return t;
}

TargetFunction hermite_gaussian_target(int m, const std::vector<int>& orders,
                                       double amplitude) {
    if (static_cast<int>(orders.size()) != m)
        throw InvalidInput("hermite_gaussian_target: one order per axis");
    TargetFunction t;
    t.dim_in = m;
    t.dim_out = 1;
    t.max_partial_order = 8;
    t.max_fourier_partial_order = 8;

    // He_q(u) e^{-u^2/2}; derivative: d^j -> (-1)^j He_{q+j}(u) e^{-u^2/2}
    t.eval = [m, orders, amplitude](const double* u, double* out) {
        double v = amplitude;
        for (int l = 0; l < m; ++l)
            v *= hermite_he(orders[l], u[l]) * std::exp(-0.5 * u[l] * u[l]);
        *out = v;
    };
    t.partial = [m, orders, amplitude](const int* alpha, const double* u, double* out) {
        double v = amplitude;
        for (int l = 0; l < m; ++l) {
            const double sign = (alpha[l] % 2 == 0) ? 1.0 : -1.0;
            v *= sign * hermite_he(orders[l] + alpha[l], u[l]) *
                 std::exp(-0.5 * u[l] * u[l]);
        }
        *out = v;
    };
    // He_q(u) e^{-u^2/2} = (-1)^q (d/du)^q e^{-u^2/2}, so the FT per axis is
    // sqrt(2 pi) (-i)^q xi^q e^{-xi^2/2}
    t.fourier = [m, orders, amplitude](const double* xi, std::complex<double>* out) {
        std::complex<double> v = amplitude;
        const std::complex<double> mi(0.0, -1.0);
        for (int l = 0; l < m; ++l) {
            std::complex<double> phase = 1.0;
            for (int q = 0; q < orders[l]; ++q) phase *= mi;
            v *= std::sqrt(2.0 * M_PI) * phase * std::pow(xi[l], orders[l]) *
                 std::exp(-0.5 * xi[l] * xi[l]);
        }
        *out = v;
    };
    // Leibniz on xi^q e^{-xi^2/2} with
    // (d/dxi)^n e^{-xi^2/2} = (-1)^n He_n(xi) e^{-xi^2/2}
    t.fourier_partial = [m, orders, amplitude](const int* beta, const double* xi,
                                               std::complex<double>* out) {
        std::complex<double> v = amplitude;
        const std::complex<double> mi(0.0, -1.0);
        for (int l = 0; l < m; ++l) {
            const int q = orders[l], c = beta[l];
            std::complex<double> phase = 1.0;
            for (int i = 0; i < q; ++i) phase *= mi;
            double sum = 0.0;
            double binom = 1.0;   // C(c, j)
            double falling = 1.0; // q (q-1) ... (q-j+1)
            for (int j = 0; j <= std::min(c, q); ++j) {
                const double sign = ((c - j) % 2 == 0) ? 1.0 : -1.0;
                sum += binom * falling * std::pow(xi[l], q - j) * sign *
                       hermite_he(c - j, xi[l]);
                binom *= static_cast<double>(c - j) / (j + 1);
                falling *= (q - j);
            }
            v *= std::sqrt(2.0 * M_PI) * phase * sum * std::exp(-0.5 * xi[l] * xi[l]);
        }
        *out = v;
    };
    return t;
}

TargetFunction zero_target(int m) {
    TargetFunction t;
    t.dim_in = m;
    t.dim_out = 1;
    t.max_partial_order = 8;
    t.max_fourier_partial_order = 8;
    t.eval = [](const double*, double* out) { *out = 0.0; };
    t.partial = [](const int*, const double*, double* out) { *out = 0.0; };
    t.fourier = [](const double*, std::complex<double>* out) { *out = 0.0; };
    t.fourier_partial = [](const int*, const double*, std::complex<double>* out) {
        *out = 0.0;
    };
    return t;
}

TargetFunction scale_target(const TargetFunction& f, double c) {
    TargetFunction t = f;
    auto e = f.eval;
    auto p = f.partial;
    auto ft = f.fourier;
    auto fp = f.fourier_partial;
    const int d = f.dim_out;
    t.eval = [e, c, d](const double* u, double* out) {
        e(u, out);
        for (int i = 0; i < d; ++i) out[i] *= c;
    };
    t.partial = [p, c, d](const int* a, const double* u, double* out) {
        p(a, u, out);
        for (int i = 0; i < d; ++i) out[i] *= c;
    };
    t.fourier = [ft, c, d](const double* xi, std::complex<double>* out) {
        ft(xi, out);
        for (int i = 0; i < d; ++i) out[i] *= c;
    };
    t.fourier_partial = [fp, c, d](const int* b, const double* xi,
                                   std::complex<double>* out) {
        fp(b, xi, out);
        for (int i = 0; i < d; ++i) out[i] *= c;
    };
    return t;
}

TargetFunction add_targets(const TargetFunction& f, const TargetFunction& g) {
    if (f.dim_in != g.dim_in || f.dim_out != g.dim_out)
        throw InvalidInput("add_targets: dimension mismatch");
    TargetFunction t = f;
    t.max_partial_order = std::min(f.max_partial_order, g.max_partial_order);
    t.max_fourier_partial_order =
        std::min(f.max_fourier_partial_order, g.max_fourier_partial_order);
    const int d = f.dim_out;
    auto fe = f.eval, ge = g.eval;
    t.eval = [fe, ge, d](const double* u, double* out) {
        double tmp[4];
        fe(u, out);
        ge(u, tmp);
        for (int i = 0; i < d; ++i) out[i] += tmp[i];
    };
    auto fp = f.partial, gp = g.partial;
    t.partial = [fp, gp, d](const int* a, const double* u, double* out) {
        double tmp[4];
        fp(a, u, out);
        gp(a, u, tmp);
        for (int i = 0; i < d; ++i) out[i] += tmp[i];
    };
    auto ff = f.fourier, gf = g.fourier;
    t.fourier = [ff, gf, d](const double* xi, std::complex<double>* out) {
        std::complex<double> tmp[4];
        ff(xi, out);
        gf(xi, tmp);
        for (int i = 0; i < d; ++i) out[i] += tmp[i];
    };
    auto ffp = f.fourier_partial, gfp = g.fourier_partial;
    t.fourier_partial = [ffp, gfp, d](const int* b, const double* xi,
                                      std::complex<double>* out) {
        std::complex<double> tmp[4];
        ffp(b, xi, out);
        gfp(b, xi, tmp);
        for (int i = 0; i < d; ++i) out[i] += tmp[i];
    };
    return t;
}

TargetFunction target_by_name(const std::string& id, int m) {
    std::string head = id;
    std::string args;
    if (auto pos = id.find(':'); pos != std::string::npos) {
        head = id.substr(0, pos);
        args = id.substr(pos + 1);
    }
    double amp = 1.0, sigma = 1.0;
    std::vector<int> orders(m, 0);
    std::stringstream ss(args);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidInput("bad target argument: " + kv);
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "amp") amp = std::stod(val);
        else if (key == "sigma") sigma = std::stod(val);
        else if (key == "orders") {
            orders.clear();
            std::stringstream os(val);
            std::string o;
            while (std::getline(os, o, '|')) orders.push_back(std::stoi(o));
        } else {
            throw InvalidInput("unknown target argument: " + key);
        }
    }
    if (head == "gaussian") return gaussian_target(m, amp, sigma);
    if (head == "hermite") return hermite_gaussian_target(m, orders, amp);
    if (head == "zero") return zero_target(m);
    throw InvalidInput("unknown target '" + head + "'");
}

} // namespace ridgekit
