#include "ridgekit/spaces.hpp"

#include <cmath>
#include <functional>

#include "ridgekit/errors.hpp"
#include "ridgekit/parallel.hpp"
#include "ridgekit/quadrature.hpp"

namespace ridgekit {

namespace {

using cd = std::complex<double>;

// tensor Gauss-Legendre over a box, any m <= 4 (weight constants go to m=4)
double tensor_integrate(const std::function<double(const double*)>& f,
                        const std::vector<std::array<double, 2>>& bounds,
                        int order) {
    const int m = static_cast<int>(bounds.size());
    if (m < 1 || m > 4) throw InvalidInput("tensor quadrature supports dim 1..4");
    const GaussLegendre& rule = gauss_legendre(order);
    double u[4];
    double jac = 1.0;
    for (const auto& b : bounds) jac *= 0.5 * (b[1] - b[0]);
    std::function<double(int)> rec = [&](int axis) -> double {
        double acc = 0.0;
        for (int i = 0; i < order; ++i) {
            u[axis] = 0.5 * (bounds[axis][0] + bounds[axis][1]) +
                      0.5 * (bounds[axis][1] - bounds[axis][0]) * rule.nodes[i];
            acc += rule.weights[i] * (axis + 1 < static_cast<int>(bounds.size())
                                          ? rec(axis + 1)
                                          : f(u));
        }
        return acc;
    };
    return rec(0) * jac;
}

std::vector<std::array<double, 2>> domain_bounds(const Domain& U) {
    if (U.kind == Domain::Kind::box) return U.bounds;
    std::vector<std::array<double, 2>> b(U.dim);
    for (auto& ax : b) ax = {-U.truncation_radius, U.truncation_radius};
    return b;
}

double sphere_surface(int m) {
    return 2.0 * std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m);
}

} // namespace

Domain Domain::box(std::vector<std::array<double, 2>> bounds) {
    Domain d;
    d.kind = Kind::box;
    d.dim = static_cast<int>(bounds.size());
    for (const auto& b : bounds)
        if (!(b[0] < b[1]) || !std::isfinite(b[0]) || !std::isfinite(b[1]))
            throw InvalidInput("box bounds must be finite and ordered");
    d.bounds = std::move(bounds);
    return d;
}

Domain Domain::truncated(int m, double radius) {
    if (m < 1 || !(radius > 0.0) || !std::isfinite(radius))
        throw InvalidInput("truncation radius must be positive and finite");
    Domain d;
    d.kind = Kind::full_space_truncated;
    d.dim = m;
    d.truncation_radius = radius;
    for (int l = 0; l < m; ++l) d.bounds.push_back({-radius, radius});
    return d;
}

double WeightSpec::w0(double s) const {
    switch (family) {
        case Family::gaussian:
            return std::exp(-0.5 * s * s) / std::sqrt(2.0 * M_PI);
        case Family::uniform:
            return (s >= lo && s <= hi) ? 1.0 / (hi - lo) : 0.0;
        case Family::cauchy:
            return 1.0 / (M_PI * (1.0 + s * s));
    }
    return 0.0;
}

double WeightSpec::w(const double* u, int m) const {
    double v = 1.0;
    for (int l = 0; l < m; ++l) v *= w0(u[l]);
    return v;
}

WeightSpec WeightSpec::gaussian_w(double gamma, double p) {
    WeightSpec w;
    w.family = Family::gaussian;
    w.gamma = gamma;
    w.p = p;
    return w;
}

WeightSpec WeightSpec::uniform_w(double lo, double hi, double gamma, double p) {
    if (!(lo < hi)) throw InvalidInput("uniform weight needs lo < hi");
    WeightSpec w;
    w.family = Family::uniform;
    w.lo = lo;
    w.hi = hi;
    w.gamma = gamma;
    w.p = p;
    return w;
}

WeightSpec WeightSpec::cauchy_w(double gamma, double p) {
    WeightSpec w;
    w.family = Family::cauchy;
    w.gamma = gamma;
    w.p = p;
    return w;
}

namespace {

double weight_integral(const Domain& U, const WeightSpec& w) {
    // Gaussian product weight over a truncated full space is radial:
    // int (1+r)^{gamma p} e^{-r^2/2} (2 pi)^{-m/2} r^{m-1} dr * |S^{m-1}|
    if (U.kind == Domain::Kind::full_space_truncated &&
        w.family == WeightSpec::Family::gaussian) {
        const int m = U.dim;
        const double norm = sphere_surface(m) / std::pow(2.0 * M_PI, 0.5 * m);
        auto radial = [&](double R) {
            return norm * adaptive_gk(
                              [&](double r) {
                                  return std::pow(1.0 + r, w.gamma * w.p) *
                                         std::exp(-0.5 * r * r) *
                                         std::pow(r, m - 1);
                              },
                              0.0, R, 1e-13, 1e-12);
        };
        const double v1 = radial(U.truncation_radius);
        const double v2 = radial(2.0 * U.truncation_radius);
        if (v2 - v1 > 1e-8 * v2 + 1e-14)
            throw DivergentWeight("weight integral grows under truncation doubling");
        return v1;
    }
    if (U.kind == Domain::Kind::full_space_truncated) {
        // for product weights, divergence of the full-space integral is
        // equivalent to divergence of the 1-D moment
        (void)one_dim_weight_constant(w);
    }
    const auto bounds = domain_bounds(U);
    if (U.dim == 1) {
        return adaptive_gk(
            [&](double s) {
                return std::pow(1.0 + std::abs(s), w.gamma * w.p) * w.w0(s);
            },
            bounds[0][0], bounds[0][1], 1e-13, 1e-12, 20000);
    }
    const int order = U.dim >= 4 ? 48 : 64;
    return tensor_integrate(
        [&](const double* u) {
            double r2 = 0.0;
            for (int l = 0; l < U.dim; ++l) r2 += u[l] * u[l];
            return std::pow(1.0 + std::sqrt(r2), w.gamma * w.p) * w.w(u, U.dim);
        },
        bounds, order);
}

} // namespace

double weight_constant(const Domain& U, const WeightSpec& w) {
    return std::pow(weight_integral(U, w), 1.0 / w.p);
}

double one_dim_weight_constant(const WeightSpec& w) {
    if (w.family == WeightSpec::Family::uniform) {
        const double v = adaptive_gk(
            [&](double s) {
                return std::pow(1.0 + std::abs(s), w.gamma * w.p) * w.w0(s);
            },
            w.lo, w.hi, 1e-13, 1e-12);
        return std::pow(v, 1.0 / w.p);
    }
    // full-line moment via s = tan(theta). Boundary refinement decides
    // convergence: the integrand behaves like a power of (pi/2 - theta) at
    // the edges, so successive increments shrink geometrically iff the
    // moment is finite; a geometric tail extrapolation recovers the limit.
    auto value_at = [&](double delta) {
        try {
            return adaptive_gk(
                [&](double th) {
                    const double s = std::tan(th);
                    const double sec2 = 1.0 + s * s;
                    return std::pow(1.0 + std::abs(s), w.gamma * w.p) * w.w0(s) *
                           sec2;
                },
                -0.5 * M_PI + delta, 0.5 * M_PI - delta, 1e-13, 1e-12, 20000);
        } catch (const QuadratureFailure&) {
            throw DivergentWeight("1-D weight moment diverges");
        }
    };
    const double v1 = value_at(1e-4);
    const double v2 = value_at(1e-8);
    const double v3 = value_at(1e-12);
    const double inc1 = v2 - v1;
    const double inc2 = v3 - v2;
    if (std::abs(inc2) > 0.5 * std::abs(inc1) + 1e-12 * std::abs(v3))
        throw DivergentWeight("1-D weight moment diverges");
    double limit = v3;
    if (std::abs(inc2) > 0.0 && inc1 != inc2) limit += inc2 * inc2 / (inc1 - inc2);
    return std::pow(limit, 1.0 / w.p);
}

double product_weight_bound(const WeightSpec& w, int m) {
    if (m < 1) throw InvalidInput("dimension must be >= 1");
    return one_dim_weight_constant(w) * std::pow(m, w.gamma + 1.0 / w.p);
}

double weighted_sobolev_norm(const TargetFunction& f, const Domain& U,
                             const WeightSpec& w, int k, int order_per_axis) {
    if (k > f.max_partial_order)
        throw MissingDerivatives("target partials available only to order " +
                                 std::to_string(f.max_partial_order));
    if (f.dim_in > 3) throw InvalidInput("weighted_sobolev_norm supports m <= 3");
    const auto alphas = multi_indices(f.dim_in, k);
    const auto bounds = domain_bounds(U);
    const int d = f.dim_out;
    double total = 0.0;
    std::vector<double> buf(d);
    for (const auto& alpha : alphas) {
        total += tensor_integrate(
            [&](const double* u) {
                f.partial(alpha.data(), u, buf.data());
                double q = 0.0;
                for (int i = 0; i < d; ++i) q += buf[i] * buf[i];
                return std::pow(std::sqrt(q), w.p) * w.w(u, f.dim_in);
            },
            bounds, order_per_axis);
    }
    return std::pow(total, 1.0 / w.p);
}

double weighted_ck_norm(const TargetFunction& f, const Domain& U, double gamma,
                        int k, int grid_per_axis) {
    if (k > f.max_partial_order)
        throw MissingDerivatives("target partials available only to order " +
                                 std::to_string(f.max_partial_order));
    const int m = f.dim_in;
    if (m > 3) throw InvalidInput("weighted_ck_norm supports m <= 3");
    const auto alphas = multi_indices(m, k);
    const auto bounds = domain_bounds(U);
    const int n = grid_per_axis;
    const int d = f.dim_out;
    std::vector<double> buf(d);
    double best = 0.0;
    double u[3];
    long total_pts = 1;
    for (int l = 0; l < m; ++l) total_pts *= n;
    for (const auto& alpha : alphas) {
        for (long idx = 0; idx < total_pts; ++idx) {
            long rem = idx;
            double r2 = 0.0;
            for (int l = 0; l < m; ++l) {
                const int i = rem % n;
                rem /= n;
                u[l] = bounds[l][0] + (bounds[l][1] - bounds[l][0]) * i / (n - 1);
                r2 += u[l] * u[l];
            }
            f.partial(alpha.data(), u, buf.data());
            double q = 0.0;
            for (int i = 0; i < d; ++i) q += buf[i] * buf[i];
            best = std::max(best, std::sqrt(q) /
                                      std::pow(1.0 + std::sqrt(r2), gamma));
        }
    }
    return best;
}

namespace {

// weighted L^2 mass of the reconstruction-normalized coefficient over the
// truncated (a, b) region, polar in a
double barron_sq(const RidgeletProfile& profile, const TargetFunction& g, int k,
                 double gamma, double a_max, int a_panels, int a_order,
                 double b_max, double b_step, int sphere_nodes) {
    const int m = g.dim_in;
    const int d = g.dim_out;
    const double z1 = profile.zeta1(), z2 = profile.zeta2();
    const SphereRule sphere = sphere_rule(m, sphere_nodes);
    const GaussLegendre& arule = gauss_legendre(a_order);
    const double P = gamma + k + 0.5 * (m + 1);

    // radial nodes
    std::vector<double> rn, rw;
    const double h = a_max / a_panels;
    for (int pa = 0; pa < a_panels; ++pa)
        for (int q = 0; q < a_order; ++q) {
            rn.push_back(pa * h + 0.5 * h * (1.0 + arule.nodes[q]));
            rw.push_back(0.5 * h * arule.weights[q]);
        }

    const size_t nv = sphere.nodes.size();
    const size_t nr = rn.size();
    const size_t K = static_cast<size_t>(2.0 * b_max / b_step) + 1;

    std::vector<double> slot(nv * nr, 0.0);
    parallel_for(nv * nr, [&](size_t idx) {
        const size_t iv = idx / nr, ir = idx % nr;
        const double r = rn[ir];
        if (r == 0.0) return;
        const auto& v = sphere.nodes[iv];

        // coefficient on the uniform b grid by segment-wise frequency rules
        // with incremental rotations (same pattern as the backprojection)
        std::vector<cd> C(K * d, cd{});
        const size_t seg = 256;
        double xi[3];
        cd gh[4];
        for (size_t k0 = 0; k0 < K; k0 += seg) {
            const size_t k1 = std::min(K, k0 + seg);
            double max_b = 0.0;
            for (size_t kk = k0; kk < k1; ++kk)
                max_b = std::max(max_b, std::abs(-b_max + kk * b_step));
            const int panels = std::max(3, static_cast<int>(max_b * (z2 - z1) / 4.0) + 1);
            const GaussLegendre& r8 = gauss_legendre(8);
            const double hh = (z2 - z1) / panels;
            const size_t nq = static_cast<size_t>(panels) * 8;
            std::vector<double> zq(nq);
            std::vector<cd> Hq(nq * d), rot(nq), del(nq);
            size_t qi = 0;
            for (int pp = 0; pp < panels; ++pp)
                for (int q = 0; q < 8; ++q, ++qi) {
                    const double z = z1 + pp * hh + 0.5 * hh * (1.0 + r8.nodes[q]);
                    zq[qi] = z;
                    double hp = profile.hat_psi(z);
                    const double wq = 0.5 * hh * r8.weights[q] * hp;
                    for (int l = 0; l < m; ++l) xi[l] = z * r * v[l];
                    g.fourier(xi, gh);
                    for (int i = 0; i < d; ++i) Hq[qi * d + i] = wq * gh[i];
                }
            const double b0 = -b_max + k0 * b_step;
            for (size_t q = 0; q < nq; ++q) {
                rot[q] = std::exp(cd(0.0, zq[q] * b0));
                del[q] = std::exp(cd(0.0, zq[q] * b_step));
            }
            for (size_t kk = k0; kk < k1; ++kk) {
                cd* Ck = &C[kk * d];
                for (size_t q = 0; q < nq; ++q) {
                    for (int i = 0; i < d; ++i) Ck[i] += Hq[q * d + i] * rot[q];
                    rot[q] *= del[q];
                }
            }
        }

        const double apow = std::pow(1.0 + r * r, P) * std::pow(r, m - 1);
        double acc = 0.0;
        const double inv2pi = 1.0 / (2.0 * M_PI);
        for (size_t kk = 0; kk < K; ++kk) {
            const double b = -b_max + kk * b_step;
            double q2 = 0.0;
            for (int i = 0; i < d; ++i) q2 += std::norm(C[kk * d + i] * inv2pi);
            const double wk = (kk == 0 || kk + 1 == K) ? 0.5 : 1.0;
            acc += wk * b_step * std::pow(1.0 + b * b, gamma + 1.0) * q2;
        }
        slot[idx] = sphere.weights[iv] * rw[ir] * apow * acc;
    });
    double total = 0.0;
    for (double s : slot) total += s;
    return total;
}

} // namespace

double barron_norm_estimate(const RidgeletProfile& profile, const TargetFunction& g,
                            int k, double gamma, const BarronQuad& quad) {
    const double base =
        barron_sq(profile, g, k, gamma, quad.a_max, quad.a_panels, quad.a_order,
                  quad.b_max, quad.b_step, quad.sphere_nodes);
    if (quad.refine_check) {
        const double fine = barron_sq(profile, g, k, gamma, 1.5 * quad.a_max,
                                      quad.a_panels + quad.a_panels / 2, quad.a_order,
                                      1.5 * quad.b_max, 0.5 * quad.b_step,
                                      quad.sphere_nodes);
        if (base == 0.0 && fine == 0.0) return 0.0;
        const double rel = std::abs(fine - base) / std::max(base, fine);
        if (rel > quad.refine_rel_tol)
            throw TruncationFailure("barron estimate unstable under refinement: rel=" +
                                    std::to_string(rel));
        return std::sqrt(fine);
    }
    return std::sqrt(base);
}

double barron_fourier_bound(const TargetFunction& f, const RidgeletProfile& profile,
                            double gamma, int k, double xi_max, int xi_order) {
    const int m = f.dim_in;
    const int c = static_cast<int>(std::ceil(gamma)) + 2;
    if (c > f.max_fourier_partial_order)
        throw MissingDerivatives("need Fourier partials to order " + std::to_string(c));
    if (m > 3) throw InvalidInput("barron_fourier_bound supports m <= 3");

    double max_int = 0.0;
    for (int j = 0; j <= c; ++j)
        max_int = std::max(max_int, profile.hat_psi_abs_integral(j));
    double cfact = 1.0;
    for (int i = 2; i <= c; ++i) cfact *= i;
    const double C1 = std::pow(2.0, 0.5 * std::ceil(gamma)) / std::sqrt(M_PI) *
                      cfact * max_int;

    const double z1 = profile.zeta1();
    const double expo = 0.5 * (4.0 * std::ceil(gamma) + 2.0 * k + m + 5.0);
    std::vector<std::array<double, 2>> bounds(m, {-xi_max, xi_max});
    const int d = f.dim_out;
    std::vector<cd> buf(d);
    double sum = 0.0;
    for (const auto& beta : multi_indices(m, c)) {
        const double integral = tensor_integrate(
            [&](const double* xi) {
                f.fourier_partial(beta.data(), xi, buf.data());
                double q = 0.0;
                for (int i = 0; i < d; ++i) q += std::norm(buf[i]);
                double r2 = 0.0;
                for (int l = 0; l < m; ++l) r2 += xi[l] * xi[l] / (z1 * z1);
                return q * std::pow(1.0 + r2, expo);
            },
            bounds, xi_order);
        sum += std::sqrt(integral);
    }
    return C1 / std::pow(z1, 0.5 * m) * sum;
}

} // namespace ridgekit
