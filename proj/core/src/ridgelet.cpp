#include "ridgekit/ridgelet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#if defined(__SIZEOF_FLOAT128__)
#include <quadmath.h>
#endif

#include "ridgekit/errors.hpp"
#include "ridgekit/parallel.hpp"
#include "ridgekit/quadrature.hpp"

namespace ridgekit {

using cd = std::complex<double>;

namespace {

double bump(double xi, double z1, double z2) {
    if (xi <= z1 || xi >= z2) return 0.0;
    return std::exp(-1.0 / ((xi - z1) * (z2 - xi)));
}

cd bump_c(cd z, double z1, double z2) {
    return std::exp(-1.0 / ((z - z1) * (z2 - z)));
}

} // namespace

struct RidgeletProfile::Cache {
    double step = 0.0;
    std::vector<cd> values;  // psi on s = 0, step, ..., main_radius
    double tail_start = 0.0;
    double tail_step = 0.0;
    std::vector<cd> tail;  // psi on the far tail, where |psi| < ~1e-18
};

namespace {

using CacheKey = std::tuple<double, double, double, double, double, double, int, int>;

std::shared_ptr<const RidgeletProfile::Cache> build_cache(double z1, double z2,
                                                          const ProfileParams& p) {
    auto cache = std::make_shared<RidgeletProfile::Cache>();
    cache->step = p.step;
    const double main_radius = std::min(p.s_max, p.tail_start);
    const size_t n = static_cast<size_t>(std::llround(main_radius / p.step)) + 1;
    cache->values.assign(n, cd{});

    // The whole frequency-side setup runs in long double: the far tail of psi
    // sits below the double-precision cancellation floor of these oscillatory
    // sums (phases reach ~2000 rad, so even node coordinates need the extra
    // mantissa), and the order-5 moment integrates s^5 against that tail.
    using cld = std::complex<long double>;
    const GaussLegendre& rule = gauss_legendre(p.build_order);
    const int panels = std::max(
        p.build_panels,
        static_cast<int>(p.s_max * (z2 - z1) / (2.0 * M_PI) * 1.8) + 1);
    std::vector<long double> zeta, w;
    zeta.reserve(panels * p.build_order);
    w.reserve(panels * p.build_order);
    const long double z1l = z1, z2l = z2;
    const long double h = (z2l - z1l) / panels;
    auto bump_ld = [&](long double x) -> long double {
        if (x <= z1l || x >= z2l) return 0.0L;
        return std::exp(-1.0L / ((x - z1l) * (z2l - x)));
    };
    for (int pa = 0; pa < panels; ++pa) {
        const long double lo = z1l + pa * h;
        for (int q = 0; q < p.build_order; ++q) {
            const long double x =
                lo + 0.5L * h * (1.0L + static_cast<long double>(rule.nodes[q]));
            zeta.push_back(x);
            w.push_back(0.5L * h * static_cast<long double>(rule.weights[q]) *
                        bump_ld(x));
        }
    }
    const size_t nq = zeta.size();

    // chunked incremental rotations: e^{i s zeta} advanced by e^{i step zeta},
    // re-anchored with direct cos/sin every 512 grid points to kill drift
    const long double stepl = p.step;
    const size_t chunk = 4096;
    const size_t nchunks = (n + chunk - 1) / chunk;
    parallel_for(nchunks, [&](size_t c) {
        const size_t k0 = c * chunk;
        const size_t k1 = std::min(n, k0 + chunk);
        std::vector<cld> rot(nq), delta(nq);
        for (size_t q = 0; q < nq; ++q) {
            const long double ph = stepl * zeta[q];
            delta[q] = cld(std::cos(ph), std::sin(ph));
        }
        for (size_t k = k0; k < k1; ++k) {
            if ((k - k0) % 512 == 0) {
                for (size_t q = 0; q < nq; ++q) {
                    const long double ph =
                        static_cast<long double>(k) * stepl * zeta[q];
                    rot[q] = cld(std::cos(ph), std::sin(ph));
                }
            }
            cld acc{};
            for (size_t q = 0; q < nq; ++q) {
                acc += w[q] * rot[q];
                rot[q] *= delta[q];
            }
            acc /= 2.0L * static_cast<long double>(M_PI);
            cache->values[k] = cd(static_cast<double>(acc.real()),
                                  static_cast<double>(acc.imag()));
        }
    });

    // Far tail in quad precision. Beyond ~600 the true |psi| drops under the
    // long-double cancellation floor of the oscillatory sums, yet the order-5
    // moment multiplies the tail by s^5, so those digits have to be real.
    // Incremental rotations keep the quad trig count per chunk at one anchor.
    if (p.s_max > main_radius) {
#if defined(__SIZEOF_FLOAT128__)
        using qreal = __float128;
        auto qcos = [](qreal x) { return cosq(x); };
        auto qsin = [](qreal x) { return sinq(x); };
#else
        using qreal = long double;
        auto qcos = [](qreal x) { return std::cos(x); };
        auto qsin = [](qreal x) { return std::sin(x); };
#endif
        std::vector<qreal> zq(nq), wq(nq);
        for (size_t q = 0; q < nq; ++q) {
            zq[q] = static_cast<qreal>(zeta[q]);
            wq[q] = static_cast<qreal>(w[q]);
        }
        cache->tail_start = main_radius;
        cache->tail_step = p.tail_step;
        const size_t nt =
            static_cast<size_t>(std::llround((p.s_max - main_radius) / p.tail_step)) + 1;
        cache->tail.assign(nt, cd{});
        const size_t tail_chunk = 128;
        const size_t ntc = (nt + tail_chunk - 1) / tail_chunk;
        parallel_for(ntc, [&](size_t c) {
            const size_t i0 = c * tail_chunk;
            const size_t i1 = std::min(nt, i0 + tail_chunk);
            std::vector<qreal> rot_re(nq), rot_im(nq), del_re(nq), del_im(nq);
            for (size_t q = 0; q < nq; ++q) {
                const qreal s0 = static_cast<qreal>(main_radius) +
                                 static_cast<qreal>(i0) *
                                     static_cast<qreal>(p.tail_step);
                rot_re[q] = qcos(s0 * zq[q]);
                rot_im[q] = qsin(s0 * zq[q]);
                const qreal dph = static_cast<qreal>(p.tail_step) * zq[q];
                del_re[q] = qcos(dph);
                del_im[q] = qsin(dph);
            }
            for (size_t i = i0; i < i1; ++i) {
                qreal re = 0, im = 0;
                for (size_t q = 0; q < nq; ++q) {
                    re += wq[q] * rot_re[q];
                    im += wq[q] * rot_im[q];
                    const qreal nr = rot_re[q] * del_re[q] - rot_im[q] * del_im[q];
                    rot_im[q] = rot_re[q] * del_im[q] + rot_im[q] * del_re[q];
                    rot_re[q] = nr;
                }
                const qreal twopi = 2 * static_cast<qreal>(M_PI);
                cache->tail[i] = cd(static_cast<double>(re / twopi),
                                    static_cast<double>(im / twopi));
            }
        });
    }
    return cache;
}

std::shared_ptr<const RidgeletProfile::Cache> cache_for(double z1, double z2,
                                                        const ProfileParams& p) {
    static std::map<CacheKey, std::shared_ptr<const RidgeletProfile::Cache>> memo;
    static std::mutex mutex;
    const CacheKey key{z1,          z2,          p.s_max,        p.step,
                       p.tail_start, p.tail_step, p.build_panels, p.build_order};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    auto built = build_cache(z1, z2, p);
    std::lock_guard<std::mutex> lock(mutex);
    auto [it, inserted] = memo.emplace(key, built);
    return it->second;
}

} // namespace

RidgeletProfile::RidgeletProfile(double zeta1, double zeta2, ProfileParams params)
    : zeta1_(zeta1), zeta2_(zeta2), params_(params) {
    if (!(zeta1 > 0.0) || !(zeta2 > zeta1))
        throw InvalidSupport("require 0 < zeta1 < zeta2");
    cache_ = cache_for(zeta1, zeta2, params);
}

double RidgeletProfile::s_max() const { return params_.s_max; }

double RidgeletProfile::hat_psi(double xi) const { return bump(xi, zeta1_, zeta2_); }

double RidgeletProfile::hat_psi_derivative(int j, double xi) const {
    if (j < 0) throw InvalidInput("derivative order must be >= 0");
    if (j == 0) return hat_psi(xi);
    const double dist = std::min(xi - zeta1_, zeta2_ - xi);
    if (dist <= 1e-4) return 0.0; // bump and all derivatives are ~exp(-1/dist)
    const double r = 0.5 * dist;
    const int M = 64;
    cd acc{};
    for (int k = 0; k < M; ++k) {
        const double th = 2.0 * M_PI * k / M;
        const cd z = xi + r * std::exp(cd(0.0, th));
        acc += bump_c(z, zeta1_, zeta2_) * std::exp(cd(0.0, -j * th));
    }
    double jfact = 1.0;
    for (int i = 2; i <= j; ++i) jfact *= i;
    return (jfact / (M * std::pow(r, j))) * acc.real();
}

double RidgeletProfile::hat_psi_abs_integral(int j) const {
    return composite_gl(
        [&](double xi) { return std::abs(hat_psi_derivative(j, xi)); }, zeta1_,
        zeta2_, 64, 8);
}

namespace {

// Catmull-Rom on a uniform grid; first_reflected conjugate-mirrors the
// missing left neighbor (psi(-s) = conj(psi(s))), ends clamp linearly.
cd catmull_interp(const std::vector<cd>& v, double x, bool first_reflected) {
    const size_t n = v.size();
    if (x > static_cast<double>(n - 1)) return cd{};
    if (x >= static_cast<double>(n - 2)) {
        const size_t k = n - 2;
        const double t = x - k;
        return v[k] * (1.0 - t) + v[k + 1] * t;
    }
    const size_t k = static_cast<size_t>(x);
    const double t = x - k;
    const cd ym1 = (k == 0) ? (first_reflected ? std::conj(v[1]) : v[0]) : v[k - 1];
    const cd y0 = v[k];
    const cd y1 = v[k + 1];
    const cd y2 = v[k + 2];
    const cd a = -0.5 * ym1 + 1.5 * y0 - 1.5 * y1 + 0.5 * y2;
    const cd b = ym1 - 2.5 * y0 + 2.0 * y1 - 0.5 * y2;
    const cd c = 0.5 * (y1 - ym1);
    return ((a * t + b) * t + c) * t + y0;
}

} // namespace

std::complex<double> RidgeletProfile::psi(double s) const {
    const double as = std::abs(s);
    const Cache& cache = *cache_;
    const double main_end = (cache.values.size() - 1) * cache.step;
    cd val;
    if (as <= main_end) {
        val = catmull_interp(cache.values, as / cache.step, true);
    } else if (!cache.tail.empty()) {
        val = catmull_interp(cache.tail, (as - cache.tail_start) / cache.tail_step,
                             false);
    } else {
        return cd{};
    }
    return s >= 0.0 ? val : std::conj(val);
}

std::complex<double> RidgeletProfile::psi_quadrature(double s) const {
    // the bump's flat edges need panels regardless of the oscillation count
    const int panels =
        std::max(16, static_cast<int>(std::abs(s) * (zeta2_ - zeta1_) / 4.0) + 1);
    const cd val = composite_gl(
        [&](double xi) {
            return bump(xi, zeta1_, zeta2_) * std::exp(cd(0.0, s * xi));
        },
        zeta1_, zeta2_, panels, 8);
    return val / (2.0 * M_PI);
}

double RidgeletProfile::moment(int j) const {
    if (j < 0 || j > 8) throw InvalidInput("moment order must be in 0..8");
    // int_{-S}^{S} s^j psi ds = int_0^S s^j (psi(s) + (-1)^j conj(psi(s))) ds,
    // composite Simpson per cache segment (interval counts are even by
    // construction)
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    auto segment = [&](const std::vector<cd>& v, double start, double h) -> cd {
        cd acc{};
        const size_t n = v.size();
        for (size_t k = 0; k < n; ++k) {
            const double s = start + k * h;
            const cd f = std::pow(s, j) * (v[k] + sign * std::conj(v[k]));
            const double w =
                (k == 0 || k + 1 == n) ? 1.0 : ((k % 2 == 1) ? 4.0 : 2.0);
            acc += w * f;
        }
        return acc * (h / 3.0);
    };
    cd total = segment(cache_->values, 0.0, cache_->step);
    if (!cache_->tail.empty())
        total += segment(cache_->tail, cache_->tail_start, cache_->tail_step);
    return std::abs(total);
}

std::complex<double> admissibility_constant(
    const RidgeletProfile& profile,
    const std::function<std::complex<double>(double)>& density, int m) {
    if (m < 1) throw InvalidInput("dimension must be >= 1");
    const cd integral = adaptive_gk_complex(
        [&](double xi) {
            return profile.hat_psi(xi) * density(xi) / std::pow(std::abs(xi), m);
        },
        profile.zeta1(), profile.zeta2(), 1e-14, 1e-12);
    return std::pow(2.0 * M_PI, m - 1) * integral;
}

std::complex<double> admissibility_constant(const RidgeletProfile& profile,
                                            const ActivationSpec& activation,
                                            int m) {
    const cd c = admissibility_constant(
        profile, [&](double xi) { return activation.fourier_density(xi); }, m);
    if (std::abs(c) < 1e-14)
        throw DegenerateAdmissibility("admissibility constant vanishes for " +
                                      std::string(activation.name));
    return c;
}

AdmissiblePair make_admissible_pair(std::shared_ptr<const RidgeletProfile> profile,
                                    Activation kind, int m) {
    AdmissiblePair pair;
    pair.profile = std::move(profile);
    pair.activation = &activation(kind);
    pair.m = m;
    pair.constant = admissibility_constant(*pair.profile, *pair.activation, m);
    return pair;
}

namespace {

double norm2(std::span<const double> a) {
    double q = 0.0;
    for (double x : a) q += x * x;
    return std::sqrt(q);
}

} // namespace

void ridgelet_coefficient(const RidgeletProfile& profile, const TargetFunction& g,
                          std::span<const double> a, double b,
                          std::complex<double>* out, const SliceQuad& quad) {
    const int m = g.dim_in;
    const int d = g.dim_out;
    if (static_cast<int>(a.size()) != m)
        throw InvalidInput("ridgelet coefficient: dim mismatch");
    for (int i = 0; i < d; ++i) out[i] = cd{};
    if (std::abs(b) > quad.b_cutoff) return; // coefficient below ~1e-18 relative

    const double z1 = profile.zeta1(), z2 = profile.zeta2();
    const int panels = std::max(
        quad.base_panels,
        static_cast<int>(std::abs(b) * (z2 - z1) / quad.panel_rads) + 1);
    const GaussLegendre& rule = gauss_legendre(quad.order);
    const double h = (z2 - z1) / panels;
    double xi[3];
    cd ghat[4];
    for (int pa = 0; pa < panels; ++pa) {
        const double lo = z1 + pa * h;
        for (int q = 0; q < quad.order; ++q) {
            const double z = lo + 0.5 * h * (1.0 + rule.nodes[q]);
            const double w = 0.5 * h * rule.weights[q];
            const double hp = bump(z, z1, z2);
            if (hp == 0.0) continue;
            for (int l = 0; l < m; ++l) xi[l] = z * a[l];
            g.fourier(xi, ghat);
            const cd phase = std::exp(cd(0.0, z * b)) * (w * hp);
            for (int i = 0; i < d; ++i) out[i] += phase * ghat[i];
        }
    }
    const double inv2pi = 1.0 / (2.0 * M_PI);
    for (int i = 0; i < d; ++i) out[i] *= inv2pi;
}

void ridgelet_transform_slice(const RidgeletProfile& profile,
                              const TargetFunction& g, std::span<const double> a,
                              double b, std::complex<double>* out,
                              const SliceQuad& quad) {
    const double na = norm2(a);
    if (na == 0.0) throw InvalidDirection("slice route requires a != 0");
    ridgelet_coefficient(profile, g, a, b, out, quad);
    for (int i = 0; i < g.dim_out; ++i) out[i] *= na;
}

void ridgelet_transform_direct(const RidgeletProfile& profile,
                               const TargetFunction& g, std::span<const double> a,
                               double b, std::complex<double>* out,
                               const DirectQuad& quad) {
    const int m = g.dim_in;
    const int d = g.dim_out;
    if (m > 3) throw UseSliceRoute("direct route is limited to m <= 3");
    if (static_cast<int>(a.size()) != m)
        throw InvalidInput("ridgelet direct: dim mismatch");
    const double na = norm2(a);
    if (na == 0.0) {
        for (int i = 0; i < d; ++i) out[i] = cd{};
        return;
    }
    const double L = quad.box_half;
    for (int comp = 0; comp < d; ++comp) {
        double u[3];
        double gbuf[4];
        // inner levels run tighter so their errors stay below the outer
        // rule's own tolerance once integrated across its nodes
        std::function<cd(int)> level = [&](int axis) -> cd {
            const double scale = std::pow(0.01, axis);
            return adaptive_gk_complex(
                [&, axis](double x) -> cd {
                    u[axis] = x;
                    if (axis + 1 < m) return level(axis + 1);
                    double dot = 0.0;
                    for (int l = 0; l < m; ++l) dot += a[l] * u[l];
                    const cd pv = quad.exact_psi
                                      ? std::conj(profile.psi_quadrature(dot - b))
                                      : std::conj(profile.psi(dot - b));
                    if (pv == cd{}) return cd{};
                    g.eval(u, gbuf);
                    return pv * gbuf[comp];
                },
                -L, L, quad.abs_tol * scale, quad.rel_tol * scale,
                quad.max_intervals);
        };
        out[comp] = level(0) * na;
    }
}

std::vector<std::complex<double>> ridgelet_transform_slice_v(
    const RidgeletProfile& p, const TargetFunction& g, std::span<const double> a,
    double b, const SliceQuad& quad) {
    std::vector<cd> out(g.dim_out);
    ridgelet_transform_slice(p, g, a, b, out.data(), quad);
    return out;
}

std::vector<std::complex<double>> ridgelet_transform_direct_v(
    const RidgeletProfile& p, const TargetFunction& g, std::span<const double> a,
    double b, const DirectQuad& quad) {
    std::vector<cd> out(g.dim_out);
    ridgelet_transform_direct(p, g, a, b, out.data(), quad);
    return out;
}

SphereRule sphere_rule(int m, int requested) {
    SphereRule rule;
    if (m == 1) {
        rule.nodes = {{-1.0}, {1.0}};
        rule.weights = {1.0, 1.0};
        return rule;
    }
    if (m == 2) {
        const int n = std::max(8, requested);
        for (int j = 0; j < n; ++j) {
            const double th = 2.0 * M_PI * (j + 0.5) / n;
            rule.nodes.push_back({std::cos(th), std::sin(th)});
            rule.weights.push_back(2.0 * M_PI / n);
        }
        return rule;
    }
    if (m == 3) {
        // Lebedev sets of 6, 14, 26 points (degrees 3, 5, 7)
        auto add_axis = [&](double w) {
            for (int ax = 0; ax < 3; ++ax)
                for (double s : {1.0, -1.0}) {
                    std::vector<double> v(3, 0.0);
                    v[ax] = s;
                    rule.nodes.push_back(v);
                    rule.weights.push_back(w * 4.0 * M_PI);
                }
        };
        auto add_corners = [&](double w) {
            const double c = 1.0 / std::sqrt(3.0);
            for (double sx : {1.0, -1.0})
                for (double sy : {1.0, -1.0})
                    for (double sz : {1.0, -1.0}) {
                        rule.nodes.push_back({sx * c, sy * c, sz * c});
                        rule.weights.push_back(w * 4.0 * M_PI);
                    }
        };
        auto add_edges = [&](double w) {
            const double c = 1.0 / std::sqrt(2.0);
            const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
            for (const auto& pr : pairs)
                for (double s0 : {1.0, -1.0})
                    for (double s1 : {1.0, -1.0}) {
                        std::vector<double> v(3, 0.0);
                        v[pr[0]] = s0 * c;
                        v[pr[1]] = s1 * c;
                        rule.nodes.push_back(v);
                        rule.weights.push_back(w * 4.0 * M_PI);
                    }
        };
        if (requested >= 26) {
            add_axis(1.0 / 21.0);
            add_edges(4.0 / 105.0);
            add_corners(9.0 / 280.0);
        } else if (requested >= 14) {
            add_axis(1.0 / 15.0);
            add_corners(3.0 / 40.0);
        } else {
            add_axis(1.0 / 6.0);
        }
        return rule;
    }
    throw InvalidInput("sphere_rule supports m = 1..3");
}

namespace {

struct PolarGrid {
    // log-spaced Gauss-Legendre nodes in the scale variable s
    std::vector<double> s_nodes, s_weights;
};

PolarGrid make_polar_grid(double d1, double d2, int panels, int order) {
    PolarGrid grid;
    const GaussLegendre& rule = gauss_legendre(order);
    const double lr = std::log(d2 / d1);
    for (int p = 0; p < panels; ++p) {
        const double la = lr * p / panels, lb = lr * (p + 1) / panels;
        for (int q = 0; q < order; ++q) {
            const double lx = 0.5 * (la + lb) + 0.5 * (lb - la) * rule.nodes[q];
            const double s = d1 * std::exp(lx);
            grid.s_nodes.push_back(s);
            grid.s_weights.push_back(0.5 * (lb - la) * rule.weights[q] * s); // ds = s dlog
        }
    }
    return grid;
}

// backprojection sum at fixed truncation parameters; returns per-u complex
std::vector<std::vector<cd>> backproject(const AdmissiblePair& pair,
                                         const TargetFunction& g,
                                         const std::vector<std::vector<double>>& us,
                                         double d1, double d2, double T,
                                         const TruncationParams& tp) {
    const int m = pair.m;
    const int d = g.dim_out;
    const auto& profile = *pair.profile;
    const double z1 = profile.zeta1(), z2 = profile.zeta2();
    const ActivationSpec& rho = *pair.activation;
    const SphereRule sphere = sphere_rule(m, tp.sphere_nodes);
    const PolarGrid sg = make_polar_grid(d1, d2, tp.s_panels, tp.s_order);

    const size_t nv = sphere.nodes.size();
    const size_t ns = sg.s_nodes.size();
    const size_t nu = us.size();

    // amplitude gate: (1/2pi) int hatpsi |hat g(z v / s)| dz per (v, s)
    std::vector<double> amp(nv * ns, 0.0);
    {
        const GaussLegendre& r16 = gauss_legendre(16);
        parallel_for(nv * ns, [&](size_t idx) {
            const size_t iv = idx / ns, is = idx % ns;
            const double s = sg.s_nodes[is];
            double acc = 0.0;
            double xi[3];
            cd gh[4];
            for (int q = 0; q < 16; ++q) {
                const double z = 0.5 * (z1 + z2) + 0.5 * (z2 - z1) * r16.nodes[q];
                for (int l = 0; l < m; ++l) xi[l] = z * sphere.nodes[iv][l] / s;
                g.fourier(xi, gh);
                double gn = 0.0;
                for (int i = 0; i < d; ++i) gn = std::max(gn, std::abs(gh[i]));
                acc += 0.5 * (z2 - z1) * r16.weights[q] * bump(z, z1, z2) * gn;
            }
            amp[idx] = acc / (2.0 * M_PI);
        });
    }
    double amp_max = 0.0;
    for (double a : amp) amp_max = std::max(amp_max, a);
    const double gate = amp_max * 1e-15;

    // per (v,s) slot accumulation, deterministic merge afterwards
    std::vector<std::vector<cd>> slot(nv * ns, std::vector<cd>(nu * d, cd{}));
    parallel_for(nv * ns, [&](size_t idx) {
        if (amp[idx] <= gate) return;
        const size_t iv = idx / ns, is = idx % ns;
        const double s = sg.s_nodes[is];
        const auto& v = sphere.nodes[iv];
        const double tau_lim = std::min(T / s, tp.tau_max);
        const size_t K = std::max<size_t>(8, static_cast<size_t>(2.0 * tau_lim / tp.tau_step) + 1);
        const double dtau = 2.0 * tau_lim / (K - 1);

        // G(tau_k) = int hatpsi(z) hat g(z v / s) e^{i z tau} dz on the uniform
        // tau grid, in segments with frequency resolution matched to max |tau|
        std::vector<cd> G(K * d, cd{});
        const size_t seg_len = 256;
        double xi[3];
        cd gh[4];
        for (size_t k0 = 0; k0 < K; k0 += seg_len) {
            const size_t k1 = std::min(K, k0 + seg_len);
            double max_abs_tau = 0.0;
            for (size_t k = k0; k < k1; ++k)
                max_abs_tau = std::max(max_abs_tau, std::abs(-tau_lim + k * dtau));
            const int panels = std::max(
                2, static_cast<int>(max_abs_tau * (z2 - z1) / 5.0) + 1);
            const GaussLegendre& r8 = gauss_legendre(8);
            const double h = (z2 - z1) / panels;
            // frequency nodes and target values for this segment's rule
            const size_t nq = static_cast<size_t>(panels) * 8;
            std::vector<double> zq(nq), wq(nq);
            std::vector<cd> Hq(nq * d);
            size_t qi = 0;
            for (int pa = 0; pa < panels; ++pa)
                for (int q = 0; q < 8; ++q, ++qi) {
                    const double z = z1 + pa * h + 0.5 * h * (1.0 + r8.nodes[q]);
                    zq[qi] = z;
                    wq[qi] = 0.5 * h * r8.weights[q] * bump(z, z1, z2);
                    for (int l = 0; l < m; ++l) xi[l] = z * v[l] / s;
                    g.fourier(xi, gh);
                    for (int i = 0; i < d; ++i) Hq[qi * d + i] = wq[qi] * gh[i];
                }
            // incremental rotations across the segment
            std::vector<cd> rot(nq), del(nq);
            const double tau0 = -tau_lim + k0 * dtau;
            for (size_t q = 0; q < nq; ++q) {
                rot[q] = std::exp(cd(0.0, zq[q] * tau0));
                del[q] = std::exp(cd(0.0, zq[q] * dtau));
            }
            for (size_t k = k0; k < k1; ++k) {
                cd* Gk = &G[k * d];
                for (size_t q = 0; q < nq; ++q) {
                    for (int i = 0; i < d; ++i) Gk[i] += Hq[q * d + i] * rot[q];
                    rot[q] *= del[q];
                }
            }
        }

        // F_u = (1/2pi) int G(tau) rho(v.u/s - tau) dtau (trapezoid), then
        // weight by the polar measure w_v * s^{-(m+1)} * s_weight
        const double measure = sphere.weights[iv] * sg.s_weights[is] /
                               std::pow(s, m + 1) / (2.0 * M_PI);
        cd* out = slot[idx].data();
        for (size_t ju = 0; ju < nu; ++ju) {
            double dot = 0.0;
            for (int l = 0; l < m; ++l) dot += v[l] * us[ju][l];
            const double c0 = dot / s;
            for (size_t k = 0; k < K; ++k) {
                const double tau = -tau_lim + k * dtau;
                const double rv = rho.eval(0, c0 - tau);
                const double w = ((k == 0 || k + 1 == K) ? 0.5 : 1.0) * dtau;
                const double f = rv * w * measure;
                for (int i = 0; i < d; ++i) out[ju * d + i] += f * G[k * d + i];
            }
        }
    });

    std::vector<std::vector<cd>> totals(nu, std::vector<cd>(d, cd{}));
    for (size_t idx = 0; idx < slot.size(); ++idx)
        for (size_t ju = 0; ju < nu; ++ju)
            for (int i = 0; i < d; ++i) totals[ju][i] += slot[idx][ju * d + i];
    return totals;
}

} // namespace

std::vector<Reconstruction> reconstruct_batch(const AdmissiblePair& pair,
                                              const TargetFunction& g,
                                              const std::vector<std::vector<double>>& us,
                                              const TruncationParams& tp) {
    if (pair.m != g.dim_in) throw InvalidInput("reconstruct: dimension mismatch");
    if (!(tp.delta1 > 0.0 && tp.delta2 > tp.delta1 && tp.t_max > 0.0))
        throw InvalidInput("reconstruct: truncation parameters must be positive");
    const int d = g.dim_out;
    auto base = backproject(pair, g, us, tp.delta1, tp.delta2, tp.t_max, tp);
    auto fine =
        backproject(pair, g, us, 0.5 * tp.delta1, 2.0 * tp.delta2, 2.0 * tp.t_max, tp);
    std::vector<Reconstruction> out(us.size());
    for (size_t ju = 0; ju < us.size(); ++ju) {
        Reconstruction& r = out[ju];
        r.value.resize(d);
        r.refined_value.resize(d);
        double vmax = 0.0;
        for (int i = 0; i < d; ++i) {
            const cd zb = base[ju][i] / pair.constant;
            const cd zf = fine[ju][i] / pair.constant;
            r.value[i] = zb.real();
            r.refined_value[i] = zf.real();
            r.imag_residue = std::max(r.imag_residue, std::abs(zb.imag()));
            r.refinement_delta =
                std::max(r.refinement_delta, std::abs(zf.real() - zb.real()));
            vmax = std::max(vmax, std::abs(zb.real()));
        }
        r.truncation_warning = r.imag_residue > 0.05 * vmax;
    }
    return out;
}

Reconstruction reconstruct(const AdmissiblePair& pair, const TargetFunction& g,
                           std::span<const double> u, const TruncationParams& tp) {
    std::vector<std::vector<double>> us{std::vector<double>(u.begin(), u.end())};
    return reconstruct_batch(pair, g, us, tp)[0];
}

} // namespace ridgekit
