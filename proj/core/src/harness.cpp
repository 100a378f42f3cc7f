#include "ridgekit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "ridgekit/errors.hpp"
#include "ridgekit/quadrature.hpp"

namespace ridgekit {

const char* library_version() { return "0.1.0"; }

WeightSpec ExperimentConfig::weight_spec() const {
    WeightSpec w;
    if (weight_family == "gaussian") w = WeightSpec::gaussian_w(gamma, p);
    else if (weight_family == "uniform")
        w = WeightSpec::uniform_w(weight_lo, weight_hi, gamma, p);
    else if (weight_family == "cauchy") w = WeightSpec::cauchy_w(gamma, p);
    else throw InvalidInput("unknown weight family '" + weight_family + "'");
    return w;
}

Domain ExperimentConfig::domain() const {
    return Domain::truncated(m, domain_radius);
}

void ExperimentConfig::validate_rate() const {
    if (n_grid.empty()) throw InvalidInput("empty N grid");
    for (size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw InvalidInput("N grid must be strictly increasing");
    if (seeds.size() < 3)
        throw InvalidInput("rate experiments need at least 3 seeds");
    const ActivationSpec& rho = activation_by_name(activation);
    if (gamma < rho.gamma_min)
        throw InvalidInput("gamma below the activation's gamma_min");
    if (m > 3) throw InvalidInput("experiments support m <= 3");
}

double network_error_norm(const Network& net, const TargetFunction& f,
                          const Domain& U, const WeightSpec& w, int k,
                          int panels, int order) {
    if (f.dim_in != net.m || f.dim_out != net.d)
        throw InvalidInput("network_error_norm: dimension mismatch");
    if (net.m != 1)
        throw InvalidInput("network_error_norm currently supports m = 1");
    const double lo = U.bounds[0][0], hi = U.bounds[0][1];
    const GaussLegendre& rule = gauss_legendre(order);
    const ActivationSpec& rho = activation(net.activation);
    const auto alphas = multi_indices(1, k);
    const double h = (hi - lo) / panels;
    double total = 0.0;
    std::vector<double> fbuf(net.d);
    std::vector<double> phi(net.d);
    for (const auto& alpha : alphas) {
        const int j = alpha[0];
        double acc = 0.0;
        for (int pa = 0; pa < panels; ++pa) {
            for (int q = 0; q < order; ++q) {
                const double u = lo + pa * h + 0.5 * h * (1.0 + rule.nodes[q]);
                const double wq = 0.5 * h * rule.weights[q];
                f.partial(alpha.data(), &u, fbuf.data());
                std::fill(phi.begin(), phi.end(), 0.0);
                for (const auto& neuron : net.neurons) {
                    double apow = 1.0;
                    for (int t = 0; t < j; ++t) apow *= neuron.a[0];
                    const double r = rho.eval(j, neuron.a[0] * u - neuron.b) * apow;
                    for (int i = 0; i < net.d; ++i) phi[i] += neuron.y[i] * r;
                }
                double diff2 = 0.0;
                for (int i = 0; i < net.d; ++i) {
                    const double e = fbuf[i] - phi[i];
                    diff2 += e * e;
                }
                acc += wq * std::pow(std::sqrt(diff2), w.p) * w.w0(u);
            }
        }
        total += acc;
    }
    return std::pow(total, 1.0 / w.p);
}

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

std::vector<RateRow> run_rate_experiment(const ExperimentConfig& cfg) {
    cfg.validate_rate();
    const TargetFunction g = target_by_name(cfg.target, cfg.m);
    const WeightSpec w = cfg.weight_spec();
    const Domain U = cfg.domain();
    auto profile = std::make_shared<RidgeletProfile>(cfg.zeta1, cfg.zeta2);
    const AdmissiblePair pair =
        make_admissible_pair(profile, activation_by_name(cfg.activation).kind, cfg.m);

    std::vector<RateRow> rows;
    for (int n : cfg.n_grid) {
        RateRow row;
        row.n = n;
        for (uint64_t seed : cfg.seeds) {
            StudentTSampler sampler(cfg.m, seed);
            const Network net = build_network(pair, g, n, sampler);
            row.per_seed.push_back(network_error_norm(net, g, U, w, cfg.k,
                                                      cfg.error_panels,
                                                      cfg.error_order));
        }
        row.median = median_of(row.per_seed);
        rows.push_back(std::move(row));
    }
    return rows;
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw InvalidInput("slope fit needs at least two points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [n, e] : points) {
        if (!(n > 0.0) || !(e > 0.0))
            throw InvalidInput("slope fit needs positive N and positive error");
        const double x = std::log(n), y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double np = static_cast<double>(points.size());
    const double denom = np * sxx - sx * sx;
    if (denom == 0.0) throw InvalidInput("slope fit needs distinct N values");
    return (np * sxy - sx * sy) / denom;
}

double rate_bound_rhs(const RateBoundComponents& c) {
    if (!(c.Cp > 0.0) || !(c.rho_norm > 0.0) || !(c.C_weight > 0.0) ||
        !(c.C_adm_modulus > 0.0) || !(c.barron >= 0.0) || !(c.N >= 1.0) ||
        c.m < 1 || c.k < 0 || !(c.p >= 1.0))
        throw InvalidInput("rate bound components must be positive");
    const double minp = std::min(2.0, c.p);
    const double rate = 1.0 - 1.0 / minp;
    return c.Cp * c.rho_norm * c.C_weight * std::pow(c.m, c.k / c.p) *
           std::pow(M_PI, 0.25 * (c.m + 1)) /
           (c.C_adm_modulus * std::sqrt(std::tgamma(0.5 * (c.m + 1)))) * c.barron /
           std::pow(c.N, rate);
}

long long plan_neurons(double C2, double C3, int m, double p, double eps) {
    if (!(p > 1.0)) throw InvalidExponent("planner requires p > 1");
    if (!(C2 > 0.0) || !(C3 > 0.0) || m < 1 || !(eps > 0.0))
        throw InvalidInput("planner components must be positive");
    const double minp = std::min(2.0, p);
    const double q = minp / (minp - 1.0);
    const double x = C2 * std::pow(m, C3) * std::pow(eps, -q);
    return static_cast<long long>(std::ceil(x * (1.0 - 5e-13)));
}

std::vector<ReconRow> run_reconstruction_experiment(const ExperimentConfig& cfg) {
    if (cfg.m > 2) throw InvalidInput("reconstruction sweeps support m <= 2");
    const TargetFunction g = target_by_name(cfg.target, cfg.m);
    auto profile = std::make_shared<RidgeletProfile>(cfg.zeta1, cfg.zeta2);
    const AdmissiblePair pair =
        make_admissible_pair(profile, activation_by_name(cfg.activation).kind, cfg.m);

    std::vector<double> axis;
    for (double x = cfg.grid_lo; x <= cfg.grid_hi + 1e-12; x += cfg.grid_step)
        axis.push_back(x);
    std::vector<std::vector<double>> us;
    if (cfg.m == 1) {
        for (double x : axis) us.push_back({x});
    } else {
        for (double x : axis)
            for (double y : axis) us.push_back({x, y});
    }

    const auto recs = reconstruct_batch(pair, g, us, cfg.trunc);
    std::vector<ReconRow> rows;
    for (size_t i = 0; i < us.size(); ++i) {
        ReconRow row;
        row.u = us[i];
        double gv;
        g.eval(us[i].data(), &gv);
        row.g = gv;
        row.reconstruction = recs[i].value[0];
        row.abs_error = std::abs(row.reconstruction - gv);
        row.imag_residue = recs[i].imag_residue;
        row.refined = recs[i].refined_value[0];
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_rate_csv(const std::vector<RateRow>& rows,
                    const std::vector<uint64_t>& seeds, std::ostream& os) {
    os << "N,median_error";
    for (uint64_t s : seeds) os << ",error_seed_" << s;
    os << "\n";
    for (const auto& row : rows) {
        os << row.n << "," << format_double(row.median);
        for (double e : row.per_seed) os << "," << format_double(e);
        os << "\n";
    }
}

void write_recon_csv(const std::vector<ReconRow>& rows, int m, std::ostream& os) {
    for (int l = 0; l < m; ++l) os << "u" << (l + 1) << ",";
    os << "g,reconstruction,abs_error,imag_residue,refined\n";
    for (const auto& row : rows) {
        for (int l = 0; l < m; ++l) os << format_double(row.u[l]) << ",";
        os << format_double(row.g) << "," << format_double(row.reconstruction)
           << "," << format_double(row.abs_error) << ","
           << format_double(row.imag_residue) << "," << format_double(row.refined)
           << "\n";
    }
}

std::string run_manifest(const ExperimentConfig& cfg, double wall_time_s) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"library_version\": \"" << library_version() << "\",\n";
    os << "  \"config\": {\n";
    os << "    \"target\": \"" << cfg.target << "\",\n";
    os << "    \"m\": " << cfg.m << ",\n";
    os << "    \"activation\": \"" << cfg.activation << "\",\n";
    os << "    \"zeta\": [" << format_double(cfg.zeta1) << ", "
       << format_double(cfg.zeta2) << "],\n";
    os << "    \"domain_radius\": " << format_double(cfg.domain_radius) << ",\n";
    os << "    \"weight_family\": \"" << cfg.weight_family << "\",\n";
    os << "    \"gamma\": " << format_double(cfg.gamma) << ",\n";
    os << "    \"k\": " << cfg.k << ",\n";
    os << "    \"p\": " << format_double(cfg.p) << ",\n";
    os << "    \"n_grid\": [";
    for (size_t i = 0; i < cfg.n_grid.size(); ++i)
        os << (i ? ", " : "") << cfg.n_grid[i];
    os << "],\n";
    os << "    \"grid\": [" << format_double(cfg.grid_lo) << ", "
       << format_double(cfg.grid_hi) << ", " << format_double(cfg.grid_step)
       << "]\n";
    os << "  },\n";
    os << "  \"seeds\": [";
    for (size_t i = 0; i < cfg.seeds.size(); ++i)
        os << (i ? ", " : "") << cfg.seeds[i];
    os << "],\n";
    os << "  \"wall_time_s\": " << format_double(wall_time_s) << "\n";
    os << "}\n";
    return os.str();
}

} // namespace ridgekit
