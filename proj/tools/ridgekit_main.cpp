// ridgekit command-line driver: reconstruction sweeps, rate experiments,
// space audits, Fourier-identity checks, network sampling and evaluation,
// and the neuron-count planner. Experiment outputs are CSV with fixed column
// order plus a JSON run manifest; reruns with identical (config, seed) are
// byte-identical. RIDGEKIT_THREADS bounds the worker count.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ridgekit/errors.hpp"
#include "ridgekit/harness.hpp"

using namespace ridgekit;
using nlohmann::json;

namespace {

struct Output {
    std::string path;
    std::ostringstream buffer;

    void flush(const ExperimentConfig& cfg, double wall_s) {
        if (path.empty()) {
            std::cout << buffer.str();
            return;
        }
        std::ofstream os(path);
        os << buffer.str();
        std::ofstream manifest(path + ".manifest.json");
        manifest << run_manifest(cfg, wall_s);
    }
};

// --config supplies defaults; explicit flags parsed afterwards win
void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream is(path);
    if (!is) throw InvalidInput("cannot open config file '" + path + "'");
    json j = json::parse(is);
    if (j.contains("target")) cfg.target = j["target"].get<std::string>();
    if (j.contains("m")) cfg.m = j["m"].get<int>();
    if (j.contains("activation")) cfg.activation = j["activation"].get<std::string>();
    if (j.contains("zeta")) {
        cfg.zeta1 = j["zeta"][0].get<double>();
        cfg.zeta2 = j["zeta"][1].get<double>();
    }
    if (j.contains("domain_radius"))
        cfg.domain_radius = j["domain_radius"].get<double>();
    if (j.contains("weight_family"))
        cfg.weight_family = j["weight_family"].get<std::string>();
    if (j.contains("gamma")) cfg.gamma = j["gamma"].get<double>();
    if (j.contains("k")) cfg.k = j["k"].get<int>();
    if (j.contains("p")) cfg.p = j["p"].get<double>();
    if (j.contains("n_grid")) cfg.n_grid = j["n_grid"].get<std::vector<int>>();
    if (j.contains("seeds")) cfg.seeds = j["seeds"].get<std::vector<uint64_t>>();
    if (j.contains("grid")) {
        cfg.grid_lo = j["grid"][0].get<double>();
        cfg.grid_hi = j["grid"][1].get<double>();
        cfg.grid_step = j["grid"][2].get<double>();
    }
    if (j.contains("delta1")) cfg.trunc.delta1 = j["delta1"].get<double>();
    if (j.contains("delta2")) cfg.trunc.delta2 = j["delta2"].get<double>();
    if (j.contains("t_max")) cfg.trunc.t_max = j["t_max"].get<double>();
    if (j.contains("sphere_nodes"))
        cfg.trunc.sphere_nodes = j["sphere_nodes"].get<int>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
}

bool parse_pair(const std::string& s, double& a, double& b) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return false;
    a = std::stod(s.substr(0, comma));
    b = std::stod(s.substr(comma + 1));
    return true;
}

bool parse_grid(const std::string& s, double& lo, double& hi, double& step) {
    const auto c1 = s.find(':');
    const auto c2 = s.rfind(':');
    if (c1 == std::string::npos || c2 == c1) return false;
    lo = std::stod(s.substr(0, c1));
    hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    step = std::stod(s.substr(c2 + 1));
    return true;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<int> parse_dims(const std::string& s) {
    const auto dots = s.find("..");
    std::vector<int> dims;
    if (dots != std::string::npos) {
        const int lo = std::stoi(s.substr(0, dots));
        const int hi = std::stoi(s.substr(dots + 2));
        for (int m = lo; m <= hi; ++m) dims.push_back(m);
    } else {
        for (double v : parse_list(s)) dims.push_back(static_cast<int>(v));
    }
    return dims;
}

int cmd_fourier_check(const ExperimentConfig& cfg, const std::string& support,
                      double tol, Output& out) {
    double lo = 1.0, hi = 2.0;
    if (!support.empty() && !parse_pair(support, lo, hi))
        throw InvalidInput("expected --support a,b");
    const ActivationSpec& spec = activation_by_name(cfg.activation);
    const std::vector<TestFunction> tests = {
        bump_test(lo, hi), tilted_bump_test(lo, hi), bump_test(-hi, -lo)};
    out.buffer << "test_function,support_lo,support_hi,residual,status\n";
    bool all_ok = true;
    for (const auto& t : tests) {
        const double r = pairing_check(spec, t);
        const bool ok = r <= tol;
        all_ok = all_ok && ok;
        out.buffer << t.name << "," << format_double(t.lo) << ","
                   << format_double(t.hi) << "," << format_double(r) << ","
                   << (ok ? "pass" : "fail") << "\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_rate(const ExperimentConfig& cfg, Output& out) {
    const auto rows = run_rate_experiment(cfg);
    write_rate_csv(rows, cfg.seeds, out.buffer);
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : rows) pts.push_back({1.0 * row.n, row.median});
    out.buffer << "# fitted_slope," << format_double(fit_loglog_slope(pts)) << "\n";
    return 0;
}

int cmd_audit_spaces(const ExperimentConfig& cfg, const std::string& dims,
                     const std::string& gammas, const std::string& ps,
                     Output& out) {
    out.buffer << "m,gamma,p,weight_constant,product_bound,lemma_ok,"
                  "sobolev_norm,ck_norm,barron_estimate,fourier_bound,barron_ok\n";
    bool all_ok = true;
    auto profile = std::make_shared<RidgeletProfile>(cfg.zeta1, cfg.zeta2);
    for (int m : parse_dims(dims)) {
        const TargetFunction g = target_by_name(cfg.target, m);
        const Domain U = Domain::truncated(m, cfg.domain_radius);
        for (double gamma : parse_list(gammas)) {
            for (double p : parse_list(ps)) {
                ExperimentConfig local = cfg;
                local.m = m;
                local.gamma = gamma;
                local.p = p;
                const WeightSpec w = local.weight_spec();
                const double cw = weight_constant(U, w);
                const double bound = product_weight_bound(w, m);
                const bool lemma_ok = cw <= bound + 1e-12;
                const int k = std::min(cfg.k, 1);
                const double sob = weighted_sobolev_norm(g, U, w, k);
                const double ck = weighted_ck_norm(g, U, gamma, k);
                double best = 0.0, fb = 0.0;
                bool barron_ok = true;
                if (m <= 2) {
                    BarronQuad bq;
                    bq.refine_check = false;
                    if (m == 2) {
                        bq.a_panels = 16;
                        bq.b_max = 150.0;
                        bq.b_step = 0.5;
                    }
                    best = barron_norm_estimate(*profile, g, k, gamma, bq);
                    fb = barron_fourier_bound(g, *profile, gamma, k);
                    barron_ok = best <= fb;
                }
                all_ok = all_ok && lemma_ok && barron_ok;
                out.buffer << m << "," << format_double(gamma) << ","
                           << format_double(p) << "," << format_double(cw) << ","
                           << format_double(bound) << ","
                           << (lemma_ok ? "pass" : "fail") << ","
                           << format_double(sob) << "," << format_double(ck) << ","
                           << format_double(best) << "," << format_double(fb)
                           << "," << (barron_ok ? "pass" : "fail") << "\n";
            }
        }
    }
    return all_ok ? 0 : 1;
}

int cmd_sample(const ExperimentConfig& cfg, uint64_t seed, int neurons,
               const std::string& out_path) {
    const TargetFunction g = target_by_name(cfg.target, cfg.m);
    auto profile = std::make_shared<RidgeletProfile>(cfg.zeta1, cfg.zeta2);
    const AdmissiblePair pair = make_admissible_pair(
        profile, activation_by_name(cfg.activation).kind, cfg.m);
    StudentTSampler sampler(cfg.m, seed);
    const Network net = build_network(pair, g, neurons, sampler);
    if (out_path.empty()) {
        save_network(net, std::cout);
    } else {
        save_network_file(net, out_path);
    }
    return 0;
}

int cmd_eval(const std::string& net_path, const std::string& points_path,
             const std::string& alpha_str, Output& out) {
    const Network net = load_network_file(net_path);
    std::ifstream pts(points_path);
    if (!pts) throw InvalidInput("cannot open points file '" + points_path + "'");

    std::vector<std::vector<int>> alphas;
    if (!alpha_str.empty()) {
        std::stringstream ss(alpha_str);
        std::string one;
        while (std::getline(ss, one, ';')) {
            std::vector<int> alpha;
            std::stringstream os(one);
            std::string v;
            while (std::getline(os, v, ',')) alpha.push_back(std::stoi(v));
            if (static_cast<int>(alpha.size()) != net.m)
                throw InvalidInput("multi-index length must equal m");
            alphas.push_back(alpha);
        }
    }

    for (int l = 0; l < net.m; ++l) out.buffer << "u" << (l + 1) << ",";
    out.buffer << "phi";
    for (const auto& alpha : alphas) {
        out.buffer << ",d";
        for (int v : alpha) out.buffer << v;
    }
    out.buffer << "\n";

    std::string line;
    while (std::getline(pts, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> u;
        std::stringstream ls(line);
        std::string v;
        while (std::getline(ls, v, ',')) u.push_back(std::stod(v));
        if (static_cast<int>(u.size()) != net.m)
            throw InvalidInput("point dimension mismatch in points file");
        for (double x : u) out.buffer << format_double(x) << ",";
        out.buffer << format_double(network_eval(net, u)[0]);
        for (const auto& alpha : alphas)
            out.buffer << "," << format_double(network_partial(net, alpha, u)[0]);
        out.buffer << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    ExperimentConfig cfg;

    // phase 1: --config supplies defaults before the flags are parsed
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") apply_config_file(argv[i + 1], cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"ridgelet-based shallow network construction and rate audits"};
    app.require_subcommand(1);

    std::string config_path, support, grid_str, out_path = cfg.output;
    std::string zeta_str, seeds_str, ngrid_str;
    std::string dims = "1", gammas = "0", ps = "2";
    std::string net_path, points_path, alpha_str;
    double tol = 1e-6;
    uint64_t seed = 1;
    int neurons = 64;
    double c2 = 1.0, c3 = 1.0, eps = 0.1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config with flag defaults");
        sub->add_option("--target", cfg.target,
                        "target id (gaussian[:sigma=..,amp=..], hermite, zero)");
        sub->add_option("--dim", cfg.m, "input dimension");
        sub->add_option("--activation", cfg.activation,
                        "sigmoid | tanh | softplus | relu");
        sub->add_option("--zeta", zeta_str, "profile support zeta1,zeta2");
        sub->add_option("--gamma", cfg.gamma, "growth exponent");
        sub->add_option("--k", cfg.k, "derivative order");
        sub->add_option("--p", cfg.p, "integrability exponent");
        sub->add_option("--weight", cfg.weight_family,
                        "weight family: gaussian | uniform | cauchy");
        sub->add_option("--radius", cfg.domain_radius, "truncation radius");
        sub->add_option("--out", out_path, "output CSV path (stdout if omitted)");
    };

    auto* fourier = app.add_subcommand(
        "fourier-check", "verify the distributional Fourier identities");
    add_common(fourier);
    fourier->add_option("--support", support, "test-function support a,b");
    fourier->add_option("--tol", tol, "residual tolerance");

    auto* recon = app.add_subcommand("recon", "reconstruction sweep");
    add_common(recon);
    recon->add_option("--grid", grid_str, "evaluation grid lo:hi:step");

    auto* rate = app.add_subcommand("rate", "Monte-Carlo rate experiment");
    add_common(rate);
    rate->add_option("--seeds", seeds_str, "comma-separated seed list");
    rate->add_option("--neurons", ngrid_str, "comma-separated N grid");

    auto* audit =
        app.add_subcommand("audit-spaces", "weight constants, norms, and bounds");
    add_common(audit);
    audit->add_option("--dims", dims, "dimensions, e.g. 1..3 or 1,2");
    audit->add_option("--gammas", gammas, "gamma list, e.g. 0,1");
    audit->add_option("--ps", ps, "p list, e.g. 1,2,3");

    auto* sample = app.add_subcommand("sample", "draw a randomized network");
    add_common(sample);
    sample->add_option("--seed", seed, "master seed");
    sample->add_option("--neurons", neurons, "neuron count");

    auto* eval = app.add_subcommand("eval", "evaluate a stored network");
    eval->add_option("--network", net_path, "network file")->required();
    eval->add_option("--points", points_path, "CSV of evaluation points")
        ->required();
    eval->add_option("--alpha", alpha_str,
                     "partials to emit, e.g. 1,0;0,1 (semicolon-separated)");
    eval->add_option("--out", out_path, "output CSV path (stdout if omitted)");

    auto* plan = app.add_subcommand("plan", "neuron-count planner");
    plan->add_option("--c2", c2, "C2 constant")->required();
    plan->add_option("--c3", c3, "C3 exponent")->required();
    plan->add_option("--m", cfg.m, "dimension")->required();
    plan->add_option("--p", cfg.p, "exponent p > 1")->required();
    plan->add_option("--eps", eps, "error tolerance")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!zeta_str.empty() && !parse_pair(zeta_str, cfg.zeta1, cfg.zeta2))
            throw InvalidInput("expected --zeta zeta1,zeta2");
        if (!seeds_str.empty()) {
            cfg.seeds.clear();
            for (double v : parse_list(seeds_str))
                cfg.seeds.push_back(static_cast<uint64_t>(v));
        }
        if (!ngrid_str.empty()) {
            cfg.n_grid.clear();
            for (double v : parse_list(ngrid_str))
                cfg.n_grid.push_back(static_cast<int>(v));
        }
        if (!grid_str.empty() &&
            !parse_grid(grid_str, cfg.grid_lo, cfg.grid_hi, cfg.grid_step))
            throw InvalidInput("expected --grid lo:hi:step");

        Output out;
        out.path = out_path;
        const auto t0 = std::chrono::steady_clock::now();
        int rc = 0;
        if (app.got_subcommand(fourier))
            rc = cmd_fourier_check(cfg, support, tol, out);
        else if (app.got_subcommand(recon)) {
            const auto rows = run_reconstruction_experiment(cfg);
            write_recon_csv(rows, cfg.m, out.buffer);
        } else if (app.got_subcommand(rate))
            rc = cmd_rate(cfg, out);
        else if (app.got_subcommand(audit))
            rc = cmd_audit_spaces(cfg, dims, gammas, ps, out);
        else if (app.got_subcommand(sample))
            return cmd_sample(cfg, seed, neurons, out_path);
        else if (app.got_subcommand(eval))
            rc = cmd_eval(net_path, points_path, alpha_str, out);
        else if (app.got_subcommand(plan)) {
            std::cout << plan_neurons(c2, c3, cfg.m, cfg.p, eps) << "\n";
            return 0;
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        out.flush(cfg, wall);
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
