#include "ridgekit/network.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ridgekit/errors.hpp"

namespace ridgekit {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int total_order(std::span<const int> alpha) {
    int s = 0;
    for (int v : alpha) {
        if (v < 0) throw InvalidInput("multi-index entries must be >= 0");
        s += v;
    }
    return s;
}

} // namespace

void validate(const Network& net) {
    if (net.m < 1 || net.d < 1) throw InvalidInput("network dims must be >= 1");
    if (net.neurons.empty()) throw InvalidInput("network needs at least one neuron");
    for (const auto& n : net.neurons) {
        if (static_cast<int>(n.y.size()) != net.d ||
            static_cast<int>(n.a.size()) != net.m)
            throw InvalidInput("neuron dims inconsistent with network");
        for (double v : n.y)
            if (!std::isfinite(v)) throw InvalidInput("non-finite readout");
        for (double v : n.a)
            if (!std::isfinite(v)) throw InvalidInput("non-finite weight");
        if (!std::isfinite(n.b)) throw InvalidInput("non-finite bias");
    }
}

std::vector<double> network_eval(const Network& net, std::span<const double> u) {
    if (static_cast<int>(u.size()) != net.m)
        throw InvalidInput("network_eval: input dimension mismatch");
    const ActivationSpec& rho = activation(net.activation);
    std::vector<double> out(net.d, 0.0);
    for (const auto& n : net.neurons) {
        double dot = -n.b;
        for (int l = 0; l < net.m; ++l) dot += n.a[l] * u[l];
        const double r = rho.eval(0, dot);
        for (int i = 0; i < net.d; ++i) out[i] += n.y[i] * r;
    }
    return out;
}

std::vector<double> network_partial(const Network& net, std::span<const int> alpha,
                                    std::span<const double> u) {
    if (static_cast<int>(u.size()) != net.m ||
        static_cast<int>(alpha.size()) != net.m)
        throw InvalidInput("network_partial: dimension mismatch");
    const ActivationSpec& rho = activation(net.activation);
    const int j = total_order(alpha);
    if (!rho.supports_order(j))
        throw UnsupportedDerivative("activation " + std::string(rho.name) +
                                    " supports derivatives up to k = " +
                                    std::to_string(rho.k_max));
    std::vector<double> out(net.d, 0.0);
    for (const auto& n : net.neurons) {
        double dot = -n.b;
        double apow = 1.0;
        for (int l = 0; l < net.m; ++l) {
            dot += n.a[l] * u[l];
            for (int q = 0; q < alpha[l]; ++q) apow *= n.a[l];
        }
        const double r = rho.eval(j, dot) * apow;
        for (int i = 0; i < net.d; ++i) out[i] += n.y[i] * r;
    }
    return out;
}

void save_network(const Network& net, std::ostream& os) {
    validate(net);
    os << "ridgekit network 1\n";
    os << "activation " << activation(net.activation).name << "\n";
    os << "m " << net.m << "\n";
    os << "d " << net.d << "\n";
    os << "neurons " << net.neurons.size() << "\n";
    for (const auto& n : net.neurons) {
        for (int i = 0; i < net.d; ++i) os << fmt_double(n.y[i]) << " ";
        for (int l = 0; l < net.m; ++l) os << fmt_double(n.a[l]) << " ";
        os << fmt_double(n.b) << "\n";
    }
}

Network load_network(std::istream& is) {
    std::string word;
    int version = 0;
    is >> word;
    if (word != "ridgekit") throw InvalidInput("not a ridgekit network file");
    is >> word >> version;
    if (word != "network" || version != 1)
        throw InvalidInput("unsupported network file version");
    Network net;
    std::string act;
    size_t count = 0;
    is >> word >> act;
    if (word != "activation") throw InvalidInput("malformed network file");
    net.activation = activation_by_name(act).kind;
    is >> word >> net.m;
    if (word != "m") throw InvalidInput("malformed network file");
    is >> word >> net.d;
    if (word != "d") throw InvalidInput("malformed network file");
    is >> word >> count;
    if (word != "neurons") throw InvalidInput("malformed network file");
    net.neurons.resize(count);
    for (auto& n : net.neurons) {
        n.y.resize(net.d);
        n.a.resize(net.m);
        for (int i = 0; i < net.d; ++i) is >> n.y[i];
        for (int l = 0; l < net.m; ++l) is >> n.a[l];
        is >> n.b;
    }
    if (!is) throw InvalidInput("truncated network file");
    validate(net);
    return net;
}

void save_network_file(const Network& net, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw InvalidInput("cannot open '" + path + "' for writing");
    save_network(net, os);
}

Network load_network_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InvalidInput("cannot open '" + path + "'");
    return load_network(is);
}

} // namespace ridgekit
