#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ridgekit/activations.hpp"

namespace ridgekit {

struct Neuron {
    std::vector<double> y;  // linear readout in R^d
    std::vector<double> a;  // weight vector in R^m
    double b = 0.0;         // bias
};

/// Single-hidden-layer network phi(u) = sum_n y_n rho(a_n.u - b_n).
struct Network {
    Activation activation = Activation::tanh;
    int m = 1;
    int d = 1;
    std::vector<Neuron> neurons;
};

void validate(const Network& net);

std::vector<double> network_eval(const Network& net, std::span<const double> u);

/// sum_n y_n rho^{(|alpha|)}(a_n.u - b_n) a_n^alpha; throws
/// UnsupportedDerivative when |alpha| exceeds the activation's k_max
/// (in particular relu with |alpha| >= 1).
std::vector<double> network_partial(const Network& net, std::span<const int> alpha,
                                    std::span<const double> u);

/// Versioned plain-text serialization with binary-faithful decimal floats.
void save_network(const Network& net, std::ostream& os);
Network load_network(std::istream& is);
void save_network_file(const Network& net, const std::string& path);
Network load_network_file(const std::string& path);

} // namespace ridgekit
