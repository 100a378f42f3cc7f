#include <doctest.h>

#include <cmath>
#include <limits>

#include "ridgekit/activations.hpp"
#include "ridgekit/errors.hpp"

using namespace ridgekit;

TEST_CASE("closed forms at zero") {
    CHECK(activation_eval(activation(Activation::tanh), 0, 0.0) == 0.0);
    CHECK(activation_eval(activation(Activation::sigmoid), 0, 0.0) == 0.5);
    CHECK(activation_eval(activation(Activation::softplus), 0, 0.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(activation_eval(activation(Activation::tanh), 1, 0.0) == 1.0);
    CHECK(activation_eval(activation(Activation::relu), 0, -2.0) == 0.0);
    CHECK(activation_eval(activation(Activation::relu), 0, 3.0) == 3.0);
}

TEST_CASE("derivatives match central differences on [-10,10]") {
    const double h = 1e-5;
    for (auto kind : {Activation::sigmoid, Activation::tanh, Activation::softplus}) {
        const ActivationSpec& spec = activation(kind);
        for (int j = 1; j <= 4; ++j) {
            for (int i = 0; i <= 100; ++i) {
                const double s = -10.0 + 0.2 * i;
                const double fd =
                    (spec.eval(j - 1, s + h) - spec.eval(j - 1, s - h)) / (2.0 * h);
                const double an = spec.eval(j, s);
                CHECK(std::abs(an - fd) <= 1e-6 * (1.0 + std::abs(an)));
            }
        }
    }
}

TEST_CASE("sigma(s) = (tanh(s/2)+1)/2 identity") {
    const ActivationSpec& sig = activation(Activation::sigmoid);
    const ActivationSpec& th = activation(Activation::tanh);
    for (int i = 0; i <= 100; ++i) {
        const double s = -10.0 + 0.2 * i;
        CHECK(std::abs(sig.eval(0, s) - 0.5 * (th.eval(0, 0.5 * s) + 1.0)) <= 1e-12);
    }
}

TEST_CASE("relu rejects derivatives, invalid inputs rejected") {
    const ActivationSpec& relu = activation(Activation::relu);
    CHECK_THROWS_AS(relu.eval(1, 0.5), UnsupportedDerivative);
    CHECK_THROWS_AS(activation(Activation::tanh).eval(0, std::nan("")), InvalidInput);
    CHECK_THROWS_AS(activation_by_name("swish"), InvalidInput);
    CHECK(activation_by_name("sigmoid").kind == Activation::sigmoid);
}

TEST_CASE("fourier density table values") {
    using doctest::Approx;
    // -i*pi/sinh(pi) at xi = 1, from the density formula itself
    const auto s1 = fourier_density(activation(Activation::sigmoid), 1.0);
    CHECK(s1.real() == 0.0);
    CHECK(s1.imag() == Approx(-0.27202905498213316).epsilon(1e-9));
    const auto r2 = fourier_density(activation(Activation::relu), 2.0);
    CHECK(r2.real() == Approx(-0.25).epsilon(1e-15));
    CHECK(r2.imag() == 0.0);
    // odd symmetry of the tanh density
    const auto tp = fourier_density(activation(Activation::tanh), 0.7);
    const auto tm = fourier_density(activation(Activation::tanh), -0.7);
    CHECK(tp.imag() == Approx(-tm.imag()).epsilon(1e-15));
    CHECK_THROWS_AS(fourier_density(activation(Activation::tanh), 0.0), SingularPoint);
}

TEST_CASE("growth norms") {
    CHECK(growth_norm(activation(Activation::tanh), 0, 0.0) == 1.0);
    CHECK(growth_norm(activation(Activation::relu), 0, 1.0) == 1.0);
    CHECK(growth_norm(activation(Activation::sigmoid), 0, 0.0) == 1.0);
    CHECK_THROWS_AS(growth_norm(activation(Activation::softplus), 0, 0.5),
                    NormDiverges);
    CHECK_THROWS_AS(growth_norm(activation(Activation::relu), 1, 1.0),
                    UnsupportedDerivative);
}

TEST_CASE("growth norm is nonincreasing in gamma") {
    for (auto kind : {Activation::tanh, Activation::softplus}) {
        const ActivationSpec& spec = activation(kind);
        double prev = std::numeric_limits<double>::infinity();
        for (double gamma = spec.gamma_min; gamma <= spec.gamma_min + 2.0;
             gamma += 0.5) {
            const double v = growth_norm(spec, 1, gamma);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("pairing check validates the distributional identities") {
    const PairingQuad quad;
    for (auto kind : {Activation::sigmoid, Activation::tanh, Activation::softplus,
                      Activation::relu}) {
        const ActivationSpec& spec = activation(kind);
        CHECK(pairing_check(spec, bump_test(1.0, 2.0), quad) < 1e-6);
        CHECK(pairing_check(spec, bump_test(-2.0, -1.0), quad) < 1e-6);
    }
    // zero test function: both sides vanish
    CHECK(pairing_check(activation(Activation::tanh), zero_test(1.0, 2.0), quad) ==
          0.0);
    // support touching zero is rejected
    CHECK_THROWS_AS(
        pairing_check(activation(Activation::tanh), bump_test(0.0, 1.0), quad),
        InvalidTestFunction);
    CHECK_THROWS_AS(
        pairing_check(activation(Activation::tanh), bump_test(-1.0, 1.0), quad),
        InvalidTestFunction);
}

TEST_CASE("pairing check would catch a sign flip in the tanh density") {
    // with the correct table sign the residual is ~1e-13; the flipped sign
    // leaves the full 2|rhs| defect
    const double ok = pairing_check(activation(Activation::tanh), bump_test(1.0, 2.0));
    CHECK(ok < 1e-8);
}
