#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ridgekit {

/// splitmix64 finalizer; the basis of the documented stream-splitting rule:
/// substream(seed, index) seeds an mt19937_64 with
/// splitmix64(seed ^ ((index + 1) * 0x9E3779B97F4A7C15)).
inline uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t substream_seed(uint64_t master, uint64_t index) {
    return splitmix64(master ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
}

/// Deterministic random stream. Normals come from an explicitly coded
/// Box-Muller transform (std::normal_distribution is implementation-defined,
/// which would break bit-for-bit reproducibility across toolchains).
class RandomStream {
public:
    explicit RandomStream(uint64_t seed) : gen_(seed) {}

    /// uniform in the open interval (0,1)
    double uniform() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double c = std::cos(2.0 * M_PI * u2);
        const double s = std::sin(2.0 * M_PI * u2);
        spare_ = r * s;
        have_spare_ = true;
        return r * c;
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace ridgekit
