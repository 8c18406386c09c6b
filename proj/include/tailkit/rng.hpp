// Deterministic random variates. The base generator is std::mt19937_64, whose
// sequence is pinned down bit-for-bit by the C++ standard (the 10000th output
// of a default-seeded engine is 9981545732273789042), so samples are
// reproducible across platforms. Variates are mapped with explicit arithmetic;
// std::*_distribution adapters are implementation-defined and never used.
#pragma once

#include <cstdint>
#include <random>

namespace tailkit {

// splitmix64 output function (Vigna's reference constants).
uint64_t splitmix64_mix(uint64_t x);

// Independent sub-stream seed for a (master seed, index) pair. Equals the
// index-th output of a splitmix64 stream seeded with `master`.
uint64_t sub_seed(uint64_t master, uint64_t index);

class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform01() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; the paired variate is cached.
    double normal();

    // Gamma(shape, 1) by Marsaglia-Tsang squeeze; valid for any shape > 0.
    double gamma(double shape);

    double chi_square(double df) { return 2.0 * gamma(0.5 * df); }

    double student_t(double df);

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace tailkit
