#ifndef CCDIV_RNG_HPP
#define CCDIV_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

// Seeding and sampling helpers shared by every stochastic component.
//
// All draws go through std::mt19937_64 (whose output sequence is fixed by the
// standard) and the hand-written transforms below, so a (seed, call sequence)
// pair reproduces the same values on every run. The std::*_distribution
// classes are avoided: their mapping from engine output to variates is
// implementation-defined.

namespace ccdiv::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic sub-task seed from (master seed, role tag, index).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view role,
                                 std::uint64_t index = 0) {
    std::uint64_t h = splitmix64(master);
    for (unsigned char c : role) h = splitmix64(h ^ c);
    return splitmix64(h ^ splitmix64(index));
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

// Uniform double in [0, 1) with 53-bit resolution.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

// Uniform integer in [lo, hi], inclusive, rejection-sampled to avoid bias.
inline std::int64_t uniform_int(std::mt19937_64& eng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(eng());  // full 64-bit range
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % range);
}

// Normal variate via Box-Muller; one variate per call, no cached spare.
inline double normal(std::mt19937_64& eng, double mean, double stddev) {
    const double u1 = 1.0 - uniform01(eng);  // (0, 1]
    const double u2 = uniform01(eng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

// Poisson variate, Knuth's product method chunked for large means.
inline int poisson(std::mt19937_64& eng, double lambda) {
    int total = 0;
    while (lambda > 30.0) {
        // Pois(a + b) = Pois(a) + Pois(b) for independent summands.
        const double l = std::exp(-30.0);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01(eng);
        } while (p > l);
        total += k - 1;
        lambda -= 30.0;
    }
    const double l = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform01(eng);
    } while (p > l);
    return total + k - 1;
}

}  // namespace ccdiv::rng

#endif
