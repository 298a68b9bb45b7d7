/**
 * @file util.hpp
 * @brief Small numeric helpers: compensated summation, deterministic RNG
 *        streams, least squares, hashing.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace ietmix {

/// Kahan-compensated accumulator.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

/// SplitMix64; used to derive independent stream seeds from (root seed, index).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream seed for batch `index` of a run with root seed `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL);
    splitmix64(s);
    return splitmix64(s);
}

/// Map a 64-bit word to [0,1) using the top 53 bits (platform independent).
inline double uniform53(std::uint64_t word) { return static_cast<double>(word >> 11) * 0x1.0p-53; }

struct LinearFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
    int n = 0;
};

/// Ordinary least squares y ~ slope*x + intercept with coefficient of determination.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Median (of a copy; even count averages the central pair).
double median(std::vector<double> v);

/// FNV-1a over a byte string; used for config hashes (stable across platforms).
std::uint64_t fnv1a64(const std::string& bytes);

/// Format a double so that parsing it back is bit-exact (shortest round-trip form).
std::string format_double(double v);

}  // namespace ietmix
