#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "sepcoords/gauss_rational.hpp"

namespace sepcoords {

// SplitMix64 (Steele, Lea, Flood 2014). Output stream is fixed across
// platforms, which keeps sampled reports reproducible.
class SplitMix64 {
public:
    static constexpr const char* name = "splitmix64-v1";

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    long integer(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // |u| in [rmin, rmax], phase uniform.
    cd annulus(double rmin, double rmax) {
        double r = uniform(rmin, rmax);
        double t = uniform(0.0, 2.0 * std::numbers::pi);
        return std::polar(r, t);
    }

    // p/q with |p/q| <= bound and 1 <= q <= max_den.
    mpq_class rational(long bound, long max_den) {
        long q = integer(1, max_den);
        long p = integer(-bound * q, bound * q);
        mpq_class r(p, q);
        r.canonicalize();
        return r;
    }

    Qi gauss_rational(long bound, long max_den) { return Qi(rational(bound, max_den), rational(bound, max_den)); }

    SplitMix64 fork(std::uint64_t salt) { return SplitMix64(next() ^ (salt * 0xD1B54A32D192ED03ULL)); }

private:
    std::uint64_t state_;
};

}  // namespace sepcoords
