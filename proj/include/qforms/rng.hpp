#pragma once

// Deterministic randomness. All sampled procedures take an explicit seed and
// derive per-stream generators with splitmix64, so runs reproduce bit-for-bit
// regardless of how work is chunked. Gaussians are hand-rolled Box-Muller on
// raw mt19937_64 output because std::normal_distribution is not pinned down
// by the standard.

#include "scalars.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace qf {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1));
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : g_(seed) {}
    Rng(uint64_t seed, uint64_t stream) : g_(mix_seed(seed, stream)) {}

    uint64_t u64() { return g_(); }

    double uniform() { return double(u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    long uniform_int(long lo, long hi) {  // inclusive bounds
        uint64_t span = uint64_t(hi - lo) + 1;
        return lo + long(u64() % span);
    }

    double gauss() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

    Rat small_rat(long max_num = 9, long max_den = 4) {
        Rat r(uniform_int(-max_num, max_num), uniform_int(1, max_den));
        r.canonicalize();
        return r;
    }

    ExactComplex small_complex(long max_num = 9, long max_den = 4) {
        return ExactComplex(small_rat(max_num, max_den), small_rat(max_num, max_den));
    }

  private:
    std::mt19937_64 g_;
    bool have_ = false;
    double spare_ = 0.0;
};

}  // namespace qf
