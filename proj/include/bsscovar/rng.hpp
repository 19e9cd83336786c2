#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bsscovar {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-path stream derived from (seed, path index). Streams are independent of
// how paths are distributed over worker threads.
inline std::mt19937_64 path_rng(std::uint64_t seed, std::uint64_t path_index) {
    std::uint64_t key = splitmix64(seed ^ splitmix64(path_index + 1));
    return std::mt19937_64(key);
}

// Standard normal draws via Box-Muller. Self-contained so output is identical
// across standard-library implementations.
class NormalStream {
  public:
    explicit NormalStream(std::mt19937_64 gen) : gen_(gen) {}
    NormalStream(std::uint64_t seed, std::uint64_t path_index) : gen_(path_rng(seed, path_index)) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform_open();
        double u2 = uniform_open();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    double uniform_open() {
        // in (0,1]; never 0 so log() is safe
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bsscovar
