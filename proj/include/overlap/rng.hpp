#pragma once

#include <cmath>
#include <cstdint>

namespace overlap {

// Identifies a reproducible draw sequence.  Identical (seed, stream) pairs
// replay identical sequences; distinct streams are decorrelated through the
// splitmix64 avalanche used to key the engine.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RngStream substream(std::uint64_t id) const;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

// xoshiro256++ keyed by splitmix64 over (seed, stream, counter).  Fixed-width
// arithmetic end to end, so sequences are identical across platforms and
// thread counts.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(const RngStream& rs, std::uint64_t counter = 0) {
        std::uint64_t key = rs.seed;
        key ^= 0x6a09e667f3bcc909ULL + detail::splitmix64(key);
        key ^= rs.stream + 0x3c6ef372fe94f82bULL;
        (void)detail::splitmix64(key);
        key ^= counter * 0xa54ff53a5f1d36f1ULL + 0x510e527fade682d1ULL;
        for (auto& w : s_) w = detail::splitmix64(key);
        // a handful of warm-up steps decorrelates near-equal keys
        for (int i = 0; i < 8; ++i) (void)next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform double in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform double in (0, 1)
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    // standard normal via Box-Muller (cached second value)
    double normal() {
        if (have_cache_) {
            have_cache_ = false;
            return cache_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        cache_ = r * std::sin(a);
        have_cache_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4] = {};
    double cache_ = 0.0;
    bool have_cache_ = false;
};

inline RngStream RngStream::substream(std::uint64_t id) const {
    std::uint64_t key = stream ^ (0x2545f4914f6cdd1dULL * (id + 1));
    return {seed, detail::splitmix64(key)};
}

// Gamma(alpha, 1) sampler, Marsaglia-Tsang squeeze with the alpha < 1 boost.
double sample_gamma(double alpha, Xoshiro256pp& gen);

// Beta(a, b) via two Gammas; exact fast path for integer b == 1.
double sample_beta(double a, double b, Xoshiro256pp& gen);

// Binomial(n, p) by inverse CDF, walking outward from the mode.  Cost is
// O(sqrt(n p (1-p))) per draw and the result is a deterministic function of
// the single uniform consumed.
int sample_binomial(int n, double p, Xoshiro256pp& gen);

} // namespace overlap
