#include "overlap/rng.hpp"

#include <algorithm>

#include "overlap/errors.hpp"
#include "overlap/specfun.hpp"

namespace overlap {

double sample_gamma(double alpha, Xoshiro256pp& gen) {
    if (alpha <= 0.0) throw OutOfRange("sample_gamma: alpha must be positive");
    if (alpha < 1.0) {
        // boost: Gamma(a) = Gamma(a+1) * U^(1/a)
        const double u = gen.uniform_open();
        return sample_gamma(alpha + 1.0, gen) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = gen.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = gen.uniform_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(double a, double b, Xoshiro256pp& gen) {
    if (b == 1.0) return std::pow(gen.uniform_open(), 1.0 / a);
    if (a == 1.0) return 1.0 - std::pow(gen.uniform_open(), 1.0 / b);
    const double x = sample_gamma(a, gen);
    const double y = sample_gamma(b, gen);
    return x / (x + y);
}

int sample_binomial(int n, double p, Xoshiro256pp& gen) {
    if (n < 0 || p < 0.0 || p > 1.0) throw OutOfRange("sample_binomial: invalid parameters");
    if (p == 0.0) return 0;
    if (p == 1.0) return n;
    const double u = gen.uniform();
    const double logp = std::log(p);
    const double log1mp = std::log1p(-p);
    auto log_pmf = [&](int k) { return log_binomial(n, k) + k * logp + (n - k) * log1mp; };

    const int mode = std::clamp(static_cast<int>((n + 1) * p), 0, n);
    double lo_mass = std::exp(log_pmf(mode));
    // cumulative mass below the mode
    double below = 0.0;
    {
        double lp = log_pmf(mode);
        double term = std::exp(lp);
        for (int k = mode; k > 0; --k) {
            // pmf(k-1) = pmf(k) * k (1-p) / ((n-k+1) p)
            term *= static_cast<double>(k) * (1.0 - p) / (static_cast<double>(n - k + 1) * p);
            below += term;
            if (term < 1e-18 * (below + lo_mass)) break;
        }
    }
    double cum = below;
    if (u < cum) {
        // walk down to find the bucket
        double term = std::exp(log_pmf(mode));
        double acc = below;
        for (int k = mode; k > 0; --k) {
            term *= static_cast<double>(k) * (1.0 - p) / (static_cast<double>(n - k + 1) * p);
            acc -= term;
            if (u >= acc) return k - 1;
        }
        return 0;
    }
    double term = lo_mass;
    for (int k = mode; k <= n; ++k) {
        cum += term;
        if (u < cum) return k;
        // pmf(k+1) = pmf(k) * (n-k) p / ((k+1)(1-p))
        term *= static_cast<double>(n - k) * p / (static_cast<double>(k + 1) * (1.0 - p));
    }
    return n;
}

} // namespace overlap
