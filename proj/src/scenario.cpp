#include "overlap/scenario.hpp"

#include <cmath>

#include "overlap/log_real.hpp"

namespace overlap {

Quadrature::Quadrature(int order) {
    if (order < 2) throw OutOfRange("Quadrature: order must be >= 2");
    nodes_.resize(order);
    weights_.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_order, Chebyshev initial guess
        double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int k = 0; k < order; ++k) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * k + 1.0) * z * p2 - k * p3) / (k + 1.0);
            }
            pp = order * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        // map from [-1,1] to [0,1]
        nodes_[i] = 0.5 * (1.0 - z);
        nodes_[order - 1 - i] = 0.5 * (1.0 + z);
        const double w = 1.0 / ((1.0 - z * z) * pp * pp);
        weights_[i] = w;
        weights_[order - 1 - i] = w;
    }
}

double integrate_adaptive(const std::function<double(double)>& f, int start_order, double tol) {
    int order = std::max(2, start_order);
    Quadrature q(order);
    double prev = q.integrate(f);
    constexpr int kMaxOrder = 4096;
    while (order < kMaxOrder) {
        order *= 2;
        Quadrature q2(order);
        const double cur = q2.integrate(f);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

double OutcomeDistribution::prob(HalfInt J) const {
    for (const auto& [j, p] : entries)
        if (j == J) return p;
    return 0.0;
}

double OutcomeDistribution::total_mass() const {
    KahanSum s;
    for (const auto& [j, p] : entries) s.add(p);
    return s.value();
}

double clamp_unit(double c, const char* what, double slack) {
    if (c < -slack || c > 1.0 + slack)
        throw OutOfRange(std::string(what) + ": value " + std::to_string(c) + " outside [0,1]");
    if (c < 0.0) return 0.0;
    if (c > 1.0) return 1.0;
    return c;
}

} // namespace overlap
