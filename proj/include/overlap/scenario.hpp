#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "overlap/errors.hpp"
#include "overlap/half_int.hpp"

namespace overlap {

// A problem instance: dimension d and copy counts M, N.  M and N keep the
// roles given by the caller (EP/EE break the symmetry); the J-statistics
// themselves are M<->N symmetric and canonicalize internally.
struct Scenario {
    int d = 2;
    int M = 1;
    int N = 1;

    Scenario(int d_, int M_, int N_) : d(d_), M(M_), N(N_) {
        if (d < 2) throw OutOfRange("Scenario: d must be >= 2");
        if (M < 1 || N < 1) throw OutOfRange("Scenario: M, N must be >= 1");
    }

    int total() const { return M + N; }
    HalfInt j_min() const { return HalfInt::from_twice(std::abs(M - N)); }
    HalfInt j_max() const { return HalfInt::from_twice(M + N); }
    std::vector<HalfInt> j_ladder() const { return ladder(j_min(), j_max()); }
};

// Fixed-order Gauss-Legendre rule mapped to [0, 1].
class Quadrature {
public:
    explicit Quadrature(int order);

    int order() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0, comp = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const double y = weights_[i] * f(nodes_[i]) - comp;
            const double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        return acc;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// Integrate f over [0,1], doubling the order from `start` until two
// successive results agree to `tol` (absolute, relative to max(1,|I|)).
double integrate_adaptive(const std::function<double(double)>& f, int start_order = 96,
                          double tol = 1e-11);

// Normalized probability table over the J ladder at fixed conditioning.
struct OutcomeDistribution {
    Scenario scenario;
    std::vector<std::pair<HalfInt, double>> entries; // ascending J
    std::string conditioning;

    double prob(HalfInt J) const;
    double total_mass() const;
};

// Clamp floating noise; anything farther than `slack` outside [0,1] is a
// caller bug and raises OutOfRange.
double clamp_unit(double c, const char* what, double slack = 1e-12);

} // namespace overlap
