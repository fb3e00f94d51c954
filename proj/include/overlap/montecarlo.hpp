#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "overlap/rng.hpp"
#include "overlap/strategies.hpp"

namespace overlap {

// Normalized pure state of a d-level system.
struct PureState {
    std::vector<std::complex<double>> amp;

    int dim() const { return static_cast<int>(amp.size()); }
    double norm_sq() const;
};

// |<a|b>|^2
double overlap_sq(const PureState& a, const PureState& b);

struct TrialRecord {
    double c;        // true overlap in that trial
    double outcome;  // 2J, k, or w depending on the strategy
    double estimate;
};

// Local mode fixes the true overlap; Bayesian mode draws it from the
// Haar-induced prior each trial.
struct SimMode {
    Mode kind;
    double c = 0.0; // LocalAt only

    static SimMode local_at(double c) { return {Mode::Local, c}; }
    static SimMode bayesian() { return {Mode::Bayesian, 0.0}; }
};

struct SimulateOptions {
    bool clamp_estimates = false;           // clamp raw estimates into [0,1]
    std::vector<TrialRecord>* records = nullptr; // per-trial capture when set
};

/// Haar-random pure state: i.i.d. standard complex Gaussian amplitudes,
/// normalized.
PureState sample_haar_state(int d, const RngStream& rng);

/// (psi, phi) with |<psi|phi>|^2 = c exactly: psi Haar, psi_perp Haar in the
/// orthogonal complement, phi = sqrt(c) psi + e^{i theta} sqrt(1-c) psi_perp.
std::pair<PureState, PureState> sample_pair_with_overlap(int d, double c, const RngStream& rng);

/// One J outcome from p(J|c) by inverse CDF.
HalfInt sample_j_outcome(const Scenario& s, double c, const RngStream& rng);

/// Covariant-measurement estimate phi_V with density chi |<phi_V|phi>|^{2M} dV:
/// radial overlap t ~ Beta(M+1, d-1), azimuth Haar-uniform in the orthogonal
/// complement of phi, uniform relative phase.
PureState sample_covariant_estimate(const PureState& phi, int M, const RngStream& rng);

/// End-to-end seeded simulation of a strategy; empirical MSE with standard
/// error.  Trials use independent substreams of `rng`, so results are
/// bit-identical for a fixed (seed, stream) regardless of thread count.
MseReport simulate(Strategy strategy, SimMode mode, const Scenario& s, long long trials,
                   const RngStream& rng, const SimulateOptions& opt = {});

/// Single-threaded reference implementation; must agree bit-for-bit with
/// simulate() for every configuration.
MseReport simulate_serial(Strategy strategy, SimMode mode, const Scenario& s, long long trials,
                          const RngStream& rng, const SimulateOptions& opt = {});

} // namespace overlap
