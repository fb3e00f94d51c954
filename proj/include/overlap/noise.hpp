#pragma once

#include "overlap/strategies.hpp"

namespace overlap {

// Depolarized-qubit instance: d = 2 enforced, r0 is the purity of the
// N-copy state and r1 the purity of the M-copy state.
struct MixedScenario {
    Scenario base;
    double r0 = 1.0;
    double r1 = 1.0;

    MixedScenario(Scenario s, double r0_, double r1_) : base(s), r0(r0_), r1(r1_) {
        if (base.d != 2) throw UnsupportedScenario("MixedScenario: qubits only (d = 2)");
        r0 = clamp_unit(r0, "MixedScenario r0");
        r1 = clamp_unit(r1, "MixedScenario r1");
    }

    std::vector<HalfInt> j0_ladder() const {
        return ladder(HalfInt::from_twice(base.N % 2), HalfInt::from_twice(base.N));
    }
    std::vector<HalfInt> j1_ladder() const {
        return ladder(HalfInt::from_twice(base.M % 2), HalfInt::from_twice(base.M));
    }
};

/// Block weight p_{J0} of the depolarized N-copy state at purity r,
/// computed in log space; r = 1 degenerates to a point mass at J0 = N/2.
double mixed_prob_block(int N, double r, HalfInt J0);

/// Joint likelihood p(J, J0, J1 | c) by the explicit CG / Wigner-d sums
/// over (k, l, alpha).  Cost grows as (2J0+1)(2J1+1)^2; intended for
/// desk-scale cross-validation against the state-vector oracle.
double mixed_joint_likelihood(const MixedScenario& ms, HalfInt J, HalfInt J0, HalfInt J1,
                              double c);

/// Exact joint outcome probability p(J, J0, J1) = int p(c) p(J,J0,J1|c) dc
/// = p_{J0} p_{J1} (2J+1) / ((2J0+1)(2J1+1)).
double mixed_joint_prob(const MixedScenario& ms, HalfInt J, HalfInt J0, HalfInt J1);

/// Optimal Bayesian estimate c(J, J0, J1), eta/Gamma ratio evaluated through
/// the recoupled (L, L') form with squared 6j symbols.
double mixed_bayes_estimator(const MixedScenario& ms, HalfInt J, HalfInt J0, HalfInt J1);

/// Optimal Bayesian MSE for the mixed-qubit problem,
/// E[c^2] - sum p(J,J0,J1) c(J,J0,J1)^2 over the joint ladder.
MseReport mixed_bayes_mse(const MixedScenario& ms);
MseReport mixed_bayes_mse_serial(const MixedScenario& ms);

/// Leading-order asymptote 1/(6 M r0^2) + 1/(6 N r1^2).
double mixed_bayes_mse_asymptotic(const MixedScenario& ms);

/// True iff the swap test outperforms the Schur-sampling strategy under the
/// white-noise models with the stated per-implementation error rates.
bool noisy_crossover(double c, double eps_sw, double eps_sch);

/// Cramer-Rao bound 1/(R * H(c)) for R groups of S copy pairs.
double grouped_crlb(double c, int S, int R);

} // namespace overlap
