#pragma once

#include <cstdint>

#include "overlap/log_real.hpp"
#include "overlap/scenario.hpp"
#include "overlap/specfun.hpp"

namespace overlap {

/// Haar-induced prior density of the squared overlap, (d-1)(1-c)^(d-2).
/// At d = 2 this is 1 for every c in [0,1], including c = 1.
double overlap_prior(int d, double c);

/// p(J|c) by the explicit positive-term sum over k (canonical route).
/// All summands are nonnegative, accumulated in log space; endpoint values
/// c in {0,1} keep exactly the terms whose vanishing power is zero.
double p_j_given_c(const Scenario& s, HalfInt J, double c);
LogReal p_j_given_c_log(const Scenario& s, HalfInt J, double c);

/// d/dc p(J|c), term-wise derivative of the k-sum, as two positive
/// log-space sums combined once.  c must lie strictly inside (0,1).
LogReal dp_j_dc_log(const Scenario& s, HalfInt J, double c);

/// p(J|c) through the Clebsch-Gordan / Wigner-d route
/// sum_k (C^{J,N/2+k}_{N/2,N/2;M/2,k} d^{M/2}_{k,M/2}(2 arccos sqrt(c)))^2;
/// an independent implementation used for cross-validation.
double p_j_given_c_cgroute(const Scenario& s, HalfInt J, double c);

/// Whole-ladder pmf at fixed c.
OutcomeDistribution pmf_given_c(const Scenario& s, double c);

/// Dimension of the SU(d) irrep with a two-row Young diagram
/// (total/2 + J, total/2 - J), from the Hook formula.  Exact while the
/// integer fits; otherwise only the log value is meaningful.
struct IrrepDim {
    bool exact = true;
    std::uint64_t value = 0;
    double log_value = 0.0;
};
IrrepDim irrep_dimension(int d, HalfInt J, int total);

/// p(J) = integral of p(c) p(J|c) dc by Gauss-Legendre, doubling the order
/// adaptively from q.order().
double marginal_p_j(const Scenario& s, HalfInt J, const Quadrature& q);

/// Posterior moment E[c^power | J] (power 1 or 2); the quadrature oracle
/// for the closed-form Bayesian estimator.
double posterior_moment(const Scenario& s, HalfInt J, int power, const Quadrature& q);

} // namespace overlap
