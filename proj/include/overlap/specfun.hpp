#pragma once

#include <cstdint>

#include "overlap/half_int.hpp"
#include "overlap/log_real.hpp"

namespace overlap {

/// ln(n!) for n >= 0.  Table-backed for small n, lgamma beyond; relative
/// error stays below 1e-13 up to n = 10^6.
double log_factorial(long long n);

/// ln(x!) where x is an integer-valued angular-momentum combination.
double log_factorial(HalfInt x);

/// ln C(n, k); zero-width conventions apply (k outside [0,n] -> -inf).
double log_binomial(long long n, long long k);

/// sign and log|Gamma(x)| for real x; throws DegenerateParameters at the
/// poles x = 0, -1, -2, ...
LogReal log_gamma_signed(double x);

/// Jacobi polynomial P_n^{(alpha,beta)}(x) through the explicit
/// Gamma-function sum, accumulated in signed log space.
/// Throws DegenerateParameters when a numerator Gamma argument
/// (alpha+n+1, alpha+beta+n+1 or alpha+beta+n+m+1) hits a pole.
double jacobi_p(int n, double alpha, double beta, double x);

/// Log-space value of the same sum; finite even where the polynomial value
/// overflows a double (large n and x).
LogReal jacobi_p_log(int n, double alpha, double beta, double x);

/// Same polynomial by the three-term recurrence; stable for
/// alpha, beta > -1 on the whole real line.  Used where the Gamma sum
/// would cancel badly (|x| < 1 and large n).
double jacobi_p_recurrence(int n, double alpha, double beta, double x);

/// Clebsch-Gordan coefficient <J M | j1 m1; j2 m2> in the
/// Condon-Shortley convention (Racah closed form).
/// Exactly 0 when M != m1+m2 or the triangle |j1-j2| <= J <= j1+j2 fails.
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

/// Wigner small-d matrix element d^j_{m1,m2}(theta).  Evaluates the
/// Jacobi-polynomial form when its parameters are nonnegative, otherwise
/// falls back to the general sum over k.
double wigner_small_d(HalfInt j, HalfInt m1, HalfInt m2, double theta);

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} by the Racah single-sum formula.
/// Exactly 0 when a triangle condition fails; InvalidMomentum when a triad
/// perimeter is half-odd.
double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);

/// Terminating Gauss hypergeometric sum 2F1(a, b; c; x) with b a
/// nonpositive integer.  Throws PoleInSeries when a denominator Pochhammer
/// factor vanishes before the series terminates.
double hyp2f1_terminating(double a, long long b_neg_int, double c, double x);
LogReal hyp2f1_terminating_log(double a, long long b_neg_int, double c, double x);

/// Regularized variant: divides by Gamma(c) term-wise, i.e.
/// sum_m (a)_m (b)_m x^m / (Gamma(c+m) m!).  Finite for every real c.
LogReal hyp2f1_regularized_log(double a, long long b_neg_int, double c, double x);

} // namespace overlap
