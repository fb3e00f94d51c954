#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "overlap/schur_stats.hpp"

namespace overlap {

enum class Strategy { Optimal, Swap, EP, EE };
enum class Mode { Local, Bayesian };

std::string to_string(Strategy s);
std::string to_string(Mode m);

// MSE value with provenance.
struct MseReport {
    enum class Provenance { ClosedForm, Quadrature, MonteCarlo };
    double value = 0.0;
    Provenance provenance = Provenance::ClosedForm;
    double stderr_value = 0.0;  // Monte Carlo only
    long long trials = 0;       // Monte Carlo only
};

// Tabulated outcome -> estimate map for the discrete-outcome strategies.
// `outcome` is 2J for the optimal measurement and k for Swap/EP.
struct EstimatorTable {
    Strategy strategy;
    Mode mode;
    std::vector<std::pair<long long, double>> mapping;

    double estimate(long long outcome) const;
};

// ---- optimal (weak Schur sampling) strategy -------------------------------

/// Local estimator (2J/(M+N))^2 of Eq.-(7) type.
double local_estimator_optimal(const Scenario& s, HalfInt J);

/// Asymptotic local MSE 4c(1-c)/(M+N).
double local_mse_optimal_asymptotic(const Scenario& s, double c);

/// Exact Fisher information of the J statistics at interior c.
/// Throws Endpoint within 1e-6 of c = 0 or 1.
double fisher_information(const Scenario& s, double c);

/// Bayesian estimator of the J outcome (exact closed form).
double bayes_estimator_optimal(const Scenario& s, HalfInt J);

/// Exact Bayesian MSE (d-1)(d+M+N) / (d(d+1)(d+M)(d+N)).
MseReport bayes_mse_optimal(const Scenario& s);

// ---- swap test ------------------------------------------------------------

/// Binomial(N, (1+c)/2) mass at k.
double swap_statistics(int N, double c, int k);

/// Local MSE (1-c^2)/N for the estimator c(k) = 2k/N - 1.
double swap_local_mse(int N, double c);

/// Bayesian estimator table and exact glMSE via terminating 2F1 sums.
std::pair<EstimatorTable, MseReport> swap_bayes(int d, int N);

// ---- estimate-and-project -------------------------------------------------

/// Covariant-measurement moment integrals I_i(M) for i in {0,1,2},
/// expanded as explicit polynomials in c.
double ep_moment_integral(int d, int M, double c, int i);

/// Local MSE of the estimator c(k) = k/N (exact rational form via I_1, I_2).
double ep_local_mse(const Scenario& s, double c);

/// Bayesian estimator table and exact glMSE.
std::pair<EstimatorTable, MseReport> ep_bayes(const Scenario& s);

// ---- estimate-and-estimate ------------------------------------------------

/// Local MSE of the estimator w (exact rational form).
double ee_local_mse(const Scenario& s, double c);

/// Bayesian estimator c(w) = (d+M+N+MNw)/((d+M)(d+N)) and exact glMSE.
struct EeBayesEstimator {
    int d, M, N;
    double operator()(double w) const;
};
std::pair<EeBayesEstimator, MseReport> ee_bayes(const Scenario& s);

// ---- post-measurement fidelities ------------------------------------------

double fidelity_optimal(const Scenario& s, double c); // sum_J p(J|c)^2
double fidelity_swap(int N, double c);                // ((1+c^2)/2)^N

// ---- asymptotic forms (Table-1 limits, exposed for explicit comparisons) --

double local_mse_optimal_m_infinity(int N, double c);       // c(1-c)/N
double ep_local_mse_asymptotic_equal(const Scenario& s, double c); // 6c(1-c)/(M+N)
double ee_local_mse_asymptotic_equal(const Scenario& s, double c); // 8c(1-c)/(M+N)
double bayes_mse_optimal_asymptotic_equal(const Scenario& s);      // 4(d-1)/(d(d+1)(M+N))
double bayes_mse_optimal_m_infinity(int d, int N);                 // (d-1)/(d(d+1)(d+N))
double swap_bayes_mse_large_n(int d, int N);                       // (d+2)(d-1)/(d(d+1)N)

} // namespace overlap
