#include "overlap/strategies.hpp"

#include <cmath>

namespace overlap {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Optimal: return "optimal";
        case Strategy::Swap: return "swap";
        case Strategy::EP: return "ep";
        case Strategy::EE: return "ee";
    }
    return "?";
}

std::string to_string(Mode m) {
    return m == Mode::Local ? "local" : "bayes";
}

double EstimatorTable::estimate(long long outcome) const {
    for (const auto& [k, v] : mapping)
        if (k == outcome) return v;
    throw OutOfRange("EstimatorTable: unknown outcome " + std::to_string(outcome));
}

double local_estimator_optimal(const Scenario& s, HalfInt J) {
    const double r = static_cast<double>(J.twice()) / s.total();
    return r * r;
}

double local_mse_optimal_asymptotic(const Scenario& s, double c) {
    c = clamp_unit(c, "local_mse_optimal_asymptotic");
    return 4.0 * c * (1.0 - c) / s.total();
}

double fisher_information(const Scenario& s, double c) {
    if (c < 1e-6 || c > 1.0 - 1e-6)
        throw Endpoint("fisher_information: c = " + std::to_string(c) + " too close to an endpoint");
    KahanSum h;
    for (HalfInt J : s.j_ladder()) {
        const LogReal p = p_j_given_c_log(s, J, c);
        if (p.sign == 0) continue;
        const LogReal dp = dp_j_dc_log(s, J, c);
        if (dp.sign == 0) continue;
        const double log_term = 2.0 * dp.log_mag - p.log_mag;
        if (log_term < -745.0) continue;
        h.add(std::exp(log_term));
    }
    return h.value();
}

double bayes_estimator_optimal(const Scenario& s, HalfInt J) {
    const double j = J.value();
    const double half = 0.5 * s.total();
    const double num = s.d + j + j * j + half - half * half +
                       static_cast<double>(s.M) * static_cast<double>(s.N);
    return num / (static_cast<double>(s.d + s.M) * static_cast<double>(s.d + s.N));
}

MseReport bayes_mse_optimal(const Scenario& s) {
    const double d = s.d, M = s.M, N = s.N;
    const double v = (d - 1.0) * (d + M + N) / (d * (d + 1.0) * (d + M) * (d + N));
    return {v, MseReport::Provenance::ClosedForm};
}

double swap_statistics(int N, double c, int k) {
    if (N < 1) throw OutOfRange("swap_statistics: N must be >= 1");
    if (k < 0 || k > N) throw OutOfRange("swap_statistics: k outside [0, N]");
    c = clamp_unit(c, "swap_statistics");
    const double p = 0.5 * (1.0 + c);
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == N ? 1.0 : 0.0;
    return std::exp(log_binomial(N, k) + k * std::log(p) + (N - k) * std::log1p(-p));
}

double swap_local_mse(int N, double c) {
    if (N < 1) throw OutOfRange("swap_local_mse: N must be >= 1");
    c = clamp_unit(c, "swap_local_mse");
    return (1.0 - c * c) / N;
}

namespace {

// log p(k) and log c~(k) for the swap-test Bayesian analysis:
//   p(k)  = (d-1) C(N,k) 2^-N  2F1(1,-k; d+N-k; -1) / (d+N-k-1)
//   c~(k) = (d-1) C(N,k) 2^-N  2F1(2,-k; d+N-k+1; -1) / ((d+N-k-1)(d+N-k))
// Both series have strictly positive terms at x = -1, so the log-space
// accumulation is cancellation-free for any N.
struct SwapBayesTerm {
    double log_p;
    double log_ct;
};

SwapBayesTerm swap_bayes_term(int d, int N, int k) {
    const double b = d + N - k - 1.0;
    const double base = std::log(d - 1.0) + log_binomial(N, k) - N * std::log(2.0);
    const LogReal f1 = hyp2f1_terminating_log(1.0, -static_cast<long long>(k), b + 1.0, -1.0);
    const LogReal f2 = hyp2f1_terminating_log(2.0, -static_cast<long long>(k), b + 2.0, -1.0);
    return {base + f1.log_mag - std::log(b), base + f2.log_mag - std::log(b) - std::log(b + 1.0)};
}

} // namespace

std::pair<EstimatorTable, MseReport> swap_bayes(int d, int N) {
    if (d < 2 || N < 1) throw OutOfRange("swap_bayes: need d >= 2 and N >= 1");
    EstimatorTable table{Strategy::Swap, Mode::Bayesian, {}};
    table.mapping.reserve(N + 1);
    KahanSum second_moment; // sum_k c~(k)^2 / p(k)
    for (int k = 0; k <= N; ++k) {
        const SwapBayesTerm t = swap_bayes_term(d, N, k);
        table.mapping.emplace_back(k, std::exp(t.log_ct - t.log_p));
        second_moment.add(std::exp(2.0 * t.log_ct - t.log_p));
    }
    const double v = 2.0 / (d * (d + 1.0)) - second_moment.value();
    return {std::move(table), {v, MseReport::Provenance::ClosedForm}};
}

double ep_moment_integral(int d, int M, double c, int i) {
    if (d < 2 || M < 1) throw OutOfRange("ep_moment_integral: need d >= 2 and M >= 1");
    c = clamp_unit(c, "ep_moment_integral");
    const double dM = M;
    switch (i) {
        case 0: return 1.0;
        case 1: return (1.0 + dM * c) / (dM + d);
        case 2: return (2.0 + 4.0 * dM * c + dM * (dM - 1.0) * c * c) / ((dM + d) * (dM + d + 1.0));
        default: throw OutOfRange("ep_moment_integral: i must be 0, 1 or 2");
    }
}

double ep_local_mse(const Scenario& s, double c) {
    c = clamp_unit(c, "ep_local_mse");
    const double i1 = ep_moment_integral(s.d, s.M, c, 1);
    const double i2 = ep_moment_integral(s.d, s.M, c, 2);
    const double invN = 1.0 / s.N;
    return c * c - (2.0 * c - invN) * i1 + (1.0 - invN) * i2;
}

std::pair<EstimatorTable, MseReport> ep_bayes(const Scenario& s) {
    const double d = s.d, M = s.M, N = s.N;
    EstimatorTable table{Strategy::EP, Mode::Bayesian, {}};
    table.mapping.reserve(s.N + 1);
    for (int k = 0; k <= s.N; ++k)
        table.mapping.emplace_back(k, (d + N + M * (k + 1.0)) / ((d + M) * (d + N)));
    const double v =
        (d - 1.0) * ((d + M) * (d + M) + (d + 2.0 * M) * N) /
        (d * (1.0 + d) * (d + M) * (d + M) * (d + N));
    return {std::move(table), {v, MseReport::Provenance::ClosedForm}};
}

double ee_local_mse(const Scenario& s, double c) {
    c = clamp_unit(c, "ee_local_mse");
    const double d = s.d, M = s.M, N = s.N;
    const double num = (d + M + N) * ((2.0 + c * (c * d - 2.0) * (d + 1.0)) * (d + M + N + 1.0) +
                                      2.0 * c * (1.0 - c) * M * N);
    return num / ((d + M) * (d + M + 1.0) * (d + N) * (d + N + 1.0));
}

double EeBayesEstimator::operator()(double w) const {
    w = clamp_unit(w, "EeBayesEstimator");
    const double dd = d, dM = M, dN = N;
    return (dd + dM + dN + dM * dN * w) / ((dd + dM) * (dd + dN));
}

std::pair<EeBayesEstimator, MseReport> ee_bayes(const Scenario& s) {
    const double d = s.d, M = s.M, N = s.N;
    const double v = (d - 1.0) * (d + M + N) * (d * d + 2.0 * M * N + d * (M + N)) /
                     (d * (d + 1.0) * (d + M) * (d + M) * (d + N) * (d + N));
    return {EeBayesEstimator{s.d, s.M, s.N}, {v, MseReport::Provenance::ClosedForm}};
}

double fidelity_optimal(const Scenario& s, double c) {
    c = clamp_unit(c, "fidelity_optimal");
    KahanSum sum;
    for (HalfInt J : s.j_ladder()) {
        const double p = p_j_given_c(s, J, c);
        sum.add(p * p);
    }
    return sum.value();
}

double fidelity_swap(int N, double c) {
    if (N < 1) throw OutOfRange("fidelity_swap: N must be >= 1");
    c = clamp_unit(c, "fidelity_swap");
    return std::pow(0.5 * (1.0 + c * c), N);
}

double local_mse_optimal_m_infinity(int N, double c) {
    c = clamp_unit(c, "local_mse_optimal_m_infinity");
    return c * (1.0 - c) / N;
}

double ep_local_mse_asymptotic_equal(const Scenario& s, double c) {
    c = clamp_unit(c, "ep_local_mse_asymptotic_equal");
    return 6.0 * c * (1.0 - c) / s.total();
}

double ee_local_mse_asymptotic_equal(const Scenario& s, double c) {
    c = clamp_unit(c, "ee_local_mse_asymptotic_equal");
    return 8.0 * c * (1.0 - c) / s.total();
}

double bayes_mse_optimal_asymptotic_equal(const Scenario& s) {
    const double d = s.d;
    return 4.0 * (d - 1.0) / (d * (d + 1.0) * s.total());
}

double bayes_mse_optimal_m_infinity(int d, int N) {
    return (d - 1.0) / (d * (d + 1.0) * (d + N));
}

double swap_bayes_mse_large_n(int d, int N) {
    return (d + 2.0) * (d - 1.0) / (d * (d + 1.0) * N);
}

} // namespace overlap
