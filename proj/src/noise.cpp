#include "overlap/noise.hpp"

#include <cmath>

#include "overlap/parallel.hpp"

namespace overlap {

namespace {

constexpr double kPurityCeiling = 1.0 - 1e-12; // R = (1+r)/(1-r) stays finite

double effective_purity(double r) { return std::min(r, kPurityCeiling); }

// log sum_{k=-J..J} R^k
double log_z(HalfInt J, double log_r_ratio) {
    LogSum z;
    for (HalfInt k = -J; k <= J; k += HalfInt::whole(1)) z.add(k.value() * log_r_ratio, +1);
    return z.value().log_mag;
}

// level populations of the depolarized block: weight(k) = R^k / Z
struct BlockLevels {
    HalfInt J;
    double log_r_ratio;
    double log_zval;

    double weight(HalfInt k) const { return std::exp(k.value() * log_r_ratio - log_zval); }
};

BlockLevels make_levels(HalfInt J, double r) {
    const double rr = effective_purity(r);
    const double log_ratio = std::log1p(rr) - std::log1p(-rr);
    return {J, log_ratio, log_z(J, log_ratio)};
}

// w(J, L) = sum_k weight(k) * <L, k+1/2 | 1/2 1/2; J k>^2 for L = J +- 1/2
double spin_coupled_weight(const BlockLevels& lv, HalfInt L) {
    const HalfInt half = HalfInt::from_twice(1);
    KahanSum sum;
    for (HalfInt k = -lv.J; k <= lv.J; k += HalfInt::whole(1)) {
        if (abs(k + half) > L) continue;
        const double cg = clebsch_gordan(half, half, lv.J, k, L, k + half);
        if (cg == 0.0) continue;
        sum.add(lv.weight(k) * cg * cg);
    }
    return sum.value();
}

void check_joint_labels(const MixedScenario& ms, HalfInt J, HalfInt J0, HalfInt J1) {
    if (J0.twice() < ms.base.N % 2 || J0.twice() > ms.base.N || (ms.base.N - J0.twice()) % 2 != 0)
        throw OutOfRange("mixed: J0 = " + J0.str() + " not on the N-qubit ladder");
    if (J1.twice() < ms.base.M % 2 || J1.twice() > ms.base.M || (ms.base.M - J1.twice()) % 2 != 0)
        throw OutOfRange("mixed: J1 = " + J1.str() + " not on the M-qubit ladder");
    if (!triangle_ok(J0, J1, J))
        throw TriangleViolation("mixed: (J0, J1, J) = (" + J0.str() + ", " + J1.str() + ", " +
                                J.str() + ") violates the triangle condition");
}

} // namespace

double mixed_prob_block(int N, double r, HalfInt J0) {
    if (N < 1) throw OutOfRange("mixed_prob_block: N must be >= 1");
    r = clamp_unit(r, "mixed_prob_block r");
    if (J0.twice() < N % 2 || J0.twice() > N || (N - J0.twice()) % 2 != 0)
        throw OutOfRange("mixed_prob_block: J0 = " + J0.str() + " not on the N-qubit ladder");
    if (r >= kPurityCeiling) return J0.twice() == N ? 1.0 : 0.0; // pure limit: point mass
    const BlockLevels lv = make_levels(J0, r);
    const double log_p = 0.5 * N * std::log((1.0 - r * r) / 4.0) +
                         log_binomial(N, (N - J0.twice()) / 2) + std::log(J0.twice() + 1.0) -
                         std::log(0.5 * N + J0.value() + 1.0) + lv.log_zval;
    return std::exp(log_p);
}

double mixed_joint_likelihood(const MixedScenario& ms, HalfInt J, HalfInt J0, HalfInt J1,
                              double c) {
    check_joint_labels(ms, J, J0, J1);
    c = clamp_unit(c, "mixed_joint_likelihood");
    const double p0 = mixed_prob_block(ms.base.N, ms.r0, J0);
    const double p1 = mixed_prob_block(ms.base.M, ms.r1, J1);
    const BlockLevels lv0 = make_levels(J0, ms.r0);
    const BlockLevels lv1 = make_levels(J1, ms.r1);
    const double theta = 2.0 * std::acos(std::sqrt(c));

    KahanSum sum;
    for (HalfInt k = -J0; k <= J0; k += HalfInt::whole(1)) {
        const double w0 = lv0.weight(k);
        for (HalfInt l = -J1; l <= J1; l += HalfInt::whole(1)) {
            const double w1 = lv1.weight(l);
            double inner = 0.0;
            for (HalfInt alpha = -J1; alpha <= J1; alpha += HalfInt::whole(1)) {
                if (abs(k + alpha) > J) continue;
                const double cg = clebsch_gordan(J0, k, J1, alpha, J, k + alpha);
                if (cg == 0.0) continue;
                const double wd = wigner_small_d(J1, alpha, l, theta);
                inner += cg * cg * wd * wd;
            }
            sum.add(w0 * w1 * inner);
        }
    }
    return p0 * p1 * sum.value();
}

double mixed_joint_prob(const MixedScenario& ms, HalfInt J, HalfInt J0, HalfInt J1) {
    check_joint_labels(ms, J, J0, J1);
    const double p0 = mixed_prob_block(ms.base.N, ms.r0, J0);
    const double p1 = mixed_prob_block(ms.base.M, ms.r1, J1);
    return p0 * p1 * (J.twice() + 1.0) / ((J0.twice() + 1.0) * (J1.twice() + 1.0));
}

namespace {

// c(J, J0, J1) with levels already built (hot path of the MSE sum).
double estimator_core(const BlockLevels& lv0, const BlockLevels& lv1, HalfInt J,
                      const double w0_pair[2], const double w1_pair[2]) {
    const HalfInt half = HalfInt::from_twice(1);
    const HalfInt J0 = lv0.J, J1 = lv1.J;
    const double dim0 = J0.twice() + 1.0, dim1 = J1.twice() + 1.0, dimJ = J.twice() + 1.0;
    double acc = 0.0;
    int li = 0;
    for (HalfInt L = abs(J1 - half); L <= J1 + half; L += HalfInt::whole(1), ++li) {
        double q = 0.0;
        int pi = 0;
        for (HalfInt Lp = abs(J0 - half); Lp <= J0 + half; Lp += HalfInt::whole(1), ++pi) {
            const double sj = wigner_6j(J1, half, L, Lp, J, J0);
            if (sj == 0.0) continue;
            q += w0_pair[pi] * sj * sj;
        }
        q *= (L.twice() + 1.0) * dimJ; // Q(L) = (2L+1)(2J+1) sum_L' ...
        acc += q * (1.0 / dim1 - w1_pair[li] / (L.twice() + 1.0));
    }
    // c = eta / Gamma with the common p_{J0} p_{J1} cancelled:
    //   eta   ~ acc, Gamma ~ (2J+1)/((2J0+1)(2J1+1))
    return acc * dim0 * dim1 / dimJ;
}

void fill_pairs(const BlockLevels& lv, double out[2]) {
    const HalfInt half = HalfInt::from_twice(1);
    int i = 0;
    for (HalfInt L = abs(lv.J - half); L <= lv.J + half; L += HalfInt::whole(1), ++i)
        out[i] = spin_coupled_weight(lv, L);
}

MseReport mixed_mse_impl(const MixedScenario& ms, bool parallel) {
    const int M = ms.base.M, N = ms.base.N;
    const auto lad0 = ms.j0_ladder();
    const auto lad1 = ms.j1_ladder();

    std::vector<double> logp0(lad0.size()), logp1(lad1.size());
    std::vector<BlockLevels> lv0s, lv1s;
    for (std::size_t i = 0; i < lad0.size(); ++i) {
        logp0[i] = std::log(mixed_prob_block(N, ms.r0, lad0[i]));
        lv0s.push_back(make_levels(lad0[i], ms.r0));
    }
    for (std::size_t i = 0; i < lad1.size(); ++i) {
        logp1[i] = std::log(mixed_prob_block(M, ms.r1, lad1[i]));
        lv1s.push_back(make_levels(lad1[i], ms.r1));
    }

    std::vector<double> partial(lad0.size(), 0.0);
    const int threads = parallel ? resolve_threads() : 1;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i0 = 0; i0 < static_cast<long>(lad0.size()); ++i0) {
        double w0_pair[2];
        fill_pairs(lv0s[i0], w0_pair);
        KahanSum acc;
        for (std::size_t i1 = 0; i1 < lad1.size(); ++i1) {
            double w1_pair[2];
            fill_pairs(lv1s[i1], w1_pair);
            const double log_pp = logp0[i0] + logp1[i1];
            if (log_pp < -745.0) continue; // joint weight underflows; contribution negligible
            const double pp = std::exp(log_pp);
            const HalfInt J0 = lad0[i0], J1 = lad1[i1];
            for (HalfInt J = abs(J0 - J1); J <= J0 + J1; J += HalfInt::whole(1)) {
                const double gamma_w =
                    pp * (J.twice() + 1.0) / ((J0.twice() + 1.0) * (J1.twice() + 1.0));
                const double est = estimator_core(lv0s[i0], lv1s[i1], J, w0_pair, w1_pair);
                acc.add(gamma_w * est * est);
            }
        }
        partial[i0] = acc.value();
    }
    KahanSum total;
    for (double p : partial) total.add(p);
    const double v = 1.0 / 3.0 - total.value(); // E[c^2] = 1/3 under the d = 2 prior
    return {v, MseReport::Provenance::ClosedForm};
}

} // namespace

double mixed_bayes_estimator(const MixedScenario& ms, HalfInt J, HalfInt J0, HalfInt J1) {
    check_joint_labels(ms, J, J0, J1);
    const BlockLevels lv0 = make_levels(J0, ms.r0);
    const BlockLevels lv1 = make_levels(J1, ms.r1);
    double w0_pair[2], w1_pair[2];
    fill_pairs(lv0, w0_pair);
    fill_pairs(lv1, w1_pair);
    return estimator_core(lv0, lv1, J, w0_pair, w1_pair);
}

MseReport mixed_bayes_mse(const MixedScenario& ms) { return mixed_mse_impl(ms, true); }

MseReport mixed_bayes_mse_serial(const MixedScenario& ms) { return mixed_mse_impl(ms, false); }

double mixed_bayes_mse_asymptotic(const MixedScenario& ms) {
    return 1.0 / (6.0 * ms.base.M * ms.r0 * ms.r0) + 1.0 / (6.0 * ms.base.N * ms.r1 * ms.r1);
}

bool noisy_crossover(double c, double eps_sw, double eps_sch) {
    if (c <= 0.0 || c >= 1.0) throw Endpoint("noisy_crossover: c must lie strictly inside (0,1)");
    if (eps_sw < 0.0 || eps_sw >= 1.0 || eps_sch < 0.0 || eps_sch >= 1.0)
        throw OutOfRange("noisy_crossover: error rates must lie in [0,1)");
    const double lhs = (1.0 - eps_sw) * (1.0 - eps_sw) /
                       ((1.0 - c * c) * (1.0 - eps_sw * eps_sw));
    const double rhs = (1.0 - eps_sch) / (2.0 * c * (1.0 - c));
    return lhs >= rhs;
}

double grouped_crlb(double c, int S, int R) {
    if (S < 1 || R < 1) throw OutOfRange("grouped_crlb: S and R must be >= 1");
    const Scenario group(2, S, S);
    return 1.0 / (R * fisher_information(group, c));
}

} // namespace overlap
