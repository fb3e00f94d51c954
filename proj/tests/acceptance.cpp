// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned in code next to each check.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "overlap/montecarlo.hpp"
#include "overlap/noise.hpp"
#include "overlap/oracle.hpp"
#include "overlap/serialize.hpp"
#include "test_util.hpp"

using namespace overlap;

namespace {

int g_failures = 0;

void run_criterion(const std::string& name, const std::function<std::string()>& body) {
    try {
        const std::string detail = body();
        std::printf("[PASS] %-14s %s\n", name.c_str(), detail.c_str());
    } catch (const std::exception& e) {
        ++g_failures;
        std::printf("[FAIL] %-14s %s\n", name.c_str(), e.what());
    }
    std::fflush(stdout);
}

void require(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

HalfInt w(int n) { return HalfInt::whole(n); }

std::string dev(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// C1: p(J|c) equals the d=2 state-vector oracle entrywise to 1e-10,
// M+N <= 8, c in {0, 0.25, 0.5, 0.75, 1}.
std::string c1_oracle_keystone() {
    double worst = 0.0;
    for (int total = 2; total <= 8; ++total) {
        for (int M = 1; M < total; ++M) {
            const int N = total - M;
            const Scenario s(2, M, N);
            for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const auto oracle = oracle_p_j(M, N, c);
                for (const auto& [J, p] : oracle) {
                    const double analytic = J < s.j_min() ? 0.0 : p_j_given_c(s, J, c);
                    worst = std::max(worst, std::abs(analytic - p));
                }
            }
        }
    }
    require(worst <= 1e-10, "worst deviation " + dev(worst));
    return "max |analytic - oracle| = " + dev(worst);
}

// C2: Jacobi-sum route vs CG/Wigner-d route, 1e-9 relative, M+N <= 60.
std::string c2_route_equivalence() {
    double worst = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst)
    for (int total = 2; total <= 60; ++total) {
        for (int M = 1; M < total; ++M) {
            const Scenario s(2, M, total - M);
            for (int ci = 0; ci <= 10; ++ci) {
                const double c = ci / 10.0;
                for (HalfInt J : s.j_ladder()) {
                    const double a = p_j_given_c(s, J, c);
                    const double b = p_j_given_c_cgroute(s, J, c);
                    if (a < 1e-280 && std::abs(b) < 1e-280) continue;
                    worst = std::max(worst, std::abs(a - b) / std::max(a, std::abs(b)));
                }
            }
        }
    }
    require(worst <= 1e-9, "worst relative deviation " + dev(worst));
    return "max relative route gap = " + dev(worst);
}

// C3: Eq.-(8)-type estimator vs quadrature posterior mean to 1e-8 and the
// closed glMSE vs E[c^2] - sum p(J) c(J)^2 to 1e-8, d in {2,3,10}, M,N <= 50.
std::string c3_bayes_closed_forms() {
    const Scenario spot(2, 1, 1);
    require(std::abs(bayes_estimator_optimal(spot, w(0)) - 1.0 / 3.0) < 1e-15 &&
                std::abs(bayes_estimator_optimal(spot, w(1)) - 5.0 / 9.0) < 1e-15 &&
                std::abs(bayes_mse_optimal(spot).value - 2.0 / 27.0) < 1e-16,
            "spot values at d=2, M=N=1");

    const Quadrature q(128); // exact for polynomial degree <= 255 > 50 + d + 2
    double worst_est = 0.0, worst_mse = 0.0;
    const int dims[] = {2, 3, 10};
    for (int di = 0; di < 3; ++di) {
        const int d = dims[di];
#pragma omp parallel for collapse(2) schedule(dynamic) reduction(max : worst_est, worst_mse)
        for (int M = 1; M <= 50; ++M) {
            for (int N = 1; N <= 50; ++N) {
                const Scenario s(d, M, N);
                const auto lad = s.j_ladder();
                std::vector<double> m0(lad.size(), 0.0), m1(lad.size(), 0.0);
                for (int i = 0; i < q.order(); ++i) {
                    const double c = q.nodes()[i];
                    const double wprior = q.weights()[i] * overlap_prior(d, c);
                    for (std::size_t k = 0; k < lad.size(); ++k) {
                        const double p = wprior * p_j_given_c(s, lad[k], c);
                        m0[k] += p;
                        m1[k] += c * p;
                    }
                }
                double glmse = 2.0 / (d * (d + 1.0));
                for (std::size_t k = 0; k < lad.size(); ++k) {
                    worst_est = std::max(
                        worst_est, std::abs(bayes_estimator_optimal(s, lad[k]) - m1[k] / m0[k]));
                    glmse -= m1[k] * m1[k] / m0[k];
                }
                worst_mse = std::max(worst_mse, std::abs(glmse - bayes_mse_optimal(s).value));
            }
        }
    }
    require(worst_est <= 1e-8, "estimator deviation " + dev(worst_est));
    require(worst_mse <= 1e-8, "glMSE deviation " + dev(worst_mse));
    return "estimator gap " + dev(worst_est) + ", glMSE gap " + dev(worst_mse);
}

// C4: (4c(1-c)/(M+N)) H(c) in [0.98, 1.02] at M=N=512; exact 1/(1-c^2) at M=N=1.
std::string c4_fisher_asymptotics() {
    const Scenario s1(2, 1, 1);
    for (double c : {0.2, 0.5, 0.8}) {
        const double h = fisher_information(s1, c);
        require(std::abs(h - 1.0 / (1.0 - c * c)) <= 1e-12 * h, "M=N=1 exact value at c=" + dev(c));
    }
    const Scenario s(2, 512, 512);
    std::string detail = "ratios:";
    for (double c : {0.3, 0.5, 0.7}) {
        const double ratio = fisher_information(s, c) * 4.0 * c * (1.0 - c) / s.total();
        require(ratio >= 0.98 && ratio <= 1.02, "ratio " + dev(ratio) + " at c=" + dev(c));
        detail += " " + dev(ratio);
    }
    return detail;
}

// C5: Monte Carlo concordance within 3 standard errors at 1e5 trials,
// one automatic reseed per check.
std::string c5_monte_carlo() {
    const Scenario s2010(2, 20, 10), s2020(2, 20, 20), s512(2, 512, 512);
    // exact MSE of the local optimal estimator at finite size
    auto exact_local_optimal = [](const Scenario& s, double c) {
        double v = 0.0;
        for (HalfInt J : s.j_ladder()) {
            const double e = local_estimator_optimal(s, J) - c;
            v += p_j_given_c(s, J, c) * e * e;
        }
        return v;
    };
    struct Case {
        const char* name;
        Strategy strategy;
        SimMode mode;
        Scenario s;
        double expect;
        double extra_tol; // fraction of expect, for asymptotic references
    };
    const std::vector<Case> cases = {
        {"optimal/local(20,10)", Strategy::Optimal, SimMode::local_at(0.3), s2010,
         exact_local_optimal(s2010, 0.3), 0.0},
        {"optimal/local(512)", Strategy::Optimal, SimMode::local_at(0.5), s512,
         local_mse_optimal_asymptotic(s512, 0.5), 0.01},
        {"optimal/bayes", Strategy::Optimal, SimMode::bayesian(), s2010,
         bayes_mse_optimal(s2010).value, 0.0},
        {"swap/local", Strategy::Swap, SimMode::local_at(0.3), s2020, swap_local_mse(20, 0.3), 0.0},
        {"swap/bayes", Strategy::Swap, SimMode::bayesian(), s2020, swap_bayes(2, 20).second.value,
         0.0},
        {"ep/local", Strategy::EP, SimMode::local_at(0.3), s2010, ep_local_mse(s2010, 0.3), 0.0},
        {"ep/bayes", Strategy::EP, SimMode::bayesian(), s2010, ep_bayes(s2010).second.value, 0.0},
        {"ee/local", Strategy::EE, SimMode::local_at(0.3), s2010, ee_local_mse(s2010, 0.3), 0.0},
        {"ee/bayes", Strategy::EE, SimMode::bayesian(), s2010, ee_bayes(s2010).second.value, 0.0},
    };
    const long long trials = 100000;
    std::string detail;
    for (const auto& tc : cases) {
        bool ok = false;
        double z = 0.0;
        for (std::uint64_t attempt = 0; attempt < 2 && !ok; ++attempt) {
            const MseReport rep = simulate(tc.strategy, tc.mode, tc.s, trials, {511, attempt});
            z = std::abs(rep.value - tc.expect) / rep.stderr_value;
            ok = std::abs(rep.value - tc.expect) <=
                 3.0 * rep.stderr_value + tc.extra_tol * tc.expect;
        }
        require(ok, std::string(tc.name) + " off by " + dev(z) + " sigma");
        detail += std::string(detail.empty() ? "" : " ") + tc.name + "=" + dev(z) + "s";
    }
    return detail;
}

// C6: Table-1 Bayesian ratios.
std::string c6_table1_ratios() {
    for (int d : {2, 5}) {
        const Scenario sq(d, 2000, 2000);
        const double vop = bayes_mse_optimal(sq).value;
        const double rep = ep_bayes(sq).second.value / vop;
        const double ree = ee_bayes(sq).second.value / vop;
        require(rep >= 1.49 && rep <= 1.51, "v_ep/v_op = " + dev(rep) + " at d=" + dev(d));
        require(ree >= 1.98 && ree <= 2.02, "v_ee/v_op = " + dev(ree) + " at d=" + dev(d));

        const Scenario sm(d, 1000000, 10);
        const double vopm = bayes_mse_optimal(sm).value;
        const double repm = ep_bayes(sm).second.value / vopm;
        const double reem = ee_bayes(sm).second.value / vopm;
        const double target = (d + 20.0) / (d + 10.0);
        require(repm >= 0.999 && repm <= 1.001, "v_ep/v_op = " + dev(repm) + " at M=1e6");
        require(std::abs(reem - target) <= 1e-3 * target,
                "v_ee/v_op = " + dev(reem) + " vs (d+2N)/(d+N) = " + dev(target));
    }
    return "equal-copy ratios 3/2 and 2; M->infinity ratios 1 and (d+2N)/(d+N)";
}

// C7: swap-test Bayesian large-N limit and dominance of the optimal MSE.
std::string c7_swap_bayes() {
    double worst = 0.0;
    for (int d : {2, 3, 5}) {
        const double v = swap_bayes(d, 2000).second.value;
        const double asym = swap_bayes_mse_large_n(d, 2000);
        const double rel = std::abs(v - asym) / asym;
        worst = std::max(worst, rel);
        require(rel <= 0.02, "large-N deviation " + dev(rel) + " at d=" + dev(d));
        for (int N = 1; N <= 20; ++N) {
            const double vsw = swap_bayes(d, N).second.value;
            const double vop = bayes_mse_optimal(Scenario(d, N, N)).value;
            require(vsw >= vop - 1e-14, "v_sw < v_op at d=" + dev(d) + ", N=" + dev(N));
        }
    }
    return "max large-N deviation " + dev(worst);
}

// C8: fidelities.
std::string c8_fidelity() {
    const Scenario s1(2, 1, 1);
    for (double c : {0.0, 0.25, 0.6, 1.0}) {
        require(std::abs(fidelity_optimal(s1, c) - 0.5 * (1 + c * c)) <= 1e-12, "F_op at M=N=1");
        require(std::abs(fidelity_swap(1, c) - 0.5 * (1 + c * c)) <= 1e-12, "F_sw at N=1");
    }
    const Scenario s100(2, 100, 100);
    for (int i = 0; i <= 20; ++i) {
        const double c = i / 20.0;
        require(fidelity_optimal(s100, c) >= fidelity_swap(100, c) - 1e-12,
                "F_op < F_sw at c=" + dev(c));
    }
    double worst = 0.0;
    for (int total = 2; total <= 8; ++total) {
        for (int M = 1; M < total; ++M) {
            const Scenario s(2, M, total - M);
            for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                worst = std::max(worst, std::abs(fidelity_optimal(s, c) -
                                                 oracle_fidelity_optimal(M, total - M, c)));
            }
        }
    }
    require(worst <= 1e-10, "oracle gap " + dev(worst));
    return "oracle gap " + dev(worst);
}

// C9: mixed-qubit appendix.
std::string c9_mixed() {
    // pure-limit recovery
    double worst_pure = 0.0;
    for (auto [M, N] : {std::pair{6, 4}, std::pair{10, 10}}) {
        const MixedScenario ms(Scenario(2, M, N), 1.0 - 1e-8, 1.0 - 1e-8);
        worst_pure = std::max(worst_pure, std::abs(mixed_bayes_mse(ms).value -
                                                   bayes_mse_optimal(Scenario(2, M, N)).value));
    }
    require(worst_pure <= 1e-5, "pure-limit deviation " + dev(worst_pure));

    // joint likelihood vs oracle at r = 0.6, M+N <= 8
    double worst_joint = 0.0;
    for (int total = 2; total <= 8; ++total) {
        for (int M = 1; M < total; ++M) {
            const int N = total - M;
            const MixedScenario ms(Scenario(2, M, N), 0.6, 0.6);
            for (double c : {0.0, 0.5, 0.9}) {
                for (const auto& e : oracle_mixed_joint(M, N, c, 0.6, 0.6)) {
                    const double lik = mixed_joint_likelihood(ms, e.J, e.J0, e.J1, c);
                    worst_joint = std::max(worst_joint, std::abs(lik - e.prob));
                }
            }
        }
    }
    require(worst_joint <= 1e-9, "joint-likelihood deviation " + dev(worst_joint));

    // asymptote within 15% at M=N=300, r=0.8, deviation decreasing 100 -> 400
    auto rel_dev = [](int n) {
        const MixedScenario ms(Scenario(2, n, n), 0.8, 0.8);
        const double v = mixed_bayes_mse(ms).value;
        const double a = mixed_bayes_mse_asymptotic(ms);
        return std::abs(v - a) / a;
    };
    const double d100 = rel_dev(100), d300 = rel_dev(300), d400 = rel_dev(400);
    require(d300 <= 0.15, "relative deviation " + dev(d300) + " at M=N=300");
    require(d400 < d100, "deviation not decreasing: " + dev(d100) + " -> " + dev(d400));
    return "pure " + dev(worst_pure) + ", joint " + dev(worst_joint) + ", asym " + dev(d100) +
           "->" + dev(d300) + "->" + dev(d400);
}

// C10: swap-test inefficiency at small overlap.
std::string c10_small_overlap() {
    const double c = 0.01;
    const int n = 2000;
    const double rel_sw = std::sqrt(swap_local_mse(n, c)) / c;
    const double rel_op = std::sqrt(local_mse_optimal_asymptotic(Scenario(2, n, n), c)) / c;
    const double ratio = rel_sw / rel_op;
    require(ratio >= 3.0, "relative-error ratio " + dev(ratio));
    return "swap/optimal relative-error ratio = " + dev(ratio);
}

// C11: CLI determinism across reruns and thread counts.
std::string c11_determinism() {
    const std::string cli = OVERLAP_CLI_PATH;
    const std::string args =
        " montecarlo --strategy ee --mode bayes --M 16 --N 8 --c 0 --trials 100000 --seed 31337"
        " --out ";
    const std::string f1 = testutil::temp_path(".json");
    const std::string f2 = testutil::temp_path(".json");
    auto run = [&](const std::string& env, const std::string& out) {
        const auto r = testutil::run_cmd(env + cli + args + out);
        require(r.exit_code == 0, "cli exited with " + std::to_string(r.exit_code));
    };
    run("", f1);
    run("", f2);
    require(testutil::slurp(f1) == testutil::slurp(f2), "reruns differ");
    run("OVERLAP_LAB_THREADS=1 ", f2);
    require(testutil::slurp(f1) == testutil::slurp(f2), "1-thread run differs");
    run("OVERLAP_LAB_THREADS=8 ", f2);
    require(testutil::slurp(f1) == testutil::slurp(f2), "8-thread run differs");
    const std::string bytes = testutil::slurp(f1);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    require(bytes.find("\"mse\":") != std::string::npos, "missing mse field");
    return "byte-identical across reruns and 1/8 threads";
}

} // namespace

int main() {
    run_criterion("C1 keystone", c1_oracle_keystone);
    run_criterion("C2 routes", c2_route_equivalence);
    run_criterion("C3 bayes", c3_bayes_closed_forms);
    run_criterion("C4 fisher", c4_fisher_asymptotics);
    run_criterion("C5 montecarlo", c5_monte_carlo);
    run_criterion("C6 table1", c6_table1_ratios);
    run_criterion("C7 swapbayes", c7_swap_bayes);
    run_criterion("C8 fidelity", c8_fidelity);
    run_criterion("C9 mixed", c9_mixed);
    run_criterion("C10 smallc", c10_small_overlap);
    run_criterion("C11 determinism", c11_determinism);
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all 11 acceptance criteria passed\n");
    return 0;
}
