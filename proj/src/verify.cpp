#include "overlap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "overlap/noise.hpp"
#include "overlap/oracle.hpp"
#include "overlap/schur_stats.hpp"
#include "overlap/strategies.hpp"

namespace overlap {

namespace {

const double kCGrid[] = {0.0, 0.25, 0.5, 0.75, 1.0};

std::string scen_str(int M, int N) {
    return "M=" + std::to_string(M) + ",N=" + std::to_string(N);
}

// keystone: analytic p(J|c) vs the state-vector oracle
CheckResult check_keystone(int max_total, double perturb) {
    CheckResult res{"pmf-vs-oracle(M+N<=" + std::to_string(max_total) + ")", true, ""};
    double worst = 0.0;
    bool perturbed = std::abs(perturb) > 0.0;
    for (int total = 2; total <= max_total; ++total) {
        for (int M = 1; M < total; ++M) {
            const int N = total - M;
            const Scenario s(2, M, N);
            for (double c : kCGrid) {
                const auto oracle = oracle_p_j(M, N, c);
                bool first = true;
                for (HalfInt J : s.j_ladder()) {
                    double analytic = p_j_given_c(s, J, c);
                    if (perturbed && first) {
                        analytic += perturb;
                        first = false;
                    }
                    double exact = 0.0;
                    for (const auto& [oj, op] : oracle)
                        if (oj == J) exact = op;
                    worst = std::max(worst, std::abs(analytic - exact));
                }
                // mass below J_min must vanish
                for (const auto& [oj, op] : oracle)
                    if (oj < s.j_min()) worst = std::max(worst, std::abs(op));
                if (worst > 1e-10 && res.pass) {
                    res.pass = false;
                    res.detail = "first failure at " + scen_str(M, N) + ",c=" + std::to_string(c);
                }
            }
        }
    }
    if (res.pass) res.detail = "max deviation " + std::to_string(worst);
    return res;
}

CheckResult check_route_equivalence(int max_total) {
    CheckResult res{"ksum-vs-cgroute(M+N<=" + std::to_string(max_total) + ")", true, ""};
    double worst = 0.0;
    for (int total = 2; total <= max_total; ++total) {
        for (int M = 1; M < total; ++M) {
            const Scenario s(2, M, total - M);
            for (int ci = 0; ci <= 10; ++ci) {
                const double c = ci / 10.0;
                for (HalfInt J : s.j_ladder()) {
                    const double a = p_j_given_c(s, J, c);
                    const double b = p_j_given_c_cgroute(s, J, c);
                    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
                    const double rel = std::abs(a - b) / scale;
                    if (std::abs(a) < 1e-280 && std::abs(b) < 1e-280) continue;
                    worst = std::max(worst, rel);
                }
            }
        }
    }
    res.pass = worst <= 1e-9;
    res.detail = "max relative deviation " + std::to_string(worst);
    return res;
}

CheckResult check_bayes_posterior(int max_copies) {
    CheckResult res{"bayes-estimator-vs-quadrature(M,N<=" + std::to_string(max_copies) + ")", true,
                    ""};
    double worst = 0.0;
    const Quadrature q(96);
    for (int d : {2, 3}) {
        for (int M = 1; M <= max_copies; M += 3) {
            for (int N = 1; N <= max_copies; N += 3) {
                const Scenario s(d, M, N);
                for (HalfInt J : s.j_ladder()) {
                    const double closed = bayes_estimator_optimal(s, J);
                    const double quad = posterior_moment(s, J, 1, q);
                    worst = std::max(worst, std::abs(closed - quad));
                }
            }
        }
    }
    res.pass = worst <= 1e-8;
    res.detail = "max deviation " + std::to_string(worst);
    return res;
}

CheckResult check_fidelity_oracle(int max_total) {
    CheckResult res{"fidelity-vs-oracle(M+N<=" + std::to_string(max_total) + ")", true, ""};
    double worst = 0.0;
    for (int total = 2; total <= max_total; ++total) {
        for (int M = 1; M < total; ++M) {
            const Scenario s(2, M, total - M);
            for (double c : kCGrid) {
                const double a = fidelity_optimal(s, c);
                const double b = oracle_fidelity_optimal(M, total - M, c);
                worst = std::max(worst, std::abs(a - b));
            }
        }
    }
    res.pass = worst <= 1e-10;
    res.detail = "max deviation " + std::to_string(worst);
    return res;
}

CheckResult check_mixed_oracle(int max_total) {
    CheckResult res{"mixed-likelihood-vs-oracle(M+N<=" + std::to_string(max_total) + ")", true, ""};
    double worst = 0.0;
    for (int total = 2; total <= max_total; ++total) {
        for (int M = 1; M < total; ++M) {
            const int N = total - M;
            const MixedScenario ms(Scenario(2, M, N), 0.6, 0.6);
            for (double c : {0.0, 0.3, 0.8}) {
                const auto joint = oracle_mixed_joint(M, N, c, 0.6, 0.6);
                for (const auto& e : joint) {
                    const double lik = mixed_joint_likelihood(ms, e.J, e.J0, e.J1, c);
                    worst = std::max(worst, std::abs(lik - e.prob));
                }
            }
        }
    }
    res.pass = worst <= 1e-9;
    res.detail = "max deviation " + std::to_string(worst);
    return res;
}

CheckResult check_mixed_pure_limit() {
    CheckResult res{"mixed-pure-limit", true, ""};
    double worst = 0.0;
    for (int M : {4, 6}) {
        for (int N : {2, 4}) {
            const MixedScenario ms(Scenario(2, M, N), 1.0 - 1e-8, 1.0 - 1e-8);
            const double mixed = mixed_bayes_mse(ms).value;
            const double pure = bayes_mse_optimal(Scenario(2, M, N)).value;
            worst = std::max(worst, std::abs(mixed - pure));
        }
    }
    res.pass = worst <= 1e-5;
    res.detail = "max deviation " + std::to_string(worst);
    return res;
}

} // namespace

std::vector<CheckResult> run_verification(VerifyLevel level, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    if (level == VerifyLevel::Fast) {
        out.push_back(check_keystone(6, opt.perturb_first_entry));
        out.push_back(check_route_equivalence(20));
        out.push_back(check_bayes_posterior(10));
        out.push_back(check_fidelity_oracle(6));
    } else {
        out.push_back(check_keystone(10, opt.perturb_first_entry));
        out.push_back(check_route_equivalence(60));
        out.push_back(check_bayes_posterior(16));
        out.push_back(check_fidelity_oracle(8));
        out.push_back(check_mixed_oracle(8));
        out.push_back(check_mixed_pure_limit());
    }
    return out;
}

} // namespace overlap
