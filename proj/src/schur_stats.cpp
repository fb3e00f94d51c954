#include "overlap/schur_stats.hpp"

#include <algorithm>
#include <cmath>

namespace overlap {

namespace {

struct Canonical {
    int M; // larger copy count
    int N; // smaller copy count
};

Canonical canonical(const Scenario& s) {
    return {std::max(s.M, s.N), std::min(s.M, s.N)};
}

void check_ladder(const Scenario& s, HalfInt J) {
    if (J < s.j_min() || J > s.j_max() || !(J - s.j_min()).is_integer())
        throw OutOfRange("J = " + J.str() + " is not on the ladder [" + s.j_min().str() + ", " +
                         s.j_max().str() + "]");
}

// log of the J-dependent prefactor of SM-style k-sum
double log_prefactor(const Scenario& s, HalfInt J) {
    const auto [M, N] = canonical(s);
    const HalfInt jmin = s.j_min(), jmax = s.j_max();
    return std::log(J.twice() + 1.0) + log_factorial(J + jmin) + log_factorial(N) +
           log_factorial(M) - log_factorial(J - jmin) - log_factorial(jmax - J) -
           log_factorial(jmax + HalfInt::whole(1) + J);
}

// log of the u-th summand's factorial part:
//   (J+N/2+k)! / ((J-N/2-k)! (M/2+k)!^2)  with u = M/2+k
double log_term_factorials(int a0, int u_max, int u) {
    return log_factorial(static_cast<long long>(a0 + u)) -
           log_factorial(static_cast<long long>(u_max - u)) -
           2.0 * log_factorial(static_cast<long long>(u));
}

} // namespace

double overlap_prior(int d, double c) {
    if (d < 2) throw OutOfRange("overlap_prior: d must be >= 2");
    c = clamp_unit(c, "overlap_prior");
    if (d == 2) return 1.0;
    return (d - 1.0) * std::pow(1.0 - c, d - 2.0);
}

LogReal p_j_given_c_log(const Scenario& s, HalfInt J, double c) {
    check_ladder(s, J);
    c = clamp_unit(c, "p_j_given_c");
    if (c == 1.0) return J == s.j_max() ? LogReal::one() : LogReal::zero();
    const auto [M, N] = canonical(s);
    const int u_max = (J.twice() + M - N) / 2; // J - N/2 + M/2, an exact integer
    const int a0 = (J.twice() + N - M) / 2;    // J + N/2 + k at u = 0
    const double log_c = c > 0.0 ? std::log(c) : 0.0;
    const double log_1mc = c < 1.0 ? std::log1p(-c) : 0.0;

    LogSum sum;
    for (int u = 0; u <= u_max; ++u) {
        if (c == 0.0 && u > 0) break; // c^u kills every later term
        sum.add(log_term_factorials(a0, u_max, u) + u * log_c + (M - u) * log_1mc, +1);
    }
    const LogReal body = sum.value();
    if (body.sign == 0) return LogReal::zero();
    return LogReal::from_log(log_prefactor(s, J) + body.log_mag, +1);
}

double p_j_given_c(const Scenario& s, HalfInt J, double c) {
    return p_j_given_c_log(s, J, c).to_double();
}

LogReal dp_j_dc_log(const Scenario& s, HalfInt J, double c) {
    check_ladder(s, J);
    if (!(c > 0.0 && c < 1.0))
        throw Endpoint("dp_j_dc_log: derivative requested at c = " + std::to_string(c));
    const Canonical cn = canonical(s);
    const int M = cn.M;
    const int u_max = (J.twice() + cn.M - cn.N) / 2;
    const int a0 = (J.twice() + cn.N - cn.M) / 2;
    const double log_c = std::log(c);
    const double log_1mc = std::log1p(-c);

    // d/dc [c^u (1-c)^(M-u)] = u c^(u-1) (1-c)^(M-u) - (M-u) c^u (1-c)^(M-u-1)
    LogSum plus, minus;
    for (int u = 0; u <= u_max; ++u) {
        const double lt = log_term_factorials(a0, u_max, u);
        if (u >= 1) plus.add(lt + std::log(static_cast<double>(u)) + (u - 1) * log_c + (M - u) * log_1mc, +1);
        if (u <= M - 1)
            minus.add(lt + std::log(static_cast<double>(M - u)) + u * log_c + (M - u - 1) * log_1mc, +1);
    }
    LogSum diff;
    diff.add(plus.value());
    LogReal m = minus.value();
    m.sign = -m.sign;
    diff.add(m);
    LogReal body = diff.value();
    if (body.sign == 0) return LogReal::zero();
    body.log_mag += log_prefactor(s, J);
    return body;
}

double p_j_given_c_cgroute(const Scenario& s, HalfInt J, double c) {
    check_ladder(s, J);
    c = clamp_unit(c, "p_j_given_c_cgroute");
    const auto [M, N] = canonical(s);
    const HalfInt jM = HalfInt::from_twice(M); // M/2
    const HalfInt jN = HalfInt::from_twice(N); // N/2
    const double theta = 2.0 * std::acos(std::sqrt(c));
    KahanSum sum;
    // k runs over the support of the Clebsch-Gordan coefficient
    for (HalfInt k = -jM; k <= jM; k += HalfInt::whole(1)) {
        if (abs(jN + k) > J) continue;
        const double cg = clebsch_gordan(jN, jN, jM, k, J, jN + k);
        if (cg == 0.0) continue;
        const double d = wigner_small_d(jM, k, jM, theta);
        sum.add(cg * cg * d * d);
    }
    return sum.value();
}

OutcomeDistribution pmf_given_c(const Scenario& s, double c) {
    OutcomeDistribution out{s, {}, "c=" + std::to_string(c)};
    for (HalfInt J : s.j_ladder()) out.entries.emplace_back(J, p_j_given_c(s, J, c));
    return out;
}

namespace {

// C(n, k) with overflow detection; result in `value`, false on overflow.
bool binomial_u64(long long n, long long k, std::uint64_t& value) {
    if (k < 0 || k > n) {
        value = 0;
        return true;
    }
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (long long i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned __int128>(n - k + i);
        acc /= static_cast<unsigned __int128>(i);
        if (acc > static_cast<unsigned __int128>(UINT64_MAX)) return false;
    }
    value = static_cast<std::uint64_t>(acc);
    return true;
}

} // namespace

IrrepDim irrep_dimension(int d, HalfInt J, int total) {
    if (d < 2) throw OutOfRange("irrep_dimension: d must be >= 2");
    if (J.twice() < 0 || J.twice() > total || (total - J.twice()) % 2 != 0)
        throw OutOfRange("irrep_dimension: J = " + J.str() + " invalid for total = " +
                         std::to_string(total));
    const long long p = (total + J.twice()) / 2; // first row length
    const long long q = (total - J.twice()) / 2; // second row length
    // chi = (2J+1) C(d+p-1, p+1) C(d+q-2, q) / (d-1)
    IrrepDim out;
    out.log_value = std::log(J.twice() + 1.0) + log_binomial(d + p - 1, p + 1) +
                    log_binomial(d + q - 2, q) - std::log(d - 1.0);
    std::uint64_t c1 = 0, c2 = 0;
    if (binomial_u64(d + p - 1, p + 1, c1) && binomial_u64(d + q - 2, q, c2)) {
        unsigned __int128 acc = static_cast<unsigned __int128>(c1) * c2;
        if (acc <= static_cast<unsigned __int128>(UINT64_MAX) / (J.twice() + 1)) {
            acc *= static_cast<unsigned __int128>(J.twice() + 1);
            acc /= static_cast<unsigned __int128>(d - 1);
            if (acc <= static_cast<unsigned __int128>(UINT64_MAX)) {
                out.exact = true;
                out.value = static_cast<std::uint64_t>(acc);
                return out;
            }
        }
    }
    out.exact = false;
    out.value = 0;
    return out;
}

double marginal_p_j(const Scenario& s, HalfInt J, const Quadrature& q) {
    check_ladder(s, J);
    const int d = s.d;
    return integrate_adaptive(
        [&](double c) { return overlap_prior(d, c) * p_j_given_c(s, J, c); }, q.order());
}

double posterior_moment(const Scenario& s, HalfInt J, int power, const Quadrature& q) {
    check_ladder(s, J);
    if (power != 1 && power != 2) throw OutOfRange("posterior_moment: power must be 1 or 2");
    const int d = s.d;
    const double den = marginal_p_j(s, J, q);
    if (den < 1e-300)
        throw DegenerateConditioning("posterior_moment: p(J) vanishes for J = " + J.str());
    const double num = integrate_adaptive(
        [&](double c) {
            return std::pow(c, power) * overlap_prior(d, c) * p_j_given_c(s, J, c);
        },
        q.order());
    return num / den;
}

} // namespace overlap
