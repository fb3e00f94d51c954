#include "overlap/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "overlap/errors.hpp"

namespace overlap {

namespace {

constexpr int kTableSize = 4097;

const double* factorial_table() {
    static std::vector<double> table;
    static std::once_flag once;
    std::call_once(once, [] {
        table.resize(kTableSize);
        long double acc = 0.0L;
        table[0] = 0.0;
        for (int i = 1; i < kTableSize; ++i) {
            acc += std::log(static_cast<long double>(i));
            table[i] = static_cast<double>(acc);
        }
    });
    return table.data();
}

bool is_nonpositive_integer(double x) {
    return x <= 0.5 && std::abs(x - std::nearbyint(x)) < 1e-12 && std::nearbyint(x) <= 0.0;
}

// sin(pi*x) with argument reduction that keeps the sign exact.
double sin_pi(double x) {
    const double n = std::nearbyint(x);
    const double frac = x - n;
    const double s = std::sin(M_PI * frac);
    const bool odd = std::fmod(std::abs(n), 2.0) == 1.0;
    return odd ? -s : s;
}

} // namespace

double log_factorial(long long n) {
    if (n < 0) throw OutOfRange("log_factorial: negative argument " + std::to_string(n));
    if (n < kTableSize) return factorial_table()[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_factorial(HalfInt x) {
    if (!x.is_integer()) throw InvalidMomentum("factorial of half-odd value " + x.str());
    return log_factorial(static_cast<long long>(x.as_int()));
}

double log_binomial(long long n, long long k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

LogReal log_gamma_signed(double x) {
    if (is_nonpositive_integer(x))
        throw DegenerateParameters("Gamma pole at x = " + std::to_string(x));
    if (x > 0.0) return LogReal::from_log(std::lgamma(x), +1);
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x))
    const double s = sin_pi(x);
    const double log_mag = std::log(M_PI) - std::log(std::abs(s)) - std::lgamma(1.0 - x);
    return LogReal::from_log(log_mag, s > 0 ? +1 : -1);
}

double jacobi_p(int n, double alpha, double beta, double x) {
    return jacobi_p_log(n, alpha, beta, x).to_double();
}

LogReal jacobi_p_log(int n, double alpha, double beta, double x) {
    if (n < 0) throw OutOfRange("jacobi_p: negative degree");
    if (n == 0) return LogReal::one();
    // numerator Gamma arguments must stay off the poles
    if (is_nonpositive_integer(alpha + n + 1))
        throw DegenerateParameters("jacobi_p: Gamma(alpha+n+1) pole");
    for (int m = 0; m <= n; ++m) {
        if (is_nonpositive_integer(alpha + beta + n + m + 1))
            throw DegenerateParameters("jacobi_p: Gamma(alpha+beta+n+m+1) pole at m = " +
                                       std::to_string(m));
    }
    const LogReal pref =
        log_gamma_signed(alpha + n + 1) / (LogReal::from_log(log_factorial(static_cast<long long>(n))) *
                                           log_gamma_signed(alpha + beta + n + 1));
    const double z = 0.5 * (x - 1.0);
    const int z_sign = z > 0 ? +1 : (z < 0 ? -1 : 0);
    const double log_abs_z = z == 0.0 ? 0.0 : std::log(std::abs(z));

    LogSum sum;
    for (int m = 0; m <= n; ++m) {
        if (m > 0 && z_sign == 0) break; // (x-1)/2 == 0 kills every later term
        if (is_nonpositive_integer(alpha + m + 1)) continue; // 1/Gamma(pole) = 0
        LogReal t = log_gamma_signed(alpha + beta + n + m + 1) / log_gamma_signed(alpha + m + 1);
        double lm = t.log_mag + log_binomial(n, m) + m * log_abs_z;
        int sign = t.sign;
        if (z_sign < 0 && (m % 2 == 1)) sign = -sign;
        sum.add(lm, sign);
    }
    return pref * sum.value();
}

double jacobi_p_recurrence(int n, double alpha, double beta, double x) {
    if (n < 0) throw OutOfRange("jacobi_p_recurrence: negative degree");
    if (alpha <= -1.0 || beta <= -1.0)
        throw DegenerateParameters("jacobi_p_recurrence requires alpha, beta > -1");
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (x - 1.0);
    for (int k = 2; k <= n; ++k) {
        const double a = alpha, b = beta;
        const double c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0);
        const double c2 = (2.0 * k + a + b - 1.0) * ((2.0 * k + a + b) * (2.0 * k + a + b - 2.0) * x + a * a - b * b);
        const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b);
        const double next = (c2 * p - c3 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    return p;
}

namespace {

void check_momentum_pair(HalfInt j, HalfInt m, const char* where) {
    if (j.twice() < 0) throw InvalidMomentum(std::string(where) + ": negative j");
    if (!(j - m).is_integer())
        throw InvalidMomentum(std::string(where) + ": j - m is not an integer (j=" + j.str() +
                              ", m=" + m.str() + ")");
    if (abs(m) > j)
        throw InvalidMomentum(std::string(where) + ": |m| > j (j=" + j.str() + ", m=" + m.str() + ")");
}

// log of the triangle coefficient Delta^2(a,b,c)
double log_delta_sq(HalfInt a, HalfInt b, HalfInt c) {
    return log_factorial(a + b - c) + log_factorial(a - b + c) + log_factorial(-a + b + c) -
           log_factorial(a + b + c + HalfInt::whole(1));
}

} // namespace

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
    check_momentum_pair(j1, m1, "clebsch_gordan");
    check_momentum_pair(j2, m2, "clebsch_gordan");
    check_momentum_pair(J, M, "clebsch_gordan");
    if (M != m1 + m2) return 0.0;
    if (!triangle_ok(j1, j2, J)) return 0.0;

    const double log_pref =
        std::log(J.twice() + 1.0) + log_delta_sq(j1, j2, J) + log_factorial(j1 + m1) +
        log_factorial(j1 - m1) + log_factorial(j2 + m2) + log_factorial(j2 - m2) +
        log_factorial(J + M) + log_factorial(J - M);

    const int k_lo = std::max({0, -(J - j2 + m1).as_int(), -(J - j1 - m2).as_int()});
    const int k_hi = std::min({(j1 + j2 - J).as_int(), (j1 - m1).as_int(), (j2 + m2).as_int()});
    LogSum sum;
    for (int k = k_lo; k <= k_hi; ++k) {
        const HalfInt hk = HalfInt::whole(k);
        const double lm = -(log_factorial(static_cast<long long>(k)) + log_factorial(j1 + j2 - J - hk) +
                            log_factorial(j1 - m1 - hk) + log_factorial(j2 + m2 - hk) +
                            log_factorial(J - j2 + m1 + hk) + log_factorial(J - j1 - m2 + hk));
        sum.add(lm, k % 2 == 0 ? +1 : -1);
    }
    const LogReal s = sum.value();
    if (s.sign == 0) return 0.0;
    return s.sign * std::exp(0.5 * log_pref + s.log_mag);
}

namespace {

// General sum-over-s form of d^j_{m1,m2}(theta); handles every argument
// combination, at the cost of a signed sum.
double wigner_small_d_ksum(HalfInt j, HalfInt m1, HalfInt m2, double theta) {
    const double ch = std::cos(0.5 * theta);
    const double sh = std::sin(0.5 * theta);
    const double log_pref = 0.5 * (log_factorial(j + m1) + log_factorial(j - m1) +
                                   log_factorial(j + m2) + log_factorial(j - m2));
    const int dm = (m1 - m2).as_int(); // integer by the momentum checks
    const int s_lo = std::max(0, -dm);
    const int s_hi = std::min((j + m2).as_int(), (j - m1).as_int());
    LogSum sum;
    for (int s = s_lo; s <= s_hi; ++s) {
        const HalfInt hs = HalfInt::whole(s);
        const long long cos_pow = (j + m2 - hs).as_int() + (j - m1 - hs).as_int();
        const long long sin_pow = dm + 2 * s;
        if ((ch == 0.0 && cos_pow > 0) || (sh == 0.0 && sin_pow > 0)) continue;
        double lm = log_pref - log_factorial(j + m2 - hs) - log_factorial(static_cast<long long>(s)) -
                    log_factorial(static_cast<long long>(dm + s)) - log_factorial(j - m1 - hs);
        if (cos_pow > 0) lm += cos_pow * std::log(std::abs(ch));
        if (sin_pow > 0) lm += sin_pow * std::log(std::abs(sh));
        int sign = (dm + s) % 2 == 0 ? +1 : -1;
        if (ch < 0.0 && (cos_pow % 2)) sign = -sign;
        if (sh < 0.0 && (sin_pow % 2)) sign = -sign;
        sum.add(lm, sign);
    }
    return sum.to_double();
}

} // namespace

double wigner_small_d(HalfInt j, HalfInt m1, HalfInt m2, double theta) {
    check_momentum_pair(j, m1, "wigner_small_d");
    check_momentum_pair(j, m2, "wigner_small_d");
    const HalfInt alpha = m2 - m1;
    const HalfInt beta = m2 + m1;
    if (alpha.twice() >= 0 && beta.twice() >= 0) {
        // Jacobi form: the parameters are nonnegative integers, so the
        // three-term recurrence is stable for any cos(theta).
        const int a = alpha.as_int();
        const int b = beta.as_int();
        const int n = (j - m2).as_int();
        const double log_pref = 0.5 * (log_factorial(j + m2) + log_factorial(j - m2) -
                                       log_factorial(j + m1) - log_factorial(j - m1));
        const double sh = std::sin(0.5 * theta);
        const double ch = std::cos(0.5 * theta);
        if ((sh == 0.0 && a > 0) || (ch == 0.0 && b > 0)) return 0.0;
        double v = std::exp(log_pref);
        v *= std::pow(sh, a) * std::pow(ch, b);
        return v * jacobi_p_recurrence(n, a, b, std::cos(theta));
    }
    return wigner_small_d_ksum(j, m1, m2, theta);
}

double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
    const HalfInt triads[4][3] = {
        {j1, j2, j3}, {j1, j5, j6}, {j4, j2, j6}, {j4, j5, j3}};
    for (const auto& t : triads) {
        if (t[0].twice() < 0 || t[1].twice() < 0 || t[2].twice() < 0)
            throw InvalidMomentum("wigner_6j: negative momentum");
        if (!(t[0] + t[1] + t[2]).is_integer())
            throw InvalidMomentum("wigner_6j: half-odd triad perimeter (" + t[0].str() + "," +
                                  t[1].str() + "," + t[2].str() + ")");
    }
    for (const auto& t : triads)
        if (!triangle_ok(t[0], t[1], t[2])) return 0.0;

    double log_pref = 0.0;
    for (const auto& t : triads) log_pref += log_delta_sq(t[0], t[1], t[2]);

    const HalfInt t1 = j1 + j2 + j3, t2 = j1 + j5 + j6, t3 = j4 + j2 + j6, t4 = j4 + j5 + j3;
    const HalfInt p1 = j1 + j2 + j4 + j5, p2 = j2 + j3 + j5 + j6, p3 = j1 + j3 + j4 + j6;
    const int lo = std::max({t1.as_int(), t2.as_int(), t3.as_int(), t4.as_int()});
    const int hi = std::min({p1.as_int(), p2.as_int(), p3.as_int()});
    LogSum sum;
    for (int t = lo; t <= hi; ++t) {
        const HalfInt ht = HalfInt::whole(t);
        const double lm = log_factorial(static_cast<long long>(t) + 1) -
                          log_factorial(ht - t1) - log_factorial(ht - t2) - log_factorial(ht - t3) -
                          log_factorial(ht - t4) - log_factorial(p1 - ht) - log_factorial(p2 - ht) -
                          log_factorial(p3 - ht);
        sum.add(lm, t % 2 == 0 ? +1 : -1);
    }
    const LogReal s = sum.value();
    if (s.sign == 0) return 0.0;
    return s.sign * std::exp(0.5 * log_pref + s.log_mag);
}

namespace {

LogReal hyp2f1_core(double a, long long b_neg_int, double c, double x, bool regularized) {
    if (b_neg_int > 0) throw OutOfRange("hyp2f1_terminating: b must be a nonpositive integer");
    const long long terms = -b_neg_int;
    LogSum sum;
    // term_0 = 1 (or 1/Gamma(c)); update multiplicatively in log space
    double log_t = 0.0;
    int sign_t = +1;
    if (regularized) {
        // divide term-wise by Gamma(c+m)
        for (long long m = 0; m <= terms; ++m) {
            double num_log = log_t;
            int num_sign = sign_t;
            if (!is_nonpositive_integer(c + m)) {
                const LogReal g = log_gamma_signed(c + m);
                sum.add(num_log - g.log_mag, num_sign * g.sign);
            }
            // advance (a)_m (b)_m x^m / m! without the 1/Gamma(c+m) part
            const double fa = a + m;
            const double fb = static_cast<double>(b_neg_int + m);
            const double step = fa * fb * x / static_cast<double>(m + 1);
            if (step == 0.0) break;
            log_t += std::log(std::abs(step));
            if (step < 0) sign_t = -sign_t;
        }
        return sum.value();
    }
    for (long long m = 0; m <= terms; ++m) {
        sum.add(log_t, sign_t);
        if (m == terms) break;
        const double fc = c + m;
        if (std::abs(fc) < 1e-300)
            throw PoleInSeries("hyp2f1_terminating: Pochhammer (c)_m vanished at m = " +
                               std::to_string(m + 1));
        const double fa = a + m;
        const double fb = static_cast<double>(b_neg_int + m);
        const double step = fa * fb * x / (fc * static_cast<double>(m + 1));
        if (step == 0.0) break;
        log_t += std::log(std::abs(step));
        if (step < 0) sign_t = -sign_t;
    }
    return sum.value();
}

} // namespace

LogReal hyp2f1_terminating_log(double a, long long b_neg_int, double c, double x) {
    return hyp2f1_core(a, b_neg_int, c, x, false);
}

double hyp2f1_terminating(double a, long long b_neg_int, double c, double x) {
    return hyp2f1_terminating_log(a, b_neg_int, c, x).to_double();
}

LogReal hyp2f1_regularized_log(double a, long long b_neg_int, double c, double x) {
    return hyp2f1_core(a, b_neg_int, c, x, true);
}

} // namespace overlap
