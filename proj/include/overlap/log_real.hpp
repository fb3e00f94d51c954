#pragma once

#include <cmath>
#include <limits>

namespace overlap {

// Signed log-magnitude number: value = sign * exp(log_mag).  Used for
// factorial ratios that overflow doubles long before their ratios do.
struct LogReal {
    double log_mag = -std::numeric_limits<double>::infinity();
    int sign = 0; // -1, 0, +1

    static LogReal zero() { return {}; }
    static LogReal one() { return {0.0, +1}; }
    static LogReal from_log(double l, int s = +1) { return {l, s}; }
    static LogReal from_double(double x) {
        if (x == 0.0) return zero();
        return {std::log(std::abs(x)), x > 0 ? +1 : -1};
    }

    double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }

    friend LogReal operator*(LogReal a, LogReal b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.log_mag + b.log_mag, a.sign * b.sign};
    }
    friend LogReal operator/(LogReal a, LogReal b) {
        if (a.sign == 0) return zero();
        return {a.log_mag - b.log_mag, a.sign * b.sign};
    }
};

// Streaming signed sum of exp(log) terms.  Keeps a running maximum and a
// Kahan-compensated mantissa sum relative to it, so any mix of magnitudes
// accumulates at full double precision without overflow.
class LogSum {
public:
    void add(double log_mag, int sign) {
        if (sign == 0 || log_mag == -std::numeric_limits<double>::infinity()) return;
        if (!any_) {
            max_log_ = log_mag;
            sum_ = static_cast<double>(sign);
            comp_ = 0.0;
            any_ = true;
            return;
        }
        if (log_mag > max_log_) {
            const double scale = std::exp(max_log_ - log_mag);
            sum_ *= scale;
            comp_ *= scale;
            max_log_ = log_mag;
            kahan_add(static_cast<double>(sign));
        } else {
            kahan_add(sign * std::exp(log_mag - max_log_));
        }
    }
    void add(LogReal v) { add(v.log_mag, v.sign); }

    LogReal value() const {
        if (!any_ || sum_ == 0.0) return LogReal::zero();
        return {max_log_ + std::log(std::abs(sum_)), sum_ > 0 ? +1 : -1};
    }
    double to_double() const { return value().to_double(); }

private:
    void kahan_add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }

    bool any_ = false;
    double max_log_ = 0.0;
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Plain Kahan accumulator for ordinary-magnitude sums.
class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace overlap
