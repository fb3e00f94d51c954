#pragma once

#include <compare>
#include <cstdlib>
#include <string>
#include <vector>

#include "overlap/errors.hpp"

namespace overlap {

// Angular-momentum label stored as a doubled integer, so j = 3/2 keeps
// twice() == 3.  Sums, differences and triangle checks are exact; no
// floating-point j ever enters index arithmetic.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice_ = t;
        return h;
    }
    static constexpr HalfInt whole(int n) { return from_twice(2 * n); }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    // The exact integer value; only valid when is_integer().
    int as_int() const {
        if (!is_integer())
            throw InvalidMomentum("half-odd label used where an integer is required: " + str());
        return twice_ / 2;
    }

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    HalfInt& operator+=(HalfInt o) {
        twice_ += o.twice_;
        return *this;
    }

    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

private:
    int twice_ = 0;
};

constexpr HalfInt abs(HalfInt a) { return HalfInt::from_twice(a.twice() < 0 ? -a.twice() : a.twice()); }

// Triangle condition |a-b| <= c <= a+b together with an integer perimeter.
constexpr bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
    if (!(a + b + c).is_integer()) return false;
    return abs(a - b) <= c && c <= a + b;
}

// Unit-step ladder lo, lo+1, ..., hi (empty when hi < lo).
inline std::vector<HalfInt> ladder(HalfInt lo, HalfInt hi) {
    std::vector<HalfInt> out;
    for (HalfInt j = lo; j <= hi; j += HalfInt::whole(1)) out.push_back(j);
    return out;
}

} // namespace overlap
