// Outward-rounded intervals on double-double endpoints.  Every operation
// widens its result by a few ulps of the 106-bit format, so enclosures
// stay rigorous without directed-rounding hardware support.
#pragma once

#include "siftbound/dd.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace siftbound {

struct Interval {
    DD lo, hi;

    Interval() : lo(0.0), hi(0.0) {}
    explicit Interval(double x) : lo(x), hi(x) {}
    explicit Interval(DD x) : lo(x), hi(x) {}
    Interval(DD l, DD h) : lo(l), hi(h) {
        if (h < l) throw std::invalid_argument("interval: lo > hi");
    }

    double width() const { return dd_sub(hi, lo).to_double(); }
    double mid() const { return dd_mul(dd_add(lo, hi), DD(0.5)).to_double(); }
    bool contains(double x) const { return lo <= DD(x) && DD(x) <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool strictly_contains(const Interval& o) const { return lo < o.lo && o.hi < hi; }
};

namespace detail {

// relative widening of 2^-100 plus a subnormal absolute floor; dd kernels
// have relative error below 2^-104, so this dominates every op's roundoff
inline constexpr double kRelSlack = 7.8886090522101181e-31; // 2^-100
inline constexpr double kAbsSlack = 1e-300;

inline DD bump_up(DD x) {
    double m = std::abs(x.hi) * kRelSlack + kAbsSlack;
    return dd_add(x, DD(m));
}
inline DD bump_down(DD x) {
    double m = std::abs(x.hi) * kRelSlack + kAbsSlack;
    return dd_sub(x, DD(m));
}

} // namespace detail

inline Interval widen(DD lo, DD hi) {
    return Interval(detail::bump_down(lo), detail::bump_up(hi));
}

inline Interval operator+(const Interval& a, const Interval& b) {
    return widen(dd_add(a.lo, b.lo), dd_add(a.hi, b.hi));
}
inline Interval operator-(const Interval& a) { return Interval(dd_neg(a.hi), dd_neg(a.lo)); }
inline Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

inline Interval operator*(const Interval& a, const Interval& b) {
    DD c[4] = {dd_mul(a.lo, b.lo), dd_mul(a.lo, b.hi), dd_mul(a.hi, b.lo), dd_mul(a.hi, b.hi)};
    DD lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < lo) lo = c[i];
        if (hi < c[i]) hi = c[i];
    }
    return widen(lo, hi);
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= DD(0.0) && DD(0.0) <= b.hi)
        throw std::domain_error("interval division by interval containing zero");
    DD c[4] = {dd_div(a.lo, b.lo), dd_div(a.lo, b.hi), dd_div(a.hi, b.lo), dd_div(a.hi, b.hi)};
    DD lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < lo) lo = c[i];
        if (hi < c[i]) hi = c[i];
    }
    return widen(lo, hi);
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

inline Interval i_sqrt(const Interval& a) {
    if (a.lo < DD(0.0)) throw std::domain_error("interval sqrt of negative");
    return widen(dd_sqrt(a.lo), dd_sqrt(a.hi));
}

inline Interval i_log(const Interval& a) {
    if (a.lo <= DD(0.0)) throw std::domain_error("interval log of nonpositive");
    return widen(dd_log(a.lo), dd_log(a.hi));
}

inline Interval i_exp(const Interval& a) {
    return widen(dd_exp(a.lo), dd_exp(a.hi));
}

inline Interval i_pow(const Interval& a, int n) {
    if (n == 0) return Interval(1.0);
    if (n < 0) return Interval(1.0) / i_pow(a, -n);
    // a > 0 in all our uses; keep the monotone fast path and check it
    if (a.lo < DD(0.0) && (n % 2) == 0) {
        Interval r = a * a;
        for (int i = 2; i < n; ++i) r = r * a;
        return r;
    }
    Interval r = a;
    for (int i = 1; i < n; ++i) r = r * a;
    return r;
}

// a^e for a > 0 via exp(e log a)
inline Interval i_pow(const Interval& a, const Interval& e) {
    return i_exp(e * i_log(a));
}

inline Interval i_abs(const Interval& a) {
    if (a.lo >= DD(0.0)) return a;
    if (a.hi <= DD(0.0)) return -a;
    DD m = dd_abs(a.lo);
    if (m < a.hi) m = a.hi;
    return Interval(DD(0.0), m);
}

inline Interval i_union(const Interval& a, const Interval& b) {
    return Interval(a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi);
}

inline Interval i_pi() { return widen(ddc::pi, ddc::pi); }
inline Interval i_euler_gamma() { return widen(ddc::euler_gamma, ddc::euler_gamma); }
inline Interval i_from_decimal(const std::string& s) {
    DD v = dd_from_decimal(s);
    return widen(v, v);
}

} // namespace siftbound
