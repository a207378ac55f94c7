// Double-double arithmetic: an unevaluated sum of two doubles giving a
// ~106-bit significand.  Basic kernels follow the error-free transforms
// of Dekker/Knuth with the accurate variants from Joldes et al. (2017).
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace siftbound {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double x) : hi(x), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

namespace detail {

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD fast_two_sum(double a, double b) {
    // requires |a| >= |b|
    double s = a + b;
    double err = b - (s - a);
    return {s, err};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

} // namespace detail

inline DD dd_add(DD x, DD y) {
    DD s = detail::two_sum(x.hi, y.hi);
    DD t = detail::two_sum(x.lo, y.lo);
    double c = s.lo + t.hi;
    DD v = detail::fast_two_sum(s.hi, c);
    double w = t.lo + v.lo;
    return detail::fast_two_sum(v.hi, w);
}

inline DD dd_neg(DD x) { return {-x.hi, -x.lo}; }
inline DD dd_sub(DD x, DD y) { return dd_add(x, dd_neg(y)); }

inline DD dd_mul(DD x, DD y) {
    DD p = detail::two_prod(x.hi, y.hi);
    double t = x.hi * y.lo + x.lo * y.hi + p.lo;
    return detail::fast_two_sum(p.hi, t);
}

inline DD dd_div(DD x, DD y) {
    double q1 = x.hi / y.hi;
    DD r = dd_sub(x, dd_mul(DD(q1), y));
    double q2 = r.hi / y.hi;
    r = dd_sub(r, dd_mul(DD(q2), y));
    double q3 = r.hi / y.hi;
    DD q = detail::fast_two_sum(q1, q2);
    return dd_add(q, DD(q3));
}

inline DD dd_add(DD x, double y) { return dd_add(x, DD(y)); }
inline DD dd_sub(DD x, double y) { return dd_sub(x, DD(y)); }
inline DD dd_mul(DD x, double y) { return dd_mul(x, DD(y)); }
inline DD dd_div(DD x, double y) { return dd_div(x, DD(y)); }

inline DD operator+(DD a, DD b) { return dd_add(a, b); }
inline DD operator-(DD a, DD b) { return dd_sub(a, b); }
inline DD operator*(DD a, DD b) { return dd_mul(a, b); }
inline DD operator/(DD a, DD b) { return dd_div(a, b); }
inline DD operator-(DD a) { return dd_neg(a); }

inline bool operator<(DD a, DD b)  { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b)  { return b < a; }
inline bool operator<=(DD a, DD b) { return !(b < a); }
inline bool operator>=(DD a, DD b) { return !(a < b); }
inline bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }

inline DD dd_abs(DD x) { return x.hi < 0 || (x.hi == 0 && x.lo < 0) ? dd_neg(x) : x; }

inline DD dd_sqrt(DD x) {
    if (x.hi == 0.0) return DD(0.0);
    double y0 = std::sqrt(x.hi);
    // one Newton step in double-double: y = y0 + (x - y0^2) / (2 y0)
    DD y0sq = detail::two_prod(y0, y0);
    DD diff = dd_sub(x, y0sq);
    double corr = diff.hi / (2.0 * y0);
    return detail::fast_two_sum(y0, corr);
}

inline DD dd_ldexp(DD x, int n) { return {std::ldexp(x.hi, n), std::ldexp(x.lo, n)}; }

namespace ddc {
inline constexpr DD pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr DD ln2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr DD euler_gamma{0.5772156649015329, -4.942915152430645e-18};
} // namespace ddc

// exp with ~2^-100 relative accuracy: argument reduction against ln 2,
// then a Taylor series on |r| <= ln(2)/2.
inline DD dd_exp(DD x) {
    if (x.hi > 709.0) return DD(std::numeric_limits<double>::infinity());
    if (x.hi < -709.0) return DD(0.0);
    double k = std::nearbyint(x.hi / ddc::ln2.hi);
    DD r = dd_sub(x, dd_mul(ddc::ln2, DD(k)));
    // exp(r) = sum r^n / n!
    DD term(1.0);
    DD sum(1.0);
    for (int n = 1; n <= 22; ++n) {
        term = dd_div(dd_mul(term, r), DD(double(n)));
        sum = dd_add(sum, term);
        if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
    }
    return dd_ldexp(sum, int(k));
}

// log via one Newton correction of the double-precision logarithm:
// y1 = y0 + x*exp(-y0) - 1 brings the error to O(eps^2).
inline DD dd_log(DD x) {
    double y0 = std::log(x.hi);
    DD e = dd_mul(x, dd_exp(DD(-y0)));
    DD d = dd_sub(e, DD(1.0));
    DD half_d2 = dd_mul(dd_mul(d, d), DD(0.5));
    return dd_add(DD(y0), dd_sub(d, half_d2));
}

// Exact-valued parse for short decimal literals like "4.62077" or "-0.347454":
// mantissa scaled by a power of ten, both exactly representable, one dd division.
inline DD dd_from_decimal(const std::string& s) {
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    std::int64_t mant = 0;
    int frac_digits = 0;
    bool seen_dot = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') { seen_dot = true; continue; }
        mant = mant * 10 + (s[i] - '0');
        if (seen_dot) ++frac_digits;
    }
    DD num(double(mant)); // exact: mantissa < 2^53 for all constants we parse
    DD den(1.0);
    for (int k = 0; k < frac_digits; ++k) den = dd_mul(den, DD(10.0));
    DD v = dd_div(num, den);
    return neg ? dd_neg(v) : v;
}

} // namespace siftbound
