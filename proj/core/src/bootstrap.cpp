#include "siftbound/bootstrap.hpp"

#include "siftbound/density.hpp"
#include "siftbound/primes.hpp"

#include <cmath>
#include <stdexcept>

namespace siftbound {

namespace {

Interval iA1() { return i_from_decimal("4.62077"); }
Interval iA2() { return i_from_decimal("3.66778"); }
Interval iA3() { return i_from_decimal("0.347454"); }
Interval iC() {
    return Interval(dd_from_decimal("0.0547621780808").hi,
                    dd_from_decimal("0.0547621781"));
}
Interval i_log49() { return i_log(Interval(49.0)); }

} // namespace

Interval euler_product_C(std::uint64_t limit) {
    if (limit < 10000) throw std::domain_error("euler_product_C: limit must be >= 1e4");
    // L(1, chi)/12 = pi / (36 sqrt 3)
    Interval prod = i_pi() / (Interval(36.0) * i_sqrt(Interval(3.0)));
    enumerate_primes(5, limit, [&](std::uint64_t p) {
        Interval ip(double(p)); // exact (p < 2^53)
        if (p % 3 == 1) {
            // 1 + (3p - 1)/(p^2 (p - 3))
            Interval num = Interval(3.0) * ip - 1.0;
            Interval den = ip * ip * (ip - 3.0);
            prod = prod * (Interval(1.0) + num / den);
        } else {
            // 1 - 1/p^2
            prod = prod * (Interval(1.0) - Interval(1.0) / (ip * ip));
        }
    });
    // tail over p > limit: sum 1/p^2 over odd n > limit is below
    // 1/(2(limit-1)) + 1/limit^2; the 1-mod-3 factors are below
    // exp((3 + 8/(3(limit-3))) sum 1/p^2) and the 2-mod-3 factors above
    // 1 - sum 1/p^2
    double L = double(limit);
    Interval s = Interval(1.0) / Interval(2.0 * (L - 1.0)) + Interval(1.0) / Interval(L * L);
    Interval up_factor = i_exp((Interval(3.0) + Interval(8.0) / (Interval(3.0) * (Interval(L) - 3.0))) * s);
    Interval lo_factor = Interval(1.0) - s;
    if (lo_factor.lo < DD(0.0)) lo_factor = Interval(DD(0.0), lo_factor.hi);
    return Interval((prod * lo_factor).lo, (prod * up_factor).hi);
}

Interval b1_constant() {
    // the explicit-formula constant B1 = log(2 pi/3) + gamma + L'(1,chi)/L(1,chi);
    // the published L'(1,chi) digits are a truncation, so widen the last digit
    Interval lprime(dd_from_decimal(kLPrime1Chi).hi, dd_from_decimal("0.2226629690"));
    Interval l1 = i_pi() / (Interval(3.0) * i_sqrt(Interval(3.0)));
    return i_log(Interval(2.0) * i_pi() / Interval(3.0)) + i_euler_gamma() + lprime / l1;
}

double epsilon_bound(double x) {
    if (x < 2401.0) throw std::domain_error("epsilon_bound: x must be >= 7^4");
    Interval ix(x);
    Interval sum(0.0);
    // primes 7..31 congruent 1 mod 3, exponent eta(p) = log((p-3)/3)/log p
    for (int p : {7, 13, 19, 31}) {
        Interval ip(double(p));
        Interval eta = i_log((ip - 3.0) / 3.0) / i_log(ip);
        sum = sum + (ip - 3.0) * i_log(ip) / (ip * i_pow(ix, eta));
    }
    // primes 5..29 congruent 2 mod 3, exponent log(p-1)/log p
    for (int p : {5, 11, 17, 23, 29}) {
        Interval ip(double(p));
        Interval ex = i_log(ip - 1.0) / i_log(ip);
        sum = sum + (ip - 1.0) * i_log(ip) / (ip * i_pow(ix, ex));
    }
    sum = sum + i_from_decimal("1.2375") * i_pow(ix, -i_from_decimal("0.317"));
    Interval lx = i_log(ix);
    sum = sum + Interval(3.0) * (lx + i_from_decimal("0.00266")) / (i_sqrt(ix) - 3.0);
    Interval cbrt = i_pow(ix, Interval(1.0) / Interval(3.0));
    sum = sum + Interval(9.0) * (lx + i_from_decimal("0.08557")) / i_pow(cbrt - 3.0, 2);
    return sum.hi.to_double();
}

Ladder seed_ladder() {
    Ladder l;
    l.lower = {Interval(0.0)};
    l.upper = {iA3()};
    l.threshold = 10.0;
    return l;
}

namespace {

bool is_seed(const Ladder& in) {
    for (const auto& a : in.lower)
        if (!(a.lo == DD(0.0) && a.hi == DD(0.0))) return false;
    return true;
}

Interval at(const std::vector<Interval>& v, std::size_t i) {
    return i < v.size() ? v[i] : Interval(0.0);
}

} // namespace

Ladder bootstrap_step(const Ladder& in) {
    const Interval A1 = iA1(), A2 = iA2(), C = iC(), L49 = i_log49();
    const std::size_t n = std::max(in.lower.size(), in.upper.size());
    Ladder out;
    bool seed = is_seed(in);
    out.threshold = seed ? in.threshold : 49.0 * in.threshold;
    Interval y0 = i_log(Interval(49.0 * in.threshold));

    Interval a0 = at(in.lower, 0), a1 = at(in.lower, 1), a2 = at(in.lower, 2);
    Interval b0 = at(in.upper, 0), b1 = at(in.upper, 1), b2 = at(in.upper, 2);

    out.lower.push_back(C);
    out.upper.push_back(C);
    out.lower.push_back(Interval(3.0) * A2 * a0 - A1 * b0);
    out.upper.push_back(Interval(3.0) * A1 * b0 - A2 * a0);
    out.lower.push_back(Interval(1.5) * A2 * (a1 - Interval(2.0) * a0 * L49) - A1 * b1);
    out.upper.push_back(Interval(1.5) * A1 * b1 - A2 * (a1 - Interval(2.0) * a0 * L49));
    out.lower.push_back(A2 * (a0 * L49 * L49 - a1 * L49 + a2) - A1 * b2);
    out.upper.push_back(A1 * b2 - A2 * (a0 * L49 * L49 - a1 * L49 + a2));
    for (std::size_t i = 3; i < n; ++i) {
        Interval ai = at(in.lower, i), bi = at(in.upper, i);
        // (1 - log 49 / log(49 x0))^(2-i); sound for a_i <= 0, which is the
        // only sign the ladder produces at these indices
        Interval F = i_pow(Interval(1.0) - L49 / y0, -int(i - 2));
        if (ai.hi > DD(0.0)) F = Interval(1.0); // conservative fallback
        out.lower.push_back(Interval(3.0) * A2 / Interval(double(i + 1)) * F * ai - A1 * bi);
        out.upper.push_back(Interval(3.0) * A1 / Interval(double(i + 1)) * bi - A2 * F * ai);
    }
    // each application extends the ladder by one coefficient; deeper terms
    // may be dropped only when that weakens the bound (positive on the
    // lower side, negative on the upper side)
    while (out.lower.size() > n + 1) {
        bool lower_droppable = out.lower.back().lo >= DD(-1e-100);
        bool upper_droppable = out.upper.back().hi <= DD(1e-100);
        if (!lower_droppable || !upper_droppable) break;
        out.lower.pop_back();
        out.upper.pop_back();
    }
    for (std::size_t i = 0; i < out.lower.size(); ++i)
        if (!(out.lower[i].lo <= out.lower[i].hi))
            throw std::runtime_error("bootstrap_step: degenerate enclosure");
    return out;
}

namespace {

NamedConstant named(const std::string& name, const Interval& v, double printed) {
    NamedConstant nc{name, v, printed, false};
    // compare at the printed precision: truncate toward zero to the printed
    // unit and allow one unit of slack in the final digit
    double unit = 1.0;
    double a = std::abs(printed);
    for (double u : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
        double r = std::round(a / u) * u;
        if (std::abs(r - a) < u * 1e-6) { unit = u; break; }
    }
    double t = std::trunc(v.mid() / unit) * unit;
    nc.matches_printed = std::abs(t - printed) <= unit * 1.0000001;
    return nc;
}

} // namespace

ConstantSet theorem21_constants() {
    ConstantSet cs;
    cs.A1 = iA1();
    cs.A2 = iA2();
    cs.A3 = iA3();
    cs.C = iC();
    cs.B1 = b1_constant();

    Ladder l = seed_ladder();
    cs.thresholds.push_back(l.threshold);
    l = bootstrap_step(l); // stage 1: (C, -A1 A3) .. (C, 3 A1 A3), x >= 10
    cs.thresholds.push_back(l.threshold);
    Ladder s2 = bootstrap_step(l);
    cs.thresholds.push_back(s2.threshold);
    Ladder s3 = bootstrap_step(s2);
    cs.thresholds.push_back(s3.threshold);
    Ladder s4 = bootstrap_step(s3);
    cs.thresholds.push_back(s4.threshold);
    Ladder s5 = bootstrap_step(s4);
    cs.thresholds.push_back(s5.threshold);
    cs.final_ladder = s5;

    cs.table.push_back(named("C1-", s2.lower[1], 0.34952));
    cs.table.push_back(named("C1+", s2.upper[1], 0.55827));
    cs.table.push_back(named("C2*-", s2.lower[2], -33.434));
    cs.table.push_back(named("C2*+", s2.upper[2], 40.836));
    cs.table.push_back(named("C2-", s3.lower[2], -4.0926));
    cs.table.push_back(named("C2+", s3.upper[2], 5.4214));
    cs.table.push_back(named("C3*-", s3.lower[3], -313.26));
    cs.table.push_back(named("C3*+", s3.upper[3], 313.26));
    cs.table.push_back(named("C3-", s4.lower[3], -32.137));
    cs.table.push_back(named("C3+", s4.upper[3], 32.137));
    cs.table.push_back(named("C4*-", s4.lower[4], -2641.81));
    cs.table.push_back(named("C4*+", s4.upper[4], 2678.01));
    cs.table.push_back(named("C4-", s5.lower[4], -261.51));
    cs.table.push_back(named("C4+", s5.upper[4], 262.06));
    cs.table.push_back(named("C5*-", s5.lower[5], -21876.28));
    cs.table.push_back(named("C5*+", s5.upper[5], 23261.02));
    return cs;
}

double ladder_lower_poly(const Ladder& l, double u) {
    double s = 0;
    for (std::size_t i = 0; i < l.lower.size(); ++i)
        s += l.lower[i].lo.to_double() * std::pow(u, 2.0 - double(i));
    return s;
}

double ladder_upper_poly(const Ladder& l, double u) {
    double s = 0;
    for (std::size_t i = 0; i < l.upper.size(); ++i)
        s += l.upper[i].hi.to_double() * std::pow(u, 2.0 - double(i));
    return s;
}

} // namespace siftbound
