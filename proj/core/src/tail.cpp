#include "siftbound/tail.hpp"

#include "siftbound/common.hpp"
#include "siftbound/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace siftbound {

namespace {

double simpson_rule(const std::function<double(double)>& f, double a, double m, double b,
                    double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double m, double b,
                     double fa, double fm, double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_rule(f, a, lm, m, fa, flm, fm);
    double right = simpson_rule(f, m, rm, b, fm, frm, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_step(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson_rule(f, a, m, b, fa, fm, fb);
    return adaptive_step(f, a, m, b, fa, fm, fb, whole, tol, 48);
}

TailReport tail_integrals(double L, double x, const ConstantSet& cs, const EnvelopeTable& env) {
    TailReport r;
    r.L = L;
    r.x = x;
    if (!(x > std::exp(12.0))) throw std::domain_error("tail_integrals: need x > e^12");
    r.w = std::sqrt(x) / L;
    if (!(r.w > std::exp(6.0))) throw std::domain_error("tail_integrals: need w > e^6");
    double logw = std::log(r.w);

    // integral over [24.4, inf) of 2u^3 / (lower ladder polynomial * u^3);
    // quadrature to the cut, then the analytic majorant 2/(C u) beyond it
    const Ladder& lad = cs.final_ladder;
    auto integrand = [&](double u) {
        double den = ladder_lower_poly(lad, u);
        return 2.0 / den;
    };
    const double kCut = 1e4;
    const double kTol = 1e-6;
    double den_at_cut = ladder_lower_poly(lad, 24.4);
    if (den_at_cut <= 0) throw std::runtime_error("tail_integrals: ladder polynomial not positive");
    double quad = adaptive_simpson(integrand, 24.4, kCut, kTol);
    double c_lo = cs.C.lo.to_double();
    double tail_majorant = 2.0 / (c_lo * kCut);
    r.integral1 = quad + tail_majorant;
    r.integral1_enclosure_hi = quad + kTol + tail_majorant;

    // constant floor 21^2 B2 on [21, 24.4]
    r.integral2 = (24.4 - 21.0) * 2.0 / (441.0 * cs.B2);

    // regenerated envelope on [log w, 21], integrated piecewise in closed form
    if (logw >= 21.0) {
        r.integral3 = 0.0;
    } else {
        if (env.empty())
            throw std::runtime_error("tail_integrals: envelope table required for log w < 21");
        double a = logw;
        const double b = 21.0;
        double total = 0.0;
        double top = std::min(b, env.t.back());
        std::size_t i = 0;
        while (a < top - 1e-12) {
            while (i < env.t.size() && env.t[i] <= a + 1e-15) ++i;
            if (i >= env.t.size()) break;
            double piece_end = std::min(env.t[i], top);
            // integral of 2/(K u^2) du
            total += 2.0 / env.k[i] * (1.0 / a - 1.0 / piece_end);
            a = piece_end;
        }
        if (a < b - 1e-12) {
            // beyond the table: M_g(e^u) >= K_top * t_top^2 by monotonicity
            double tm = env.t.back();
            double floor_val = env.k.back() * tm * tm;
            total += (b - a) * 2.0 / floor_val;
        }
        r.integral3 = total;
    }

    double weight = 1.0 / 3.0 + 1.0 / (L * L) + 1.0 / (3.0 * std::exp(12.0));
    r.weighted = weight * (r.integral1 + r.integral2 + r.integral3);
    r.tail_total = r.weighted + 8.0 / (L * std::sqrt(x));
    r.threshold = std::log(8.0 / 3.0);
    return r;
}

TailReport::Verdict abundancy_contradiction(TailReport& report, double small_sum) {
    report.small_sum = small_sum;
    double e16 = std::exp(16.0);
    report.final_sum = e16 / (e16 - 1.0) * (report.tail_total + small_sum);
    report.verdict = report.final_sum < report.threshold ? TailReport::Verdict::contradiction
                                                         : TailReport::Verdict::inconclusive;
    return report.verdict;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 sqrt_mod(u64 qr, u64 p) {
    qr %= p;
    if (qr == 0) return 0;
    if (p % 4 == 3) return powmod(qr, (p + 1) / 4, p);
    u64 q = p - 1, s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powmod(z, q, p), t = powmod(qr, q, p), rr = powmod(qr, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t, i = 0;
        while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
        u64 b = powmod(c, u64(1) << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        rr = mulmod(rr, b, p);
    }
    return rr;
}

} // namespace

RecipSumResult reciprocal_sum_small(double hi, const FactorBudget& budget) {
    RecipSumResult out;
    const double e16 = std::exp(16.0);
    if (hi > std::exp(25.0) + 1) throw std::domain_error("reciprocal_sum_small: hi above e^25");
    if (hi <= e16) return out; // empty range
    u64 lo_p = u64(std::floor(e16)) + 1; // 8886111; primes start at 8886113
    u64 hi_p = u64(std::floor(hi));
    u64 qmax = u64(std::floor(e16)); // successor floor

    // candidate primes and the first-iterate polynomial sieve: strike p with
    // some prime q = 1 mod 3, q <= e^16 dividing p^2 + p + 1
    std::vector<u64> cand = primes_in_range(lo_p, hi_p);
    out.candidates = cand.size();
    if (cand.empty()) return out;

    std::vector<std::uint8_t> alive(hi_p - lo_p + 1, 0);
    for (u64 p : cand) alive[p - lo_p] = 1;
    enumerate_primes(7, qmax, [&](u64 q) {
        if (q % 3 != 1) return;
        // roots of t^2 + t + 1 mod q
        u64 s3 = sqrt_mod(q - 3, q);
        u64 inv2 = (q + 1) / 2;
        u64 roots[2] = {mulmod((q - 1 + s3) % q, inv2, q), mulmod((2 * q - 1 - s3) % q, inv2, q)};
        for (u64 rt : roots) {
            u64 first = (lo_p / q) * q + rt;
            while (first < lo_p) first += q;
            for (u64 v = first; v <= hi_p; v += q) alive[v - lo_p] = 0;
        }
    });

    // product of all primes q = 1 mod 3 up to e^16, for one-gcd second-
    // iterate tests
    std::vector<mpz_class> leaves;
    enumerate_primes(7, qmax, [&](u64 q) {
        if (q % 3 == 1) leaves.push_back(mpz_class(static_cast<unsigned long>(q)));
    });
    while (leaves.size() > 1) {
        std::vector<mpz_class> next;
        for (std::size_t i = 0; i + 1 < leaves.size(); i += 2) next.push_back(leaves[i] * leaves[i + 1]);
        if (leaves.size() % 2) next.push_back(leaves.back());
        leaves.swap(next);
    }
    mpz_class qprod = leaves.empty() ? mpz_class(1) : leaves[0];

    Kahan acc;
    // survivors have no 1-mod-3 factor below e^16, so deep trial division
    // buys nothing; strip the 3 and hand the rest to rho
    FactorBudget reduced = budget;
    reduced.trial_limit = std::min<std::uint64_t>(budget.trial_limit, 1000);
    for (u64 p : cand) {
        if (!alive[p - lo_p]) continue;
        // first iterate already known > e^16; find it to test the second
        mpz_class mp(static_cast<unsigned long>(p));
        mpz_class n = mp * mp + mp + 1;
        Factorization f = factorize(n, reduced);
        SmallestP3 q1 = smallest_p3(f);
        if (q1.kind != SmallestP3::Kind::found) {
            out.unresolved.push_back(std::to_string(p));
            acc.add(1.0 / double(p)); // pessimistic
            continue;
        }
        mpz_class m = q1.p * q1.p + q1.p + 1;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), qprod.get_mpz_t());
        if (g == 1) {
            ++out.survivors;
            acc.add(1.0 / double(p));
        }
    }
    out.sum = acc.value();
    return out;
}

} // namespace siftbound
