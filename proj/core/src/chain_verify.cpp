#include "siftbound/chain_verify.hpp"

#include <map>
#include <set>

namespace siftbound {

namespace {

// stand-alone Miller-Rabin on mpz; deterministic witness set below 2^64,
// a fixed extended set above (certificates flag that regime separately)
bool mr_witness(const mpz_class& n, unsigned long a) {
    mpz_class d = n - 1;
    unsigned long s = 0;
    while (mpz_even_p(d.get_mpz_t())) { d >>= 1; ++s; }
    mpz_class x, base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

bool probably_prime(const mpz_class& n) {
    if (n < 2) return false;
    static const unsigned long small[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                          41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (unsigned long p : small) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return n == p;
    }
    for (unsigned long a : small)
        if (!mr_witness(n, a)) return false;
    return true;
}

} // namespace

VerifyResult verify_certificate(const ChainCertificate& cert) {
    auto fail = [](const std::string& r) { return VerifyResult{false, r}; };
    if (cert.p < 5) return fail("seed prime below 5");
    mpz_class seed(static_cast<unsigned long>(cert.p));
    if (!probably_prime(seed)) return fail("seed is not prime");

    std::set<mpz_class> established{seed};
    std::map<mpz_class, unsigned> exponents;
    bool smaller_seen = false, cube_seen = false;
    mpz_class smaller_terminal, cube_terminal;

    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const ChainStep& st = cert.steps[i];
        std::string at = " (step " + std::to_string(i) + ")";
        if (established.find(st.q) == established.end())
            return fail("expanded divisor not previously established" + at);
        if (st.n != st.q * st.q + st.q + 1) return fail("n != q^2+q+1" + at);

        mpz_class prod = st.f.complete() ? mpz_class(1) : st.f.cofactor;
        if (!st.f.complete() && st.f.cofactor <= 1)
            return fail("partial factorization without cofactor" + at);
        for (const auto& fe : st.f.factors) {
            if (fe.e == 0) return fail("zero exponent" + at);
            if (!probably_prime(fe.p)) return fail("listed factor not prime" + at);
            if (fe.p != 3 && fe.p % 3 != 1)
                return fail("factor neither 3 nor 1 mod 3" + at);
            for (unsigned k = 0; k < fe.e; ++k) prod *= fe.p;
        }
        if (prod != st.n) return fail("factorization does not multiply back to n" + at);
        for (std::size_t k = 1; k < st.f.factors.size(); ++k)
            if (!(st.f.factors[k - 1].p < st.f.factors[k].p))
                return fail("factors not ascending" + at);

        // successor minimality: smallest listed prime = 1 mod 3, certain
        // only when the factorization is complete
        if (st.next.kind == SmallestP3::Kind::found) {
            bool seen = false;
            for (const auto& fe : st.f.factors) {
                if (fe.p % 3 == 1) {
                    if (fe.p != st.next.p) return fail("claimed successor not minimal" + at);
                    seen = true;
                    break;
                }
            }
            if (!seen) return fail("claimed successor missing from factors" + at);
            if (!st.f.complete() && st.next.p >= st.f.cofactor)
                return fail("successor minimality not certain under partial factorization" + at);
        }

        for (const auto& fe : st.f.factors) {
            if (fe.p == 3) continue;
            exponents[fe.p] += fe.e;
            established.insert(fe.p);
            if (fe.p < seed && !smaller_seen) {
                smaller_seen = true;
                smaller_terminal = fe.p;
            }
            if (exponents[fe.p] >= 3 && !cube_seen) {
                cube_seen = true;
                cube_terminal = fe.p;
            }
        }
    }

    switch (cert.status) {
        case ChainStatus::excluded_smaller:
            if (!smaller_seen) return fail("no divisor below the seed was derived");
            if (cert.terminal >= seed) return fail("terminal not smaller than seed");
            if (established.find(cert.terminal) == established.end())
                return fail("terminal was never derived");
            if (!probably_prime(cert.terminal)) return fail("terminal not prime");
            return {true, ""};
        case ChainStatus::excluded_cube: {
            auto it = exponents.find(cert.terminal);
            if (it == exponents.end() || it->second < 3)
                return fail("claimed cube prime lacks accumulated exponent 3");
            if (cert.terminal == 3) return fail("cube contradiction may not use the prime 3");
            return {true, ""};
        }
        case ChainStatus::unresolved:
            return fail("unresolved certificate proves nothing");
    }
    return fail("unknown status");
}

} // namespace siftbound
