#include "siftbound/large_sieve.hpp"

#include "siftbound/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace siftbound {

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

// Tonelli-Shanks square root mod odd prime p; assumes qr is a residue
u64 sqrt_mod(u64 qr, u64 p) {
    qr %= p;
    if (qr == 0) return 0;
    if (p % 4 == 3) return powmod(qr, (p + 1) / 4, p);
    u64 q = p - 1, s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powmod(z, q, p), t = powmod(qr, q, p), r = powmod(qr, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t, i = 0;
        while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
        u64 b = powmod(c, u64(1) << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

} // namespace

std::vector<std::uint32_t> omega_set_bruteforce(u64 p, Sign sign) {
    if (p < 5) throw std::domain_error("omega_set: p must be >= 5");
    std::vector<std::uint32_t> out;
    long long s = sign == Sign::plus ? 1 : -1;
    for (u64 n = 0; n < p; ++n) {
        u64 m = u64(((__int128(6) * n + s) % __int128(p) + p) % p);
        u64 val = mulmod(m, (mulmod(m, m, p) + m + 1) % p, p);
        if (val == 0) out.push_back(std::uint32_t(n));
    }
    return out;
}

std::vector<std::uint32_t> omega_set(u64 p, Sign sign) {
    if (p < 5) throw std::domain_error("omega_set: p must be >= 5");
    // solve for m = 6n +- 1: m = 0 always; m^2 + m + 1 = 0 has the two roots
    // (-1 +- sqrt(-3))/2 exactly when p = 1 mod 3
    std::vector<u64> ms{0};
    if (p % 3 == 1) {
        u64 s3 = sqrt_mod(p - 3 % p, p);
        u64 inv2 = (p + 1) / 2;
        ms.push_back(mulmod((p - 1 + s3) % p, inv2, p));
        ms.push_back(mulmod((2 * p - 1 - s3) % p, inv2, p));
    }
    // n = (m -+ 1) / 6 mod p
    u64 inv6 = powmod(6, p - 2, p);
    std::vector<std::uint32_t> out;
    for (u64 m : ms) {
        u64 shifted = sign == Sign::plus ? (m + p - 1) % p : (m + 1) % p;
        out.push_back(std::uint32_t(mulmod(shifted, inv6, p)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<std::uint8_t> sift_bitmap(u64 x, Sign sign, double w) {
    u64 N = sign == Sign::plus ? (x - 1) / 6 : (x + 1) / 6;
    std::vector<std::uint8_t> alive(N + 1, 1); // 1-indexed
    if (N == 0) return alive;
    if (w >= 5) {
        u64 wlim = u64(std::floor(w));
        enumerate_primes(5, wlim, [&](u64 p) {
            for (std::uint32_t r : omega_set(p, sign)) {
                u64 first = r == 0 ? p : r;
                for (u64 n = first; n <= N; n += p) alive[n] = 0;
            }
        });
    }
    return alive;
}

} // namespace

std::uint64_t count_survivors(u64 x, Sign sign, double w) {
    if (x > 100000000ull) throw std::overflow_error("count_survivors: x limited to 1e8");
    auto alive = sift_bitmap(x, sign, w);
    u64 c = 0;
    for (std::size_t i = 1; i < alive.size(); ++i) c += alive[i];
    return c;
}

std::vector<std::uint64_t> survivors(u64 x, Sign sign, double w) {
    if (x > 100000000ull) throw std::overflow_error("survivors: x limited to 1e8");
    auto alive = sift_bitmap(x, sign, w);
    std::vector<u64> out;
    for (std::size_t i = 1; i < alive.size(); ++i)
        if (alive[i]) out.push_back(i);
    return out;
}

double sieve_bound(double X, double w, const PrimeTable& pt) {
    if (w < 1) throw std::domain_error("sieve_bound: w must be >= 1");
    double mg = mg_fast(w, pt).value;
    return (X + w * w) / mg;
}

double sieve_bound(double X, double w) {
    if (w < 1) throw std::domain_error("sieve_bound: w must be >= 1");
    double mg = mg_fast(w).value;
    return (X + w * w) / mg;
}

} // namespace siftbound
