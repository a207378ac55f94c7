#include "siftbound/factor.hpp"

#include "siftbound/primes.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>

namespace siftbound {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // this witness set is deterministic for all n < 3.3e24, covering 2^64
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

Primality is_prime(const mpz_class& n) {
    if (n < 0) throw std::domain_error("is_prime: n must be nonnegative");
    if (n > chain_cap()) throw std::overflow_error("is_prime: n above 2^128 working cap");
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // mpz_get_ui yields the low limb; one limb covers n < 2^64 on LP64
        u64 v = mpz_get_ui(n.get_mpz_t());
        return is_prime_u64(v) ? Primality::prime : Primality::composite;
    }
    int r = mpz_probab_prime_p(n.get_mpz_t(), 32);
    if (r == 0) return Primality::composite;
    if (r == 2) return Primality::prime;
    return Primality::probable_prime;
}

namespace {

// Brent cycle finding on 64-bit n; deterministic polynomial offsets 1,2,3,...
u64 brent_rho_u64(u64 n, u64 max_iters, unsigned restarts) {
    if (n % 2 == 0) return 2;
    for (unsigned c = 1; c <= restarts; ++c) {
        u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        u64 iters = 0;
        const u64 m = 128;
        while (g == 1 && iters < max_iters) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
            u64 k = 0;
            while (k < r && g == 1 && iters < max_iters) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
                iters += lim;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            do {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

// Brent on mpz for operands beyond 64 bits, with batched gcds
mpz_class brent_rho_mpz(const mpz_class& n, u64 max_iters, unsigned restarts) {
    if (n % 2 == 0) return 2;
    for (unsigned c = 1; c <= restarts; ++c) {
        mpz_class y = 2, x, ys, q = 1, g = 1;
        u64 r = 1, iters = 0;
        const u64 m = 64;
        while (g == 1 && iters < max_iters) {
            x = y;
            for (u64 i = 0; i < r; ++i) { y = (y * y + c) % n; }
            u64 k = 0;
            while (k < r && g == 1 && iters < max_iters) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = (q * abs(x - y)) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
                iters += lim;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                mpz_class d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

void push_factor(std::vector<FactorEntry>& out, const mpz_class& p, unsigned e, Primality proof) {
    for (auto& f : out) {
        if (f.p == p) { f.e += e; return; }
    }
    out.push_back({p, e, proof});
}

// recursively split a composite with rho; returns false on budget exhaustion
bool split(const mpz_class& n, const FactorBudget& budget, const HintFile* hints,
           std::vector<FactorEntry>& out, mpz_class& cofactor) {
    Primality pr = is_prime(n);
    if (pr != Primality::composite) {
        push_factor(out, n, 1, pr);
        return true;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        mpz_class keep_cof = cofactor;
        std::vector<FactorEntry> sub;
        if (split(r, budget, hints, sub, cofactor)) {
            for (auto& f : sub) push_factor(out, f.p, f.e * 2, f.proof);
            return true;
        }
        cofactor = keep_cof;
    }
    mpz_class d = 0;
    if (hints) {
        auto it = hints->hints.find(n);
        if (it != hints->hints.end() && !it->second.empty()) d = it->second.front();
    }
    if (d == 0) {
        if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 63) {
            u64 v = mpz_get_ui(n.get_mpz_t());
            u64 g = brent_rho_u64(v, budget.rho_iterations, budget.rho_restarts);
            if (g) d = mpz_class(static_cast<unsigned long>(g));
        } else {
            d = brent_rho_mpz(n, budget.rho_iterations, budget.rho_restarts);
        }
    }
    if (d == 0 || d == 1 || d == n) {
        cofactor *= n;
        return false;
    }
    bool ok1 = split(d, budget, hints, out, cofactor);
    bool ok2 = split(n / d, budget, hints, out, cofactor);
    return ok1 && ok2;
}

} // namespace

mpz_class Factorization::product() const {
    mpz_class r = cofactor;
    for (const auto& f : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), f.p.get_mpz_t(), f.e);
        r *= pe;
    }
    return r;
}

HintFile HintFile::load(const std::string& path) {
    HintFile hf;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("hint file not readable: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string a, b;
        if (!(ss >> a)) continue;
        if (!(ss >> b))
            throw std::runtime_error("hint file " + path + ": line " + std::to_string(lineno) +
                                     ": expected \"n factor\"");
        hf.hints[mpz_class(a)].push_back(mpz_class(b));
    }
    return hf;
}

namespace {

// shared ascending trial-division primes, grown on demand
std::span<const std::uint32_t> trial_primes(std::uint64_t limit) {
    static std::mutex mu;
    static std::vector<std::uint32_t> primes;
    static std::uint64_t have = 0;
    std::lock_guard<std::mutex> lock(mu);
    if (limit > have) {
        primes.clear();
        enumerate_primes(2, limit, [&](std::uint64_t p) { primes.push_back(std::uint32_t(p)); });
        have = limit;
    }
    auto end = std::upper_bound(primes.begin(), primes.end(), std::uint32_t(limit));
    return {primes.data(), std::size_t(end - primes.begin())};
}

} // namespace

Factorization factorize(const mpz_class& n, const FactorBudget& budget, const HintFile* hints) {
    if (n < 1) throw std::domain_error("factorize: n must be >= 1");
    if (n > chain_cap()) throw std::overflow_error("factorize: n above 2^128 working cap");
    Factorization out;
    out.n = n;
    mpz_class rest = n;

    // trial division over the small primes
    std::uint64_t lim = budget.trial_limit;
    mpz_class lim2 = mpz_class(static_cast<unsigned long>(lim)) * static_cast<unsigned long>(lim);
    bool early_prime = false;
    for (std::uint32_t p : trial_primes(lim)) {
        if (rest == 1) break;
        if (mpz_cmp_ui(rest.get_mpz_t(), 0) > 0 &&
            mpz_sizeinbase(rest.get_mpz_t(), 2) <= 64 &&
            mpz_get_ui(rest.get_mpz_t()) < u64(p) * p) {
            early_prime = true; // no factor <= sqrt(rest) remains
            break;
        }
        unsigned long pp = p;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), pp)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), pp);
            ++e;
        }
        if (e) out.factors.push_back({mpz_class(pp), e, Primality::prime});
    }
    out.cofactor_floor = mpz_class(static_cast<unsigned long>(lim)) + 1;

    if (rest > 1) {
        if (early_prime || rest < lim2) {
            // remainder below the square of the trial bound is prime
            push_factor(out.factors, rest, 1, Primality::prime);
        } else {
            mpz_class cof = 1;
            split(rest, budget, hints, out.factors, cof);
            if (cof != 1) {
                out.cofactor = cof;
                out.status = FactorStatus::partial;
            }
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const FactorEntry& a, const FactorEntry& b) { return a.p < b.p; });
    return out;
}

SmallestP3 smallest_p3(const Factorization& f) {
    SmallestP3 r;
    for (const auto& fe : f.factors) {
        if (fe.p % 3 == 1) {
            r.kind = SmallestP3::Kind::found;
            r.p = fe.p;
            break;
        }
    }
    if (!f.complete()) {
        // a partial cofactor could hide a smaller qualifying prime
        if (r.kind == SmallestP3::Kind::found && r.p < f.cofactor_floor) return r;
        r.kind = SmallestP3::Kind::unknown;
        r.p = 0;
        return r;
    }
    return r;
}

SmallestP3 smallest_p3(const mpz_class& n, const FactorBudget& budget, const HintFile* hints) {
    if (n < 2) throw std::domain_error("smallest_p3: n must be >= 2");
    return smallest_p3(factorize(n, budget, hints));
}

} // namespace siftbound
