#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace siftbound {

enum class Primality { composite, prime, probable_prime };

// deterministic Miller-Rabin verdict for any n < 2^64
bool is_prime_u64(std::uint64_t n);

// Verdict for n <= 2^128.  Below 2^64 the answer is deterministic; above,
// a BPSW-style test reports probable_prime instead of prime.
Primality is_prime(const mpz_class& n);

struct FactorBudget {
    std::uint64_t trial_limit = 100000;     // trial division bound
    std::uint64_t rho_iterations = 1 << 20; // Brent iterations per restart
    unsigned rho_restarts = 64;
};

// user-supplied factors for numbers the built-in backend cannot split
// (file format: one "n factor" pair per line, '#' comments)
struct HintFile {
    std::map<mpz_class, std::vector<mpz_class>> hints;
    static HintFile load(const std::string& path);
    bool empty() const { return hints.empty(); }
};

struct FactorEntry {
    mpz_class p;
    unsigned e = 1;
    Primality proof = Primality::prime;
};

enum class FactorStatus { complete, partial };

struct Factorization {
    mpz_class n;
    std::vector<FactorEntry> factors; // ascending primes
    mpz_class cofactor = 1;           // composite remainder when partial
    // every prime factor of the cofactor is >= this bound
    mpz_class cofactor_floor = 1;
    FactorStatus status = FactorStatus::complete;

    mpz_class product() const;
    bool complete() const { return status == FactorStatus::complete; }
};

// Trial division then Brent-rho with deterministic restarts.  Budget
// exhaustion yields status=partial with the unresolved cofactor exposed.
Factorization factorize(const mpz_class& n, const FactorBudget& budget = {},
                        const HintFile* hints = nullptr);

struct SmallestP3 {
    enum class Kind { found, none, unknown } kind = Kind::none;
    mpz_class p; // valid when kind == found
};

// least prime factor of n congruent to 1 mod 3
SmallestP3 smallest_p3(const Factorization& f);
SmallestP3 smallest_p3(const mpz_class& n, const FactorBudget& budget = {},
                       const HintFile* hints = nullptr);

// 2^128 working cap shared with the chain search
inline mpz_class chain_cap() {
    mpz_class c = 1;
    c <<= 128;
    return c;
}

} // namespace siftbound
