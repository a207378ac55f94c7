#pragma once

#include "siftbound/factor.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace siftbound {

// one expansion: q is an established divisor, n = q^2 + q + 1, and every
// prime factor of n other than 3 is a new established divisor
struct ChainStep {
    mpz_class q;
    mpz_class n;
    Factorization f;
    SmallestP3 next;
};

enum class ChainStatus { excluded_smaller, excluded_cube, unresolved };

struct ChainCertificate {
    std::uint64_t p = 0;
    std::vector<ChainStep> steps; // in expansion order (ascending q)
    ChainStatus status = ChainStatus::unresolved;
    mpz_class terminal;      // the smaller divisor, or the cubed prime
    unsigned cube_exponent = 0;
    std::vector<std::string> external_hints_used;
    bool probable_prime_used = false;
    std::string unresolved_reason;
};

struct ChainLimits {
    unsigned max_steps = 64;
    unsigned max_bits = 128; // chain numbers above 2^128 end the search
    FactorBudget budget;
};

// n = p^2 + p + 1, its factorization and successor prime
ChainStep chain_step(const mpz_class& p, const FactorBudget& budget = {},
                     const HintFile* hints = nullptr);

// breadth-style exclusion search expanding the smallest established divisor
// first; terminates on a divisor < p, an accumulated cube, or limits
ChainCertificate exclude_prime(std::uint64_t p, const ChainLimits& limits = {},
                               const HintFile* hints = nullptr);

struct SanityCheck {
    bool passes = false;            // (p^2+p+1)/rho(p) is prime
    mpz_class cofactor;             // the tested cofactor
    Factorization cofactor_factors; // its factorization when composite
};

// the immediate-exclusion filter: a smallest prime factor candidate p needs
// (p^2+p+1)/rho(p) prime, else a factor between 3 and p divides N
SanityCheck smallest_prime_sanity(std::uint64_t p, const FactorBudget& budget = {});

struct RangeOptions {
    std::string checkpoint_path;  // resumable state, written every 10^4 primes
    std::string hints_path;
    unsigned threads = 1;
    std::function<void(const ChainCertificate&)> sink; // serialized, in prime order
};

struct RangeSummary {
    std::uint64_t lo = 0, hi = 0;
    std::uint64_t primes = 0;
    std::uint64_t excluded = 0;
    std::vector<std::uint64_t> unresolved;
};

RangeSummary verify_range(std::uint64_t lo, std::uint64_t hi, const ChainLimits& limits = {},
                          const RangeOptions& options = {});

// JSON-lines (de)serialization
std::string certificate_to_json(const ChainCertificate& c);
ChainCertificate certificate_from_json(const std::string& line);

} // namespace siftbound
