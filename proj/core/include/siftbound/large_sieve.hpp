#pragma once

#include "siftbound/primes.hpp"

#include <cstdint>
#include <vector>

namespace siftbound {

enum class Sign { plus, minus };

// residues n mod p with (6n +- 1)((6n +- 1)^2 + (6n +- 1) + 1) = 0 mod p;
// defined for p >= 5, size equals rho(p)
std::vector<std::uint32_t> omega_set(std::uint64_t p, Sign sign);

// brute-force residue enumeration, the test oracle for omega_set
std::vector<std::uint32_t> omega_set_bruteforce(std::uint64_t p, Sign sign);

// exact count of n in [1, (x -+ 1)/6] avoiding omega_set(p, sign) for all
// primes 5 <= p <= w
std::uint64_t count_survivors(std::uint64_t x, Sign sign, double w);

// the surviving n themselves (for membership spot-checks)
std::vector<std::uint64_t> survivors(std::uint64_t x, Sign sign, double w);

// (X + w^2) / M_g(w) with fast-mode M_g
double sieve_bound(double X, double w);
double sieve_bound(double X, double w, const PrimeTable& pt);

} // namespace siftbound
