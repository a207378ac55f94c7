#pragma once

#include "siftbound/primes.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace siftbound {

// sieve density: 0 at 2 and 3, 3 at p = 1 mod 3, 1 at p = 2 mod 3
int rho_density(std::uint64_t p);

inline constexpr double kKappa = 2.0;
inline constexpr double kA1 = 4.62077;
inline constexpr double kA2 = 3.66778;
inline constexpr double kA3 = 0.347454;

// multiplicative weight g supported on squarefree n, g(p) = rho/(p - rho)
mpq_class g_exact(std::uint64_t n);
// completely multiplicative mu_g, mu_g(p) = -rho/(p - rho)
mpq_class mu_g_exact(std::uint64_t n);

// Lambda_g(n) = coeff * log(p) on prime powers n = p^e, zero elsewhere
struct LambdaG {
    mpq_class coeff;      // exact rational coefficient
    std::uint64_t p = 0;  // 0 when Lambda_g(n) = 0
};
LambdaG lambda_g(std::uint64_t n);

inline constexpr double kMgExactLimit = 1e6;

// exact-mode M_g(x): rational sum over squarefree n <= x (oracle side)
mpq_class mg_exact(double x);

struct MgResult {
    double value = 0;
    double error_bound = 0;
};

// fast-mode M_g(x): descent over squarefree prime products with compensated
// summation; pt must cover floor(x)
MgResult mg_fast(double x, const PrimeTable& pt);
MgResult mg_fast(double x);

// M_g(e^u) on the uniform log-grid u0, u0+step, ..., >= u1, in one descent
std::vector<double> mg_fast_log_grid(double u0, double u1, double step,
                                     std::span<const std::uint32_t> primes,
                                     double* error_bound = nullptr);

// (sum_{n<=x} Lambda_g(n), E(x))
std::pair<double, double> lambda_sum_and_E(double x);

// E(x) at each ascending grid point, one pass over prime powers
std::vector<double> e_grid(std::span<const double> xs);

// Delta(x) = sum_{d<=x} g(d) E(x/d)
double delta_sum(double x);

// exact log-coefficient identity sum_{n<=x} g(n) log n = sum_{d<=x} g(d)
// sum_{m<=x/d} Lambda_g(m); both sides collected as rational coefficients
// of log p
bool check_identity(double x);

// per-n identities used by the proof, checked in exact arithmetic
bool mobius_inversion_holds(std::uint64_t n);
bool lambda_convolution_holds(std::uint64_t n);

struct Lemma25Report {
    double x = 0;
    double mg = 0;
    double bound = 0; // A3 log^2 x
    bool holds = false;
};
Lemma25Report check_lemma25(double x);

struct DensitySums {
    double x = 0;
    double mg = 0;
    double lambda_sum = 0;
    double e_of_x = 0;
    double delta = 0;
    double error_bound = 0;
};
DensitySums density_sums(double x);

} // namespace siftbound
