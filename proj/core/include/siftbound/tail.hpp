#pragma once

#include "siftbound/envelope.hpp"
#include "siftbound/factor.hpp"

#include <functional>
#include <string>

namespace siftbound {

struct TailReport {
    double L = 0;
    double x = 0;
    double w = 0; // sqrt(x) / L
    double integral1 = 0;
    double integral1_enclosure_hi = 0; // quadrature + tail majorant + tolerance
    double integral2 = 0;
    double integral3 = 0;
    double weighted = 0;   // (1/3 + 1/L^2 + 1/(3 e^12)) * (I1 + I2 + I3)
    double tail_total = 0; // weighted + 8/(L sqrt x)
    double small_sum = 0;
    double final_sum = 0;
    double threshold = 0; // log(8/3)
    enum class Verdict { contradiction, inconclusive, pending } verdict = Verdict::pending;
};

// adaptive Simpson quadrature with |S2 - S1|/15 <= tol acceptance
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

// the three integral pieces of the reciprocal-sum bound at parameters (L, x)
TailReport tail_integrals(double L, double x, const ConstantSet& cs, const EnvelopeTable& env);

// folds in the small-prime reciprocal sum and compares against log(8/3)
TailReport::Verdict abundancy_contradiction(TailReport& report, double small_sum);

struct RecipSumResult {
    double sum = 0;             // includes pessimistic unresolved contributions
    std::uint64_t candidates = 0; // primes in (e^16, hi]
    std::uint64_t survivors = 0;  // passing all three membership pre-filters
    std::vector<std::string> unresolved; // primes counted pessimistically
};

// sum of 1/p over primes in (e^16, hi] whose first two successor iterates
// stay above e^16
RecipSumResult reciprocal_sum_small(double hi, const FactorBudget& budget = {});

} // namespace siftbound
