#pragma once

#include "siftbound/interval.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace siftbound {

// rigorous enclosure of C_rho: partial Euler product over primes <= limit
// widened by the analytic tail bound
Interval euler_product_C(std::uint64_t limit);

// log(2 pi / 3) + gamma + L'(1,chi)/L(1,chi), with L'(1,chi) ingested as a
// published constant and L(1,chi) = pi/(3 sqrt 3)
Interval b1_constant();
inline constexpr const char* kLPrime1Chi = "0.2226629689"; // ingested literature value

// explicit eps(x) majorant from the Lambda_g estimate; returns the upper
// end of its interval evaluation
double epsilon_bound(double x);

// one coefficient ladder C log^2 x + a1 log x + a2 + a3/log x + ...
struct Ladder {
    std::vector<Interval> lower; // lower[0] is the log^2 coefficient
    std::vector<Interval> upper;
    double threshold = 0; // valid for x >= threshold
};

// seed bounds from the preliminary estimate: M_g < A3 log^2 x for x >= 10
Ladder seed_ladder();

// one recursive refinement; validity threshold advances to 49 x0 except for
// the seed ladder, whose output stays valid from x0
Ladder bootstrap_step(const Ladder& in);

struct NamedConstant {
    std::string name;
    Interval value;
    double printed; // value printed in the source table (NaN if none)
    bool matches_printed = false;
};

struct ConstantSet {
    Interval A1, A2, A3;
    Interval C;  // Lemma bracket for C_rho
    Interval B1;
    double B2 = 0.0790359; // configured pending the long e^21 computation
    double x1 = 57648010;
    double y0 = 13800380471;
    double y1 = 2e10;
    Ladder final_ladder;              // valid for x >= x1
    std::vector<NamedConstant> table; // the printed-digit comparisons
    std::vector<double> thresholds;   // 10, 490, 24010, 1176490, 57648010
};

// full bootstrap: all ladder constants with printed-digit comparisons
ConstantSet theorem21_constants();

// lower-bound polynomial of the final ladder at u = log x (interval lo ends)
double ladder_lower_poly(const Ladder& l, double u);
double ladder_upper_poly(const Ladder& l, double u);

} // namespace siftbound
