#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace siftbound {

enum class ZeroKind { zeta, chi3 };

struct ZeroTable {
    ZeroKind kind = ZeroKind::zeta;
    std::vector<double> ordinates; // strictly ascending positive imaginary parts
    std::string source;
    std::uint64_t checksum = 0; // fnv1a64 of the file bytes
};

// one positive decimal ordinate per line, '#' comments; throws on parse or
// monotonicity violations with the offending line number
ZeroTable load_zeros(const std::string& path, ZeroKind kind);

// 2 * sum_{0 < gamma <= T} 1/(gamma^2 + 1/4); both conjugates counted
double inverse_square_sum(const ZeroTable& table, double T);

struct ZeroCountBound {
    double main_term = 0; // (T/pi) log(3T/(2 pi e)) resp. (T/2pi) log(T/(2 pi e))
    double err_raw = 0;        // 0.247 log(3T) + 9.359 resp. the zeta expression
    double err_simplified = 0; // 0.247 log T + 9.7 (same as raw for zeta)
    double bound_raw() const { return main_term + err_raw; }
    double bound_simplified() const { return main_term + err_simplified; }
};

// explicit upper bounds for N(T, chi) and N(T); domain T >= e
ZeroCountBound zero_count_bound(double T, ZeroKind kind);

// partial-summation majorant for sum over T <= |gamma| <= U of 1/gamma^2;
// pass U = infinity for the closed tail
double tail_bound(double T, double U, ZeroKind kind);

struct CombinedEnclosure {
    double constant_term = 0;     // tail beyond the verified strip
    double sqrt_coefficient = 0;  // coefficient of x^(-1/2)
};

// assembles the chi3 zero-sum enclosure |sum x^(rho-1)/(rho(rho-1))| <
// constant_term + sqrt_coefficient / sqrt(x) from a table reaching 8583
CombinedEnclosure chi3_explicit_enclosure(const ZeroTable& chi3_table);

} // namespace siftbound
