#include "siftbound/zeros.hpp"

#include "siftbound/common.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace siftbound {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kE = 2.718281828459045;

} // namespace

ZeroTable load_zeros(const std::string& path, ZeroKind kind) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("zero table not readable: " + path);
    ZeroTable t;
    t.kind = kind;
    t.source = path;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(b, e - b + 1);
        double v;
        try {
            std::size_t used = 0;
            v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": not a decimal ordinate: '" + tok + "'");
        }
        if (v <= 0)
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": ordinates must be positive");
        if (!t.ordinates.empty() && v <= t.ordinates.back())
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": ordinates must be strictly ascending");
        t.ordinates.push_back(v);
    }
    t.checksum = fnv1a64_file(path);
    return t;
}

double inverse_square_sum(const ZeroTable& table, double T) {
    if (T <= 0) return 0.0;
    if (table.ordinates.empty() || table.ordinates.back() < T)
        throw std::runtime_error("inverse_square_sum: table does not cover [0, T]");
    Kahan acc;
    for (double g : table.ordinates) {
        if (g > T) break;
        acc.add(1.0 / (g * g + 0.25));
    }
    return 2.0 * acc.value();
}

ZeroCountBound zero_count_bound(double T, ZeroKind kind) {
    if (T < kE) throw std::domain_error("zero_count_bound: T must be >= e");
    ZeroCountBound b;
    if (kind == ZeroKind::chi3) {
        b.main_term = (T / kPi) * std::log(3.0 * T / (2.0 * kPi * kE));
        b.err_raw = 0.247 * std::log(3.0 * T) + 9.359;
        b.err_simplified = 0.247 * std::log(T) + 9.7;
    } else {
        b.main_term = (T / (2.0 * kPi)) * std::log(T / (2.0 * kPi * kE));
        b.err_raw = 0.112 * std::log(T) + 0.278 * std::log(std::log(T)) + 3.385 + 1.0 / (5.0 * T);
        b.err_simplified = b.err_raw;
    }
    return b;
}

namespace {

// Q(t) as used in the displayed majorant: both-conjugate zero-count error
double q_of(double t, ZeroKind kind) {
    if (kind == ZeroKind::chi3) return 0.247 * std::log(t) + 9.7;
    return 2.0 * (0.112 * std::log(t) + 0.278 * std::log(std::log(t)) + 3.385 + 1.0 / (5.0 * t));
}

// integral_t^inf Q(s)/s^3 ds, majorized in closed form
double q_integral_from(double t, ZeroKind kind) {
    double t2 = t * t;
    if (kind == ZeroKind::chi3)
        return 0.247 * (1.0 + 2.0 * std::log(t)) / (4.0 * t2) + 9.7 / (2.0 * t2);
    // loglog s <= (loglog t / log t) log s for s >= t >= e^e; fall back to
    // loglog s <= log s below that
    double ll_coef = t >= 15.16 ? std::log(std::log(t)) / std::log(t) : 1.0;
    double c1 = 2.0 * (0.112 + 0.278 * ll_coef);
    return c1 * (1.0 + 2.0 * std::log(t)) / (4.0 * t2) + 2.0 * 3.385 / (2.0 * t2) +
           (2.0 / 5.0) / (3.0 * t * t2);
}

} // namespace

double tail_bound(double T, double U, ZeroKind kind) {
    if (T < kE) throw std::domain_error("tail_bound: T must be >= e");
    if (U < T) throw std::domain_error("tail_bound: U must be >= T");
    double c = kind == ZeroKind::chi3 ? 3.0 : 1.0;
    double two_pi_e = 2.0 * kPi * kE;
    double s = 0.0;
    s += -std::log(c * T / two_pi_e) / (kPi * T);
    s += q_of(T, kind) / (T * T);
    s += (2.0 / kPi) * (1.0 + std::log(T)) / T;
    s += (2.0 / kPi) * std::log(c / two_pi_e) / T;
    s += q_integral_from(T, kind);
    if (std::isfinite(U)) {
        s += std::log(c * U / two_pi_e) / (kPi * U);
        s += q_of(U, kind) / (U * U);
        s -= (2.0 / kPi) * (1.0 + std::log(U)) / U;
        s -= (2.0 / kPi) * std::log(c / two_pi_e) / U;
        s -= q_integral_from(U, kind);
    }
    return s;
}

CombinedEnclosure chi3_explicit_enclosure(const ZeroTable& chi3_table) {
    if (chi3_table.kind != ZeroKind::chi3)
        throw std::invalid_argument("chi3_explicit_enclosure: wrong table kind");
    CombinedEnclosure e;
    e.constant_term = tail_bound(1e8 / 3.0, std::numeric_limits<double>::infinity(), ZeroKind::chi3);
    e.sqrt_coefficient =
        inverse_square_sum(chi3_table, 8583.0) + tail_bound(8583.0, 1e8 / 3.0, ZeroKind::chi3);
    return e;
}

} // namespace siftbound
