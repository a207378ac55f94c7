#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace siftbound {

// Kahan compensated accumulator; carries a running bound on the rounding
// error (2u * sum of |terms|, u = 2^-53) so callers can report it.
struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    double abs_sum = 0.0;

    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
        abs_sum += x < 0 ? -x : x;
    }
    double value() const { return sum; }
    double error_bound() const { return 2.2204460492503131e-16 * 2.0 * abs_sum; }
};

// geometric grid of n points over (lo, hi], ordered ascending
inline std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g;
    g.reserve(n);
    if (n == 1) {
        g.push_back(hi);
        return g;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        double t = double(i) / double(n);
        double x = lo * std::pow(hi / lo, t);
        g.push_back(x > hi ? hi : x);
    }
    return g;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 14695981039346656037ull;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    return h;
}

} // namespace siftbound
