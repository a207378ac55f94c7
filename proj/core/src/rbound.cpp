#include "siftbound/rbound.hpp"

#include <cmath>
#include <stdexcept>

namespace siftbound {

namespace {

const double kLog3 = std::log(3.0);

std::int64_t largest_below(double rhs) {
    // largest integer r with r < rhs
    double f = std::floor(rhs);
    return f == rhs ? std::int64_t(f) - 1 : std::int64_t(f);
}

} // namespace

std::int64_t r_bound_direct(std::int64_t beta) {
    if (beta < 8) throw std::domain_error("r_bound_direct: beta must be >= 8");
    double b = double(beta);
    double rhs = (2.0 * b + (std::log(std::log(b)) + 1.24351) / kLog3) * (b + 3.0) + 4.0;
    return largest_below(rhs);
}

std::int64_t r_bound_direct_alt(std::int64_t beta) {
    if (beta < 8) throw std::domain_error("r_bound_direct_alt: beta must be >= 8");
    double b = double(beta);
    double rhs = (2.0 * b + (std::log(std::log(b)) + 1.24351) / kLog3) * (2.0 * b + 1.0) + 4.0;
    return largest_below(rhs);
}

RBoundIter r_bound_iterative(int beta) {
    if (beta < 1 || beta > 7) throw std::domain_error("r_bound_iterative: beta must be in [1, 7]");
    static const std::int64_t paper_table[7] = {14, 30, 56, 90, 132, 182, 240};
    RBoundIter out;
    out.beta = beta;
    out.paper = paper_table[beta - 1];

    double b = double(beta);
    auto rhs = [&](std::int64_t r) {
        double ll = std::log(std::log(double(r)));
        double t = (2.0 * b + 1.0) * (2.0 * b + (ll + 0.24351) / kLog3);
        double u = (2.0 / 3.0 * (t + ll) + 2.3012) / std::log(2.0 * b);
        return 2.0 + t + std::max(2.0, u);
    };
    std::int64_t best = 0;
    for (std::int64_t r = 3; r < 1000000; ++r) {
        if (double(r) < rhs(r))
            best = r;
        else if (r > best + 1000)
            break; // the right side grows doubly logarithmically; no re-entry
    }
    out.computed = best;
    out.agree = out.computed == out.paper;
    return out;
}

} // namespace siftbound
