#pragma once

#include <cstdint>

namespace siftbound {

// largest integer r compatible with the closed-form bound
// r < (2 beta + (loglog beta + 1.24351)/log 3)(beta + 3) + 4, beta >= 8
std::int64_t r_bound_direct(std::int64_t beta);

// the variant with factor (2 beta + 1) instead of (beta + 3); the source
// states both shapes in different places, so both are exposed and labeled
std::int64_t r_bound_direct_alt(std::int64_t beta);

struct RBoundIter {
    int beta = 0;
    std::int64_t computed = 0; // largest r satisfying the fixed-point inequality
    std::int64_t paper = 0;    // the published table value
    bool agree = false;
};

// scans the self-referential bound for beta in [1, 7] and reports the
// computed fixed point next to the published table, never forcing equality
RBoundIter r_bound_iterative(int beta);

} // namespace siftbound
