#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace siftbound {

inline constexpr std::uint64_t kDefaultSegment = std::uint64_t(1) << 20;

// Streams the primes in [lo, hi] in ascending order.  Memory use is bounded
// by the segment size, not by hi.
void enumerate_primes(std::uint64_t lo, std::uint64_t hi,
                      const std::function<void(std::uint64_t)>& visit,
                      std::uint64_t segment_size = kDefaultSegment);

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                           std::uint64_t segment_size = kDefaultSegment);

// In-memory ascending prime table with residue-class annotation mod 3.
// Immutable after construction; shareable across threads.
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t limit, std::uint64_t segment_size = kDefaultSegment);

    std::uint64_t limit() const { return limit_; }
    std::span<const std::uint32_t> primes() const { return primes_; }
    // class tag p mod 3, parallel to primes()
    std::span<const std::uint8_t> mod3() const { return mod3_; }
    std::size_t count() const { return primes_.size(); }

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> primes_;
    std::vector<std::uint8_t> mod3_;
};

struct ChebyshevSums {
    double x = 0;
    double theta = 0;   // sum of log p over p <= x
    double theta3 = 0;  // restricted to p = 1 mod 3
    double pi_rho = 0;  // sum of rho(p) log p / p
    double error_bound = 0;
};

ChebyshevSums chebyshev(double x, std::uint64_t segment_size = kDefaultSegment);

// One pass over ascending primes, emitting sums at each grid point.
// xs must be ascending; results are bitwise independent of segment size.
std::vector<ChebyshevSums> chebyshev_grid(std::span<const double> xs,
                                          std::uint64_t segment_size = kDefaultSegment);

struct Lemma23Report {
    double x = 0;
    double value = 0;        // Pi(x) - 2 log x
    double lower_bound = 0;  // applicable lower constant (-4.42202)
    double upper_bound = 0;  // applicable upper constant by range
    bool lower_ok = false;
    bool upper_ok = false;
};

// Brackets Pi(x) - 2 log x per the range-dependent constants.
Lemma23Report check_lemma23(double x);
Lemma23Report check_lemma23(const ChebyshevSums& s);

} // namespace siftbound
