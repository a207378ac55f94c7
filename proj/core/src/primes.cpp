#include "siftbound/primes.hpp"

#include "siftbound/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace siftbound {

namespace {

// simple sieve for the base primes up to n (n is at most sqrt of the range end)
std::vector<std::uint32_t> small_primes(std::uint64_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (!comp[i]) {
            out.push_back(std::uint32_t(i));
            for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
        }
    }
    return out;
}

constexpr std::uint64_t kMaxHi = std::uint64_t(1) << 62;

} // namespace

void enumerate_primes(std::uint64_t lo, std::uint64_t hi,
                      const std::function<void(std::uint64_t)>& visit,
                      std::uint64_t segment_size) {
    if (hi > kMaxHi) throw std::overflow_error("enumerate_primes: hi exceeds 64-bit working ceiling");
    if (lo > hi) return;
    if (segment_size < 64) segment_size = 64;
    if (lo <= 2 && hi >= 2) visit(2);

    std::uint64_t root = std::uint64_t(std::sqrt(double(hi))) + 2;
    while (root * root > hi + 1) --root;
    auto base = small_primes(root);

    // odd-only segmented sieve: bit i of a segment starting at `start`
    // represents the odd number start + 2i
    std::uint64_t start = std::max<std::uint64_t>(lo, 3);
    if (start % 2 == 0) ++start;
    std::vector<std::uint8_t> seg(segment_size);
    for (std::uint64_t low = start; low <= hi; low += 2 * segment_size) {
        std::uint64_t high = std::min(hi, low + 2 * segment_size - 2);
        std::size_t n = std::size_t((high - low) / 2 + 1);
        std::fill(seg.begin(), seg.begin() + n, 1);
        for (std::uint32_t p : base) {
            if (p == 2) continue;
            std::uint64_t pp = std::uint64_t(p) * p;
            if (pp > high) break;
            std::uint64_t first = pp >= low ? pp : ((low + p - 1) / p) * p;
            if (first % 2 == 0) first += p;
            for (std::uint64_t m = first; m <= high; m += 2 * std::uint64_t(p))
                seg[std::size_t((m - low) / 2)] = 0;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (seg[i]) {
                std::uint64_t v = low + 2 * i;
                if (v >= lo) visit(v);
            }
    }
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                           std::uint64_t segment_size) {
    std::vector<std::uint64_t> out;
    enumerate_primes(lo, hi, [&](std::uint64_t p) { out.push_back(p); }, segment_size);
    return out;
}

PrimeTable::PrimeTable(std::uint64_t limit, std::uint64_t segment_size) : limit_(limit) {
    if (limit > 0xFFFFFFFFull) throw std::overflow_error("PrimeTable limited to 32-bit primes");
    if (limit >= 2) {
        primes_.reserve(std::size_t(double(limit) / std::max(1.0, std::log(double(limit)) - 1.2)));
        enumerate_primes(2, limit, [&](std::uint64_t p) {
            primes_.push_back(std::uint32_t(p));
            mod3_.push_back(std::uint8_t(p % 3));
        }, segment_size);
    }
}

namespace {

inline int rho_of(std::uint64_t p) {
    if (p == 2 || p == 3) return 0;
    return p % 3 == 1 ? 3 : 1;
}

} // namespace

std::vector<ChebyshevSums> chebyshev_grid(std::span<const double> xs,
                                          std::uint64_t segment_size) {
    std::vector<ChebyshevSums> out(xs.size());
    if (xs.empty()) return out;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i] > xs[i + 1]) throw std::invalid_argument("chebyshev_grid: xs not ascending");
    double xmax = xs.back();
    if (xmax < 2) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i].x = xs[i];
        return out;
    }
    std::uint64_t hi = std::uint64_t(std::floor(xmax));

    Kahan theta, theta3, pi_rho;
    std::size_t next = 0;
    auto flush_until = [&](double pval) {
        // emit grid points strictly below the incoming prime
        while (next < xs.size() && xs[next] < pval) {
            ChebyshevSums& s = out[next];
            s.x = xs[next];
            s.theta = theta.value();
            s.theta3 = theta3.value();
            s.pi_rho = pi_rho.value();
            s.error_bound = theta.error_bound() + theta3.error_bound() + pi_rho.error_bound();
            ++next;
        }
    };
    enumerate_primes(2, hi, [&](std::uint64_t p) {
        flush_until(double(p));
        double lp = std::log(double(p));
        theta.add(lp);
        if (p % 3 == 1) theta3.add(lp);
        int r = rho_of(p);
        if (r) pi_rho.add(double(r) * lp / double(p));
    }, segment_size);
    flush_until(std::numeric_limits<double>::infinity());
    return out;
}

ChebyshevSums chebyshev(double x, std::uint64_t segment_size) {
    if (x < 2) throw std::domain_error("chebyshev: x must be >= 2");
    double xs[1] = {x};
    return chebyshev_grid(std::span<const double>(xs, 1), segment_size)[0];
}

Lemma23Report check_lemma23(const ChebyshevSums& s) {
    Lemma23Report r;
    r.x = s.x;
    r.value = s.pi_rho - 2.0 * std::log(s.x);
    r.lower_bound = -4.42202;
    constexpr double kY0 = 13800380471.0;
    constexpr double k78 = 5764801.0; // 7^8
    constexpr double k74 = 2401.0;    // 7^4
    if (s.x >= kY0) r.upper_bound = -4.41961;
    else if (s.x >= k78) r.upper_bound = -4.41935;
    else if (s.x >= k74) r.upper_bound = -4.33649;
    else r.upper_bound = 0.0;
    r.lower_ok = r.value > r.lower_bound;
    r.upper_ok = r.value < r.upper_bound;
    return r;
}

Lemma23Report check_lemma23(double x) {
    if (!(x > 1)) throw std::domain_error("check_lemma23: x must be > 1");
    if (x < 2) {
        ChebyshevSums s;
        s.x = x;
        return check_lemma23(s); // empty sums below the first prime
    }
    return check_lemma23(chebyshev(x));
}

} // namespace siftbound
