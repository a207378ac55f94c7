#include "siftbound/density.hpp"

#include "siftbound/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace siftbound {

int rho_density(std::uint64_t p) {
    if (p == 2 || p == 3) return 0;
    return p % 3 == 1 ? 3 : 1;
}

namespace {

// trial-division factorization for the exact-arithmetic helpers (small n)
std::vector<std::pair<std::uint64_t, unsigned>> small_factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.push_back({p, e});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

mpq_class g_prime(std::uint64_t p) {
    int r = rho_density(p);
    if (r == 0) return 0;
    return mpq_class(r, static_cast<unsigned long>(p - r));
}

} // namespace

mpq_class g_exact(std::uint64_t n) {
    if (n == 0) throw std::domain_error("g: n must be >= 1");
    mpq_class v = 1;
    for (auto [p, e] : small_factor(n)) {
        if (e > 1) return 0; // supported on squarefree n only
        mpq_class gp = g_prime(p);
        if (gp == 0) return 0;
        v *= gp;
    }
    return v;
}

mpq_class mu_g_exact(std::uint64_t n) {
    if (n == 0) throw std::domain_error("mu_g: n must be >= 1");
    mpq_class v = 1;
    for (auto [p, e] : small_factor(n)) {
        mpq_class mp = -g_prime(p);
        if (mp == 0) return 0;
        for (unsigned i = 0; i < e; ++i) v *= mp;
    }
    return v;
}

LambdaG lambda_g(std::uint64_t n) {
    if (n == 0) throw std::domain_error("lambda_g: n must be >= 1");
    LambdaG out;
    if (n == 1) return out;
    auto f = small_factor(n);
    if (f.size() != 1) return out;
    auto [p, e] = f[0];
    mpq_class gp = g_prime(p);
    if (gp == 0) return out; // rho(2) = rho(3) = 0 kills these prime powers
    mpq_class c = 1;
    for (unsigned i = 0; i < e; ++i) c *= -gp;
    out.coeff = -c;
    out.p = p;
    return out;
}

namespace {

// descent over squarefree products of primes >= 5 not exceeding x
template <typename Visit>
void squarefree_descent(double x, std::span<const std::uint32_t> primes, Visit&& visit) {
    // primes must be ascending and cover floor(x); products tracked exactly
    // as doubles (all values <= x < 2^53)
    struct Frame {
        std::size_t idx;
        double value;
        double gval;
        int depth;
    };
    std::size_t start = 0;
    while (start < primes.size() && primes[start] < 5) ++start;
    // recursive lambda via explicit stack to keep frames small
    std::vector<Frame> stack;
    stack.push_back({start, 1.0, 1.0, 0});
    visit(1.0, 1.0, 0);
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        for (std::size_t i = fr.idx; i < primes.size(); ++i) {
            double p = double(primes[i]);
            double v = fr.value * p;
            if (v > x) break;
            int r = primes[i] % 3 == 1 ? 3 : 1;
            double gv = fr.gval * (double(r) / (p - r));
            visit(v, gv, fr.depth + 1);
            if (v * double(primes[i + 1 < primes.size() ? i + 1 : i]) <= x && i + 1 < primes.size())
                stack.push_back({i + 1, v, gv, fr.depth + 1});
        }
    }
}

} // namespace

mpq_class mg_exact(double x) {
    if (x < 1) throw std::domain_error("mg_exact: x must be >= 1");
    if (x > kMgExactLimit + 0.5) throw std::overflow_error("mg_exact limited to x <= 1e6");
    std::uint64_t lim = std::uint64_t(x);
    PrimeTable pt(lim < 5 ? 5 : lim);
    mpq_class total = 1; // n = 1
    auto primes = pt.primes();
    std::size_t start = 0;
    while (start < primes.size() && primes[start] < 5) ++start;

    // recursive exact descent
    struct Rec {
        double x;
        std::span<const std::uint32_t> primes;
        mpq_class sum = 0;
        void go(std::size_t idx, double value, const mpq_class& gval) {
            for (std::size_t i = idx; i < primes.size(); ++i) {
                double p = double(primes[i]);
                double v = value * p;
                if (v > x) break;
                mpq_class gv = gval * g_prime(primes[i]);
                sum += gv;
                go(i + 1, v, gv);
            }
        }
    } rec{x, primes};
    rec.go(start, 1.0, 1);
    total += rec.sum;
    return total;
}

MgResult mg_fast(double x, const PrimeTable& pt) {
    if (x < 1) throw std::domain_error("mg_fast: x must be >= 1");
    if (double(pt.limit()) < std::floor(x))
        throw std::invalid_argument("mg_fast: prime table does not cover x");
    Kahan acc;
    squarefree_descent(x, pt.primes(), [&](double, double gv, int) { acc.add(gv); });
    MgResult r;
    r.value = acc.value();
    // relative error of each g-product is below (2*depth+2) eps; depth <= 9
    r.error_bound = 24.0 * 2.2204460492503131e-16 * acc.abs_sum + acc.error_bound();
    return r;
}

MgResult mg_fast(double x) {
    std::uint64_t lim = std::uint64_t(std::max(5.0, std::floor(x)));
    PrimeTable pt(lim);
    return mg_fast(x, pt);
}

std::vector<double> mg_fast_log_grid(double u0, double u1, double step,
                                     std::span<const std::uint32_t> primes,
                                     double* error_bound) {
    if (u1 < u0 || step <= 0) throw std::invalid_argument("mg_fast_log_grid: bad grid");
    std::size_t bins = std::size_t((u1 - u0) / step) + 1;
    double x = std::exp(u0 + double(bins - 1) * step);
    std::vector<double> bin_sum(bins + 1, 0.0);
    double abs_sum = 0.0;
    squarefree_descent(x, primes, [&](double v, double gv, int) {
        double lv = std::log(v);
        std::size_t b = lv <= u0 ? 0 : std::size_t((lv - u0) / step) + 1;
        if (b > bins) b = bins;
        bin_sum[b] += gv;
        abs_sum += gv;
    });
    std::vector<double> out(bins);
    Kahan acc;
    for (std::size_t b = 0; b < bins; ++b) {
        acc.add(bin_sum[b]);
        out[b] = acc.value();
    }
    if (error_bound)
        *error_bound = 26.0 * 2.2204460492503131e-16 * abs_sum;
    return out;
}

std::pair<double, double> lambda_sum_and_E(double x) {
    if (!(x > 1)) throw std::domain_error("lambda_sum_and_E: x must be > 1");
    Kahan acc;
    std::uint64_t lim = std::uint64_t(std::floor(x));
    enumerate_primes(5, lim, [&](std::uint64_t p) {
        double gp = double(rho_density(p)) / double(p - rho_density(p));
        double lp = std::log(double(p));
        double powed = 1.0; // (-g)^e accumulator
        double pe = double(p);
        while (pe <= x) {
            powed *= -gp;
            acc.add(-powed * lp);
            pe *= double(p);
        }
    });
    double s = acc.value();
    return {s, s - kKappa * std::log(x)};
}

std::vector<double> e_grid(std::span<const double> xs) {
    std::vector<double> out(xs.size(), 0.0);
    if (xs.empty()) return out;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i] > xs[i + 1]) throw std::invalid_argument("e_grid: xs not ascending");
    double xmax = xs.back();
    std::vector<std::pair<double, double>> events; // (p^e, Lambda_g term)
    std::uint64_t lim = std::uint64_t(std::floor(xmax));
    enumerate_primes(5, lim, [&](std::uint64_t p) {
        double gp = double(rho_density(p)) / double(p - rho_density(p));
        double lp = std::log(double(p));
        double powed = 1.0;
        double pe = double(p);
        while (pe <= xmax) {
            powed *= -gp;
            events.push_back({pe, -powed * lp});
            pe *= double(p);
        }
    });
    std::sort(events.begin(), events.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Kahan acc;
    std::size_t next = 0;
    for (const auto& [v, term] : events) {
        while (next < xs.size() && xs[next] < v) {
            out[next] = acc.value() - kKappa * std::log(xs[next]);
            ++next;
        }
        acc.add(term);
    }
    while (next < xs.size()) {
        out[next] = acc.value() - kKappa * std::log(xs[next]);
        ++next;
    }
    return out;
}

namespace {

// cumulative Lambda_g events <= x for repeated E(y) queries
struct LambdaPrefix {
    std::vector<double> value;
    std::vector<double> cum;

    explicit LambdaPrefix(double x) {
        std::vector<std::pair<double, double>> events;
        std::uint64_t lim = std::uint64_t(std::floor(x));
        if (lim >= 5)
            enumerate_primes(5, lim, [&](std::uint64_t p) {
                double gp = double(rho_density(p)) / double(p - rho_density(p));
                double lp = std::log(double(p));
                double powed = 1.0;
                double pe = double(p);
                while (pe <= x) {
                    powed *= -gp;
                    events.push_back({pe, -powed * lp});
                    pe *= double(p);
                }
            });
        std::sort(events.begin(), events.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Kahan acc;
        value.reserve(events.size());
        cum.reserve(events.size());
        for (auto& [v, t] : events) {
            acc.add(t);
            value.push_back(v);
            cum.push_back(acc.value());
        }
    }

    double lambda_sum(double y) const {
        auto it = std::upper_bound(value.begin(), value.end(), y);
        if (it == value.begin()) return 0.0;
        return cum[std::size_t(it - value.begin()) - 1];
    }
    // E(y) with the E(1) = 0 boundary convention
    double e_of(double y) const {
        if (y <= 1.0) return 0.0;
        return lambda_sum(y) - kKappa * std::log(y);
    }
};

} // namespace

double delta_sum(double x) {
    if (x < 1) throw std::domain_error("delta: x must be >= 1");
    if (x == 1.0) return 0.0;
    LambdaPrefix pre(x);
    std::uint64_t lim = std::uint64_t(std::max(5.0, std::floor(x)));
    PrimeTable pt(lim);
    Kahan acc;
    squarefree_descent(x, pt.primes(), [&](double d, double gv, int) {
        acc.add(gv * pre.e_of(x / d));
    });
    return acc.value();
}

bool check_identity(double x) {
    if (x < 1) throw std::domain_error("check_identity: x must be >= 1");
    if (x > 1e4 + 0.5) throw std::overflow_error("check_identity limited to x <= 1e4");
    std::uint64_t lim = std::uint64_t(std::max(5.0, std::floor(x)));
    PrimeTable pt(lim);
    auto primes = pt.primes();

    // LHS: sum_{n<=x} g(n) log n as coefficients of log p
    std::map<std::uint32_t, mpq_class> lhs;
    struct RecL {
        double x;
        std::span<const std::uint32_t> primes;
        std::map<std::uint32_t, mpq_class>& coef;
        std::vector<std::uint32_t> path;
        void go(std::size_t idx, double value, const mpq_class& gval) {
            for (std::size_t i = idx; i < primes.size(); ++i) {
                double p = double(primes[i]);
                if (value * p > x) break;
                mpq_class gv = gval * g_prime(primes[i]);
                path.push_back(primes[i]);
                for (std::uint32_t q : path) coef[q] += gv;
                go(i + 1, value * p, gv);
                path.pop_back();
            }
        }
    };
    std::size_t start = 0;
    while (start < primes.size() && primes[start] < 5) ++start;
    RecL recl{x, primes, lhs, {}};
    recl.go(start, 1.0, 1);

    // RHS: sum_{d<=x} g(d) sum_{p^e<=x/d} Lambda_g(p^e)
    std::map<std::uint32_t, mpq_class> rhs;
    auto add_lambda_terms = [&](double budget, const mpq_class& gd) {
        for (std::size_t i = start; i < primes.size(); ++i) {
            double p = double(primes[i]);
            if (p > budget) break;
            mpq_class gp = g_prime(primes[i]);
            mpq_class powed = 1;
            double pe = p;
            while (pe <= budget) {
                powed *= -gp;
                rhs[primes[i]] += gd * (-powed);
                pe *= p;
            }
        }
    };
    struct RecR {
        double x;
        std::span<const std::uint32_t> primes;
        std::function<void(double, const mpq_class&)> emit;
        void go(std::size_t idx, double value, const mpq_class& gval) {
            for (std::size_t i = idx; i < primes.size(); ++i) {
                double p = double(primes[i]);
                if (value * p > x) break;
                mpq_class gv = gval * g_prime(primes[i]);
                emit(value * p, gv);
                go(i + 1, value * p, gv);
            }
        }
    };
    add_lambda_terms(x, 1); // d = 1
    RecR recr{x, primes, [&](double d, const mpq_class& gd) { add_lambda_terms(x / d, gd); }};
    recr.go(start, 1.0, 1);

    for (auto& [p, c] : lhs)
        if (rhs[p] != c) return false;
    for (auto& [p, c] : rhs)
        if (c != 0 && lhs.find(p) == lhs.end()) return false;
    return true;
}

bool mobius_inversion_holds(std::uint64_t n) {
    auto f = small_factor(n);
    // iterate over divisors d | n, checking sum g(d) mu_g(n/d) = [n=1]
    std::vector<std::uint64_t> divisors{1};
    for (auto [p, e] : f) {
        std::size_t sz = divisors.size();
        std::uint64_t pe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < sz; ++j) divisors.push_back(divisors[j] * pe);
        }
    }
    mpq_class sum = 0;
    for (std::uint64_t d : divisors) sum += g_exact(d) * mu_g_exact(n / d);
    return n == 1 ? sum == 1 : sum == 0;
}

bool lambda_convolution_holds(std::uint64_t n) {
    // compare coefficients of log p on both sides of g(n) log n =
    // sum_{d|n} g(d) Lambda_g(n/d)
    auto f = small_factor(n);
    std::map<std::uint64_t, mpq_class> lhs, rhs;
    mpq_class gn = g_exact(n);
    if (gn != 0)
        for (auto [p, e] : f) lhs[p] += gn * int(e);
    std::vector<std::uint64_t> divisors{1};
    for (auto [p, e] : f) {
        std::size_t sz = divisors.size();
        std::uint64_t pe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < sz; ++j) divisors.push_back(divisors[j] * pe);
        }
    }
    for (std::uint64_t d : divisors) {
        LambdaG lg = lambda_g(n / d);
        if (lg.p == 0) continue;
        mpq_class gd = g_exact(d);
        if (gd == 0) continue;
        rhs[lg.p] += gd * lg.coeff;
    }
    for (auto& [p, c] : lhs) {
        auto it = rhs.find(p);
        mpq_class rv = it == rhs.end() ? mpq_class(0) : it->second;
        if (rv != c) return false;
    }
    for (auto& [p, c] : rhs)
        if (c != 0 && lhs.find(p) == lhs.end()) return false;
    return true;
}

Lemma25Report check_lemma25(double x) {
    if (x < 10) throw std::domain_error("check_lemma25: x must be >= 10");
    Lemma25Report r;
    r.x = x;
    r.mg = mg_fast(x).value;
    double lx = std::log(x);
    r.bound = kA3 * lx * lx;
    r.holds = r.mg < r.bound;
    return r;
}

DensitySums density_sums(double x) {
    DensitySums s;
    s.x = x;
    MgResult mg = mg_fast(x);
    s.mg = mg.value;
    s.error_bound = mg.error_bound;
    if (x > 1) {
        auto [ls, e] = lambda_sum_and_E(x);
        s.lambda_sum = ls;
        s.e_of_x = e;
    }
    s.delta = delta_sum(x);
    return s;
}

} // namespace siftbound
