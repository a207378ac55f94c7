#include "siftbound/chains.hpp"

#include "siftbound/primes.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <thread>

namespace siftbound {

namespace {

mpz_class sigma_p2(const mpz_class& q) { return q * q + q + 1; }

} // namespace

ChainStep chain_step(const mpz_class& p, const FactorBudget& budget, const HintFile* hints) {
    if (p <= 3) throw std::domain_error("chain_step: p must be a prime > 3");
    ChainStep st;
    st.q = p;
    st.n = sigma_p2(p);
    if (st.n > chain_cap()) throw std::overflow_error("chain_step: p^2+p+1 above 2^128");
    st.f = factorize(st.n, budget, hints);
    st.next = smallest_p3(st.f);
    return st;
}

ChainCertificate exclude_prime(std::uint64_t p, const ChainLimits& limits, const HintFile* hints) {
    ChainCertificate cert;
    cert.p = p;
    mpz_class cap = 1;
    cap <<= limits.max_bits;

    std::set<mpz_class> established; // divisors of N we may expand
    std::priority_queue<mpz_class, std::vector<mpz_class>, std::greater<mpz_class>> frontier;
    std::map<mpz_class, unsigned> sigma_exponent; // accumulated over expanded q
    established.insert(p);
    frontier.push(p);
    std::string blocked; // first branch the limits cut off, if any

    while (!frontier.empty()) {
        if (cert.steps.size() >= limits.max_steps) {
            cert.status = ChainStatus::unresolved;
            cert.unresolved_reason = "step limit reached";
            return cert;
        }
        mpz_class q = frontier.top();
        frontier.pop();
        mpz_class n = sigma_p2(q);
        if (n > cap) {
            // this branch is out of reach; other frontier divisors may still
            // settle the exclusion
            if (blocked.empty())
                blocked = "chain number above 2^" + std::to_string(limits.max_bits);
            continue;
        }
        ChainStep st;
        st.q = q;
        st.n = n;
        st.f = factorize(n, limits.budget, hints);
        st.next = smallest_p3(st.f);
        if (hints) {
            auto it = hints->hints.find(n);
            if (it != hints->hints.end())
                cert.external_hints_used.push_back(n.get_str());
        }
        cert.steps.push_back(st);
        for (const auto& fe : st.f.factors) {
            if (fe.proof == Primality::probable_prime) cert.probable_prime_used = true;
            if (fe.p == 3) continue;
            // every prime factor here is 3 or 1 mod 3; a factor below the
            // candidate smallest prime contradicts minimality immediately
            if (fe.p < p) {
                cert.status = ChainStatus::excluded_smaller;
                cert.terminal = fe.p;
                return cert;
            }
            unsigned& acc = sigma_exponent[fe.p];
            acc += fe.e;
            if (acc >= 3) {
                cert.status = ChainStatus::excluded_cube;
                cert.terminal = fe.p;
                cert.cube_exponent = acc;
                return cert;
            }
            if (established.insert(fe.p).second) frontier.push(fe.p);
        }
        if (!st.f.complete() && blocked.empty())
            blocked = "factorization budget exhausted at n = " + n.get_str();
    }
    cert.status = ChainStatus::unresolved;
    cert.unresolved_reason = blocked.empty() ? "frontier exhausted" : blocked;
    return cert;
}

SanityCheck smallest_prime_sanity(std::uint64_t p, const FactorBudget& budget) {
    if (p < 5) throw std::domain_error("smallest_prime_sanity: p must be >= 5");
    SanityCheck sc;
    mpz_class n = sigma_p2(mpz_class(static_cast<unsigned long>(p)));
    sc.cofactor = p % 3 == 1 ? n / 3 : n;
    Primality pr = is_prime(sc.cofactor);
    sc.passes = pr != Primality::composite;
    if (!sc.passes) sc.cofactor_factors = factorize(sc.cofactor, budget);
    return sc;
}

namespace {

struct Checkpoint {
    std::uint64_t lo = 0, hi = 0, next = 0;
    std::uint64_t excluded = 0, primes = 0;
    std::vector<std::uint64_t> unresolved;
};

void save_checkpoint(const std::string& path, const Checkpoint& c) {
    nlohmann::json j{{"lo", c.lo},       {"hi", c.hi},           {"next", c.next},
                     {"excluded", c.excluded}, {"primes", c.primes}, {"unresolved", c.unresolved}};
    std::ofstream out(path + ".tmp");
    out << j.dump() << "\n";
    out.close();
    std::rename((path + ".tmp").c_str(), path.c_str());
}

bool load_checkpoint(const std::string& path, Checkpoint& c) {
    std::ifstream in(path);
    if (!in) return false;
    nlohmann::json j;
    in >> j;
    c.lo = j.at("lo").get<std::uint64_t>();
    c.hi = j.at("hi").get<std::uint64_t>();
    c.next = j.at("next").get<std::uint64_t>();
    c.excluded = j.at("excluded").get<std::uint64_t>();
    c.primes = j.at("primes").get<std::uint64_t>();
    c.unresolved = j.at("unresolved").get<std::vector<std::uint64_t>>();
    return true;
}

} // namespace

RangeSummary verify_range(std::uint64_t lo, std::uint64_t hi, const ChainLimits& limits,
                          const RangeOptions& options) {
    if (lo < 5) throw std::domain_error("verify_range: lo must be >= 5");
    RangeSummary sum;
    sum.lo = lo;
    sum.hi = hi;

    HintFile hints;
    if (!options.hints_path.empty()) hints = HintFile::load(options.hints_path);
    const HintFile* hp = hints.empty() ? nullptr : &hints;

    Checkpoint ck;
    std::uint64_t start = lo;
    if (!options.checkpoint_path.empty() && load_checkpoint(options.checkpoint_path, ck)) {
        if (ck.lo != lo || ck.hi != hi)
            throw std::runtime_error("checkpoint range mismatch; refusing to resume");
        start = ck.next;
        sum.excluded = ck.excluded;
        sum.primes = ck.primes;
        sum.unresolved = ck.unresolved;
    } else {
        ck.lo = lo;
        ck.hi = hi;
    }

    std::vector<std::uint64_t> todo = primes_in_range(start, hi);
    unsigned threads = std::max(1u, options.threads);
    const std::size_t checkpoint_every = 10000;

    std::size_t done = 0;
    while (done < todo.size()) {
        std::size_t chunk = std::min(checkpoint_every, todo.size() - done);
        std::vector<ChainCertificate> results(chunk);
        if (threads <= 1) {
            for (std::size_t i = 0; i < chunk; ++i)
                results[i] = exclude_prime(todo[done + i], limits, hp);
        } else {
            std::atomic<std::size_t> cursor{0};
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&] {
                    for (;;) {
                        std::size_t i = cursor.fetch_add(1);
                        if (i >= chunk) return;
                        results[i] = exclude_prime(todo[done + i], limits, hp);
                    }
                });
            for (auto& th : pool) th.join();
        }
        for (std::size_t i = 0; i < chunk; ++i) {
            const ChainCertificate& c = results[i];
            ++sum.primes;
            if (c.status == ChainStatus::unresolved)
                sum.unresolved.push_back(c.p);
            else
                ++sum.excluded;
            if (options.sink) options.sink(c);
        }
        done += chunk;
        if (!options.checkpoint_path.empty()) {
            ck.next = done < todo.size() ? todo[done] : hi + 1;
            ck.excluded = sum.excluded;
            ck.primes = sum.primes;
            ck.unresolved = sum.unresolved;
            save_checkpoint(options.checkpoint_path, ck);
        }
    }
    return sum;
}

std::string certificate_to_json(const ChainCertificate& c) {
    nlohmann::json j;
    j["p"] = c.p;
    switch (c.status) {
        case ChainStatus::excluded_smaller: j["status"] = "excluded_smaller"; break;
        case ChainStatus::excluded_cube: j["status"] = "excluded_cube"; break;
        case ChainStatus::unresolved: j["status"] = "unresolved"; break;
    }
    j["terminal"] = c.terminal.get_str();
    j["cube_exponent"] = c.cube_exponent;
    j["hints_used"] = c.external_hints_used;
    j["probable_prime_used"] = c.probable_prime_used;
    if (!c.unresolved_reason.empty()) j["unresolved_reason"] = c.unresolved_reason;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& st : c.steps) {
        nlohmann::json s;
        s["q"] = st.q.get_str();
        s["n"] = st.n.get_str();
        nlohmann::json fs = nlohmann::json::array();
        for (const auto& fe : st.f.factors) {
            fs.push_back({fe.p.get_str(), fe.e,
                          fe.proof == Primality::probable_prime ? "probable" : "deterministic"});
        }
        s["factors"] = fs;
        if (!st.f.complete()) s["cofactor"] = st.f.cofactor.get_str();
        s["next"] = st.next.kind == SmallestP3::Kind::found ? st.next.p.get_str() : "";
        steps.push_back(s);
    }
    j["steps"] = steps;
    return j.dump();
}

ChainCertificate certificate_from_json(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    ChainCertificate c;
    c.p = j.at("p").get<std::uint64_t>();
    std::string st = j.at("status").get<std::string>();
    c.status = st == "excluded_smaller" ? ChainStatus::excluded_smaller
               : st == "excluded_cube"  ? ChainStatus::excluded_cube
                                        : ChainStatus::unresolved;
    c.terminal = mpz_class(j.at("terminal").get<std::string>());
    c.cube_exponent = j.at("cube_exponent").get<unsigned>();
    c.external_hints_used = j.at("hints_used").get<std::vector<std::string>>();
    c.probable_prime_used = j.at("probable_prime_used").get<bool>();
    for (const auto& s : j.at("steps")) {
        ChainStep step;
        step.q = mpz_class(s.at("q").get<std::string>());
        step.n = mpz_class(s.at("n").get<std::string>());
        step.f.n = step.n;
        for (const auto& fe : s.at("factors")) {
            FactorEntry e;
            e.p = mpz_class(fe.at(0).get<std::string>());
            e.e = fe.at(1).get<unsigned>();
            e.proof = fe.at(2).get<std::string>() == "probable" ? Primality::probable_prime
                                                                : Primality::prime;
            step.f.factors.push_back(e);
        }
        if (s.contains("cofactor")) {
            step.f.cofactor = mpz_class(s.at("cofactor").get<std::string>());
            step.f.status = FactorStatus::partial;
        }
        std::string nx = s.at("next").get<std::string>();
        if (!nx.empty()) {
            step.next.kind = SmallestP3::Kind::found;
            step.next.p = mpz_class(nx);
        }
        c.steps.push_back(step);
    }
    return c;
}

} // namespace siftbound
