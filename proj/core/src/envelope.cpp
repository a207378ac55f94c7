#include "siftbound/envelope.hpp"

#include "siftbound/density.hpp"
#include "siftbound/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace siftbound {

double EnvelopeTable::k_at(double u) const {
    if (empty()) throw std::runtime_error("envelope table is empty");
    if (u < u_min - 1e-12 || u > t.back() + 1e-12)
        throw std::domain_error("envelope: u outside table range");
    auto it = std::lower_bound(t.begin(), t.end(), u - 1e-12);
    std::size_t i = std::size_t(it - t.begin());
    if (i >= t.size()) i = t.size() - 1;
    return k[i];
}

void EnvelopeTable::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write envelope table: " + path);
    out << "# piecewise lower envelope: M_g(e^u) >= K_i * u^2 for u <= t_i\n";
    out << "# valid from u_min = " << u_min << "\n";
    out << "t_i,K_i\n";
    char buf[64];
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f,%.17g\n", t[i], k[i]);
        out << buf;
    }
}

EnvelopeTable EnvelopeTable::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read envelope table: " + path);
    EnvelopeTable et;
    et.u_min = std::log(10.0);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') {
            auto pos = line.find("u_min = ");
            if (pos != std::string::npos) et.u_min = std::stod(line.substr(pos + 8));
            continue;
        }
        if (line.rfind("t_i", 0) == 0) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b))
            throw std::runtime_error("envelope csv parse error at line " + std::to_string(lineno));
        double tv = std::stod(a), kv = std::stod(b);
        if (!et.t.empty() && tv <= et.t.back())
            throw std::runtime_error("envelope csv: t_i not ascending at line " + std::to_string(lineno));
        if (kv <= 0) throw std::runtime_error("envelope csv: K_i must be positive");
        et.t.push_back(tv);
        et.k.push_back(kv);
    }
    return et;
}

EnvelopeTable regenerate_envelope(double u_max, double piece_width, double grid_step) {
    double u0 = std::log(10.0);
    if (u_max <= u0) throw std::domain_error("regenerate_envelope: u_max must exceed log 10");
    std::uint64_t limit = std::uint64_t(std::ceil(std::exp(u_max))) + 1;

    std::vector<std::uint32_t> primes;
    primes.reserve(std::size_t(double(limit) / std::max(1.0, std::log(double(limit)) - 1.2)));
    enumerate_primes(2, limit, [&](std::uint64_t p) { primes.push_back(std::uint32_t(p)); });

    double err = 0;
    std::vector<double> mg = mg_fast_log_grid(u0, u_max, grid_step, primes, &err);

    EnvelopeTable et;
    et.u_min = u0;
    std::size_t n = mg.size();
    // K over a piece: min over grid cells of M_g(left) / right^2, shaved by
    // the summation error bound
    std::size_t cells_per_piece = std::max<std::size_t>(1, std::size_t(piece_width / grid_step));
    for (std::size_t begin = 0; begin + 1 < n; begin += cells_per_piece) {
        std::size_t end = std::min(begin + cells_per_piece, n - 1);
        double kmin = std::numeric_limits<double>::infinity();
        for (std::size_t j = begin; j < end; ++j) {
            double u_right = u0 + double(j + 1) * grid_step;
            double val = (mg[j] - err) / (u_right * u_right);
            kmin = std::min(kmin, val);
        }
        et.t.push_back(u0 + double(end) * grid_step);
        et.k.push_back(kmin);
    }
    // monotone floor: K_i may only decrease with i (valid since each K_i
    // must hold on all of [u_min, t_i])
    for (std::size_t i = 1; i < et.k.size(); ++i)
        et.k[i] = std::min(et.k[i], et.k[i - 1]);
    return et;
}

double mg_lower_envelope(double u, const ConstantSet& cs, const EnvelopeTable* table) {
    if (u < std::log(10.0) - 1e-12) throw std::domain_error("mg_lower_envelope: u below log 10");
    if (u >= 24.4) return ladder_lower_poly(cs.final_ladder, u);
    if (u >= 21.0) return 441.0 * cs.B2;
    if (!table || table->empty())
        throw std::runtime_error("mg_lower_envelope: regenerated table required below u = 21");
    if (u > table->t.back()) {
        // monotone fallback: M_g(e^u) >= K(t_max) t_max^2 for u >= t_max
        double tm = table->t.back();
        return table->k_at(tm) * tm * tm;
    }
    return table->k_at(u) * u * u;
}

} // namespace siftbound
