#pragma once

#include "siftbound/bootstrap.hpp"

#include <string>
#include <vector>

namespace siftbound {

// piecewise lower envelope M_g(e^u) >= K_i u^2 for u <= t_i, regenerated
// from fast-mode M_g on a fine log-grid
struct EnvelopeTable {
    std::vector<double> t; // ascending piece right-endpoints
    std::vector<double> k; // K_i valid on (t_{i-1}, t_i]
    double u_min = 0;      // left end of the first piece (log 10)

    bool empty() const { return t.empty(); }
    double k_at(double u) const; // K of the piece containing u

    void save_csv(const std::string& path) const;
    static EnvelopeTable load_csv(const std::string& path);
};

// builds the table on [log 10, u_max]; K_i is the grid minimum of
// M_g(e^{u_j}) / u_{j+1}^2 over the piece, shaved by the summation error
EnvelopeTable regenerate_envelope(double u_max, double piece_width = 0.02,
                                  double grid_step = 0.01);

// the three-regime lower bound for M_g(e^u); the table is required below 21
double mg_lower_envelope(double u, const ConstantSet& cs, const EnvelopeTable* table);

} // namespace siftbound
