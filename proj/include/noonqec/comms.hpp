#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "noonqec/kl.hpp"

namespace noonqec {

// One-way repeater chain: total distance L over stations spaced L0 apart,
// sending an (N^2, d) encoded qudit through fibre with attenuation length
// L_att (22 km for telecom fibre).
struct CommParams {
    double L = 1000.0;
    double L0 = 1.0;
    double L_att = 22.0;
    int N = 2;
    int d = 2;

    void validate() const {
        if (!(L > 0.0)) throw std::invalid_argument("CommParams: L must be positive");
        if (!(L0 > 0.0 && L0 <= L)) throw std::invalid_argument("CommParams: need 0 < L0 <= L");
        if (!(L_att > 0.0)) throw std::invalid_argument("CommParams: L_att must be positive");
        if (N < 1) throw std::invalid_argument("CommParams: N must be >= 1");
        if (d < 2) throw std::invalid_argument("CommParams: d must be >= 2");
    }
};

inline double gamma_from_distance(double L0, double L_att) {
    if (L0 < 0.0 || !(L_att > 0.0))
        throw std::invalid_argument("gamma_from_distance: need L0 >= 0 and L_att > 0");
    return std::exp(-L0 / L_att);
}

// P_succ = [sum_{k<=N-1} C(N^2,k) gamma^(N^2-k) (1-gamma)^k]^(L/L0).
// Depends on N only, never on d. Evaluated in log space; exponents reach
// the thousands at small L0.
inline double success_probability(const CommParams& p) {
    p.validate();
    double gamma = gamma_from_distance(p.L0, p.L_att);
    double f = analytic_fidelity(p.N * p.N, p.N - 1, gamma);
    if (f <= 0.0) return 0.0;
    return std::exp((p.L / p.L0) * std::log(f));
}

// Spatial cost C(N,d) = N^2 / (P_succ log2(d) L0).
inline double cost(const CommParams& p) {
    p.validate();
    double ps = success_probability(p);
    if (ps <= 0.0) return std::numeric_limits<double>::infinity();
    return (p.N * p.N) / (ps * std::log2(static_cast<double>(p.d)) * p.L0);
}

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline std::string to_csv(const SweepTable& table) {
    std::string out;
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

// Worst-case fidelity of the (N^2, N-1) codes over a gamma grid.
inline SweepTable fidelity_sweep(std::span<const double> gammas, std::span<const int> Ns) {
    if (gammas.empty() || Ns.empty()) throw std::invalid_argument("fidelity_sweep: empty grid");
    SweepTable table{{"gamma", "N", "F"}, {}};
    for (double g : gammas)
        for (int n : Ns) {
            if (n < 1) throw std::invalid_argument("fidelity_sweep: N must be >= 1");
            table.rows.push_back({g, static_cast<double>(n), analytic_fidelity(n * n, n - 1, g)});
        }
    return table;
}

inline SweepTable psucc_sweep(std::span<const double> L0s, std::span<const int> Ns, double L,
                              double L_att = 22.0) {
    if (L0s.empty() || Ns.empty()) throw std::invalid_argument("psucc_sweep: empty grid");
    SweepTable table{{"L0_km", "N", "P_succ"}, {}};
    for (double l0 : L0s)
        for (int n : Ns) {
            CommParams p{L, l0, L_att, n, 2};
            table.rows.push_back({l0, static_cast<double>(n), success_probability(p)});
        }
    return table;
}

inline SweepTable cost_sweep(std::span<const double> L0s, std::span<const int> Ns,
                             std::span<const int> ds, double L, double L_att = 22.0) {
    if (L0s.empty() || Ns.empty() || ds.empty())
        throw std::invalid_argument("cost_sweep: empty grid");
    SweepTable table{{"L0_km", "N", "d", "cost"}, {}};
    for (double l0 : L0s)
        for (int n : Ns)
            for (int d : ds) {
                CommParams p{L, l0, L_att, n, d};
                table.rows.push_back(
                    {l0, static_cast<double>(n), static_cast<double>(d), cost(p)});
            }
    return table;
}

}  // namespace noonqec
