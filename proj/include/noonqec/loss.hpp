#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>
#include <vector>

#include "noonqec/fock.hpp"
#include "noonqec/util.hpp"

namespace noonqec {

// Photons lost per mode; indexes one multimode Kraus branch of the
// amplitude-damping channel.
struct LossPattern {
    std::vector<int> losses;

    LossPattern() = default;
    explicit LossPattern(std::vector<int> l) : losses(std::move(l)) {
        for (int v : losses)
            if (v < 0) throw std::invalid_argument("LossPattern: negative loss count");
    }
    LossPattern(std::initializer_list<int> l) : LossPattern(std::vector<int>(l)) {}

    int modes() const { return static_cast<int>(losses.size()); }
    int weight() const {
        int w = 0;
        for (int v : losses) w += v;
        return w;
    }

    friend auto operator<=>(const LossPattern& a, const LossPattern& b) = default;
};

inline void check_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("damping parameter gamma must lie in [0, 1]");
}

// Single-mode damping operator A_k: |n> -> sqrt(C(n,k)) sqrt(gamma)^(n-k)
// sqrt(1-gamma)^k |n-k>, annihilating n < k. Output is generally
// sub-normalized.
inline SparseState single_mode_kraus(const SparseState& state, int mode, int k, double gamma) {
    if (mode < 0 || mode >= state.mode_count())
        throw std::invalid_argument("single_mode_kraus: mode out of range");
    if (k < 0) throw std::invalid_argument("single_mode_kraus: negative k");
    check_gamma(gamma);
    SparseState out(state.mode_count());
    const double root_g = std::sqrt(gamma), root_l = std::sqrt(1.0 - gamma);
    for (const auto& [s, a] : state.amplitudes()) {
        int n = s[mode];
        if (n < k) continue;
        double c = std::sqrt(binomial(n, k)) * std::pow(root_g, n - k) * std::pow(root_l, k);
        out.add(s.with(mode, n - k), a * c);
    }
    return out;
}

// Tensor product of single-mode Kraus operators, one per mode. The factors
// act on disjoint modes, so application order is irrelevant.
inline SparseState apply_loss_pattern(const SparseState& state, const LossPattern& pattern,
                                      double gamma) {
    if (pattern.modes() != state.mode_count())
        throw std::invalid_argument("apply_loss_pattern: pattern length mismatch");
    SparseState out = state;
    for (int m = 0; m < pattern.modes(); ++m)
        out = single_mode_kraus(out, m, pattern.losses[m], gamma);
    return out;
}

// All ways to distribute `weight` lost photons over `mode_count` modes,
// starting from (weight, 0, ..., 0) and ending at (0, ..., 0, weight).
// Count is C(weight + mode_count - 1, mode_count - 1).
inline std::vector<LossPattern> enumerate_loss_patterns(int mode_count, int weight) {
    if (mode_count < 1) throw std::invalid_argument("enumerate_loss_patterns: mode_count < 1");
    if (weight < 0) throw std::invalid_argument("enumerate_loss_patterns: negative weight");
    std::vector<LossPattern> out;
    std::vector<int> current(mode_count, 0);
    auto recurse = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == mode_count - 1) {
            current[mode] = remaining;
            out.emplace_back(current);
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            current[mode] = k;
            self(self, mode + 1, remaining - k);
        }
    };
    recurse(recurse, 0, weight);
    return out;
}

// Probability that exactly `weight` photons are lost from a normalized
// state: the summed squared norms of all Kraus branches of that weight.
inline double loss_weight_probability(const SparseState& state, int weight, double gamma) {
    double p = 0.0;
    for (const auto& pattern : enumerate_loss_patterns(state.mode_count(), weight))
        p += apply_loss_pattern(state, pattern, gamma).norm_squared();
    return p;
}

// Deviation from sum_k A_k^dag A_k = 1 on the span of |0>..|n_max>. Zero up
// to rounding: the binomial series terminates at k = n.
inline double povm_residual(int n_max, double gamma) {
    if (n_max < 0) throw std::invalid_argument("povm_residual: negative n_max");
    check_gamma(gamma);
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        double sum = 0.0;
        for (int k = 0; k <= n; ++k)
            sum += binomial(n, k) * std::pow(gamma, n - k) * std::pow(1.0 - gamma, k);
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

}  // namespace noonqec
