#pragma once

#include <cmath>
#include <random>

#include "noonqec/fock.hpp"

namespace noonqec::testing {

// Largest per-amplitude deviation between two states.
inline double max_amp_diff(const SparseState& a, const SparseState& b) {
    double worst = 0.0;
    for (const auto& [s, v] : a.amplitudes()) worst = std::max(worst, std::abs(v - b.amplitude(s)));
    for (const auto& [s, v] : b.amplitudes()) worst = std::max(worst, std::abs(v - a.amplitude(s)));
    return worst;
}

// Deviation after rotating b by the global phase that best aligns it with a.
inline double max_amp_diff_up_to_phase(const SparseState& a, const SparseState& b) {
    cdouble align = inner_product(a, b);
    if (std::abs(align) < 1e-12) return 2.0;  // orthogonal, nothing to align
    cdouble phase = std::conj(align) / std::abs(align);
    return max_amp_diff(a, combine({{phase, b}}));
}

inline double overlap_magnitude(const SparseState& a, const SparseState& b) {
    return std::abs(inner_product(a, b)) / (a.norm() * b.norm());
}

// Deterministic pseudo-random sparse state for property checks.
inline SparseState random_state(int modes, int max_photons_per_mode, int terms, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> occ(0, max_photons_per_mode);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SparseState s(modes);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> n(modes);
        for (auto& v : n) v = occ(rng);
        s.add(FockState(std::move(n)), {gauss(rng), gauss(rng)});
    }
    if (s.is_zero()) s.add(FockState(std::vector<int>(modes, 0)), 1.0);
    return normalize(s);
}

}  // namespace noonqec::testing
