#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "noonqec/codes.hpp"
#include "noonqec/fock.hpp"
#include "noonqec/optics.hpp"

namespace noonqec {

// Outcome of the heralded logical-qubit preparation: the four-mode logical
// state after the ancilla '1001' detection, the probability of that
// detection, and the coefficients the pipeline targets.
struct PrepResult {
    SparseState output_state;
    double success_probability = 0.0;
    cdouble c0, c1;
};

// (|a>|b> + |b>|a>) / norm on doubled modes. The ancilla system realizing
// this exchange-symmetric state is treated as ideal.
inline SparseState symmetrize(const SparseState& a, const SparseState& b) {
    if (a.mode_count() != b.mode_count())
        throw std::invalid_argument("symmetrize: mode count mismatch");
    SparseState sum = combine({{1.0, tensor_product(a, b)}, {1.0, tensor_product(b, a)}});
    return normalize(sum);  // throws when b = -a
}

inline SparseState two_photon_noon(int sign) {
    const double r2 = 1.0 / std::sqrt(2.0);
    return combine({{r2, basis_state({2, 0})}, {sign * r2, basis_state({0, 2})}});
}

// Prepares c0(t) [(|20>+|02>)/sqrt2]^2 + c1(t) [(|20>-|02>)/sqrt2]^2 with
// c0 = (1-t)/sqrt(t^2+(1-t)^2), c1 = -t/sqrt(t^2+(1-t)^2):
//   1. symmetrize |0>NOON+|1> with |1>NOON-|0>,
//   2. reorder so the four logical modes come first,
//   3. transmittance-t beam splitters on both ancilla pairs,
//   4. project the ancillas onto <1001| and renormalize,
//   5. pi/2 phase shift on the last logical mode.
inline PrepResult prep_logical_qubit(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("prep_logical_qubit: t outside [0,1]");

    SparseState psi1 =
        tensor_product(tensor_product(basis_state({0}), two_photon_noon(+1)), basis_state({1}));
    SparseState psi2 =
        tensor_product(tensor_product(basis_state({1}), two_photon_noon(-1)), basis_state({0}));
    SparseState sym = symmetrize(psi1, psi2);

    // [a1 l1 l2 a2 a1' l1' l2' a2'] -> [l1 l2 l1' l2' a1 a2 a1' a2']
    SparseState ordered = permute_modes(sym, {1, 2, 5, 6, 0, 3, 4, 7});

    // The splitters are parameterized by intensity transmittance t, i.e.
    // amplitude sqrt(1-t) in the two-mode convention used here.
    const double t_amp = std::sqrt(1.0 - t);
    SparseState mixed = beam_splitter(ordered, 4, 5, t_amp);
    mixed = beam_splitter(mixed, 6, 7, t_amp);

    SparseState branch = project_modes(mixed, {4, 5, 6, 7}, {1, 0, 0, 1});
    double p_succ = branch.norm_squared();
    SparseState out = phase_shift(normalize(branch), 3, std::numbers::pi / 2.0);

    const double denom = std::sqrt(t * t + (1.0 - t) * (1.0 - t));
    return PrepResult{std::move(out), p_succ, (1.0 - t) / denom, -t / denom};
}

// Final symmetric beam splitter on each block: lands on the standard
// codewords, c0 |0bar> + c1 |1bar> of the (2,2) NOON code.
inline SparseState finish_to_standard_code(const PrepResult& result) {
    const double half = 1.0 / std::sqrt(2.0);
    SparseState s = beam_splitter(result.output_state, 0, 1, half);
    return beam_splitter(s, 2, 3, half);
}

}  // namespace noonqec
