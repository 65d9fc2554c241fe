#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "noonqec/fock.hpp"
#include "noonqec/util.hpp"

namespace noonqec {

// Unitary of a passive d-port device. Creation operators of the selected
// input modes transform as a_i^dag -> sum_j U_ij a_j^dag.
class MultiportMatrix {
  public:
    explicit MultiportMatrix(Mat u) : u_(std::move(u)) {
        if (u_.rows() != u_.cols() || u_.rows() < 1)
            throw std::invalid_argument("MultiportMatrix: matrix must be square");
        Mat prod = u_ * u_.adjoint();
        if (prod.max_abs_diff(Mat::identity(u_.rows())) > 1e-12)
            throw std::invalid_argument("MultiportMatrix: matrix is not unitary");
    }

    int dim() const { return u_.rows(); }
    cdouble entry(int k, int l) const { return u_.at(k, l); }
    const Mat& matrix() const { return u_; }

    MultiportMatrix inverse() const { return MultiportMatrix(u_.adjoint()); }

  private:
    Mat u_;
};

// Symmetric d-port splitter, U_kl = exp(i 2 pi k l / d) / sqrt(d). Index
// origin 0 reproduces the usual tritter phase tables; origin 1 is offered
// for cross-checking the other indexing convention (the two differ by
// per-mode phases only, which never affects correctability).
inline MultiportMatrix symmetric_splitter_matrix(int d, int index_origin = 0) {
    if (d < 2) throw std::invalid_argument("symmetric_splitter_matrix: d < 2");
    if (index_origin != 0 && index_origin != 1)
        throw std::invalid_argument("symmetric_splitter_matrix: origin must be 0 or 1");
    Mat u(d, d);
    const double step = 2.0 * std::numbers::pi / d;
    const double root = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            double phase = step * (k + index_origin) * (l + index_origin);
            u.at(k, l) = root * cdouble{std::cos(phase), std::sin(phase)};
        }
    return MultiportMatrix(std::move(u));
}

// Two-mode beam splitter with amplitude transmittance t (r = sqrt(1-t^2)):
// |m,n> on modes (i,j) maps to
//   sum_{p,k} sqrt((p+k)!(m+n-p-k)!/(m!n!)) C(m,p) C(n,k)
//             (-1)^k t^(n+p-k) r^(m-p+k) |m+n-p-k, p+k>.
// At t = 1/sqrt(2) this is the real symmetric 50:50 convention, which is
// self-inverse and swaps (|20>-|02>)/sqrt(2) with |11>.
inline SparseState beam_splitter(const SparseState& state, int mode_i, int mode_j, double t) {
    if (mode_i == mode_j || mode_i < 0 || mode_j < 0 || mode_i >= state.mode_count() ||
        mode_j >= state.mode_count())
        throw std::invalid_argument("beam_splitter: invalid mode pair");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("beam_splitter: amplitude transmittance outside [0, 1]");
    const double r = std::sqrt(1.0 - t * t);
    SparseState out(state.mode_count());
    for (const auto& [s, a] : state.amplitudes()) {
        const int m = s[mode_i], n = s[mode_j];
        const double scale = 1.0 / std::sqrt(factorial(m) * factorial(n));
        for (int p = 0; p <= m; ++p)
            for (int k = 0; k <= n; ++k) {
                double c = std::sqrt(factorial(p + k) * factorial(m + n - p - k)) * scale *
                           binomial(m, p) * binomial(n, k) * ((k % 2) ? -1.0 : 1.0) *
                           std::pow(t, n + p - k) * std::pow(r, m - p + k);
                out.add(s.with(mode_i, m + n - p - k).with(mode_j, p + k), a * c);
            }
    }
    return out;
}

// Closed form of the 50:50 splitter on |N0> (sign +1) or |0N> (sign -1):
// sqrt(1/2)^N sum_j (sign)^j sqrt(C(N,j)) |N-j, j>.
inline SparseState noon_expansion(int n_photons, int sign) {
    if (n_photons < 1) throw std::invalid_argument("noon_expansion: N < 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("noon_expansion: sign must be +-1");
    SparseState out(2);
    const double pre = std::pow(std::sqrt(0.5), n_photons);
    for (int j = 0; j <= n_photons; ++j) {
        double c = pre * std::sqrt(binomial(n_photons, j)) * ((sign < 0 && j % 2) ? -1.0 : 1.0);
        out.add(FockState({n_photons - j, j}), c);
    }
    return out;
}

// Applies a d-port unitary to the listed modes by expanding each basis term
// as a creation-operator monomial and transforming operator by operator.
inline SparseState apply_multiport(const SparseState& state, const std::vector<int>& modes,
                                   const MultiportMatrix& u) {
    const int d = u.dim();
    if (static_cast<int>(modes.size()) != d)
        throw std::invalid_argument("apply_multiport: mode list does not match splitter size");
    std::vector<bool> seen(state.mode_count(), false);
    for (int m : modes) {
        if (m < 0 || m >= state.mode_count())
            throw std::invalid_argument("apply_multiport: mode out of range");
        if (seen[m]) throw std::invalid_argument("apply_multiport: repeated mode");
        seen[m] = true;
    }
    SparseState out(state.mode_count());
    for (const auto& [s, a] : state.amplitudes()) {
        // Polynomial in output creation operators, keyed by output powers.
        std::map<std::vector<int>, cdouble> poly{{std::vector<int>(d, 0), 1.0}};
        double in_weight = 1.0;
        for (int i = 0; i < d; ++i) {
            const int n = s[modes[i]];
            in_weight *= factorial(n);
            for (int step = 0; step < n; ++step) {
                std::map<std::vector<int>, cdouble> next;
                for (const auto& [powers, c] : poly)
                    for (int j = 0; j < d; ++j) {
                        std::vector<int> np = powers;
                        ++np[j];
                        next[std::move(np)] += c * u.entry(i, j);
                    }
                poly = std::move(next);
            }
        }
        const double in_norm = std::sqrt(in_weight);
        for (const auto& [powers, c] : poly) {
            double out_weight = 1.0;
            for (int p : powers) out_weight *= factorial(p);
            std::vector<int> occ = s.occupations();
            for (int i = 0; i < d; ++i) occ[modes[i]] = powers[i];
            out.add(FockState(std::move(occ)), a * c * std::sqrt(out_weight) / in_norm);
        }
    }
    return out;
}

// exp(i phi n_mode) on one mode.
inline SparseState phase_shift(const SparseState& state, int mode, double phi) {
    if (mode < 0 || mode >= state.mode_count())
        throw std::invalid_argument("phase_shift: mode out of range");
    SparseState out(state.mode_count());
    for (const auto& [s, a] : state.amplitudes()) {
        double angle = phi * s[mode];
        out.add(s, a * cdouble{std::cos(angle), std::sin(angle)});
    }
    return out;
}

}  // namespace noonqec
