#pragma once

#include <cmath>
#include <compare>
#include <complex>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "noonqec/util.hpp"

namespace noonqec {

// Occupation-number vector |n1 n2 ... nm>. Keys of all state maps; ordering
// is lexicographic so iteration over a state is reproducible.
class FockState {
  public:
    explicit FockState(std::vector<int> occupations) : n_(std::move(occupations)) {
        if (n_.empty()) throw std::invalid_argument("FockState: needs at least one mode");
        for (int v : n_)
            if (v < 0) throw std::invalid_argument("FockState: negative occupation");
    }
    FockState(std::initializer_list<int> occ) : FockState(std::vector<int>(occ)) {}

    int modes() const { return static_cast<int>(n_.size()); }
    int operator[](int mode) const { return n_[mode]; }
    const std::vector<int>& occupations() const { return n_; }

    int photons() const {
        int total = 0;
        for (int v : n_) total += v;
        return total;
    }

    FockState with(int mode, int value) const {
        std::vector<int> copy = n_;
        copy[mode] = value;
        return FockState(std::move(copy));
    }

    friend auto operator<=>(const FockState& a, const FockState& b) = default;

  private:
    std::vector<int> n_;
};

// Sparse multimode pure state: complex amplitude per occupation vector.
// Amplitudes below prune_epsilon in magnitude are dropped. Treat as an
// immutable value once built; all module operations return fresh states.
class SparseState {
  public:
    static constexpr double prune_epsilon = 1e-14;

    explicit SparseState(int mode_count) : mode_count_(mode_count) {
        if (mode_count < 1) throw std::invalid_argument("SparseState: mode_count < 1");
    }

    int mode_count() const { return mode_count_; }
    const std::map<FockState, cdouble>& amplitudes() const { return amps_; }
    size_t term_count() const { return amps_.size(); }
    bool is_zero() const { return amps_.empty(); }

    cdouble amplitude(const FockState& s) const {
        auto it = amps_.find(s);
        return it == amps_.end() ? cdouble{} : it->second;
    }

    // Accumulates a term, pruning as it goes.
    void add(const FockState& s, cdouble amp) {
        if (s.modes() != mode_count_)
            throw std::invalid_argument("SparseState::add: mode count mismatch");
        auto [it, inserted] = amps_.try_emplace(s, amp);
        if (!inserted) it->second += amp;
        if (std::abs(it->second) < prune_epsilon) amps_.erase(it);
    }

    double norm_squared() const {
        double n = 0.0;
        for (const auto& [s, a] : amps_) n += std::norm(a);
        return n;
    }
    double norm() const { return std::sqrt(norm_squared()); }

    // Total photon number if every term shares it, nullopt otherwise (or for
    // the zero state).
    std::optional<int> total_photons() const {
        std::optional<int> total;
        for (const auto& [s, a] : amps_) {
            int p = s.photons();
            if (!total)
                total = p;
            else if (*total != p)
                return std::nullopt;
        }
        return total;
    }

    int max_occupation() const {
        int m = 0;
        for (const auto& [s, a] : amps_)
            for (int v : s.occupations()) m = std::max(m, v);
        return m;
    }

  private:
    int mode_count_;
    std::map<FockState, cdouble> amps_;
};

inline SparseState basis_state(const std::vector<int>& occupations) {
    SparseState s(static_cast<int>(occupations.size()));
    s.add(FockState(occupations), 1.0);
    return s;
}

inline SparseState basis_state(std::initializer_list<int> occupations) {
    return basis_state(std::vector<int>(occupations));
}

// Amplitude-wise linear combination. Not normalized.
inline SparseState combine(const std::vector<std::pair<cdouble, SparseState>>& terms) {
    if (terms.empty()) throw std::invalid_argument("combine: no terms");
    SparseState out(terms.front().second.mode_count());
    for (const auto& [coeff, state] : terms) {
        if (state.mode_count() != out.mode_count())
            throw std::invalid_argument("combine: mode count mismatch");
        for (const auto& [s, a] : state.amplitudes()) out.add(s, coeff * a);
    }
    return out;
}

inline SparseState scaled(const SparseState& state, cdouble factor) {
    return combine({{factor, state}});
}

// <a|b>, conjugate-linear in the first argument. Both maps are sorted, so a
// single merge pass suffices.
inline cdouble inner_product(const SparseState& a, const SparseState& b) {
    if (a.mode_count() != b.mode_count())
        throw std::invalid_argument("inner_product: mode count mismatch");
    cdouble acc = 0.0;
    auto ia = a.amplitudes().begin(), ea = a.amplitudes().end();
    auto ib = b.amplitudes().begin(), eb = b.amplitudes().end();
    while (ia != ea && ib != eb) {
        if (ia->first < ib->first)
            ++ia;
        else if (ib->first < ia->first)
            ++ib;
        else {
            acc += std::conj(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return acc;
}

inline SparseState tensor_product(const SparseState& a, const SparseState& b) {
    SparseState out(a.mode_count() + b.mode_count());
    for (const auto& [sa, va] : a.amplitudes())
        for (const auto& [sb, vb] : b.amplitudes()) {
            std::vector<int> occ = sa.occupations();
            occ.insert(occ.end(), sb.occupations().begin(), sb.occupations().end());
            out.add(FockState(std::move(occ)), va * vb);
        }
    return out;
}

inline SparseState normalize(const SparseState& a) {
    double n = a.norm();
    if (n <= 0.0) throw std::domain_error("normalize: zero state");
    return scaled(a, 1.0 / n);
}

// Reorders modes: output mode p carries what input mode perm[p] carried.
inline SparseState permute_modes(const SparseState& state, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != state.mode_count())
        throw std::invalid_argument("permute_modes: permutation size mismatch");
    SparseState out(state.mode_count());
    for (const auto& [s, a] : state.amplitudes()) {
        std::vector<int> occ(perm.size());
        for (size_t p = 0; p < perm.size(); ++p) occ[p] = s[perm[p]];
        out.add(FockState(std::move(occ)), a);
    }
    return out;
}

// Projects the given modes onto a fixed occupation outcome and drops them.
// The result is the (unnormalized) conditional branch on the other modes.
inline SparseState project_modes(const SparseState& state, const std::vector<int>& modes,
                                 const std::vector<int>& outcome) {
    if (modes.size() != outcome.size())
        throw std::invalid_argument("project_modes: outcome size mismatch");
    if (modes.size() >= static_cast<size_t>(state.mode_count()))
        throw std::invalid_argument("project_modes: cannot project every mode");
    std::vector<bool> keep(state.mode_count(), true);
    for (int m : modes) {
        if (m < 0 || m >= state.mode_count())
            throw std::invalid_argument("project_modes: mode out of range");
        keep[m] = false;
    }
    SparseState out(state.mode_count() - static_cast<int>(modes.size()));
    for (const auto& [s, a] : state.amplitudes()) {
        bool match = true;
        for (size_t i = 0; i < modes.size(); ++i)
            if (s[modes[i]] != outcome[i]) {
                match = false;
                break;
            }
        if (!match) continue;
        std::vector<int> occ;
        occ.reserve(out.mode_count());
        for (int m = 0; m < state.mode_count(); ++m)
            if (keep[m]) occ.push_back(s[m]);
        out.add(FockState(std::move(occ)), a);
    }
    return out;
}

// Text form: one line per term, `n1 n2 ... nm <re> <im>`, lexicographically
// sorted by occupations.
inline std::string to_text(const SparseState& state) {
    std::string out;
    for (const auto& [s, a] : state.amplitudes()) {
        for (int v : s.occupations()) {
            out += std::to_string(v);
            out += ' ';
        }
        out += format_double(a.real());
        out += ' ';
        out += format_double(a.imag());
        out += '\n';
    }
    return out;
}

inline SparseState state_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<SparseState> state;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> fields;
        double v;
        while (ls >> v) fields.push_back(v);
        if (fields.size() < 3) throw std::invalid_argument("state_from_text: bad line: " + line);
        int modes = static_cast<int>(fields.size()) - 2;
        if (!state) state.emplace(modes);
        std::vector<int> occ(modes);
        for (int i = 0; i < modes; ++i) {
            occ[i] = static_cast<int>(fields[i]);
            if (occ[i] != fields[i])
                throw std::invalid_argument("state_from_text: non-integer occupation");
        }
        state->add(FockState(std::move(occ)), {fields[modes], fields[modes + 1]});
    }
    if (!state) throw std::invalid_argument("state_from_text: empty input");
    return *state;
}

}  // namespace noonqec
