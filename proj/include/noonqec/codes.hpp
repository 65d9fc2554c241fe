#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "noonqec/fock.hpp"
#include "noonqec/optics.hpp"

namespace noonqec {

struct BlockStructure {
    int blocks = 0;
    int modes_per_block = 0;
};

using LogicalCoefficients = std::vector<cdouble>;

// An ordered set of orthonormal codewords plus metadata. Codeword global
// phases are fixed by making the amplitude of the lexicographically
// smallest basis state real positive, so amplitude tables are stable.
class Code {
  public:
    static Code make(std::string label, std::vector<SparseState> codewords,
                     std::optional<BlockStructure> blocks = std::nullopt) {
        if (codewords.empty()) throw std::invalid_argument("Code: no codewords");
        Code code;
        code.label_ = std::move(label);
        code.mode_count_ = codewords.front().mode_count();
        for (auto& w : codewords) {
            if (w.mode_count() != code.mode_count_)
                throw std::invalid_argument("Code: codeword mode counts differ");
            double n2 = w.norm_squared();
            if (std::abs(n2 - 1.0) > 1e-9)
                throw std::invalid_argument("Code: codeword not normalized: " + code.label_);
            w = canonical_phase(normalize(w));
        }
        for (size_t i = 0; i < codewords.size(); ++i)
            for (size_t j = i + 1; j < codewords.size(); ++j)
                if (std::abs(inner_product(codewords[i], codewords[j])) > 1e-12)
                    throw std::invalid_argument("Code: codewords not orthogonal: " + code.label_);
        code.codewords_ = std::move(codewords);
        code.total_photons_ = code.codewords_.front().total_photons();
        for (const auto& w : code.codewords_)
            if (w.total_photons() != code.total_photons_) {
                code.total_photons_.reset();
                break;
            }
        if (blocks) {
            if (blocks->blocks * blocks->modes_per_block != code.mode_count_)
                throw std::invalid_argument("Code: block structure does not tile the modes");
            code.blocks_ = blocks;
        }
        return code;
    }

    const std::string& label() const { return label_; }
    int dim() const { return static_cast<int>(codewords_.size()); }
    int mode_count() const { return mode_count_; }
    const std::vector<SparseState>& codewords() const { return codewords_; }
    const SparseState& codeword(int k) const { return codewords_.at(k); }
    std::optional<int> total_photons() const { return total_photons_; }
    std::optional<BlockStructure> block_structure() const { return blocks_; }

    // Largest photon count any codeword term carries; bounds the loss weight
    // worth examining.
    int max_photons() const {
        int m = 0;
        for (const auto& w : codewords_)
            for (const auto& [s, a] : w.amplitudes()) m = std::max(m, s.photons());
        return m;
    }

    static SparseState canonical_phase(const SparseState& s) {
        if (s.is_zero()) throw std::domain_error("canonical_phase: zero state");
        cdouble lead = s.amplitudes().begin()->second;
        return scaled(s, std::conj(lead) / std::abs(lead));
    }

  private:
    Code() = default;
    std::string label_;
    int mode_count_ = 0;
    std::vector<SparseState> codewords_;
    std::optional<int> total_photons_;
    std::optional<BlockStructure> blocks_;
};

// S_d applied to the d-mode state with all N photons in mode `slot`.
inline SparseState splitter_input_state(int n_photons, int d, int slot) {
    if (n_photons < 1 || d < 2 || slot < 0 || slot >= d)
        throw std::invalid_argument("splitter_input_state: bad arguments");
    std::vector<int> occ(d, 0);
    occ[slot] = n_photons;
    std::vector<int> modes(d);
    for (int i = 0; i < d; ++i) modes[i] = i;
    return apply_multiport(basis_state(occ), modes, symmetric_splitter_matrix(d));
}

// One block of the NOON code: |k~> = (1/sqrt(d)) sum_j exp(2 pi i k j / d)
// S_d[|0..N..0>_j]. For d = 2 this is the (t0 +- t1)/sqrt(2) pair.
inline SparseState noon_block(int n_photons, int d, int k) {
    if (k < 0 || k >= d) throw std::invalid_argument("noon_block: k out of range");
    std::vector<std::pair<cdouble, SparseState>> terms;
    const double pre = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        double phase = 2.0 * std::numbers::pi * k * j / d;
        terms.emplace_back(pre * cdouble{std::cos(phase), std::sin(phase)},
                           splitter_input_state(n_photons, d, j));
    }
    return combine(terms);
}

inline SparseState tensor_power(const SparseState& s, int n) {
    SparseState out = s;
    for (int i = 1; i < n; ++i) out = tensor_product(out, s);
    return out;
}

// The (N, d) NOON code: d codewords |k~>^(x N), N blocks of d modes, N^2
// photons, correcting N-1 losses.
inline Code noon_code(int n_photons, int d) {
    if (n_photons < 1 || d < 2) throw std::invalid_argument("noon_code: need N >= 1, d >= 2");
    std::vector<SparseState> words;
    words.reserve(d);
    for (int k = 0; k < d; ++k) words.push_back(tensor_power(noon_block(n_photons, d, k), n_photons));
    std::string label = "noon-" + std::to_string(n_photons) + "-" + std::to_string(d);
    return Code::make(std::move(label), std::move(words), BlockStructure{n_photons, d});
}

// Block of the alternative construction: H_d mixes the d one-mode-occupied
// Fock states with roots-of-unity phases, no splitter.
inline SparseState noon_block_alternative(int n_photons, int d, int k) {
    if (k < 0 || k >= d) throw std::invalid_argument("noon_block_alternative: k out of range");
    SparseState out(d);
    const double pre = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        double phase = 2.0 * std::numbers::pi * k * j / d;
        std::vector<int> occ(d, 0);
        occ[j] = n_photons;
        out.add(FockState(std::move(occ)), pre * cdouble{std::cos(phase), std::sin(phase)});
    }
    return out;
}

// Alternative NOON code: blocks are multimode NOON states themselves; for
// d = 2 the blocks are (|N0> +- |0N>)/sqrt(2). Equivalent to noon_code up
// to one splitter per block.
inline Code noon_code_alternative(int n_photons, int d) {
    if (n_photons < 1 || d < 2)
        throw std::invalid_argument("noon_code_alternative: need N >= 1, d >= 2");
    std::vector<SparseState> words;
    words.reserve(d);
    for (int k = 0; k < d; ++k)
        words.push_back(tensor_power(noon_block_alternative(n_photons, d, k), n_photons));
    std::string label = "noon-alt-" + std::to_string(n_photons) + "-" + std::to_string(d);
    return Code::make(std::move(label), std::move(words), BlockStructure{n_photons, d});
}

inline std::vector<std::string> reference_code_labels() {
    return {"leung4",      "leung7", "bosonic9", "banaszek3",  "qpc22",      "approx_leung",
            "naive2",      "fake2",  "twoblock_n3", "multirail2", "multirail3", "multirail4"};
}

// The comparison codes, stored as literal amplitude tables.
inline Code reference_code(const std::string& label) {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r3 = 1.0 / std::sqrt(3.0);
    if (label == "leung4")
        return Code::make(label, {combine({{r2, basis_state({4, 0})}, {r2, basis_state({0, 4})}}),
                                  basis_state({2, 2})});
    if (label == "leung7")
        return Code::make(label, {combine({{r2, basis_state({7, 0})}, {r2, basis_state({1, 6})}}),
                                  combine({{r2, basis_state({5, 2})}, {r2, basis_state({3, 4})}})});
    if (label == "bosonic9")
        return Code::make(label,
                          {combine({{0.5, basis_state({9, 0})},
                                    {std::sqrt(3.0) / 2.0, basis_state({3, 6})}}),
                           combine({{0.5, basis_state({0, 9})},
                                    {std::sqrt(3.0) / 2.0, basis_state({6, 3})}})});
    if (label == "banaszek3")
        return Code::make(label, {combine({{r3, basis_state({3, 0, 0})},
                                           {r3, basis_state({0, 3, 0})},
                                           {r3, basis_state({0, 0, 3})}}),
                                  basis_state({1, 1, 1})});
    if (label == "qpc22")
        return Code::make(
            label, {combine({{r2, basis_state({1, 0, 1, 0, 1, 0, 1, 0})},
                             {r2, basis_state({0, 1, 0, 1, 0, 1, 0, 1})}}),
                    combine({{r2, basis_state({1, 0, 1, 0, 0, 1, 0, 1})},
                             {r2, basis_state({0, 1, 0, 1, 1, 0, 1, 0})}})});
    if (label == "approx_leung")
        return Code::make(label, {combine({{r2, basis_state({0, 0, 0, 0})},
                                           {r2, basis_state({1, 1, 1, 1})}}),
                                  combine({{r2, basis_state({0, 0, 1, 1})},
                                           {r2, basis_state({1, 1, 0, 0})}})});
    if (label == "naive2")
        return Code::make(label, {combine({{r2, basis_state({2, 0})}, {r2, basis_state({0, 2})}}),
                                  basis_state({1, 1})});
    if (label == "fake2")
        return Code::make(label, {combine({{0.5, basis_state({2, 0})},
                                           {0.5, basis_state({0, 2})},
                                           {r2, basis_state({1, 1})}}),
                                  combine({{0.5, basis_state({2, 0})},
                                           {0.5, basis_state({0, 2})},
                                           {-r2, basis_state({1, 1})}})});
    if (label == "twoblock_n3") {
        SparseState b0 = combine({{0.5, basis_state({3, 0})},
                                  {std::sqrt(3.0) / 2.0, basis_state({1, 2})}});
        SparseState b1 = combine({{0.5, basis_state({0, 3})},
                                  {std::sqrt(3.0) / 2.0, basis_state({2, 1})}});
        return Code::make(label, {tensor_product(b0, b0), tensor_product(b1, b1)},
                          BlockStructure{2, 2});
    }
    if (label.rfind("multirail", 0) == 0) {
        int d = 0;
        try {
            d = std::stoi(label.substr(9));
        } catch (const std::exception&) {
            throw std::out_of_range("reference_code: unknown label: " + label);
        }
        if (d < 2) throw std::out_of_range("reference_code: multirail needs d >= 2");
        std::vector<SparseState> words;
        for (int j = 0; j < d; ++j) {
            std::vector<int> occ(d, 0);
            occ[j] = 1;
            words.push_back(basis_state(occ));
        }
        return Code::make(label, std::move(words));
    }
    throw std::out_of_range("reference_code: unknown label: " + label);
}

// sum_i c_i |c_i>; coefficients must be unit-norm, so the result is too.
inline SparseState logical_state(const Code& code, const LogicalCoefficients& c) {
    if (static_cast<int>(c.size()) != code.dim())
        throw std::invalid_argument("logical_state: coefficient count != code dimension");
    double n2 = 0.0;
    for (const auto& v : c) n2 += std::norm(v);
    if (std::abs(n2 - 1.0) > 1e-12)
        throw std::invalid_argument("logical_state: coefficients not normalized");
    std::vector<std::pair<cdouble, SparseState>> terms;
    for (int k = 0; k < code.dim(); ++k) terms.emplace_back(c[k], code.codeword(k));
    return combine(terms);
}

enum class SplitterDirection { forward, inverse };

// Applies the symmetric splitter (or its inverse) to every block of every
// codeword. Maps the alternative construction onto the standard one.
inline Code blockwise_splitter(const Code& code, SplitterDirection direction) {
    auto blocks = code.block_structure();
    if (!blocks) throw std::invalid_argument("blockwise_splitter: code has no block structure");
    MultiportMatrix u = symmetric_splitter_matrix(blocks->modes_per_block);
    if (direction == SplitterDirection::inverse) u = u.inverse();
    std::vector<SparseState> words;
    for (const auto& w : code.codewords()) {
        SparseState cur = w;
        for (int b = 0; b < blocks->blocks; ++b) {
            std::vector<int> modes(blocks->modes_per_block);
            for (int m = 0; m < blocks->modes_per_block; ++m)
                modes[m] = b * blocks->modes_per_block + m;
            cur = apply_multiport(cur, modes, u);
        }
        words.push_back(std::move(cur));
    }
    std::string suffix = direction == SplitterDirection::forward ? "+split" : "+unsplit";
    return Code::make(code.label() + suffix, std::move(words), blocks);
}

}  // namespace noonqec
