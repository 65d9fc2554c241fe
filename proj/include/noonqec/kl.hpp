#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "noonqec/codes.hpp"
#include "noonqec/loss.hpp"
#include "noonqec/util.hpp"

namespace noonqec {

enum class ViolationKind { orthogonality, deformation };

inline const char* to_string(ViolationKind k) {
    return k == ViolationKind::orthogonality ? "orthogonality" : "deformation";
}

struct KlViolation {
    LossPattern pattern_i;
    LossPattern pattern_j;
    ViolationKind kind;
    double magnitude;
};

// Outcome of checking P E_i^dag E_j P = Lambda_ij P over all loss patterns
// up to max_weight. A pair violates orthogonality when an off-diagonal
// codeword entry of its block is nonzero, and non-deformation when the
// diagonal entries differ across codewords. max_correctable_weight is the
// largest t such that no violation involves two patterns of weight <= t
// (-1 when even the no-loss branch deforms the code).
struct KlReport {
    std::string code_label;
    double gamma = 0.0;
    int max_weight = 0;
    double tolerance = 0.0;
    int max_correctable_weight = -1;
    bool degenerate = false;
    std::vector<KlViolation> violations;
    // Blocks for every equal-weight pair (i <= j in enumeration order) plus
    // any violating pair; entry (k,l) is <E_i c_k | E_j c_l>.
    std::map<std::pair<LossPattern, LossPattern>, Mat> lambda_blocks;
};

inline Mat kl_block(const Code& code, const LossPattern& pattern_i, const LossPattern& pattern_j,
                    double gamma) {
    if (pattern_i.modes() != code.mode_count() || pattern_j.modes() != code.mode_count())
        throw std::invalid_argument("kl_block: pattern length != code mode count");
    const int d = code.dim();
    std::vector<SparseState> left, right;
    for (int k = 0; k < d; ++k) {
        left.push_back(apply_loss_pattern(code.codeword(k), pattern_i, gamma));
        right.push_back(apply_loss_pattern(code.codeword(k), pattern_j, gamma));
    }
    Mat block(d, d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) block.at(k, l) = inner_product(left[k], right[l]);
    return block;
}

inline std::vector<LossPattern> patterns_up_to_weight(int mode_count, int max_weight) {
    std::vector<LossPattern> out;
    for (int w = 0; w <= max_weight; ++w) {
        auto batch = enumerate_loss_patterns(mode_count, w);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

namespace detail {

inline Mat block_from_branches(const std::vector<SparseState>& lhs,
                               const std::vector<SparseState>& rhs) {
    const int d = static_cast<int>(lhs.size());
    Mat block(d, d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) block.at(k, l) = inner_product(lhs[k], rhs[l]);
    return block;
}

struct PairCheck {
    size_t i, j;
    Mat block;
    std::optional<double> ortho_violation;
    std::optional<double> deform_violation;
};

}  // namespace detail

inline KlReport kl_verify(const Code& code, int max_weight, double gamma, double tol = 1e-9) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("kl_verify: gamma must lie strictly inside (0, 1)");
    if (!(tol > 0.0)) throw std::invalid_argument("kl_verify: tol must be positive");
    if (max_weight < 0) throw std::invalid_argument("kl_verify: negative max_weight");

    const int d = code.dim();
    const auto patterns = patterns_up_to_weight(code.mode_count(), max_weight);
    const size_t n = patterns.size();

    // All corrupted codewords up front; each pair check is then a handful of
    // sparse inner products.
    std::vector<std::vector<SparseState>> corrupted(n);
    for (size_t i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k)
            corrupted[i].push_back(apply_loss_pattern(code.codeword(k), patterns[i], gamma));

    // Violation threshold, scaled by the mean no-loss branch norm so the
    // pass/fail decision does not drift with gamma and photon number.
    double noloss_trace = 0.0;
    for (int k = 0; k < d; ++k) noloss_trace += corrupted[0][k].norm_squared();
    const double threshold = tol * std::max(noloss_trace / d, 1e-300);

    std::vector<std::pair<size_t, size_t>> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) pairs.emplace_back(i, j);

    std::vector<std::vector<detail::PairCheck>> chunk_results(max_threads());
    parallel_chunks(pairs.size(), [&](unsigned chunk, size_t begin, size_t end) {
        auto& local = chunk_results[chunk];
        for (size_t p = begin; p < end; ++p) {
            auto [i, j] = pairs[p];
            Mat block = detail::block_from_branches(corrupted[i], corrupted[j]);
            double ortho = 0.0, deform = 0.0;
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    if (k != l)
                        ortho = std::max(ortho, std::abs(block.at(k, l)));
                    else
                        deform = std::max(deform, std::abs(block.at(k, k) - block.at(0, 0)));
                }
            detail::PairCheck check{i, j, Mat(), std::nullopt, std::nullopt};
            if (ortho > threshold) check.ortho_violation = ortho;
            if (deform > threshold) check.deform_violation = deform;
            bool keep_block = patterns[i].weight() == patterns[j].weight() ||
                              check.ortho_violation || check.deform_violation;
            if (keep_block) check.block = std::move(block);
            if (keep_block) local.push_back(std::move(check));
        }
    });

    KlReport report;
    report.code_label = code.label();
    report.gamma = gamma;
    report.max_weight = max_weight;
    report.tolerance = tol;

    for (const auto& chunk : chunk_results)
        for (const auto& check : chunk) {
            const auto& pi = patterns[check.i];
            const auto& pj = patterns[check.j];
            report.lambda_blocks.emplace(std::make_pair(pi, pj), check.block);
            if (check.ortho_violation)
                report.violations.push_back(
                    {pi, pj, ViolationKind::orthogonality, *check.ortho_violation});
            if (check.deform_violation)
                report.violations.push_back(
                    {pi, pj, ViolationKind::deformation, *check.deform_violation});
        }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const KlViolation& a, const KlViolation& b) {
                  if (a.pattern_i != b.pattern_i) return a.pattern_i < b.pattern_i;
                  if (a.pattern_j != b.pattern_j) return a.pattern_j < b.pattern_j;
                  return a.kind < b.kind;
              });

    report.max_correctable_weight = max_weight;
    for (const auto& v : report.violations) {
        int reach = std::max(v.pattern_i.weight(), v.pattern_j.weight());
        report.max_correctable_weight = std::min(report.max_correctable_weight, reach - 1);
    }

    // Degeneracy: two distinct correctable errors of equal weight acting
    // identically (up to phase) on every codeword.
    const int t = report.max_correctable_weight;
    for (const auto& [key, block] : report.lambda_blocks) {
        const auto& [pi, pj] = key;
        if (pi == pj || pi.weight() != pj.weight() || pi.weight() > t) continue;
        auto diag_i = report.lambda_blocks.find(std::make_pair(pi, pi));
        auto diag_j = report.lambda_blocks.find(std::make_pair(pj, pj));
        if (diag_i == report.lambda_blocks.end() || diag_j == report.lambda_blocks.end()) continue;
        bool identical = true;
        for (int k = 0; k < d && identical; ++k) {
            double ni = std::sqrt(std::abs(diag_i->second.at(k, k).real()));
            double nj = std::sqrt(std::abs(diag_j->second.at(k, k).real()));
            if (ni <= 0.0 || nj <= 0.0)
                identical = false;
            else
                identical = std::abs(block.at(k, k)) / (ni * nj) > 1.0 - 1e-10;
        }
        if (identical) {
            report.degenerate = true;
            break;
        }
    }
    return report;
}

// Iterates kl_verify with growing weight until the first violation. gamma
// only scales the blocks for these fixed-photon-number codes; 0.9 is the
// reference point.
inline int max_correctable_weight(const Code& code, double gamma = 0.9, double tol = 1e-9) {
    const int cap = code.max_photons();
    for (int w = 1; w <= cap; ++w) {
        KlReport report = kl_verify(code, w, gamma, tol);
        if (report.max_correctable_weight < w) return report.max_correctable_weight;
    }
    return cap;
}

// sum_{k<=t} C(M,k) gamma^(M-k) (1-gamma)^k: fidelity of an exact code with
// M photons correcting t losses.
inline double analytic_fidelity(int total_photons, int t, double gamma) {
    if (t < 0 || t > total_photons)
        throw std::invalid_argument("analytic_fidelity: t outside [0, total_photons]");
    check_gamma(gamma);
    double f = 0.0;
    for (int k = 0; k <= t; ++k)
        f += binomial(total_photons, k) * std::pow(gamma, total_photons - k) *
             std::pow(1.0 - gamma, k);
    return f;
}

// Haar-like logical coefficient samples: normalized complex Gaussians,
// deterministic for a given seed.
inline std::vector<LogicalCoefficients> random_logical_samples(int d, int count,
                                                               unsigned long seed = 20240917) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<LogicalCoefficients> samples;
    samples.reserve(count);
    for (int s = 0; s < count; ++s) {
        LogicalCoefficients c(d);
        double n2 = 0.0;
        for (auto& v : c) {
            v = {gauss(rng), gauss(rng)};
            n2 += std::norm(v);
        }
        for (auto& v : c) v /= std::sqrt(n2);
        samples.push_back(std::move(c));
    }
    return samples;
}

// Recovered fidelity over the correctable branch set: once the KL conditions
// hold at weight t, the loss patterns label orthogonal branches and the
// optimal recovery returns exactly their summed probability. t defaults to
// max_correctable_weight at the reference gamma; passing an unverified t
// raises.
inline std::pair<double, double> numeric_fidelity(const Code& code, double gamma,
                                                  const std::vector<LogicalCoefficients>& samples,
                                                  std::optional<int> t_requested = std::nullopt) {
    check_gamma(gamma);
    if (samples.empty()) throw std::invalid_argument("numeric_fidelity: no samples");
    const double gamma_ref = 0.9;
    int t = t_requested ? *t_requested : max_correctable_weight(code, gamma_ref);
    if (t < 0) throw std::domain_error("numeric_fidelity: code fails KL at weight 0");
    if (kl_verify(code, t, gamma_ref).max_correctable_weight < t)
        throw std::domain_error("numeric_fidelity: code fails KL at weight " + std::to_string(t));
    double fmin = std::numeric_limits<double>::infinity(), fmax = 0.0;
    for (const auto& c : samples) {
        SparseState psi = logical_state(code, c);
        double f = 0.0;
        for (int w = 0; w <= t; ++w) f += loss_weight_probability(psi, w, gamma);
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
    }
    return {fmin, fmax};
}

// Largest KL violation over the given pattern pairs at one gamma.
inline double max_violation(const Code& code, const LossPattern& pattern_i,
                            const LossPattern& pattern_j, double gamma) {
    Mat block = kl_block(code, pattern_i, pattern_j, gamma);
    double v = 0.0;
    for (int k = 0; k < code.dim(); ++k)
        for (int l = 0; l < code.dim(); ++l)
            v = std::max(v, k == l ? std::abs(block.at(k, k) - block.at(0, 0))
                                   : std::abs(block.at(k, l)));
    return v;
}

inline std::vector<std::pair<LossPattern, LossPattern>> pattern_pairs_up_to_weight(int mode_count,
                                                                                   int max_weight) {
    auto patterns = patterns_up_to_weight(mode_count, max_weight);
    std::vector<std::pair<LossPattern, LossPattern>> pairs;
    for (size_t i = 0; i < patterns.size(); ++i)
        for (size_t j = i; j < patterns.size(); ++j) pairs.emplace_back(patterns[i], patterns[j]);
    return pairs;
}

// Leading exponent p of the KL violation, v(gamma) ~ (1-gamma)^p, via
// log-log least squares over the grid. Exact codes report infinity.
inline double approximate_kl_order(const Code& code,
                                   const std::vector<std::pair<LossPattern, LossPattern>>& pairs,
                                   const std::vector<double>& gamma_grid) {
    if (pairs.empty() || gamma_grid.size() < 2)
        throw std::invalid_argument("approximate_kl_order: need pairs and >= 2 grid points");
    constexpr double floor = 1e-14;
    std::vector<double> xs, ys;
    for (double g : gamma_grid) {
        if (!(g > 0.0 && g < 1.0))
            throw std::invalid_argument("approximate_kl_order: grid gamma outside (0, 1)");
        double v = 0.0;
        for (const auto& [pi, pj] : pairs) v = std::max(v, max_violation(code, pi, pj, g));
        if (v > floor) {
            xs.push_back(std::log(1.0 - g));
            ys.push_back(std::log(v));
        }
    }
    if (xs.size() < 2) return std::numeric_limits<double>::infinity();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

// Fidelity of a code that corrects all one-photon losses but only part of
// the two-photon losses: branch-norm sum over weight <= 1 plus the weight-2
// patterns free of KL violations, minimized over the samples.
inline double partial_correction_fidelity(const Code& code, double gamma,
                                          const std::vector<LogicalCoefficients>& samples) {
    check_gamma(gamma);
    if (samples.empty()) throw std::invalid_argument("partial_correction_fidelity: no samples");
    KlReport report = kl_verify(code, 2, 0.9);
    std::vector<LossPattern> bad;
    for (const auto& v : report.violations) {
        if (std::max(v.pattern_i.weight(), v.pattern_j.weight()) <= 1)
            throw std::domain_error(
                "partial_correction_fidelity: code already fails at weight <= 1");
        if (v.pattern_i.weight() == 2) bad.push_back(v.pattern_i);
        if (v.pattern_j.weight() == 2) bad.push_back(v.pattern_j);
    }
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());

    std::vector<LossPattern> good = patterns_up_to_weight(code.mode_count(), 2);
    std::erase_if(good, [&](const LossPattern& p) {
        return std::binary_search(bad.begin(), bad.end(), p);
    });

    double fmin = std::numeric_limits<double>::infinity();
    for (const auto& c : samples) {
        SparseState psi = logical_state(code, c);
        double f = 0.0;
        for (const auto& p : good) f += apply_loss_pattern(psi, p, gamma).norm_squared();
        fmin = std::min(fmin, f);
    }
    return fmin;
}

}  // namespace noonqec
