#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "noonqec/fock.hpp"
#include "test_util.hpp"

using namespace noonqec;
using noonqec::testing::max_amp_diff;
using noonqec::testing::random_state;

namespace {

const double kRoot2 = std::sqrt(2.0);

SparseState two_mode_noon(int sign) {
    return combine({{1.0 / kRoot2, basis_state({2, 0})}, {sign / kRoot2, basis_state({0, 2})}});
}

TEST(FockState, RejectsNegativeOccupation) {
    EXPECT_THROW(FockState({1, -1}), std::invalid_argument);
    EXPECT_THROW(basis_state({-2}), std::invalid_argument);
}

TEST(FockState, PhotonCountAndOrdering) {
    FockState a({2, 0}), b({0, 2});
    EXPECT_EQ(a.photons(), 2);
    EXPECT_LT(b, a);  // lexicographic on occupations
}

TEST(BasisState, SingleAmplitude) {
    SparseState s = basis_state({2, 0});
    EXPECT_EQ(s.term_count(), 1u);
    EXPECT_EQ(s.amplitude(FockState({2, 0})), cdouble(1.0));
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(BasisState, VacuumOfOneMode) {
    SparseState s = basis_state({0});
    EXPECT_EQ(s.mode_count(), 1);
    EXPECT_EQ(s.amplitude(FockState({0})), cdouble(1.0));
}

TEST(BasisState, FourPhotonCodeword) {
    SparseState s = basis_state({1, 1, 1, 1});
    EXPECT_EQ(s.total_photons(), 4);
}

TEST(Combine, BuildsNoonState) {
    SparseState noon = two_mode_noon(+1);
    EXPECT_NEAR(std::abs(noon.amplitude(FockState({2, 0})) - 1.0 / kRoot2), 0.0, 1e-15);
    EXPECT_NEAR(noon.norm(), 1.0, 1e-15);
}

TEST(Combine, CancellationYieldsZeroState) {
    SparseState psi = two_mode_noon(+1);
    SparseState zero = combine({{1.0, psi}, {-1.0, psi}});
    EXPECT_TRUE(zero.is_zero());
}

TEST(Combine, NinePhotonCodeword) {
    SparseState w = combine({{0.5, basis_state({9, 0})},
                             {std::sqrt(3.0) / 2.0, basis_state({3, 6})}});
    EXPECT_NEAR(w.norm(), 1.0, 1e-15);
    EXPECT_NEAR(w.amplitude(FockState({3, 6})).real(), std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(Combine, ModeMismatchRejected) {
    EXPECT_THROW(combine({{1.0, basis_state({1, 0})}, {1.0, basis_state({1, 0, 0})}}),
                 std::invalid_argument);
}

TEST(InnerProduct, DistinctBasisStatesOrthogonal) {
    EXPECT_EQ(inner_product(basis_state({2, 0}), basis_state({0, 2})), cdouble(0.0));
}

TEST(InnerProduct, NormalizedSelfOverlap) {
    SparseState psi = random_state(3, 3, 6, 11);
    EXPECT_NEAR(std::abs(inner_product(psi, psi) - 1.0), 0.0, 1e-12);
}

// Oracle: expand both (2,2)-code codewords in the Fock basis by hand and
// sum the products directly.
TEST(InnerProduct, NoonCodewordsOrthogonal) {
    SparseState zero_bar = combine({{0.5, basis_state({2, 0, 2, 0})},
                                    {0.5, basis_state({2, 0, 0, 2})},
                                    {0.5, basis_state({0, 2, 2, 0})},
                                    {0.5, basis_state({0, 2, 0, 2})}});
    SparseState one_bar = basis_state({1, 1, 1, 1});
    cdouble manual = 0.0;
    for (const auto& [s, a] : zero_bar.amplitudes())
        manual += std::conj(a) * one_bar.amplitude(s);
    EXPECT_EQ(manual, cdouble(0.0));
    EXPECT_EQ(inner_product(zero_bar, one_bar), manual);
}

TEST(InnerProduct, ConjugateLinearInFirstArgument) {
    SparseState a = random_state(2, 3, 4, 21), b = random_state(2, 3, 4, 22);
    cdouble coeff{0.3, -0.7};
    SparseState scaled_a = combine({{coeff, a}});
    EXPECT_NEAR(std::abs(inner_product(scaled_a, b) - std::conj(coeff) * inner_product(a, b)), 0.0,
                1e-12);
}

TEST(InnerProduct, BilinearityProperty) {
    for (unsigned seed = 0; seed < 8; ++seed) {
        SparseState a = random_state(3, 2, 5, 100 + seed);
        SparseState b = random_state(3, 2, 5, 200 + seed);
        SparseState c = random_state(3, 2, 5, 300 + seed);
        cdouble ca{0.6, 0.2}, cb{-0.1, 0.9};
        cdouble lhs = inner_product(combine({{ca, a}, {cb, b}}), c);
        cdouble rhs = std::conj(ca) * inner_product(a, c) + std::conj(cb) * inner_product(b, c);
        EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
    }
}

TEST(TensorProduct, NoonBlocksGiveFourTermCodeword) {
    SparseState block = two_mode_noon(+1);
    SparseState word = tensor_product(block, block);
    EXPECT_EQ(word.term_count(), 4u);
    EXPECT_NEAR(word.amplitude(FockState({2, 0, 0, 2})).real(), 0.5, 1e-15);
}

TEST(TensorProduct, VacuumPrependsModes) {
    SparseState psi = two_mode_noon(-1);
    SparseState out = tensor_product(basis_state({0}), psi);
    EXPECT_EQ(out.mode_count(), 3);
    EXPECT_NEAR(out.amplitude(FockState({0, 0, 2})).real(), -1.0 / kRoot2, 1e-15);
}

TEST(TensorProduct, NormMultiplicative) {
    for (unsigned seed = 0; seed < 8; ++seed) {
        SparseState a = combine({{cdouble{1.3, 0.2}, random_state(2, 3, 4, 400 + seed)}});
        SparseState b = combine({{cdouble{0.4, -2.0}, random_state(3, 2, 4, 500 + seed)}});
        EXPECT_NEAR(tensor_product(a, b).norm(), a.norm() * b.norm(), 1e-12);
    }
}

TEST(Normalize, ScalesToUnitNorm) {
    SparseState s = combine({{2.0, basis_state({2, 0})}});
    EXPECT_NEAR(normalize(s).amplitude(FockState({2, 0})).real(), 1.0, 1e-15);
    SparseState noon = combine({{1.0, basis_state({2, 0})}, {1.0, basis_state({0, 2})}});
    EXPECT_NEAR(max_amp_diff(normalize(noon), two_mode_noon(+1)), 0.0, 1e-15);
}

TEST(Normalize, ZeroStateRejected) {
    SparseState zero(2);
    EXPECT_THROW(normalize(zero), std::domain_error);
}

TEST(PermuteModes, ReordersOccupations) {
    SparseState s = basis_state({1, 2, 3});
    SparseState p = permute_modes(s, {2, 0, 1});
    EXPECT_EQ(p.amplitude(FockState({3, 1, 2})), cdouble(1.0));
}

TEST(ProjectModes, ExtractsConditionalBranch) {
    SparseState s = combine({{0.6, basis_state({1, 0, 2})}, {0.8, basis_state({0, 1, 2})}});
    SparseState branch = project_modes(s, {0}, {1});
    EXPECT_EQ(branch.mode_count(), 2);
    EXPECT_NEAR(branch.norm_squared(), 0.36, 1e-12);
    EXPECT_NEAR(branch.amplitude(FockState({0, 2})).real(), 0.6, 1e-15);
}

TEST(Serialization, TextSortedLexicographically) {
    SparseState s = combine({{0.5, basis_state({2, 0})},
                             {cdouble{0.0, -0.5}, basis_state({0, 2})},
                             {1.0 / kRoot2, basis_state({1, 1})}});
    std::string text = to_text(s);
    EXPECT_EQ(text, "0 2 0 -0.5\n1 1 0.70710678118654746 0\n2 0 0.5 0\n");
}

TEST(Serialization, RoundTripIsExact) {
    for (unsigned seed = 0; seed < 6; ++seed) {
        SparseState s = random_state(3, 4, 8, 600 + seed);
        SparseState back = state_from_text(to_text(s));
        EXPECT_EQ(max_amp_diff(s, back), 0.0);  // 17 digits round-trip doubles exactly
    }
}

TEST(Serialization, RejectsMalformedInput) {
    EXPECT_THROW(state_from_text(""), std::invalid_argument);
    EXPECT_THROW(state_from_text("1 2\n"), std::invalid_argument);
}

TEST(Pruning, TinyAmplitudesDropped) {
    SparseState s(1);
    s.add(FockState({1}), 1e-16);
    EXPECT_TRUE(s.is_zero());
    s.add(FockState({1}), 1.0);
    s.add(FockState({1}), -1.0);
    EXPECT_TRUE(s.is_zero());
}

}  // namespace
