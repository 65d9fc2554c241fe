#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "noonqec/codes.hpp"
#include "noonqec/loss.hpp"
#include "noonqec/optics.hpp"
#include "test_util.hpp"

using namespace noonqec;
using noonqec::testing::max_amp_diff;
using noonqec::testing::random_state;

namespace {

const double kHalf = 1.0 / std::sqrt(2.0);

SparseState noon2(int sign) {
    return combine({{kHalf, basis_state({2, 0})}, {sign * kHalf, basis_state({0, 2})}});
}

TEST(BeamSplitter, TwoPhotonExpansion) {
    SparseState out = beam_splitter(basis_state({2, 0}), 0, 1, kHalf);
    SparseState expected = combine({{0.5, basis_state({2, 0})},
                                    {0.5, basis_state({0, 2})},
                                    {kHalf, basis_state({1, 1})}});
    EXPECT_NEAR(max_amp_diff(out, expected), 0.0, 1e-14);
}

TEST(BeamSplitter, NoonStateInvariant) {
    SparseState out = beam_splitter(noon2(+1), 0, 1, kHalf);
    EXPECT_NEAR(max_amp_diff(out, noon2(+1)), 0.0, 1e-14);
}

TEST(BeamSplitter, ThreePhotonExpansion) {
    SparseState out = beam_splitter(basis_state({3, 0}), 0, 1, kHalf);
    double a = 1.0 / (2.0 * std::sqrt(2.0)), b = 0.5 * std::sqrt(1.5);
    SparseState expected = combine({{a, basis_state({0, 3})},
                                    {b, basis_state({1, 2})},
                                    {b, basis_state({2, 1})},
                                    {a, basis_state({3, 0})}});
    EXPECT_NEAR(max_amp_diff(out, expected), 0.0, 1e-14);
}

TEST(BeamSplitter, HongOuMandel) {
    SparseState out = beam_splitter(noon2(-1), 0, 1, kHalf);
    EXPECT_NEAR(max_amp_diff(out, basis_state({1, 1})), 0.0, 1e-14);
    SparseState back = beam_splitter(basis_state({1, 1}), 0, 1, kHalf);
    EXPECT_NEAR(max_amp_diff(back, noon2(-1)), 0.0, 1e-14);
}

TEST(BeamSplitter, FiftyFiftySelfInverse) {
    for (unsigned seed = 0; seed < 6; ++seed) {
        SparseState psi = random_state(3, 3, 6, 40 + seed);
        SparseState twice = beam_splitter(beam_splitter(psi, 0, 2, kHalf), 0, 2, kHalf);
        EXPECT_NEAR(max_amp_diff(twice, psi), 0.0, 1e-12);
    }
}

TEST(BeamSplitter, UnitaryAndPhotonPreserving) {
    for (double t : {0.0, 0.3, kHalf, 0.9, 1.0}) {
        SparseState psi = random_state(2, 4, 5, 77);
        SparseState out = beam_splitter(psi, 0, 1, t);
        EXPECT_NEAR(out.norm(), psi.norm(), 1e-12) << "t=" << t;
    }
    SparseState fixed = normalize(combine({{1.0, basis_state({3, 1})}}));
    SparseState out = beam_splitter(fixed, 0, 1, 0.6);
    for (const auto& [s, a] : out.amplitudes()) EXPECT_EQ(s.photons(), 4);
}

TEST(BeamSplitter, InvalidModePairRejected) {
    EXPECT_THROW(beam_splitter(basis_state({1, 0}), 0, 0, kHalf), std::invalid_argument);
    EXPECT_THROW(beam_splitter(basis_state({1, 0}), 0, 2, kHalf), std::invalid_argument);
}

TEST(NoonExpansion, MatchesBeamSplitterOracle) {
    for (int n = 1; n <= 4; ++n) {
        SparseState plus = noon_expansion(n, +1);
        SparseState from_bs = beam_splitter(basis_state({n, 0}), 0, 1, kHalf);
        EXPECT_NEAR(max_amp_diff(plus, from_bs), 0.0, 1e-13) << "N=" << n;
        SparseState minus = noon_expansion(n, -1);
        SparseState from_bs_m = beam_splitter(basis_state({0, n}), 0, 1, kHalf);
        EXPECT_NEAR(max_amp_diff(minus, from_bs_m), 0.0, 1e-13) << "N=" << n;
    }
}

TEST(NoonExpansion, SinglePhoton) {
    SparseState out = noon_expansion(1, +1);
    SparseState expected = combine({{kHalf, basis_state({1, 0})}, {kHalf, basis_state({0, 1})}});
    EXPECT_NEAR(max_amp_diff(out, expected), 0.0, 1e-15);
}

TEST(SplitterMatrix, TwoPortIsHadamard) {
    MultiportMatrix u = symmetric_splitter_matrix(2);
    EXPECT_NEAR(std::abs(u.entry(0, 0) - kHalf), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u.entry(1, 1) + kHalf), 0.0, 1e-12);
}

TEST(SplitterMatrix, TritterRowsAreCubeRoots) {
    MultiportMatrix u = symmetric_splitter_matrix(3);
    cdouble w = std::exp(cdouble{0.0, 2.0 * std::numbers::pi / 3.0});
    EXPECT_NEAR(std::abs(u.entry(1, 1) - w / std::sqrt(3.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u.entry(1, 2) - w * w / std::sqrt(3.0)), 0.0, 1e-12);
}

TEST(SplitterMatrix, UnitaryForAllSmallD) {
    for (int d = 2; d <= 6; ++d) {
        MultiportMatrix u = symmetric_splitter_matrix(d);
        Mat prod = u.matrix() * u.matrix().adjoint();
        EXPECT_LT(prod.max_abs_diff(Mat::identity(d)), 1e-12) << "d=" << d;
    }
}

TEST(Multiport, TritterOnTwoPhotonsUniformInput) {
    SparseState out = apply_multiport(basis_state({2, 0, 0}), {0, 1, 2},
                                      symmetric_splitter_matrix(3));
    double third = 1.0 / 3.0, pair = std::sqrt(2.0) / 3.0;
    SparseState expected = combine({{third, basis_state({2, 0, 0})},
                                    {third, basis_state({0, 2, 0})},
                                    {third, basis_state({0, 0, 2})},
                                    {pair, basis_state({1, 0, 1})},
                                    {pair, basis_state({0, 1, 1})},
                                    {pair, basis_state({1, 1, 0})}});
    EXPECT_NEAR(max_amp_diff(out, expected), 0.0, 1e-13);
}

// Pins the 0-based index origin: the second input of the tritter picks up
// exactly these phases.
TEST(Multiport, TritterPhasesMatchZeroBasedOrigin) {
    SparseState out = apply_multiport(basis_state({0, 2, 0}), {0, 1, 2},
                                      symmetric_splitter_matrix(3));
    auto phase = [](double angle) { return std::exp(cdouble{0.0, angle}); };
    const double pi = std::numbers::pi;
    double third = 1.0 / 3.0, pair = std::sqrt(2.0) / 3.0;
    SparseState expected(3);
    expected.add(FockState({2, 0, 0}), third);
    expected.add(FockState({0, 2, 0}), third * phase(4.0 * pi / 3.0));
    expected.add(FockState({0, 0, 2}), third * phase(-4.0 * pi / 3.0));
    expected.add(FockState({1, 0, 1}), pair * phase(-2.0 * pi / 3.0));
    expected.add(FockState({0, 1, 1}), pair);
    expected.add(FockState({1, 1, 0}), pair * phase(2.0 * pi / 3.0));
    EXPECT_NEAR(max_amp_diff(out, expected), 0.0, 1e-13);

    // The 1-based origin produces a different (per-mode-phase shifted) table.
    SparseState shifted = apply_multiport(basis_state({0, 2, 0}), {0, 1, 2},
                                          symmetric_splitter_matrix(3, 1));
    EXPECT_GT(max_amp_diff(shifted, expected), 0.1);
}

TEST(Multiport, VacuumFixedPoint) {
    for (int d = 2; d <= 4; ++d) {
        std::vector<int> occ(d, 0), modes(d);
        for (int i = 0; i < d; ++i) modes[i] = i;
        SparseState out = apply_multiport(basis_state(occ), modes, symmetric_splitter_matrix(d));
        EXPECT_NEAR(max_amp_diff(out, basis_state(occ)), 0.0, 1e-14);
    }
}

// apply_multiport on |N,0,...,0> must reproduce the multinomial expansion
// (1/sqrt(N!)) (1/sqrt(d))^N sum_k N!/sqrt(prod k_i!) |k1..kd>.
TEST(Multiport, MultinomialOracle) {
    for (int d = 2; d <= 4; ++d)
        for (int n = 1; n <= 4; ++n) {
            std::vector<int> occ(d, 0), modes(d);
            occ[0] = n;
            for (int i = 0; i < d; ++i) modes[i] = i;
            SparseState out =
                apply_multiport(basis_state(occ), modes, symmetric_splitter_matrix(d));
            SparseState expected(d);
            double pre = std::pow(1.0 / std::sqrt(static_cast<double>(d)), n) /
                         std::sqrt(factorial(n));
            for (const auto& k : enumerate_loss_patterns(d, n)) {
                double denom = 1.0;
                for (int v : k.losses) denom *= factorial(v);
                expected.add(FockState(k.losses), pre * factorial(n) / std::sqrt(denom));
            }
            EXPECT_NEAR(max_amp_diff(out, expected), 0.0, 1e-12) << "d=" << d << " N=" << n;
        }
}

TEST(Multiport, PreservesNormAndPhotons) {
    SparseState psi = random_state(4, 2, 6, 91);
    SparseState out = apply_multiport(psi, {1, 2, 3}, symmetric_splitter_matrix(3));
    EXPECT_NEAR(out.norm(), psi.norm(), 1e-12);
}

TEST(Multiport, DimensionMismatchRejected) {
    EXPECT_THROW(apply_multiport(basis_state({1, 0}), {0}, symmetric_splitter_matrix(2)),
                 std::invalid_argument);
    EXPECT_THROW(apply_multiport(basis_state({1, 0}), {0, 0}, symmetric_splitter_matrix(2)),
                 std::invalid_argument);
}

TEST(PhaseShift, IdentityAtZero) {
    SparseState psi = random_state(2, 3, 4, 55);
    EXPECT_NEAR(max_amp_diff(phase_shift(psi, 0, 0.0), psi), 0.0, 1e-15);
}

TEST(PhaseShift, HalfPiPhases) {
    const double pi_2 = std::numbers::pi / 2.0;
    SparseState one = phase_shift(basis_state({0, 1}), 1, pi_2);
    EXPECT_NEAR(std::abs(one.amplitude(FockState({0, 1})) - cdouble{0.0, 1.0}), 0.0, 1e-15);
    SparseState two = phase_shift(basis_state({0, 2}), 1, pi_2);
    EXPECT_NEAR(std::abs(two.amplitude(FockState({0, 2})) + 1.0), 0.0, 1e-15);
}

TEST(MultiportMatrix, RejectsNonUnitary) {
    Mat m(2, 2);
    m.at(0, 0) = 1.0;
    m.at(1, 1) = 2.0;
    EXPECT_THROW(MultiportMatrix{m}, std::invalid_argument);
}

}  // namespace
