// Copyright 2026 The coordcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "coordcert/error.hpp"
#include "coordcert/quantum.hpp"

namespace coord {
namespace {

using Mat = Eigen::MatrixXcd;

Mat pauli_matrix(char c) {
    Mat m(2, 2);
    const Complex i(0, 1);
    switch (c) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, -i, i, 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m = Mat::Identity(2, 2);
    }
    return m;
}

Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); r++) {
        for (Eigen::Index c = 0; c < a.cols(); c++) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

/// Dense operator for a word like "XZIY", qubit 1 leftmost.
Mat dense_word(const std::string &word) {
    Mat out = Mat::Identity(1, 1);
    for (char c : word) {
        out = kron(out, pauli_matrix(c));
    }
    return out;
}

PauliString string_word(const std::string &word) {
    int n = static_cast<int>(word.size());
    PauliString p = PauliString::identity();
    for (int q = 1; q <= n; q++) {
        p = p * PauliString::single(n, q, word[q - 1]);
    }
    return p;
}

Mat dense_sum(const PauliSum &s, int n) {
    Mat out = Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto &[c, p] : s.terms) {
        std::string word;
        for (int q = 1; q <= n; q++) {
            std::uint32_t bit = std::uint32_t{1} << (n - q);
            bool x = p.x & bit;
            bool z = p.z & bit;
            word += x && z ? 'Y' : x ? 'X' : z ? 'Z' : 'I';
        }
        // X^x Z^z with both set is -iY.
        int ys = 0;
        for (char ch : word) {
            ys += ch == 'Y';
        }
        Complex phase = std::pow(Complex(0, 1), p.phase) * std::pow(Complex(0, -1), ys);
        out += c * phase * dense_word(word);
    }
    return out;
}

Mat random_density(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::Index dim = Eigen::Index{1} << n;
    Mat a(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            a(r, c) = Complex(g(rng), g(rng));
        }
    }
    Mat rho = a * a.adjoint();
    return rho / rho.trace();
}

std::string random_word(int n, std::mt19937_64 &rng) {
    const char *letters = "IXYZ";
    std::string w;
    for (int q = 0; q < n; q++) {
        w += letters[rng() % 4];
    }
    return w;
}

TEST(DensityMatrix, ValidatesInvariants) {
    Mat bad = Mat::Identity(4, 4);
    EXPECT_THROW(DensityMatrix(2, bad), Error);
    Mat nonherm = Mat::Identity(4, 4) / 4.0;
    nonherm(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix(2, nonherm), Error);
    Mat negative = Mat::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix(1, negative), Error);
    EXPECT_NO_THROW(DensityMatrix(2, Mat::Identity(4, 4) / 4.0));
    EXPECT_THROW(DensityMatrix(2, Mat::Identity(2, 2) / 2.0), Error);
}

TEST(GhzState, BellPairAndPurity) {
    auto bell = ghz_state(2);
    Mat want = Mat::Zero(4, 4);
    want(0, 0) = want(0, 3) = want(3, 0) = want(3, 3) = 0.5;
    EXPECT_TRUE(bell.entries().isApprox(want));
    auto g4 = ghz_state(4);
    EXPECT_NEAR(g4.entries().trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(g4.purity(), 1.0, 1e-14);
    EXPECT_NEAR(fidelity_with_ghz(g4), 1.0, 1e-15);
    EXPECT_THROW(ghz_state(13), Error);
}

TEST(GhzState, ZBasisIsPerfectCoordination) {
    for (int n = 2; n <= 8; n++) {
        auto d = ghz_state(n).z_basis_distribution();
        auto pc = Distribution::perfect_coordination(n);
        for (std::size_t k = 0; k < d.probs().size(); k++) {
            EXPECT_NEAR(d.probs()[k], pc.probs()[k], 1e-15);
        }
    }
    auto d = ghz_state(4).z_basis_distribution();
    double first_zero = 0.0;
    for (std::uint64_t k = 0; k < 16; k++) {
        if (d.outcome_bit(k, 2) == 0) {
            first_zero += d.prob(k);
        }
    }
    EXPECT_NEAR(first_zero, 0.5, 1e-15);
}

TEST(NoisyGhz, EndpointsAndFidelity) {
    EXPECT_TRUE(noisy_ghz(3, 1.0).entries().isApprox(ghz_state(3).entries()));
    EXPECT_TRUE(noisy_ghz(3, 0.0).entries().isApprox(Mat::Identity(8, 8) / 8.0));
    EXPECT_NEAR(fidelity_with_ghz(noisy_ghz(4, 0.9439)), 0.9474, 5e-5);
    for (double v : {0.0, 0.3, 0.9}) {
        EXPECT_NEAR(fidelity_with_ghz(noisy_ghz(5, v)), noisy_ghz_fidelity(5, v), 1e-14);
    }
    EXPECT_THROW(noisy_ghz(4, -0.1), Error);
}

TEST(Pauli, ProductsMatchDenseAlgebra) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; trial++) {
        int n = 1 + static_cast<int>(rng() % 4);
        std::string a = random_word(n, rng);
        std::string b = random_word(n, rng);
        PauliString pa = string_word(a);
        PauliString pb = string_word(b);
        Mat dense = dense_sum(PauliSum::of(pa * pb), n);
        EXPECT_TRUE(dense.isApprox(dense_word(a) * dense_word(b), 1e-12)) << a << " * " << b;
        Mat ab = dense_word(a) * dense_word(b);
        Mat ba = dense_word(b) * dense_word(a);
        EXPECT_EQ(pa.commutes_with(pb), ab.isApprox(ba, 1e-12)) << a << " " << b;
    }
}

TEST(Pauli, SumsMatchDense) {
    std::mt19937_64 rng(12);
    int n = 3;
    PauliSum s = PauliSum::of(string_word("XZI"), 0.5) + PauliSum::of(string_word("YYZ"), Complex(0, 1));
    PauliSum t = PauliSum::of(string_word("ZIX"), 2.0) + PauliSum::of(string_word("XZI"), -1.0);
    EXPECT_TRUE(dense_sum(s * t, n).isApprox(dense_sum(s, n) * dense_sum(t, n), 1e-12));
    EXPECT_TRUE(dense_sum((s + t).simplified(), n).isApprox(dense_sum(s, n) + dense_sum(t, n), 1e-12));
    EXPECT_TRUE(dense_sum(s.scaled(3.0), n).isApprox(3.0 * dense_sum(s, n), 1e-12));
    PauliSum cancel = (PauliSum::of(string_word("XII")) + PauliSum::of(string_word("XII"), -1.0)).simplified();
    EXPECT_TRUE(cancel.terms.empty());
    EXPECT_THROW(PauliString::single(3, 4, 'X'), Error);
    EXPECT_THROW(PauliString::single(3, 1, 'Q'), Error);
}

TEST(Expectation, MatchesDenseTrace) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; trial++) {
        int n = 1 + static_cast<int>(rng() % 4);
        Mat rho = random_density(n, rng);
        DensityMatrix dm(n, rho);
        std::string w = random_word(n, rng);
        Complex want = (dense_word(w) * rho).trace();
        Complex got = expectation(dm, string_word(w));
        EXPECT_NEAR(std::abs(got - want), 0.0, 1e-12) << w;
    }
}

TEST(Expectation, ConditionalMatchesLudersRule) {
    std::mt19937_64 rng(14);
    int n = 4;
    Mat rho = random_density(n, rng);
    DensityMatrix dm(n, rho);
    PauliSum op = PauliSum::of(string_word("ZIIZ"));
    PauliSum pivot = PauliSum::of(string_word("IIXX"));
    Mat id = Mat::Identity(16, 16);
    for (int sign : {1, -1}) {
        Mat proj = 0.5 * (id + static_cast<double>(sign) * dense_sum(pivot, n));
        double p = (proj * rho).trace().real();
        double want = (proj * dense_sum(op, n) * proj * rho).trace().real() / p;
        double prob = 0.0;
        EXPECT_NEAR(conditional_expectation(dm, op, pivot, sign, &prob), want, 1e-12);
        EXPECT_NEAR(prob, p, 1e-12);
    }
    EXPECT_THROW(conditional_expectation(dm, op, pivot, 0), Error);
    auto pure = DensityMatrix(1, (Mat(2, 2) << 1, 0, 0, 0).finished());
    EXPECT_THROW(conditional_expectation(pure, PauliSum::of(string_word("X")), PauliSum::of(string_word("Z")), -1),
                 Error);
}

TEST(Strategy, ObservablesSquareToIdentity) {
    auto spec = optimal_strategy(5);
    for (int party = 1; party <= 5; party++) {
        for (std::size_t s = 0; s < spec.settings[party - 1].size(); s++) {
            Mat m = dense_sum(spec.at(party, static_cast<int>(s)), 5);
            EXPECT_TRUE((m * m).isApprox(Mat::Identity(32, 32), 1e-12));
            EXPECT_TRUE(m.isApprox(m.adjoint(), 1e-12));
        }
    }
    EXPECT_EQ(spec.settings[1].size(), 3u);
    EXPECT_TRUE(dense_sum(spec.at(2, 2), 5).isApprox(dense_word("IZIII")));
    EXPECT_TRUE(dense_sum(rest_product(spec), 5).isApprox(dense_word("IIXXX")));
    EXPECT_THROW(spec.at(3, 2), Error);
    EXPECT_THROW(optimal_strategy(3), Error);
}

TEST(Strategy, IdealValues) {
    for (int n = 4; n <= 10; n++) {
        auto s = optimal_strategy_stats(n, 1.0);
        EXPECT_NEAR(s.i_chsh_plus, 2.0 * std::sqrt(2.0), 1e-9) << n;
        EXPECT_NEAR(s.i_chsh_minus, 2.0 * std::sqrt(2.0), 1e-9) << n;
        EXPECT_NEAR(s.i_same, n - 1.0, 1e-9) << n;
        EXPECT_NEAR(s.a_rest_mean, 0.0, 1e-9) << n;
    }
    auto half = optimal_strategy_stats(4, 0.5);
    EXPECT_NEAR(half.i_chsh_plus, std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(half.i_same, 1.5, 1e-12);
    EXPECT_NEAR(optimal_strategy_stats(5, 1.0).i_same, 4.0, 1e-12);
    EXPECT_THROW(optimal_strategy_stats(11, 1.0), Error);
}

TEST(Strategy, AffineInVisibility) {
    for (int n = 4; n <= 7; n++) {
        std::vector<GhzStats> s;
        for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            s.push_back(optimal_strategy_stats(n, v));
        }
        for (std::size_t k = 1; k + 1 < s.size(); k++) {
            EXPECT_NEAR(s[k + 1].i_same - s[k].i_same, s[k].i_same - s[k - 1].i_same, 1e-12);
            EXPECT_NEAR(s[k + 1].i_chsh_plus - s[k].i_chsh_plus, s[k].i_chsh_plus - s[k - 1].i_chsh_plus, 1e-12);
            EXPECT_NEAR(s[k + 1].i_chsh_minus - s[k].i_chsh_minus, s[k].i_chsh_minus - s[k - 1].i_chsh_minus,
                        1e-12);
            EXPECT_NEAR(s[k + 1].triple - s[k].triple, s[k].triple - s[k - 1].triple, 1e-12);
        }
    }
}

TEST(Strategy, MonogamyPerConditionalBlock) {
    for (int n = 4; n <= 6; n++) {
        for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            auto s = optimal_strategy_stats(n, v);
            EXPECT_LE(s.i_chsh_plus * s.i_chsh_plus + 4.0 * s.a1_an_plus * s.a1_an_plus, 8.0 + 1e-9);
            EXPECT_LE(s.i_chsh_minus * s.i_chsh_minus + 4.0 * s.a1_an_minus * s.a1_an_minus, 8.0 + 1e-9);
        }
    }
}

TEST(Strategy, MonogamyOnRandomStates) {
    std::mt19937_64 rng(15);
    auto spec = optimal_strategy(4);
    for (int trial = 0; trial < 200; trial++) {
        DensityMatrix rho(4, random_density(4, rng));
        auto s = ghz_game_stats(rho, spec);
        EXPECT_LE(s.i_chsh_plus * s.i_chsh_plus + 4.0 * s.a1_an_plus * s.a1_an_plus, 8.0 + 1e-9);
        EXPECT_LE(s.i_chsh_minus * s.i_chsh_minus + 4.0 * s.a1_an_minus * s.a1_an_minus, 8.0 + 1e-9);
    }
}

TEST(Strategy, TripleCorrelatorDecomposition) {
    std::mt19937_64 rng(16);
    auto spec = optimal_strategy(4);
    Mat ends = dense_sum(spec.at(1, 0) * spec.at(4, 0), 4);
    Mat rest = dense_sum(rest_product(spec), 4);
    Mat id = Mat::Identity(16, 16);
    for (int trial = 0; trial < 20; trial++) {
        Mat rho = random_density(4, rng);
        auto s = ghz_game_stats(DensityMatrix(4, rho), spec);
        Mat plus = 0.5 * (id + rest);
        Mat minus = 0.5 * (id - rest);
        Mat dephased = plus * rho * plus + minus * rho * minus;
        EXPECT_NEAR(s.a1_an, (ends * dephased).trace().real(), 1e-12);
        EXPECT_NEAR(s.triple, (ends * rest * dephased).trace().real(), 1e-12);
    }
    auto ideal = optimal_strategy_stats(4, 1.0);
    EXPECT_NEAR(ideal.a1_an_plus, 0.0, 1e-12);
    EXPECT_NEAR(ideal.a1_an_minus, 0.0, 1e-12);
}

TEST(Lemma2, ConstructedPairsAgreeOnTheState) {
    auto r = lemma2_probe(16, 1000, 1);
    EXPECT_EQ(r.trials, 1000);
    EXPECT_LE(r.max_residual, 1e-9);
    EXPECT_LE(r.max_premise_gap, 1e-9);
    EXPECT_LE(lemma2_probe(2, 50, 3).max_residual, 1e-9);
    EXPECT_THROW(lemma2_probe(65, 1), Error);
    EXPECT_THROW(lemma2_probe(4, 0), Error);
}

TEST(Lemma2, EqualProjectorsGiveZeroResidual) {
    std::mt19937_64 rng(17);
    Mat a = random_density(3, rng);
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    Mat v = es.eigenvectors().leftCols(3);
    Mat p = v * v.adjoint();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Random(8).normalized();
    auto c = evaluate_lemma2(p, p, psi);
    EXPECT_NEAR(c.residual, 0.0, 1e-12);
    EXPECT_NEAR(c.commutator, 0.0, 1e-12);
}

TEST(Lemma2, NegativeControlReportsResidual) {
    auto c = lemma2_negative_control(16, 0.1, 5);
    EXPECT_GT(c.residual, 0.1);
    EXPECT_NEAR(c.norm_gap, 0.1, 1e-12);
    EXPECT_THROW(lemma2_negative_control(16, 0.0), Error);
}

}  // namespace
}  // namespace coord
