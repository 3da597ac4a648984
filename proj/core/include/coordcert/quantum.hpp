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

#ifndef COORDCERT_QUANTUM_HPP
#define COORDCERT_QUANTUM_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "coordcert/distribution.hpp"
#include "coordcert/ghz_stats.hpp"

namespace coord {

using Complex = std::complex<double>;

constexpr int kMaxQubits = 12;

/// Dense n-qubit density matrix. Basis index bit (n - q) is qubit q, so qubit 1 is the
/// most significant bit, matching Distribution.
class DensityMatrix {
   public:
    /// Throws unless Hermitian, unit trace and PSD within 1e-10.
    DensityMatrix(int n_qubits, Eigen::MatrixXcd entries);

    int n_qubits() const {
        return n_;
    }
    const Eigen::MatrixXcd &entries() const {
        return rho_;
    }
    double purity() const;
    /// Distribution of computational-basis outcomes.
    Distribution z_basis_distribution() const;

    /// Skips the PSD eigensolve; for states that are PSD by construction.
    static DensityMatrix trusted(int n_qubits, Eigen::MatrixXcd entries);

   private:
    DensityMatrix() = default;
    int n_ = 0;
    Eigen::MatrixXcd rho_;
};

/// (|0...0> + |1...1>) / sqrt(2) as a projector; 2 <= n <= 12.
DensityMatrix ghz_state(int n);
/// v * GHZ + (1 - v) * I / 2^n.
DensityMatrix noisy_ghz(int n, double v);
/// <GHZ| rho |GHZ>.
double fidelity_with_ghz(const DensityMatrix &rho);
/// Closed form (1 + v (2^n - 1)) / 2^n.
double noisy_ghz_fidelity(int n, double v);

/// i^phase X^x Z^z, with X applied after Z. Bit (n - q) of x/z addresses qubit q.
struct PauliString {
    std::uint32_t x = 0;
    std::uint32_t z = 0;
    int phase = 0;

    static PauliString identity();
    static PauliString single(int n, int qubit, char pauli);
    PauliString operator*(const PauliString &other) const;
    bool commutes_with(const PauliString &other) const;
};

/// Real combination of Pauli strings; Hermitian when every term is.
struct PauliSum {
    std::vector<std::pair<Complex, PauliString>> terms;

    static PauliSum of(const PauliString &p, Complex c = 1.0);
    PauliSum operator*(const PauliSum &other) const;
    PauliSum operator+(const PauliSum &other) const;
    PauliSum scaled(Complex c) const;
    /// Merges equal strings and drops zero coefficients.
    PauliSum simplified() const;
};

Complex expectation(const DensityMatrix &rho, const PauliString &p);
double expectation(const DensityMatrix &rho, const PauliSum &op);

/// Expectation of `op` after a projective +/-1 measurement of `pivot` that came out `sign`,
/// renormalised by the outcome probability, which is written to `probability`.
double conditional_expectation(const DensityMatrix &rho, const PauliSum &op, const PauliSum &pivot, int sign,
                               double *probability = nullptr);

/// Per-party, per-setting single-qubit observables with +/-1 eigenvalues.
struct ObservableSpec {
    int n = 0;
    /// settings[party - 1][setting]
    std::vector<std::vector<PauliSum>> settings;

    const PauliSum &at(int party, int setting) const;
};

/// Z/X on party 1, (Z +/- X)/sqrt(2) and Z on party 2, Z/X on parties 3..n.
ObservableSpec optimal_strategy(int n);

/// Product of setting-1 observables of parties 3..n.
PauliSum rest_product(const ObservableSpec &spec);

/// All GhzStats fields for an arbitrary state and strategy.
GhzStats ghz_game_stats(const DensityMatrix &rho, const ObservableSpec &spec);

/// ghz_game_stats(noisy_ghz(n, v), optimal_strategy(n)); 4 <= n <= 10.
GhzStats optimal_strategy_stats(int n, double v);

struct Lemma2Check {
    /// || [P, Q] psi ||
    double commutator = 0.0;
    /// max of | ||PQ psi||^2 - ||P psi||^2 | and | ||P psi||^2 - ||Q psi||^2 |
    double norm_gap = 0.0;
    /// || (P - Q) psi ||
    double residual = 0.0;
};

Lemma2Check evaluate_lemma2(const Eigen::MatrixXcd &p, const Eigen::MatrixXcd &q, const Eigen::VectorXcd &psi);

struct Lemma2ProbeResult {
    int trials = 0;
    double max_residual = 0.0;
    double max_premise_gap = 0.0;
};

/// Random commuting projector pairs sharing an eigenbasis, with the state supported where
/// they agree, so both premises hold by construction. dim <= 64.
Lemma2ProbeResult lemma2_probe(int dim, int trials, std::uint64_t seed = 1);

/// Same construction but with a state whose P and Q weights differ by `gap`.
Lemma2Check lemma2_negative_control(int dim, double gap, std::uint64_t seed = 1);

}  // namespace coord

#endif
