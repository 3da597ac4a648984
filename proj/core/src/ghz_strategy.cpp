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

#include <array>
#include <cmath>
#include <numbers>

#include "coordcert/error.hpp"
#include "coordcert/quantum.hpp"

namespace coord {

const PauliSum &ObservableSpec::at(int party, int setting) const {
    if (party < 1 || party > n || setting < 0 || setting >= static_cast<int>(settings[party - 1].size())) {
        fail(ErrorCode::InvalidArgument,
             "no observable for party " + std::to_string(party) + " setting " + std::to_string(setting));
    }
    return settings[party - 1][setting];
}

ObservableSpec optimal_strategy(int n) {
    if (n < 4 || n > kMaxQubits) {
        fail(ErrorCode::InvalidArity, "GHZ strategy needs 4 <= n <= " + std::to_string(kMaxQubits));
    }
    auto pauli = [n](int q, char c) { return PauliSum::of(PauliString::single(n, q, c)); };
    double r = 1.0 / std::numbers::sqrt2;
    ObservableSpec spec;
    spec.n = n;
    spec.settings.resize(n);
    spec.settings[0] = {pauli(1, 'Z'), pauli(1, 'X')};
    spec.settings[1] = {(pauli(2, 'Z') + pauli(2, 'X')).scaled(r), (pauli(2, 'Z') + pauli(2, 'X').scaled(-1.0)).scaled(r),
                        pauli(2, 'Z')};
    for (int q = 3; q <= n; q++) {
        spec.settings[q - 1] = {pauli(q, 'Z'), pauli(q, 'X')};
    }
    return spec;
}

PauliSum rest_product(const ObservableSpec &spec) {
    PauliSum out = PauliSum::of(PauliString::identity());
    for (int q = 3; q <= spec.n; q++) {
        out = out * spec.at(q, 1);
    }
    return out;
}

GhzStats ghz_game_stats(const DensityMatrix &rho, const ObservableSpec &spec) {
    int n = spec.n;
    if (rho.n_qubits() != n) {
        fail(ErrorCode::InvalidArity, "state and strategy disagree on the party count");
    }
    auto a = [&](int party, int setting) -> const PauliSum & { return spec.at(party, setting); };
    PauliSum rest = rest_product(spec);

    GhzStats s;
    s.n = n;
    std::array<double, 4> plus{}, minus{};
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            PauliSum term = a(1, x) * a(2, y);
            plus[2 * x + y] = conditional_expectation(rho, term, rest, +1);
            minus[2 * x + y] = conditional_expectation(rho, term, rest, -1);
        }
    }
    s.i_chsh_plus = plus[0] + plus[1] + plus[2] - plus[3];
    s.i_chsh_minus = minus[0] + minus[1] - minus[2] + minus[3];

    s.i_same = expectation(rho, a(1, 0) * a(2, 2)) + expectation(rho, a(2, 2) * a(3, 0));
    for (int i = 3; i < n; i++) {
        s.i_same += expectation(rho, a(i, 0) * a(i + 1, 0));
    }
    s.a_rest_mean = expectation(rho, rest);

    PauliSum ends = a(1, 0) * a(n, 0);
    double p_plus = 0.0, p_minus = 0.0;
    s.a1_an_plus = conditional_expectation(rho, ends, rest, +1, &p_plus);
    s.a1_an_minus = conditional_expectation(rho, ends, rest, -1, &p_minus);
    s.a1_an = p_plus * s.a1_an_plus + p_minus * s.a1_an_minus;
    s.triple = p_plus * s.a1_an_plus - p_minus * s.a1_an_minus;
    return s;
}

GhzStats optimal_strategy_stats(int n, double v) {
    if (n < 4 || n > 10) {
        fail(ErrorCode::InvalidArity, "optimal strategy statistics support 4 <= n <= 10, got " + std::to_string(n));
    }
    return ghz_game_stats(noisy_ghz(n, v), optimal_strategy(n));
}

}  // namespace coord
