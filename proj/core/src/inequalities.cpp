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

#include "coordcert/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "coordcert/error.hpp"

namespace coord {

namespace {

constexpr double kRegionTolerance = 1e-12;

}  // namespace

double CorrelatorBundle::single(int i) const {
    if (i < 1 || i > static_cast<int>(singles.size())) {
        fail(ErrorCode::IncompleteBundle, "no single-party correlator for party " + std::to_string(i));
    }
    return singles[i - 1];
}

double CorrelatorBundle::pair(int i, int j) const {
    auto it = pairs.find({std::min(i, j), std::max(i, j)});
    if (it == pairs.end()) {
        fail(ErrorCode::IncompleteBundle,
             "no correlator for pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    return it->second;
}

std::vector<std::pair<int, int>> adjacent_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i < n; i++) {
        out.push_back({i, i + 1});
    }
    return out;
}

CorrelatorBundle correlators(const Distribution &dist, const std::vector<std::pair<int, int>> &pairs) {
    int n = dist.n();
    for (const auto &[i, j] : pairs) {
        if (i < 1 || j < 1 || i > n || j > n || i == j) {
            fail(ErrorCode::InvalidArgument,
                 "pair (" + std::to_string(i) + "," + std::to_string(j) + ") is out of range for n=" +
                     std::to_string(n));
        }
    }
    CorrelatorBundle b;
    b.n = n;
    b.singles.assign(n, 0.0);
    std::vector<double> pair_sums(pairs.size(), 0.0);
    for (std::size_t k = 0; k < dist.probs().size(); k++) {
        double p = dist.probs()[k];
        if (p == 0.0) {
            continue;
        }
        for (int i = 1; i <= n; i++) {
            b.singles[i - 1] += dist.outcome_bit(k, i) ? -p : p;
        }
        for (std::size_t q = 0; q < pairs.size(); q++) {
            int parity = dist.outcome_bit(k, pairs[q].first) ^ dist.outcome_bit(k, pairs[q].second);
            pair_sums[q] += parity ? -p : p;
        }
    }
    for (std::size_t q = 0; q < pairs.size(); q++) {
        b.pairs[{std::min(pairs[q].first, pairs[q].second), std::max(pairs[q].first, pairs[q].second)}] =
            pair_sums[q];
    }
    return b;
}

InequalitySides coordination_sides(const CorrelatorBundle &bundle, int n, Variant variant) {
    if (n < 3) {
        fail(ErrorCode::InvalidArity, "coordination inequality needs n >= 3");
    }
    if (bundle.n != n) {
        fail(ErrorCode::IncompleteBundle,
             "bundle has " + std::to_string(bundle.n) + " parties, expected " + std::to_string(n));
    }
    double sum = 0.0;
    for (const auto &[i, j] : adjacent_pairs(n)) {
        sum += bundle.pair(i, j);
    }
    double ends = bundle.single(1) * bundle.single(n);
    double m = n - 1;
    InequalitySides s;
    if (variant == Variant::Trig) {
        double t = trig_angle(n);
        s.lhs = sum;
        s.rhs = std::sin(t) * ends + m * std::cos(t);
    } else {
        s.lhs = 1.0 - m * m + m * sum;
        s.rhs = ends;
    }
    return s;
}

double coordination_slack(const CorrelatorBundle &bundle, int n, Variant variant) {
    return coordination_sides(bundle, n, variant).slack();
}

double same_game_bound(double i_same, int n, Variant variant) {
    double m = n - 1;
    if (variant == Variant::Trig) {
        double t = trig_angle(n);
        return i_same / std::sin(t) - m / std::tan(t);
    }
    return 1.0 - m * m + m * i_same;
}

InequalitySides ghz_sides(const GhzStats &stats, int n, Variant variant) {
    if (n < 4) {
        fail(ErrorCode::InvalidArity, "GHZ inequality needs n >= 4");
    }
    if (stats.n != 0 && stats.n != n) {
        fail(ErrorCode::IncompleteBundle, "stats were computed for n=" + std::to_string(stats.n));
    }
    double bound = same_game_bound(stats.i_same, n, variant);
    if (variant == Variant::Trig && bound < -kRegionTolerance) {
        fail(ErrorCode::OutOfRegion, "same-game bound " + format_real(bound) +
                                         " is negative; the squared inequality only holds where it is positive");
    }
    bound = std::max(bound, 0.0);
    double p_plus = 0.5 * (1.0 + stats.a_rest_mean);
    double p_minus = 0.5 * (1.0 - stats.a_rest_mean);
    InequalitySides s;
    s.lhs = p_minus * p_minus * stats.i_chsh_minus * stats.i_chsh_minus +
            p_plus * p_plus * stats.i_chsh_plus * stats.i_chsh_plus + 2.0 * bound * bound;
    s.rhs = 8.0 * (p_minus * p_minus + p_plus * p_plus);
    return s;
}

double ghz_slack(const GhzStats &stats, int n, Variant variant) {
    return ghz_sides(stats, n, variant).slack();
}

}  // namespace coord
