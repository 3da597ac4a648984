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

#ifndef COORDCERT_INEQUALITIES_HPP
#define COORDCERT_INEQUALITIES_HPP

#include <map>
#include <utility>
#include <vector>

#include "coordcert/distribution.hpp"
#include "coordcert/ghz_stats.hpp"
#include "coordcert/variant.hpp"

namespace coord {

/// Expectations under the encoding 0 -> +1, 1 -> -1. Party indices are 1-based.
struct CorrelatorBundle {
    int n = 0;
    std::vector<double> singles;
    std::map<std::pair<int, int>, double> pairs;

    double single(int i) const;
    /// Order-insensitive lookup; throws IncompleteBundle if the pair was not computed.
    double pair(int i, int j) const;
};

/// Neighbouring pairs (i, i+1) for i = 1..n-1.
std::vector<std::pair<int, int>> adjacent_pairs(int n);

/// All singles plus the requested pairs. Throws InvalidArgument on a bad index.
CorrelatorBundle correlators(const Distribution &dist, const std::vector<std::pair<int, int>> &pairs);

/// Both sides written as lhs <= rhs.
struct InequalitySides {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack() const {
        return rhs - lhs;
    }
};

/// Trig: sum_i <A_i A_{i+1}>  <=  sin(t) <A_1><A_n> + (n-1) cos(t).
/// Alt:  1 - (n-1)^2 + (n-1) sum_i <A_i A_{i+1}>  <=  <A_1><A_n>.
InequalitySides coordination_sides(const CorrelatorBundle &bundle, int n, Variant variant);
/// rhs - lhs; negative means a common cause is certified.
double coordination_slack(const CorrelatorBundle &bundle, int n, Variant variant);

/// Lower bound on <A_1^0 A_n^0> implied by the "same"-game value.
/// Trig: I_same cosec(t) - (n-1) cotan(t). Alt: 1 - (n-1)^2 + (n-1) I_same.
double same_game_bound(double i_same, int n, Variant variant);

/// Squared-combination GHZ inequality. Trig throws OutOfRegion when the same-game bound is
/// negative; Alt squares the bound only where it is positive and drops it otherwise.
InequalitySides ghz_sides(const GhzStats &stats, int n, Variant variant);
double ghz_slack(const GhzStats &stats, int n, Variant variant);

}  // namespace coord

#endif
