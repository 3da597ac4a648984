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

#ifndef COORDCERT_GHZ_STATS_HPP
#define COORDCERT_GHZ_STATS_HPP

namespace coord {

/// Correlators entering the GHZ-game inequality. "plus"/"minus" refer to conditioning on
/// the product of the remaining parties' second-setting outcomes being +1 or -1.
struct GhzStats {
    int n = 0;
    double i_chsh_plus = 0.0;
    double i_chsh_minus = 0.0;
    double i_same = 0.0;
    /// Mean of the product of parties 3..n at setting 1.
    double a_rest_mean = 0.0;
    /// <A_1^0 A_n^0 * rest>.
    double triple = 0.0;
    /// <A_1^0 A_n^0>, unconditioned and conditioned on rest = +1 / -1.
    double a1_an = 0.0;
    double a1_an_plus = 0.0;
    double a1_an_minus = 0.0;
};

}  // namespace coord

#endif
