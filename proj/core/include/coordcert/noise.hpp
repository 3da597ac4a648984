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

#ifndef COORDCERT_NOISE_HPP
#define COORDCERT_NOISE_HPP

#include <optional>
#include <string>
#include <vector>

#include "coordcert/format.hpp"
#include "coordcert/variant.hpp"

namespace coord {

struct ThresholdResult {
    int n = 0;
    Variant variant = Variant::Trig;
    double v_min = 0.0;
    double f_min = 0.0;
    /// Smallest visibility where the same-game bound is nonnegative:
    /// cos(pi/(2(n-1))) for Trig, 1 - 1/(n-1)^2 for Alt.
    double restriction_bound = 0.0;
};

double restriction_bound(int n, Variant variant);

/// (LHS - RHS) / 4 of the GHZ inequality for white-noise GHZ statistics at visibility v:
/// v^2 + (a v - b)^2 / 2 - 1. Trig throws OutOfRegion below the restriction bound; Alt
/// drops the squared bound there, matching ghz_slack.
double violation_value(int n, double v, Variant variant);

/// Root of violation_value inside [restriction_bound, 1]; n >= 4.
ThresholdResult solve_threshold(int n, Variant variant);

struct CurvePoint {
    int n = 0;
    double v = 0.0;
    double value = 0.0;
};

/// Evaluates every (n, v) pair; Trig points below the restriction bound are skipped.
std::vector<CurvePoint> violation_curve(const std::vector<int> &ns, const std::vector<double> &vs, Variant variant);

/// Linear interpolation of the first upward zero crossing for `n`.
std::optional<double> curve_intercept(const std::vector<CurvePoint> &curve, int n);

std::string curve_to_csv(const std::vector<CurvePoint> &curve, int precision = kDefaultPrecision);
std::string thresholds_to_csv(const std::vector<ThresholdResult> &rows, int precision = kDefaultPrecision);
std::string thresholds_to_json(const std::vector<ThresholdResult> &rows, int precision = kDefaultPrecision);

}  // namespace coord

#endif
