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

#include "coordcert/error.hpp"
#include "coordcert/inequalities.hpp"
#include "coordcert/noise.hpp"
#include "coordcert/quantum.hpp"

namespace coord {
namespace {

const double kPi = std::acos(-1.0);

struct TableRow {
    int n;
    double v_min;
    double f_min;
};

const TableRow kTrigTable[] = {{4, 0.9439, 0.9474}, {5, 0.9612, 0.9624}, {6, 0.9717, 0.9721}, {7, 0.9785, 0.9787},
                               {8, 0.9831, 0.9832}, {9, 0.9864, 0.9865}, {10, 0.9889, 0.9889}};

/// Polynomial written out from the inequality with ideal-strategy substitutions.
double oracle_polynomial(int n, double v, Variant variant) {
    double m = n - 1;
    double bound;
    if (variant == Variant::Trig) {
        double t = kPi / (2.0 * m);
        bound = v * m / std::sin(t) - m * std::cos(t) / std::sin(t);
    } else {
        bound = 1.0 - m * m + m * m * v;
    }
    return v * v + 0.5 * bound * bound - 1.0;
}

/// Bisection for the sign change of `f` on [lo, hi], f(lo) < 0 < f(hi).
template <class F>
double bisect(F f, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TEST(Thresholds, TrigTable) {
    for (const auto &row : kTrigTable) {
        auto r = solve_threshold(row.n, Variant::Trig);
        EXPECT_NEAR(r.v_min, row.v_min, 5e-5) << row.n;
        EXPECT_NEAR(r.f_min, row.f_min, 5e-5) << row.n;
        EXPECT_NEAR(r.restriction_bound, std::cos(kPi / (2.0 * (row.n - 1))), 1e-15);
        EXPECT_GE(r.v_min, r.restriction_bound);
        EXPECT_LE(r.v_min, 1.0);
    }
}

TEST(Thresholds, AltTable) {
    auto r = solve_threshold(4, Variant::Alt);
    EXPECT_NEAR(r.v_min, 0.9417, 5e-5);
    EXPECT_NEAR(r.f_min, 0.9454, 5e-5);
    EXPECT_LT(r.v_min, solve_threshold(4, Variant::Trig).v_min);
    for (int n = 5; n <= 10; n++) {
        EXPECT_GE(solve_threshold(n, Variant::Alt).v_min, solve_threshold(n, Variant::Trig).v_min) << n;
    }
}

TEST(Thresholds, FidelityFormula) {
    for (int n = 4; n <= 10; n++) {
        for (Variant v : {Variant::Trig, Variant::Alt}) {
            auto r = solve_threshold(n, v);
            double dim = std::ldexp(1.0, n);
            EXPECT_NEAR(r.f_min, (1.0 + r.v_min * (dim - 1.0)) / dim, 1e-15);
            EXPECT_NEAR(r.f_min, noisy_ghz_fidelity(n, r.v_min), 1e-15);
        }
    }
}

TEST(Thresholds, RootOfOraclePolynomial) {
    for (int n = 4; n <= 10; n++) {
        for (Variant variant : {Variant::Trig, Variant::Alt}) {
            auto r = solve_threshold(n, variant);
            EXPECT_NEAR(violation_value(n, r.v_min, variant), 0.0, 1e-9);
            EXPECT_NEAR(oracle_polynomial(n, r.v_min, variant), 0.0, 1e-9);
            double root = bisect([&](double v) { return oracle_polynomial(n, v, variant); }, r.restriction_bound, 1.0);
            EXPECT_NEAR(r.v_min, root, 1e-12);
            EXPECT_GT(violation_value(n, r.v_min + 1e-4, variant), 0.0);
            if (r.v_min - 1e-4 >= r.restriction_bound) {
                EXPECT_LT(violation_value(n, r.v_min - 1e-4, variant), 0.0);
            }
        }
    }
}

TEST(ViolationValue, Examples) {
    EXPECT_GT(violation_value(4, 1.0, Variant::Trig), 0.0);
    EXPECT_GT(violation_value(4, 0.95, Variant::Trig), 0.0);
    EXPECT_NEAR(violation_value(4, 0.9, Variant::Trig), oracle_polynomial(4, 0.9, Variant::Trig), 1e-14);
    try {
        violation_value(4, std::cos(kPi / 6) - 1e-6, Variant::Trig);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfRegion);
    }
    EXPECT_THROW(violation_value(4, 1.5, Variant::Trig), Error);
    EXPECT_THROW(solve_threshold(3, Variant::Trig), Error);
}

TEST(ViolationValue, MatchesGhzInequalityScaling) {
    for (int n = 4; n <= 8; n++) {
        for (double v : {0.99, 0.995, 1.0}) {
            GhzStats s;
            s.n = n;
            s.i_chsh_plus = s.i_chsh_minus = 2.0 * std::sqrt(2.0) * v;
            s.i_same = (n - 1) * v;
            for (Variant variant : {Variant::Trig, Variant::Alt}) {
                EXPECT_NEAR(violation_value(n, v, variant), -ghz_slack(s, n, variant) / 4.0, 1e-12);
            }
        }
    }
}

TEST(ViolationCurve, MonotoneWithMatchingIntercepts) {
    std::vector<int> ns{4, 5, 6, 7, 8, 9, 10};
    std::vector<double> vs;
    for (int k = 0; k <= 70; k++) {
        vs.push_back(0.93 + 0.001 * k);
    }
    auto curve = violation_curve(ns, vs, Variant::Trig);
    for (int n : ns) {
        double prev = -INFINITY;
        for (const auto &p : curve) {
            if (p.n == n) {
                EXPECT_GT(p.value, prev);
                prev = p.value;
            }
        }
        auto x = curve_intercept(curve, n);
        ASSERT_TRUE(x.has_value()) << n;
        EXPECT_NEAR(*x, solve_threshold(n, Variant::Trig).v_min, 1e-3);
    }
    EXPECT_NEAR(*curve_intercept(curve, 5), 0.9612, 1e-3);
    for (const auto &p : curve) {
        EXPECT_GE(p.v, restriction_bound(p.n, Variant::Trig));
    }
}

TEST(ViolationCurve, CsvLayout) {
    auto csv = curve_to_csv(violation_curve({4}, {1.0}, Variant::Trig));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,v,value");
}

TEST(Thresholds, SimulatorPathAgrees) {
    for (int n = 4; n <= 10; n++) {
        double v_min = solve_threshold(n, Variant::Trig).v_min;
        auto slack = [&](double v) { return -ghz_slack(optimal_strategy_stats(n, v), n, Variant::Trig); };
        double lo = std::max(restriction_bound(n, Variant::Trig), v_min - 0.01);
        double root = lo;
        double hi = 1.0;
        for (int it = 0; it < 40; it++) {
            double mid = 0.5 * (root + hi);
            (slack(mid) < 0 ? root : hi) = mid;
        }
        EXPECT_NEAR(0.5 * (root + hi), v_min, 1e-6) << n;
    }
}

TEST(ThresholdExport, CsvAndJson) {
    std::vector<ThresholdResult> rows{solve_threshold(4, Variant::Trig)};
    auto csv = thresholds_to_csv(rows, 4);
    EXPECT_EQ(csv, "n,variant,v_min,f_min,restriction_bound\n4,trig,0.9439,0.9474,0.866\n");
    auto json = thresholds_to_json(rows, 4);
    EXPECT_NE(json.find("\"v_min\": 0.9439"), std::string::npos) << json;
}

}  // namespace
}  // namespace coord
