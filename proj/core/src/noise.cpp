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

#include "coordcert/noise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coordcert/error.hpp"
#include "coordcert/parallel.hpp"
#include "coordcert/quantum.hpp"

namespace coord {

namespace {

constexpr double kRootTolerance = 1e-12;

/// The same-game bound is a*v - b under ideal statistics.
void bound_coefficients(int n, Variant variant, double &a, double &b) {
    if (n < 4) {
        fail(ErrorCode::InvalidArity, "GHZ noise analysis needs n >= 4, got " + std::to_string(n));
    }
    double m = n - 1;
    if (variant == Variant::Trig) {
        double t = trig_angle(n);
        a = m / std::sin(t);
        b = m / std::tan(t);
    } else {
        a = m * m;
        b = m * m - 1.0;
    }
}

}  // namespace

double restriction_bound(int n, Variant variant) {
    double a, b;
    bound_coefficients(n, variant, a, b);
    return b / a;
}

double violation_value(int n, double v, Variant variant) {
    double a, b;
    bound_coefficients(n, variant, a, b);
    if (!(v >= 0.0 && v <= 1.0)) {
        fail(ErrorCode::Domain, "visibility must lie in [0, 1]");
    }
    double bound = a * v - b;
    if (bound < -kRootTolerance) {
        if (variant == Variant::Trig) {
            fail(ErrorCode::OutOfRegion, "v=" + format_real(v) + " lies below the restriction bound " +
                                             format_real(b / a) + " for n=" + std::to_string(n));
        }
        bound = 0.0;
    }
    bound = std::max(bound, 0.0);
    return v * v + 0.5 * bound * bound - 1.0;
}

ThresholdResult solve_threshold(int n, Variant variant) {
    double a, b;
    bound_coefficients(n, variant, a, b);
    double lo = b / a;

    // (1 + a^2/2) v^2 - a b v + (b^2/2 - 1) = 0
    double qa = 1.0 + 0.5 * a * a;
    double qb = -a * b;
    double qc = 0.5 * b * b - 1.0;
    std::optional<double> root;
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
        double s = std::sqrt(disc);
        // Stable pair: one root from the sum, the other from Vieta.
        double q = -0.5 * (qb + (qb >= 0 ? s : -s));
        for (double r : {q / qa, qc / q}) {
            if (r >= lo - kRootTolerance && r <= 1.0 + kRootTolerance) {
                root = std::clamp(r, lo, 1.0);
            }
        }
    }
    if (!root) {
        double f_lo = violation_value(n, lo, variant);
        double f_hi = violation_value(n, 1.0, variant);
        if (f_lo > 0.0 || f_hi < 0.0) {
            fail(ErrorCode::Domain, "no violation threshold inside [" + format_real(lo) + ", 1] for n=" +
                                        std::to_string(n));
        }
        double x0 = lo, x1 = 1.0;
        while (x1 - x0 > kRootTolerance) {
            double mid = 0.5 * (x0 + x1);
            (violation_value(n, mid, variant) < 0.0 ? x0 : x1) = mid;
        }
        root = 0.5 * (x0 + x1);
    }
    ThresholdResult r;
    r.n = n;
    r.variant = variant;
    r.v_min = *root;
    r.f_min = noisy_ghz_fidelity(n, r.v_min);
    r.restriction_bound = lo;
    return r;
}

std::vector<CurvePoint> violation_curve(const std::vector<int> &ns, const std::vector<double> &vs, Variant variant) {
    std::vector<std::vector<CurvePoint>> per_n(ns.size());
    parallel_for(ns.size(), [&](std::size_t k) {
        int n = ns[k];
        double lo = restriction_bound(n, variant);
        for (double v : vs) {
            if (variant == Variant::Trig && v < lo) {
                continue;
            }
            per_n[k].push_back({n, v, violation_value(n, v, variant)});
        }
    });
    std::vector<CurvePoint> out;
    for (auto &chunk : per_n) {
        out.insert(out.end(), chunk.begin(), chunk.end());
    }
    return out;
}

std::optional<double> curve_intercept(const std::vector<CurvePoint> &curve, int n) {
    const CurvePoint *prev = nullptr;
    for (const auto &p : curve) {
        if (p.n != n) {
            continue;
        }
        if (prev && prev->value < 0.0 && p.value >= 0.0) {
            double t = -prev->value / (p.value - prev->value);
            return prev->v + t * (p.v - prev->v);
        }
        prev = &p;
    }
    return std::nullopt;
}

std::string curve_to_csv(const std::vector<CurvePoint> &curve, int precision) {
    std::ostringstream out;
    out << "n,v,value\n";
    for (const auto &p : curve) {
        out << p.n << ',' << format_real(p.v, precision) << ',' << format_real(p.value, precision) << '\n';
    }
    return out.str();
}

std::string thresholds_to_csv(const std::vector<ThresholdResult> &rows, int precision) {
    std::ostringstream out;
    out << "n,variant,v_min,f_min,restriction_bound\n";
    for (const auto &r : rows) {
        out << r.n << ',' << variant_name(r.variant) << ',' << format_real(r.v_min, precision) << ','
            << format_real(r.f_min, precision) << ',' << format_real(r.restriction_bound, precision) << '\n';
    }
    return out.str();
}

std::string thresholds_to_json(const std::vector<ThresholdResult> &rows, int precision) {
    std::ostringstream out;
    out << "{\n  \"thresholds\": [";
    for (std::size_t i = 0; i < rows.size(); i++) {
        const auto &r = rows[i];
        out << (i ? "," : "") << "\n    {\"n\": " << r.n << ", \"variant\": \"" << variant_name(r.variant)
            << "\", \"v_min\": " << format_real(r.v_min, precision) << ", \"f_min\": " << format_real(r.f_min, precision)
            << ", \"restriction_bound\": " << format_real(r.restriction_bound, precision) << "}";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

}  // namespace coord
