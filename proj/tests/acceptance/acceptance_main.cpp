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

// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "coordcert/dag.hpp"
#include "coordcert/distribution.hpp"
#include "coordcert/inequalities.hpp"
#include "coordcert/noise.hpp"
#include "coordcert/opt.hpp"
#include "coordcert/quantum.hpp"
#include "coordcert/witness.hpp"
#include "random_dag.hpp"

namespace {

using namespace coord;

const double kPi = std::acos(-1.0);

constexpr double kTableTol = 5e-5;
constexpr double kSlackTol = 1e-9;
constexpr double kCrossingTol = 1e-10;
constexpr double kPsdTol = 1e-9;
constexpr double kNullTol = 1e-9;
constexpr double kMinorTol = 1e-12;
constexpr double kStatsTol = 1e-9;
constexpr double kSignChangeTol = 1e-6;
constexpr double kMonogamyTol = 1e-9;
constexpr double kLemmaTol = 1e-9;
constexpr double kTableSeconds = 1.0;
constexpr double kWitnessSeconds = 10.0;
constexpr double kOptSeconds = 60.0;

/// Collects the first few failure reasons for one criterion.
struct Outcome {
    std::vector<std::string> problems;
    double seconds = 0.0;

    void require(bool ok, const std::string &what) {
        if (!ok && problems.size() < 5) {
            problems.push_back(what);
        }
    }
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct CsvTable {
    std::vector<std::vector<std::string>> rows;
};

CsvTable run_cli_csv(const std::vector<std::string> &args, Outcome &o) {
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    o.require(code == cli::kExitOk, "cli exit " + std::to_string(code) + ": " + err.str());
    CsvTable t;
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        t.rows.push_back(cells);
    }
    return t;
}

template <class F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-16; it++) {
        double mid = 0.5 * (lo + hi);
        if ((f(mid) < 0) == (flo < 0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Outcome threshold_table() {
    Outcome o;
    const double expected[][2] = {{0.9439, 0.9474}, {0.9612, 0.9624}, {0.9717, 0.9721}, {0.9785, 0.9787},
                                  {0.9831, 0.9832}, {0.9864, 0.9865}, {0.9889, 0.9889}};
    auto t = run_cli_csv({"noise-table", "--variant", "trig", "--n", "4..10"}, o);
    o.require(t.rows.size() == 7, "expected 7 rows");
    for (std::size_t i = 0; i < t.rows.size() && i < 7; i++) {
        double v = std::stod(t.rows[i][2]);
        double f = std::stod(t.rows[i][3]);
        o.require(std::abs(v - expected[i][0]) <= kTableTol && std::abs(f - expected[i][1]) <= kTableTol,
                  "n=" + t.rows[i][0] + " got (" + fmt(v) + ", " + fmt(f) + ")");
    }
    return o;
}

Outcome alt_table() {
    Outcome o;
    auto alt = run_cli_csv({"noise-table", "--variant", "alt", "--n", "4..10"}, o);
    auto trig = run_cli_csv({"noise-table", "--variant", "trig", "--n", "4..10"}, o);
    o.require(alt.rows.size() == 7 && trig.rows.size() == 7, "expected 7 rows");
    if (alt.rows.size() == 7 && trig.rows.size() == 7) {
        double v4 = std::stod(alt.rows[0][2]);
        double f4 = std::stod(alt.rows[0][3]);
        o.require(std::abs(v4 - 0.9417) <= kTableTol && std::abs(f4 - 0.9454) <= kTableTol,
                  "n=4 got (" + fmt(v4) + ", " + fmt(f4) + ")");
        o.require(v4 < std::stod(trig.rows[0][2]), "alt is not better at n=4");
        for (std::size_t i = 1; i < 7; i++) {
            o.require(std::stod(alt.rows[i][2]) >= std::stod(trig.rows[i][2]), "alt beats trig at n=" + alt.rows[i][0]);
        }
    }
    return o;
}

Outcome coordination_inequality() {
    Outcome o;
    std::vector<std::pair<int, int>> pairs4 = adjacent_pairs(4);
    pairs4.push_back({1, 4});
    auto sides = coordination_sides(correlators(Distribution::perfect_coordination(4), pairs4), 4, Variant::Trig);
    o.require(std::abs(sides.lhs - 3.0) <= kSlackTol, "lhs " + fmt(sides.lhs));
    o.require(std::abs(sides.rhs - 1.5 * std::sqrt(3.0)) <= kSlackTol, "rhs " + fmt(sides.rhs));
    o.require(std::abs(sides.slack() - (1.5 * std::sqrt(3.0) - 3.0)) <= kSlackTol, "slack " + fmt(sides.slack()));
    o.require(std::abs(sides.slack() + 0.402) <= 5e-4, "slack not -0.402");
    for (int n = 3; n <= 10; n++) {
        auto pairs = adjacent_pairs(n);
        pairs.push_back({1, n});
        auto slack = [&](double v) {
            return coordination_slack(correlators(Distribution::white_noise_mixture(n, v), pairs), n, Variant::Trig);
        };
        double crossing = bisect(slack, 0.0, 1.0);
        double expect = std::cos(kPi / (2.0 * (n - 1)));
        o.require(std::abs(crossing - expect) <= kCrossingTol, "n=" + std::to_string(n) + " crossing " + fmt(crossing));
    }
    return o;
}

Outcome witness_suite() {
    Outcome o;
    for (int n = 3; n <= 50; n++) {
        for (Variant variant : {Variant::Trig, Variant::Alt}) {
            auto w = build_witness(n, variant);
            auto psd = psd_check(w);
            o.require(psd.min_eigenvalue >= -kPsdTol,
                      std::string(variant_name(variant)) + " n=" + std::to_string(n) + " min eig " + fmt(psd.min_eigenvalue));
            if (variant == Variant::Trig) {
                o.require(psd.null_vector_residual <= kNullTol,
                          "null residual n=" + std::to_string(n) + " " + fmt(psd.null_vector_residual));
            }
        }
        if (n <= 20) {
            auto w = build_witness(n, Variant::Trig);
            auto minors = minor_determinants(w);
            auto direct = direct_leading_minors(w);
            double theta = kPi / (2.0 * (n - 1));
            for (std::size_t m = 1; m < static_cast<std::size_t>(n); m++) {
                double closed = std::ldexp(std::cos(m * theta), -static_cast<int>(m));
                o.require(std::abs(minors.recurrence[m - 1] - direct[m - 1]) <= kMinorTol &&
                              std::abs(closed - direct[m - 1]) <= kMinorTol,
                          "minor " + std::to_string(m) + " at n=" + std::to_string(n));
            }
            o.require(std::abs(direct.back()) <= kMinorTol, "det n=" + std::to_string(n) + " " + fmt(direct.back()));
        }
    }
    return o;
}

Outcome ghz_pipeline() {
    Outcome o;
    for (int n = 4; n <= 10; n++) {
        auto s = optimal_strategy_stats(n, 1.0);
        std::string tag = "n=" + std::to_string(n);
        o.require(std::abs(s.i_chsh_plus - 2.0 * std::sqrt(2.0)) <= kStatsTol &&
                      std::abs(s.i_chsh_minus - 2.0 * std::sqrt(2.0)) <= kStatsTol,
                  tag + " chsh " + fmt(s.i_chsh_plus) + " " + fmt(s.i_chsh_minus));
        o.require(std::abs(s.i_same - (n - 1)) <= kStatsTol, tag + " i_same " + fmt(s.i_same));
        o.require(std::abs(s.a_rest_mean) <= kStatsTol, tag + " rest mean " + fmt(s.a_rest_mean));
        double theta = kPi / (2.0 * (n - 1));
        double gap = 1.0 / std::sin(theta) - std::cos(theta) / std::sin(theta);
        double expect = 4.0 - (4.0 + 2.0 * (n - 1) * (n - 1) * gap * gap);
        double slack = ghz_slack(s, n, Variant::Trig);
        o.require(std::abs(slack - expect) <= kStatsTol, tag + " slack " + fmt(slack) + " vs " + fmt(expect));

        double v_min = solve_threshold(n, Variant::Trig).v_min;
        double lo = std::max(restriction_bound(n, Variant::Trig), v_min - 0.01);
        double root = bisect([&](double v) { return ghz_slack(optimal_strategy_stats(n, v), n, Variant::Trig); }, lo, 1.0);
        o.require(std::abs(root - v_min) <= kSignChangeTol, tag + " sign change " + fmt(root) + " vs " + fmt(v_min));
    }
    return o;
}

Outcome monogamy() {
    Outcome o;
    for (int n = 4; n <= 6; n++) {
        for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            auto s = optimal_strategy_stats(n, v);
            double plus = s.i_chsh_plus * s.i_chsh_plus + 4.0 * s.a1_an_plus * s.a1_an_plus;
            double minus = s.i_chsh_minus * s.i_chsh_minus + 4.0 * s.a1_an_minus * s.a1_an_minus;
            o.require(plus <= 8.0 + kMonogamyTol && minus <= 8.0 + kMonogamyTol,
                      "n=" + std::to_string(n) + " v=" + fmt(v) + " blocks " + fmt(plus) + ", " + fmt(minus));
        }
    }
    return o;
}

Outcome opt_exhaustive() {
    Outcome o;
    auto corpus = enumerate_circuits(5);
    std::set<std::string> forms;
    for (const auto &c : corpus) {
        forms.insert(canonical_circuit_form(c));
    }
    struct Reference {
        const char *name;
        Circuit circuit;
        std::map<std::string, double> expected;
    };
    std::vector<Reference> refs{
        {"tetrahedron", tetrahedron_circuit(), {{"0000", 0.5}, {"1111", 0.5}}},
        {"embeddable pair", embeddable_pair_circuit(), {{"00", 0.5}, {"11", 0.5}}},
        {"duplicated source", duplicated_source_circuit(), {{"0", 1.0}}},
    };
    for (const auto &r : refs) {
        o.require(forms.count(canonical_circuit_form(r.circuit)) == 1, std::string(r.name) + " not enumerated");
        o.require(assign_probability(r.circuit).probs == r.expected, std::string(r.name) + " distribution differs");
    }
    std::size_t nsi_failures = 0, prop_failures = 0;
    for (const auto &c : corpus) {
        nsi_failures += check_nsi(c).failures.size();
        prop_failures += check_propositions(c).failures.size();
    }
    o.require(nsi_failures == 0, std::to_string(nsi_failures) + " NSI failures");
    o.require(prop_failures == 0, std::to_string(prop_failures) + " proposition failures");
    o.require(corpus.size() > 8, "corpus of " + std::to_string(corpus.size()) + " circuits");
    return o;
}

Outcome dag_suite() {
    Outcome o;
    std::mt19937_64 rng(20260101);
    CausalDag reference = build_gstar(4);
    for (int trial = 0; trial < 100; trial++) {
        CausalDag d = testing::random_gn_member(4, rng);
        auto terminal = make_terminal(d).first;
        auto g = extend_to_gstar(terminal, 4).first;
        o.require(label_isomorphic(g, reference), "trial " + std::to_string(trial) + " not isomorphic");
    }
    for (int n = 3; n <= 10; n++) {
        auto g = build_gstar(n);
        std::size_t nodes = (std::size_t{1} << n) - 2;
        std::size_t edges = static_cast<std::size_t>(n) * ((std::size_t{1} << (n - 1)) - 2);
        o.require(g.node_count() == nodes && g.edge_count() == edges,
                  "n=" + std::to_string(n) + " counts " + std::to_string(g.node_count()) + "/" +
                      std::to_string(g.edge_count()));
    }
    return o;
}

Outcome lemma2() {
    Outcome o;
    auto r = lemma2_probe(16, 1000, 1);
    o.require(r.trials == 1000, "ran " + std::to_string(r.trials) + " trials");
    o.require(r.max_residual <= kLemmaTol, "max residual " + fmt(r.max_residual));
    return o;
}

struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
    double time_limit;
};

}  // namespace

int main() {
    const double no_limit = 0.0;
    std::vector<Criterion> criteria{
        {1, "threshold table (trig)", threshold_table, kTableSeconds},
        {2, "threshold table (alt)", alt_table, kTableSeconds},
        {3, "coordination inequality", coordination_inequality, no_limit},
        {4, "witness suite", witness_suite, kWitnessSeconds},
        {5, "ghz pipeline", ghz_pipeline, no_limit},
        {6, "monogamy", monogamy, no_limit},
        {7, "opt exhaustive check", opt_exhaustive, kOptSeconds},
        {8, "dag property suite", dag_suite, no_limit},
        {9, "lemma 2 probe", lemma2, no_limit},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.require(false, std::string("threw: ") + e.what());
        }
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0 && o.seconds >= c.time_limit) {
            o.require(false, "took " + fmt(o.seconds) + " s, limit " + fmt(c.time_limit) + " s");
        }
        bool ok = o.problems.empty();
        failed += ok ? 0 : 1;
        std::printf("%s criterion %d: %s (%.3f s)", ok ? "PASS" : "FAIL", c.id, c.name, o.seconds);
        for (const auto &p : o.problems) {
            std::printf("; %s", p.c_str());
        }
        std::printf("\n");
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
