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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coordcert/format.hpp"
#include "coordcert/opt.hpp"
#include "json.hpp"

namespace coord {

namespace {

constexpr double kProbabilityTolerance = 1e-12;
constexpr std::size_t kMaxPropositionObservations = 12;

bool overlaps(const std::set<std::size_t> &a, const std::set<std::size_t> &b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) {
            return true;
        }
        *ia < *ib ? ++ia : ++ib;
    }
    return false;
}

std::size_t find_root(std::vector<std::size_t> &parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

/// Groups indices 0..count-1 into connected components of `linked`, ordered by smallest member.
template <class Linked>
std::vector<std::vector<std::size_t>> components(std::size_t count, Linked linked) {
    std::vector<std::size_t> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < count; i++) {
        for (std::size_t j = i + 1; j < count; j++) {
            if (linked(i, j)) {
                parent[find_root(parent, i)] = find_root(parent, j);
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < count; i++) {
        groups[find_root(parent, i)].push_back(i);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto &[root, members] : groups) {
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Marginal over the given outcome-string positions.
std::map<std::string, double> marginal(const OutcomeDistribution &d, const std::vector<std::size_t> &positions) {
    std::map<std::string, double> out;
    for (const auto &[outcome, p] : d.probs) {
        std::string key;
        for (std::size_t k : positions) {
            key += outcome[k];
        }
        out[key] += p;
    }
    return out;
}

double distance(const std::map<std::string, double> &a, const std::map<std::string, double> &b) {
    double worst = 0.0;
    for (const auto &[k, p] : a) {
        auto it = b.find(k);
        worst = std::max(worst, std::abs(p - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto &[k, p] : b) {
        if (!a.count(k)) {
            worst = std::max(worst, std::abs(p));
        }
    }
    return worst;
}

/// Whether the joint over the union of `groups` equals the product of the group marginals.
bool factorizes(const OutcomeDistribution &d, const std::vector<std::vector<std::size_t>> &groups) {
    std::vector<std::size_t> all;
    std::vector<std::map<std::string, double>> parts;
    for (const auto &g : groups) {
        all.insert(all.end(), g.begin(), g.end());
        parts.push_back(marginal(d, g));
    }
    auto joint = marginal(d, all);
    std::map<std::string, double> product{{"", 1.0}};
    for (const auto &part : parts) {
        std::map<std::string, double> next;
        for (const auto &[prefix, p] : product) {
            for (const auto &[suffix, q] : part) {
                next[prefix + suffix] += p * q;
            }
        }
        product = std::move(next);
    }
    return distance(joint, product) <= kProbabilityTolerance;
}

std::string names(const Circuit &c, const std::vector<std::size_t> &tests) {
    std::string out = "{";
    for (std::size_t i = 0; i < tests.size(); i++) {
        out += (i ? "," : "") + c.tests()[tests[i]].id;
    }
    return out + "}";
}

}  // namespace

CircuitAnalysis analyze(const Circuit &c) {
    std::vector<std::vector<std::size_t>> upstream(c.tests().size());
    for (const auto &w : c.wires()) {
        upstream[w.to.test].push_back(w.from.test);
    }
    CircuitAnalysis a;
    a.observations = c.observations();
    for (std::size_t o : a.observations) {
        std::set<std::size_t> past;
        std::vector<std::size_t> stack = upstream[o];
        while (!stack.empty()) {
            std::size_t t = stack.back();
            stack.pop_back();
            if (past.insert(t).second) {
                stack.insert(stack.end(), upstream[t].begin(), upstream[t].end());
            }
        }
        std::map<int, int> preparations;
        bool embeddable = true;
        for (std::size_t t : past) {
            int kind = c.tests()[t].kind;
            if (test_kind(kind).category == TestCategory::Preparation && ++preparations[kind] > 1) {
                embeddable = false;
            }
        }
        a.pasts.push_back(std::move(past));
        a.embeddable.push_back(embeddable);
    }
    return a;
}

bool jointly_embeddable(const Circuit &c, const CircuitAnalysis &a, const std::vector<std::size_t> &members) {
    std::set<std::size_t> tests;
    for (std::size_t k : members) {
        if (k >= a.observations.size()) {
            fail(ErrorCode::InvalidArgument, "observation index out of range");
        }
        if (!a.embeddable[k]) {
            return false;
        }
        tests.insert(a.observations[k]);
        tests.insert(a.pasts[k].begin(), a.pasts[k].end());
    }
    std::vector<int> seen(kTestKindCount, 0);
    for (std::size_t t : tests) {
        if (++seen[c.tests()[t].kind] > 1) {
            return false;
        }
    }
    return true;
}

bool causally_independent(const CircuitAnalysis &a, std::size_t k1, std::size_t k2) {
    return !overlaps(a.pasts.at(k1), a.pasts.at(k2));
}

Classification classify(const Circuit &c) {
    auto a = analyze(c);
    auto groups = components(a.observations.size(), [&](std::size_t i, std::size_t j) {
        return a.embeddable[i] && a.embeddable[j] && !causally_independent(a, i, j);
    });
    Classification out;
    for (const auto &g : groups) {
        std::vector<std::size_t> tests;
        for (std::size_t k : g) {
            tests.push_back(a.observations[k]);
        }
        if (a.embeddable[g.front()]) {
            out.embeddable_sets.push_back(std::move(tests));
        } else {
            out.non_embeddable.push_back(tests.front());
        }
    }
    return out;
}

double OutcomeDistribution::total() const {
    double sum = 0.0;
    for (const auto &[k, p] : probs) {
        sum += p;
    }
    return sum;
}

OutcomeDistribution assign_probability(const Circuit &c) {
    auto classes = classify(c);
    auto observations = c.observations();
    OutcomeDistribution d;
    std::map<std::size_t, std::size_t> position;
    for (std::size_t i = 0; i < observations.size(); i++) {
        position[observations[i]] = i;
        d.observation_ids.push_back(c.tests()[observations[i]].id);
    }
    std::size_t sets = classes.embeddable_sets.size();
    if (sets >= 8 * sizeof(std::size_t) - 1) {
        fail(ErrorCode::BoundExceeded, "too many embeddable sets");
    }
    double weight = std::ldexp(1.0, -static_cast<int>(sets));
    for (std::size_t bits = 0; bits < (std::size_t{1} << sets); bits++) {
        std::string outcome(observations.size(), '0');
        for (std::size_t s = 0; s < sets; s++) {
            if ((bits >> s) & 1) {
                for (std::size_t t : classes.embeddable_sets[s]) {
                    outcome[position[t]] = '1';
                }
            }
        }
        d.probs[outcome] += weight;
    }
    return d;
}

OutcomeDistribution marginalize(const OutcomeDistribution &d, std::string_view observation_id) {
    auto it = std::find(d.observation_ids.begin(), d.observation_ids.end(), observation_id);
    if (it == d.observation_ids.end()) {
        fail(ErrorCode::InvalidArgument, "no observation '" + std::string(observation_id) + "'");
    }
    std::size_t drop = it - d.observation_ids.begin();
    OutcomeDistribution out;
    out.observation_ids = d.observation_ids;
    out.observation_ids.erase(out.observation_ids.begin() + drop);
    for (const auto &[outcome, p] : d.probs) {
        std::string key = outcome;
        key.erase(drop, 1);
        out.probs[key] += p;
    }
    return out;
}

NsiReport check_nsi(const Circuit &c) {
    require_valid(c);
    NsiReport report;
    auto d = assign_probability(c);
    auto observations = c.observations();
    if (std::abs(d.total() - 1.0) > kProbabilityTolerance) {
        report.failures.push_back("distribution sums to " + format_real(d.total()));
    }

    for (std::size_t o : observations) {
        report.marginal_checks++;
        auto summed = marginalize(d, c.tests()[o].id);
        auto removed = assign_probability(remove_observation(c, o));
        if (summed.observation_ids != removed.observation_ids ||
            distance(summed.probs, removed.probs) > kProbabilityTolerance) {
            report.failures.push_back("marginal over " + c.tests()[o].id +
                                      " differs from the circuit with it removed");
        }
    }

    auto a = analyze(c);
    std::size_t count = observations.size();
    for (std::size_t i = 0; i < count; i++) {
        for (std::size_t j = i + 1; j < count; j++) {
            if (causally_independent(a, i, j)) {
                report.factorization_checks++;
                if (!factorizes(d, {{i}, {j}})) {
                    report.failures.push_back("independent pair " + names(c, {observations[i], observations[j]}) +
                                              " is correlated");
                }
            }
        }
    }
    auto causal = components(count, [&](std::size_t i, std::size_t j) { return !causally_independent(a, i, j); });
    if (causal.size() > 1) {
        report.factorization_checks++;
        if (!factorizes(d, causal)) {
            report.failures.push_back("joint does not factorize over causally independent groups");
        }
    }
    auto classes = classify(c);
    std::vector<std::vector<std::size_t>> class_positions;
    std::map<std::size_t, std::size_t> position;
    for (std::size_t i = 0; i < count; i++) {
        position[observations[i]] = i;
    }
    for (const auto &set : classes.embeddable_sets) {
        std::vector<std::size_t> g;
        for (std::size_t t : set) {
            g.push_back(position[t]);
        }
        class_positions.push_back(g);
    }
    for (std::size_t t : classes.non_embeddable) {
        class_positions.push_back({position[t]});
    }
    if (class_positions.size() > 1) {
        report.factorization_checks++;
        if (!factorizes(d, class_positions)) {
            report.failures.push_back("joint does not factorize over the classified sets");
        }
    }
    return report;
}

PropositionReport check_propositions(const Circuit &c) {
    PropositionReport report;
    auto a = analyze(c);
    std::size_t count = a.observations.size();
    if (count > kMaxPropositionObservations) {
        fail(ErrorCode::BoundExceeded, "proposition check supports at most " +
                                           std::to_string(kMaxPropositionObservations) + " observations");
    }
    for (std::size_t i = 0; i < count; i++) {
        for (std::size_t j = i + 1; j < count; j++) {
            if (a.embeddable[i] && a.embeddable[j] && !causally_independent(a, i, j)) {
                report.pair_checks++;
                if (!jointly_embeddable(c, a, {i, j})) {
                    report.failures.push_back("overlapping embeddable pair " +
                                              names(c, {a.observations[i], a.observations[j]}) +
                                              " is not jointly embeddable");
                }
            }
        }
    }

    auto members = [&](std::size_t mask) {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < count; k++) {
            if ((mask >> k) & 1) {
                out.push_back(k);
            }
        }
        return out;
    };
    std::vector<std::size_t> joint;
    std::vector<std::set<std::size_t>> joint_past;
    for (std::size_t mask = 1; mask < (std::size_t{1} << count); mask++) {
        auto m = members(mask);
        if (jointly_embeddable(c, a, m)) {
            std::set<std::size_t> past;
            for (std::size_t k : m) {
                past.insert(a.pasts[k].begin(), a.pasts[k].end());
            }
            joint.push_back(mask);
            joint_past.push_back(std::move(past));
        }
    }
    for (std::size_t x = 0; x < joint.size(); x++) {
        for (std::size_t y = x + 1; y < joint.size(); y++) {
            if (!overlaps(joint_past[x], joint_past[y])) {
                continue;
            }
            report.set_checks++;
            if (!jointly_embeddable(c, a, members(joint[x] | joint[y]))) {
                std::vector<std::size_t> tests;
                for (std::size_t k : members(joint[x] | joint[y])) {
                    tests.push_back(a.observations[k]);
                }
                report.failures.push_back("union " + names(c, tests) + " of overlapping embeddable sets is not embeddable");
            }
        }
    }
    return report;
}

std::string outcome_distribution_to_json(const OutcomeDistribution &d, int precision) {
    nlohmann::ordered_json j;
    j["observations"] = d.observation_ids;
    nlohmann::ordered_json probs = nlohmann::ordered_json::object();
    for (const auto &[outcome, p] : d.probs) {
        probs[outcome] = std::stod(format_real(p, precision));
    }
    j["probabilities"] = probs;
    return j.dump(2) + "\n";
}

}  // namespace coord
