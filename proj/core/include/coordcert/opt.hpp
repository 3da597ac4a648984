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

#ifndef COORDCERT_OPT_HPP
#define COORDCERT_OPT_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coordcert/error.hpp"

namespace coord {

// ---------------------------------------------------------------------------
// Test kinds of the four-party theory. System types are numbered 1..24; every type has
// exactly one producing kind and one consuming kind.

enum class TestCategory { Preparation, Transformation, Observation };

constexpr int kTestKindCount = 14;
constexpr int kSystemTypeCount = 24;

struct TestKind {
    TestCategory category;
    /// Preparations and observations: {party}. Transformations: the two excluded parties.
    std::vector<int> parties;
    std::vector<int> inputs;
    std::vector<int> outputs;
    /// "notA4", "notA3A4", "A1".
    std::string name;
};

/// Kinds 0..3 prepare not(A_1..A_4), 4..9 are the transformations ordered
/// not(A1A2), not(A1A3), not(A1A4), not(A2A3), not(A2A4), not(A3A4), 10..13 observe A_1..A_4.
const TestKind &test_kind(int kind);
int preparation_kind(int excluded_party);
int transformation_kind(int excluded_a, int excluded_b);
int observation_kind(int party);
int kind_by_name(std::string_view name);
int producer_kind(int system_type);
int consumer_kind(int system_type);
std::string_view category_keyword(TestCategory category);

// ---------------------------------------------------------------------------

struct TestInstance {
    std::string id;
    int kind = 0;
};

struct PortRef {
    std::size_t test = 0;
    int type = 0;
    auto operator<=>(const PortRef &) const = default;
};

struct Wire {
    PortRef from;
    PortRef to;
};

/// Tests plus wires between their typed ports. Construction is permissive; use
/// validate_circuit to check typing, wiring and closure.
class Circuit {
   public:
    std::size_t add_test(std::string id, int kind);
    /// Auto id: p<k>, t<k> or o<k> by category.
    std::size_t add_test(int kind);
    void wire(PortRef from, PortRef to);
    /// Wires the unique system type that `from` produces and `to` consumes.
    void connect(std::size_t from, std::size_t to);
    void trace(PortRef port);
    /// Traces every output that is neither wired nor traced.
    void trace_unused_outputs();

    const std::vector<TestInstance> &tests() const {
        return tests_;
    }
    const std::vector<Wire> &wires() const {
        return wires_;
    }
    const std::vector<PortRef> &traces() const {
        return traces_;
    }
    const TestInstance &test(std::size_t index) const;
    std::optional<std::size_t> find(std::string_view id) const;
    /// Indices of observation tests, in insertion order.
    std::vector<std::size_t> observations() const;
    std::size_t preparation_count() const;

   private:
    std::vector<TestInstance> tests_;
    std::vector<Wire> wires_;
    std::vector<PortRef> traces_;
};

struct CircuitIssue {
    ErrorCode code;
    std::string message;
};

/// Checks port existence and typing, single use of every port, acyclicity, and closure.
std::vector<CircuitIssue> validate_circuit(const Circuit &c);
/// Throws the first issue as an Error.
void require_valid(const Circuit &c);

/// Text format: `prep|trans|obs <id> <kind>`, `wire <src>.<type> <dst>.<type>`, `trace <src>.<type>`.
std::string circuit_to_text(const Circuit &c);
Circuit circuit_from_text(std::string_view text);

/// Copy of `c` without the given observation; the outputs that fed it become traced.
Circuit remove_observation(const Circuit &c, std::size_t observation);

// ---------------------------------------------------------------------------
// Causal structure of observations.

struct CircuitAnalysis {
    /// Observation test indices.
    std::vector<std::size_t> observations;
    /// pasts[k]: tests upstream of observations[k].
    std::vector<std::set<std::size_t>> pasts;
    /// At most one instance of every preparation kind in the past.
    std::vector<bool> embeddable;
};

CircuitAnalysis analyze(const Circuit &c);

/// Members indexed into analysis.observations.
bool jointly_embeddable(const Circuit &c, const CircuitAnalysis &a, const std::vector<std::size_t> &members);
bool causally_independent(const CircuitAnalysis &a, std::size_t k1, std::size_t k2);

struct Classification {
    /// Observation test indices of each maximal embeddable set.
    std::vector<std::vector<std::size_t>> embeddable_sets;
    std::vector<std::size_t> non_embeddable;
};

/// Embeddable observations joined whenever their pasts overlap; the rest stay singletons.
Classification classify(const Circuit &c);

/// Outcome distribution over the circuit's observations; outcome strings list observations
/// in test order, first outcome written as 0.
struct OutcomeDistribution {
    std::vector<std::string> observation_ids;
    std::map<std::string, double> probs;

    double total() const;
};

/// Shared random bit per embeddable set, outcome 0 for every non-embeddable observation,
/// product across sets.
OutcomeDistribution assign_probability(const Circuit &c);

/// Sums out one observation (by id).
OutcomeDistribution marginalize(const OutcomeDistribution &d, std::string_view observation_id);

struct NsiReport {
    std::size_t marginal_checks = 0;
    std::size_t factorization_checks = 0;
    std::vector<std::string> failures;
    bool ok() const {
        return failures.empty();
    }
};

/// (a) Summing out any observation equals the rule on the circuit with it removed.
/// (b) The joint equals the product of marginals over causally independent groups and over
///     the classified sets.
NsiReport check_nsi(const Circuit &c);

struct PropositionReport {
    std::size_t pair_checks = 0;
    std::size_t set_checks = 0;
    std::vector<std::string> failures;
    bool ok() const {
        return failures.empty();
    }
};

/// Overlapping embeddable observations are jointly embeddable, and so is the union of any
/// two overlapping jointly embeddable sets.
PropositionReport check_propositions(const Circuit &c);

std::string outcome_distribution_to_json(const OutcomeDistribution &d, int precision = 12);

// ---------------------------------------------------------------------------
// Reference circuits and enumeration.

/// Every test once: the two-layer tetrahedron.
Circuit tetrahedron_circuit();
/// Observations A_1 and A_2 with their joint tetrahedron past.
Circuit embeddable_pair_circuit();
/// A_1 alone with two not(A_4) preparations, one per path.
Circuit duplicated_source_circuit();

/// Canonical text independent of test ids and insertion order.
std::string canonical_circuit_form(const Circuit &c);

constexpr int kMaxEnumerationBound = 8;

/// All closed circuits with at most `max_preparations` preparations, up to isomorphism,
/// in which every test lies in the past of some observation, plus the single-preparation
/// circuits that trace everything. Throws BoundExceeded above kMaxEnumerationBound.
std::vector<Circuit> enumerate_circuits(int max_preparations);

}  // namespace coord

#endif
