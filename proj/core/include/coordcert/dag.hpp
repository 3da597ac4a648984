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

#ifndef COORDCERT_DAG_HPP
#define COORDCERT_DAG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coord {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Bitmask over parties; bit i stands for party i+1.
using PartySet = std::uint32_t;

constexpr int kMaxParties = 24;

enum class NodeKind { ObservedClassical, ObservedQuantum, LatentClassical, LatentQuantum };

bool is_observed(NodeKind kind);
bool is_latent(NodeKind kind);
bool is_quantum(NodeKind kind);
std::string_view node_kind_name(NodeKind kind);
NodeKind parse_node_kind(std::string_view text);

PartySet full_party_set(int n);
PartySet singleton(int party);
int party_count(PartySet set);
/// Parties in increasing order, 1-based.
std::vector<int> party_members(PartySet set);
/// Orders by cardinality, then lexicographically by members.
bool party_set_less(PartySet a, PartySet b);
/// Renders a party set as "{1,2}".
std::string party_set_label(PartySet set);
/// Parses "{1,2}"; throws Parse on malformed input.
PartySet parse_party_set(std::string_view text);

struct Node {
    NodeId id = 0;
    NodeKind kind = NodeKind::LatentQuantum;
    /// Nonzero for nodes labelled by a subset of parties; observed nodes carry a singleton.
    PartySet parties = 0;
    /// Opaque label used when `parties` is zero (for example "lambda").
    std::string tag;

    std::string label() const;
    bool operator==(const Node &other) const = default;
};

/// A directed acyclic graph of observed and latent nodes with stable integer ids.
/// Acyclicity is checked by validate(); mutation only checks that endpoints exist.
class CausalDag {
   public:
    void add_node(Node node);
    NodeId add_node(NodeKind kind, PartySet parties, std::string tag = {});
    void add_edge(NodeId from, NodeId to);
    bool remove_edge(NodeId from, NodeId to);

    bool has_node(NodeId id) const;
    bool has_edge(NodeId from, NodeId to) const;
    const Node &node(NodeId id) const;
    Node &mutable_node(NodeId id);
    const std::map<NodeId, Node> &nodes() const {
        return nodes_;
    }
    const std::set<Edge> &edges() const {
        return edges_;
    }
    std::size_t node_count() const {
        return nodes_.size();
    }
    std::size_t edge_count() const {
        return edges_.size();
    }
    NodeId next_id() const;

    const std::set<NodeId> &children(NodeId id) const;
    const std::set<NodeId> &parents(NodeId id) const;

    std::vector<NodeId> observed_nodes() const;
    std::optional<NodeId> find_observed(int party) const;
    std::optional<NodeId> find_by_label(const std::string &label) const;

    /// Strict descendants (excluding `id`).
    std::set<NodeId> descendants(NodeId id) const;
    /// Strict ancestors (excluding `id`).
    std::set<NodeId> ancestors(NodeId id) const;
    /// Observed parties reachable from `id`, counting `id` itself when observed.
    PartySet observed_descendants(NodeId id) const;

    /// Kahn order; throws Cycle if the graph has a directed cycle.
    std::vector<NodeId> topological_order() const;
    bool is_acyclic() const;

    /// Number of parties, i.e. observed node count.
    int party_count() const;

    /// Throws if the graph is cyclic or the observed nodes are not labelled {1}..{N} exactly once.
    void validate() const;

   private:
    std::map<NodeId, Node> nodes_;
    std::set<Edge> edges_;
    std::map<NodeId, std::set<NodeId>> children_;
    std::map<NodeId, std::set<NodeId>> parents_;
};

/// Power-set DAG on parties 1..n: every nonempty proper subset is a node and each set
/// points at the subsets one element smaller. Singletons are observed classical nodes.
CausalDag build_gstar(int n);

/// build_gstar with quantum observed nodes plus a classical latent "lambda" feeding every party.
CausalDag build_gstar_q(int n);

/// True iff one node (an observed node counts for itself) reaches every observed node.
bool all_share_common_cause(const CausalDag &dag);

/// As all_share_common_cause but only quantum nodes may act as the common cause.
bool all_share_quantum_common_cause(const CausalDag &dag);

/// True iff no observed node has an observed child.
bool observed_nodes_terminal(const CausalDag &dag);

/// Records how a source DAG embeds into the DAG produced by a rewriting step.
struct ContainmentWitnessMap {
    std::map<NodeId, NodeId> node_map;
    std::set<NodeId> added_nodes;
    std::set<Edge> added_edges;
    /// Source edges deleted by an allowed rewriting (observed-to-observed edges, merges).
    std::set<Edge> removed_edges;
    /// Source edges whose image is a directed path of length greater than one.
    std::set<Edge> rerouted_edges;
    /// Source nodes with no observed descendant; they cannot influence observations.
    std::set<NodeId> pruned_nodes;
};

/// Rewrites a member of G_N so that every observed node is terminal while keeping
/// observational containment: adds covering latents, intermediate latents, and
/// forwarding latents that replace observed-to-observed edges.
std::pair<CausalDag, ContainmentWitnessMap> make_terminal(const CausalDag &dag);

/// Embeds a terminal member of G_n into build_gstar(n) by labelling every node with its
/// observed-descendant set, merging equal labels, and completing the power set.
std::pair<CausalDag, ContainmentWitnessMap> extend_to_gstar(const CausalDag &dag, int n);

/// Canonical text that ignores node ids: nodes by (label, kind), edges by label pairs.
/// Only meaningful when labels are distinct, as in every power-set DAG.
std::string canonical_form(const CausalDag &dag);
bool label_isomorphic(const CausalDag &a, const CausalDag &b);

}  // namespace coord

#endif
