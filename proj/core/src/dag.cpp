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

#include "coordcert/dag.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>

#include "coordcert/error.hpp"

namespace coord {

bool is_observed(NodeKind kind) {
    return kind == NodeKind::ObservedClassical || kind == NodeKind::ObservedQuantum;
}

bool is_latent(NodeKind kind) {
    return !is_observed(kind);
}

bool is_quantum(NodeKind kind) {
    return kind == NodeKind::ObservedQuantum || kind == NodeKind::LatentQuantum;
}

std::string_view node_kind_name(NodeKind kind) {
    switch (kind) {
        case NodeKind::ObservedClassical:
            return "observed_classical";
        case NodeKind::ObservedQuantum:
            return "observed_quantum";
        case NodeKind::LatentClassical:
            return "latent_classical";
        case NodeKind::LatentQuantum:
            return "latent_quantum";
    }
    return "unknown";
}

NodeKind parse_node_kind(std::string_view text) {
    for (NodeKind k : {NodeKind::ObservedClassical, NodeKind::ObservedQuantum, NodeKind::LatentClassical,
                       NodeKind::LatentQuantum}) {
        if (node_kind_name(k) == text) {
            return k;
        }
    }
    fail(ErrorCode::Parse, "unknown node kind '" + std::string(text) + "'");
}

PartySet full_party_set(int n) {
    if (n < 1 || n > kMaxParties) {
        fail(ErrorCode::InvalidArity, "party count must be in [1, " + std::to_string(kMaxParties) + "]");
    }
    return (PartySet{1} << n) - 1;
}

PartySet singleton(int party) {
    if (party < 1 || party > kMaxParties) {
        fail(ErrorCode::InvalidArgument, "party index out of range: " + std::to_string(party));
    }
    return PartySet{1} << (party - 1);
}

int party_count(PartySet set) {
    return std::popcount(set);
}

std::string party_set_label(PartySet set) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < kMaxParties; i++) {
        if (set & (PartySet{1} << i)) {
            if (!first) {
                out += ',';
            }
            out += std::to_string(i + 1);
            first = false;
        }
    }
    out += '}';
    return out;
}

PartySet parse_party_set(std::string_view text) {
    if (text.size() < 3 || text.front() != '{' || text.back() != '}') {
        fail(ErrorCode::Parse, "party set must look like {1,2}: '" + std::string(text) + "'");
    }
    PartySet out = 0;
    std::string body(text.substr(1, text.size() - 2));
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int p = 0;
        try {
            std::size_t used = 0;
            p = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            fail(ErrorCode::Parse, "bad party index '" + item + "' in " + std::string(text));
        }
        if (p < 1 || p > kMaxParties) {
            fail(ErrorCode::Parse, "party index out of range in " + std::string(text));
        }
        if (out & singleton(p)) {
            fail(ErrorCode::Parse, "duplicate party in " + std::string(text));
        }
        out |= singleton(p);
    }
    if (out == 0) {
        fail(ErrorCode::Parse, "empty party set");
    }
    return out;
}

std::vector<int> party_members(PartySet set) {
    std::vector<int> out;
    for (int i = 0; i < kMaxParties; i++) {
        if (set & (PartySet{1} << i)) {
            out.push_back(i + 1);
        }
    }
    return out;
}

bool party_set_less(PartySet a, PartySet b) {
    if (party_count(a) != party_count(b)) {
        return party_count(a) < party_count(b);
    }
    return party_members(a) < party_members(b);
}

std::string Node::label() const {
    return parties != 0 ? party_set_label(parties) : tag;
}

void CausalDag::add_node(Node node) {
    if (nodes_.count(node.id)) {
        fail(ErrorCode::InvalidArgument, "duplicate node id " + std::to_string(node.id));
    }
    if (is_observed(node.kind) && coord::party_count(node.parties) != 1) {
        fail(ErrorCode::InvalidArgument, "observed node " + std::to_string(node.id) + " needs a single-party label");
    }
    if (node.parties == 0 && node.tag.empty()) {
        fail(ErrorCode::InvalidArgument, "node " + std::to_string(node.id) + " has neither parties nor tag");
    }
    NodeId id = node.id;
    nodes_.emplace(id, std::move(node));
    children_[id];
    parents_[id];
}

NodeId CausalDag::add_node(NodeKind kind, PartySet parties, std::string tag) {
    NodeId id = next_id();
    add_node(Node{id, kind, parties, std::move(tag)});
    return id;
}

NodeId CausalDag::next_id() const {
    return nodes_.empty() ? 0 : nodes_.rbegin()->first + 1;
}

void CausalDag::add_edge(NodeId from, NodeId to) {
    if (!has_node(from) || !has_node(to)) {
        fail(ErrorCode::InvalidArgument,
             "edge " + std::to_string(from) + "->" + std::to_string(to) + " references a missing node");
    }
    if (from == to) {
        fail(ErrorCode::Cycle, "self loop on node " + std::to_string(from));
    }
    edges_.insert({from, to});
    children_[from].insert(to);
    parents_[to].insert(from);
}

bool CausalDag::remove_edge(NodeId from, NodeId to) {
    if (!edges_.erase({from, to})) {
        return false;
    }
    children_[from].erase(to);
    parents_[to].erase(from);
    return true;
}

bool CausalDag::has_node(NodeId id) const {
    return nodes_.count(id) != 0;
}

bool CausalDag::has_edge(NodeId from, NodeId to) const {
    return edges_.count({from, to}) != 0;
}

const Node &CausalDag::node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        fail(ErrorCode::InvalidArgument, "no node with id " + std::to_string(id));
    }
    return it->second;
}

Node &CausalDag::mutable_node(NodeId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        fail(ErrorCode::InvalidArgument, "no node with id " + std::to_string(id));
    }
    return it->second;
}

const std::set<NodeId> &CausalDag::children(NodeId id) const {
    auto it = children_.find(id);
    if (it == children_.end()) {
        fail(ErrorCode::InvalidArgument, "no node with id " + std::to_string(id));
    }
    return it->second;
}

const std::set<NodeId> &CausalDag::parents(NodeId id) const {
    auto it = parents_.find(id);
    if (it == parents_.end()) {
        fail(ErrorCode::InvalidArgument, "no node with id " + std::to_string(id));
    }
    return it->second;
}

std::vector<NodeId> CausalDag::observed_nodes() const {
    std::vector<NodeId> out;
    for (const auto &[id, n] : nodes_) {
        if (is_observed(n.kind)) {
            out.push_back(id);
        }
    }
    return out;
}

std::optional<NodeId> CausalDag::find_observed(int party) const {
    PartySet want = singleton(party);
    for (const auto &[id, n] : nodes_) {
        if (is_observed(n.kind) && n.parties == want) {
            return id;
        }
    }
    return std::nullopt;
}

std::optional<NodeId> CausalDag::find_by_label(const std::string &label) const {
    for (const auto &[id, n] : nodes_) {
        if (n.label() == label) {
            return id;
        }
    }
    return std::nullopt;
}

namespace {

std::set<NodeId> reach(const std::map<NodeId, std::set<NodeId>> &adj, NodeId start) {
    std::set<NodeId> seen;
    std::deque<NodeId> todo{start};
    while (!todo.empty()) {
        NodeId cur = todo.front();
        todo.pop_front();
        for (NodeId nxt : adj.at(cur)) {
            if (seen.insert(nxt).second) {
                todo.push_back(nxt);
            }
        }
    }
    seen.erase(start);
    return seen;
}

}  // namespace

std::set<NodeId> CausalDag::descendants(NodeId id) const {
    node(id);
    return reach(children_, id);
}

std::set<NodeId> CausalDag::ancestors(NodeId id) const {
    node(id);
    return reach(parents_, id);
}

PartySet CausalDag::observed_descendants(NodeId id) const {
    PartySet out = 0;
    const Node &self = node(id);
    if (is_observed(self.kind)) {
        out |= self.parties;
    }
    for (NodeId d : descendants(id)) {
        const Node &n = nodes_.at(d);
        if (is_observed(n.kind)) {
            out |= n.parties;
        }
    }
    return out;
}

std::vector<NodeId> CausalDag::topological_order() const {
    std::map<NodeId, std::size_t> indegree;
    for (const auto &[id, ps] : parents_) {
        indegree[id] = ps.size();
    }
    std::deque<NodeId> ready;
    for (const auto &[id, d] : indegree) {
        if (d == 0) {
            ready.push_back(id);
        }
    }
    std::vector<NodeId> order;
    while (!ready.empty()) {
        NodeId cur = ready.front();
        ready.pop_front();
        order.push_back(cur);
        for (NodeId c : children_.at(cur)) {
            if (--indegree[c] == 0) {
                ready.push_back(c);
            }
        }
    }
    if (order.size() != nodes_.size()) {
        fail(ErrorCode::Cycle, "graph has a directed cycle");
    }
    return order;
}

bool CausalDag::is_acyclic() const {
    try {
        topological_order();
        return true;
    } catch (const Error &) {
        return false;
    }
}

int CausalDag::party_count() const {
    return static_cast<int>(observed_nodes().size());
}

void CausalDag::validate() const {
    topological_order();
    int n = party_count();
    if (n > kMaxParties) {
        fail(ErrorCode::InvalidArity, "too many observed nodes");
    }
    PartySet seen = 0;
    for (NodeId id : observed_nodes()) {
        PartySet p = nodes_.at(id).parties;
        if (seen & p) {
            fail(ErrorCode::InvalidArgument, "party label " + party_set_label(p) + " used twice");
        }
        seen |= p;
    }
    if (n > 0 && seen != full_party_set(n)) {
        fail(ErrorCode::InvalidArgument, "observed nodes must be labelled {1}..{" + std::to_string(n) + "}");
    }
}

CausalDag build_gstar(int n) {
    if (n < 3) {
        fail(ErrorCode::InvalidArity, "g* needs at least 3 parties, got " + std::to_string(n));
    }
    if (n > kMaxParties) {
        fail(ErrorCode::InvalidArity, "g* supports at most " + std::to_string(kMaxParties) + " parties");
    }
    PartySet full = full_party_set(n);
    std::vector<PartySet> sets;
    for (PartySet s = 1; s < full; s++) {
        sets.push_back(s);
    }
    // By size, then lexicographic members: observed party i gets id i-1.
    std::sort(sets.begin(), sets.end(), party_set_less);

    CausalDag dag;
    std::map<PartySet, NodeId> id_of;
    for (PartySet s : sets) {
        NodeKind kind = party_count(s) == 1 ? NodeKind::ObservedClassical : NodeKind::LatentQuantum;
        id_of[s] = dag.add_node(kind, s);
    }
    for (PartySet s : sets) {
        if (party_count(s) < 2) {
            continue;
        }
        for (int i = 0; i < n; i++) {
            PartySet bit = PartySet{1} << i;
            if (s & bit) {
                dag.add_edge(id_of[s], id_of[s & ~bit]);
            }
        }
    }
    return dag;
}

CausalDag build_gstar_q(int n) {
    CausalDag dag = build_gstar(n);
    for (NodeId id : dag.observed_nodes()) {
        dag.mutable_node(id).kind = NodeKind::ObservedQuantum;
    }
    NodeId lambda = dag.add_node(NodeKind::LatentClassical, 0, "lambda");
    for (NodeId id : dag.observed_nodes()) {
        dag.add_edge(lambda, id);
    }
    return dag;
}

namespace {

bool some_node_reaches_all(const CausalDag &dag, bool quantum_only) {
    int n = dag.party_count();
    if (n == 0) {
        return false;
    }
    PartySet all = 0;
    for (NodeId id : dag.observed_nodes()) {
        all |= dag.node(id).parties;
    }
    for (const auto &[id, node] : dag.nodes()) {
        if (quantum_only && !is_quantum(node.kind)) {
            continue;
        }
        if (dag.observed_descendants(id) == all) {
            return true;
        }
    }
    return false;
}

}  // namespace

bool all_share_common_cause(const CausalDag &dag) {
    return some_node_reaches_all(dag, false);
}

bool all_share_quantum_common_cause(const CausalDag &dag) {
    return some_node_reaches_all(dag, true);
}

bool observed_nodes_terminal(const CausalDag &dag) {
    for (NodeId id : dag.observed_nodes()) {
        for (NodeId c : dag.children(id)) {
            if (is_observed(dag.node(c).kind)) {
                return false;
            }
        }
    }
    return true;
}

namespace {

struct LabelKey {
    int has_parties;
    int size;
    std::vector<int> members;
    std::string tag;
    int kind;
    auto operator<=>(const LabelKey &) const = default;
};

LabelKey label_key(const Node &node) {
    LabelKey key;
    key.has_parties = node.parties != 0 ? 0 : 1;
    key.size = party_count(node.parties);
    key.members = party_members(node.parties);
    key.tag = node.tag;
    key.kind = static_cast<int>(node.kind);
    return key;
}

}  // namespace

std::string canonical_form(const CausalDag &dag) {
    std::vector<std::pair<LabelKey, NodeId>> keyed;
    for (const auto &[id, node] : dag.nodes()) {
        keyed.push_back({label_key(node), id});
    }
    std::sort(keyed.begin(), keyed.end());
    std::map<NodeId, std::size_t> rank;
    std::ostringstream out;
    for (std::size_t i = 0; i < keyed.size(); i++) {
        rank[keyed[i].second] = i;
        const Node &node = dag.node(keyed[i].second);
        out << "node " << node_kind_name(node.kind) << ' ' << node.label() << '\n';
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto &[a, b] : dag.edges()) {
        edges.push_back({rank[a], rank[b]});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto &[a, b] : edges) {
        out << "edge " << a << ' ' << b << '\n';
    }
    return out.str();
}

bool label_isomorphic(const CausalDag &a, const CausalDag &b) {
    return canonical_form(a) == canonical_form(b);
}

}  // namespace coord
