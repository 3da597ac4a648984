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
#include <bit>

#include "coordcert/dag.hpp"
#include "coordcert/error.hpp"

namespace coord {

namespace {

std::vector<PartySet> maximal_sets(const std::set<PartySet> &sets) {
    std::vector<PartySet> out;
    for (PartySet s : sets) {
        bool dominated = false;
        for (PartySet t : sets) {
            if (t != s && (s & t) == s) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end(), party_set_less);
    return out;
}

void add_tracked_edge(CausalDag &dag, ContainmentWitnessMap &map, NodeId from, NodeId to) {
    if (!dag.has_edge(from, to)) {
        dag.add_edge(from, to);
        map.added_edges.insert({from, to});
    }
}

NodeId add_tracked_latent(CausalDag &dag, ContainmentWitnessMap &map, const std::string &tag) {
    NodeId id = dag.add_node(NodeKind::LatentQuantum, 0, tag);
    map.added_nodes.insert(id);
    return id;
}

void attach_to_observed(CausalDag &dag, ContainmentWitnessMap &map, NodeId latent, PartySet parties) {
    for (int p : party_members(parties)) {
        add_tracked_edge(dag, map, latent, *dag.find_observed(p));
    }
}

}  // namespace

std::pair<CausalDag, ContainmentWitnessMap> make_terminal(const CausalDag &dag) {
    dag.validate();
    if (all_share_common_cause(dag)) {
        fail(ErrorCode::Domain, "input has a global common cause, so it is not in G_N");
    }
    ContainmentWitnessMap map;
    for (const auto &[id, node] : dag.nodes()) {
        map.node_map[id] = id;
    }
    if (observed_nodes_terminal(dag)) {
        return {dag, map};
    }

    CausalDag out = dag;

    // Step 1: one covering latent above each maximal set of commonly caused parties.
    std::set<PartySet> reach;
    for (const auto &[id, node] : dag.nodes()) {
        if (PartySet d = dag.observed_descendants(id)) {
            reach.insert(d);
        }
    }
    std::vector<NodeId> generation;
    int counter = 0;
    for (PartySet s : maximal_sets(reach)) {
        NodeId id = add_tracked_latent(out, map, "cover" + std::to_string(++counter));
        attach_to_observed(out, map, id, s);
        generation.push_back(id);
    }

    // Step 2: intermediate latents for maximal shared reach, one generation at a time.
    counter = 0;
    for (int round = 0; round <= kMaxParties; round++) {
        std::set<PartySet> meets;
        for (std::size_t i = 0; i < generation.size(); i++) {
            for (std::size_t j = i + 1; j < generation.size(); j++) {
                PartySet m = out.observed_descendants(generation[i]) & out.observed_descendants(generation[j]);
                if (party_count(m) >= 2) {
                    meets.insert(m);
                }
            }
        }
        if (meets.empty()) {
            break;
        }
        std::vector<NodeId> next;
        for (PartySet s : maximal_sets(meets)) {
            NodeId id = add_tracked_latent(out, map, "meet" + std::to_string(++counter));
            for (NodeId g : generation) {
                if ((out.observed_descendants(g) & s) == s) {
                    add_tracked_edge(out, map, g, id);
                }
            }
            attach_to_observed(out, map, id, s);
            next.push_back(id);
        }
        generation = std::move(next);
    }

    // Step 3: a forwarding latent per observed node with observed children, then drop
    // the observed-to-observed edges.
    std::vector<Edge> observed_edges;
    for (const auto &[a, b] : dag.edges()) {
        if (is_observed(dag.node(a).kind) && is_observed(dag.node(b).kind)) {
            observed_edges.push_back({a, b});
        }
    }
    for (NodeId a : dag.topological_order()) {
        if (!is_observed(dag.node(a).kind)) {
            continue;
        }
        std::vector<NodeId> observed_children;
        for (NodeId c : dag.children(a)) {
            if (is_observed(dag.node(c).kind)) {
                observed_children.push_back(c);
            }
        }
        if (observed_children.empty()) {
            continue;
        }
        NodeId fwd = add_tracked_latent(out, map, "fwd" + dag.node(a).label());
        std::vector<NodeId> latent_parents;
        for (NodeId p : out.parents(a)) {
            if (is_latent(out.node(p).kind)) {
                latent_parents.push_back(p);
            }
        }
        for (NodeId p : latent_parents) {
            add_tracked_edge(out, map, p, fwd);
        }
        add_tracked_edge(out, map, fwd, a);
        for (NodeId c : observed_children) {
            add_tracked_edge(out, map, fwd, c);
        }
    }
    for (const Edge &e : observed_edges) {
        out.remove_edge(e.first, e.second);
        map.removed_edges.insert(e);
    }

    if (!out.is_acyclic() || !observed_nodes_terminal(out) || all_share_common_cause(out)) {
        fail(ErrorCode::Internal, "terminalization produced a graph outside G_N");
    }
    return {std::move(out), std::move(map)};
}

std::pair<CausalDag, ContainmentWitnessMap> extend_to_gstar(const CausalDag &dag, int n) {
    dag.validate();
    if (n < 3) {
        fail(ErrorCode::InvalidArity, "extension needs n >= 3, got " + std::to_string(n));
    }
    if (dag.party_count() != n) {
        fail(ErrorCode::InvalidArity,
             "graph has " + std::to_string(dag.party_count()) + " observed nodes, expected " + std::to_string(n));
    }
    if (!observed_nodes_terminal(dag)) {
        fail(ErrorCode::Domain, "observed nodes must be terminal; run make_terminal first");
    }

    std::set<NodeKind> observed_kinds;
    for (NodeId id : dag.observed_nodes()) {
        observed_kinds.insert(dag.node(id).kind);
    }
    if (observed_kinds.size() != 1) {
        fail(ErrorCode::Domain, "observed nodes must be all classical or all quantum");
    }
    NodeKind observed_kind = *observed_kinds.begin();

    CausalDag reference = build_gstar(n);
    for (NodeId id : reference.observed_nodes()) {
        reference.mutable_node(id).kind = observed_kind;
    }
    std::map<PartySet, NodeId> id_of;
    for (const auto &[id, node] : reference.nodes()) {
        id_of[node.parties] = id;
    }

    PartySet full = full_party_set(n);
    std::map<NodeId, PartySet> genealogy;
    for (const auto &[id, node] : dag.nodes()) {
        PartySet d = dag.observed_descendants(id);
        if (d == full) {
            fail(ErrorCode::Domain, "node " + node.label() + " reaches every party, so the graph is not in G_N");
        }
        genealogy[id] = d;
    }

    ContainmentWitnessMap map;
    CausalDag out;
    auto ensure_node = [&](PartySet s) {
        NodeId id = id_of.at(s);
        if (!out.has_node(id)) {
            out.add_node(reference.node(id));
        }
        return id;
    };

    // Label every surviving node by its reach; equal labels merge into one node.
    for (const auto &[id, d] : genealogy) {
        if (d == 0) {
            map.pruned_nodes.insert(id);
            continue;
        }
        map.node_map[id] = ensure_node(d);
    }

    std::set<Edge> images;
    for (const auto &[u, v] : dag.edges()) {
        PartySet su = genealogy[u];
        PartySet sv = genealogy[v];
        if (su == 0 || sv == 0 || su == sv) {
            map.removed_edges.insert({u, v});
            continue;
        }
        if (party_count(su) - party_count(sv) == 1) {
            NodeId a = id_of.at(su);
            NodeId b = id_of.at(sv);
            if (!out.has_edge(a, b)) {
                out.add_edge(a, b);
            }
            images.insert({a, b});
            continue;
        }
        // Longer gaps become a chain that drops the missing parties in increasing order.
        map.rerouted_edges.insert({u, v});
        PartySet cur = su;
        while (cur != sv) {
            PartySet extra = cur & ~sv;
            PartySet next = cur & ~(extra & (~extra + 1));
            NodeId a = ensure_node(cur);
            NodeId b = ensure_node(next);
            if (!out.has_edge(a, b)) {
                out.add_edge(a, b);
            }
            cur = next;
        }
    }

    std::set<NodeId> mapped;
    for (const auto &[src, dst] : map.node_map) {
        mapped.insert(dst);
    }
    for (const auto &[id, node] : reference.nodes()) {
        ensure_node(node.parties);
        if (!mapped.count(id)) {
            map.added_nodes.insert(id);
        }
    }
    for (const auto &[a, b] : reference.edges()) {
        if (!out.has_edge(a, b)) {
            out.add_edge(a, b);
        }
        if (!images.count({a, b})) {
            map.added_edges.insert({a, b});
        }
    }

    if (!label_isomorphic(out, reference)) {
        fail(ErrorCode::Internal, "extension did not reproduce the power-set DAG");
    }
    return {std::move(out), std::move(map)};
}

}  // namespace coord
