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

#include "coordcert/dag_io.hpp"

#include <algorithm>
#include <sstream>

#include "coordcert/error.hpp"
#include "json.hpp"

namespace coord {

namespace {

bool label_order(const Node &a, const Node &b) {
    if ((a.parties != 0) != (b.parties != 0)) {
        return a.parties != 0;
    }
    if (a.parties != b.parties) {
        return party_set_less(a.parties, b.parties);
    }
    if (a.tag != b.tag) {
        return a.tag < b.tag;
    }
    return a.id < b.id;
}

std::vector<const Node *> sorted_nodes(const CausalDag &dag) {
    std::vector<const Node *> out;
    for (const auto &[id, node] : dag.nodes()) {
        out.push_back(&node);
    }
    std::sort(out.begin(), out.end(), [](const Node *a, const Node *b) { return label_order(*a, *b); });
    return out;
}

std::vector<Edge> sorted_edges(const CausalDag &dag, const std::vector<const Node *> &nodes) {
    std::map<NodeId, std::size_t> rank;
    for (std::size_t i = 0; i < nodes.size(); i++) {
        rank[nodes[i]->id] = i;
    }
    std::vector<Edge> out(dag.edges().begin(), dag.edges().end());
    std::sort(out.begin(), out.end(), [&](const Edge &a, const Edge &b) {
        return std::pair(rank[a.first], rank[a.second]) < std::pair(rank[b.first], rank[b.second]);
    });
    return out;
}

Node make_node(long long id, std::string_view kind, std::string_view label, std::size_t line) {
    if (id < 0 || id > static_cast<long long>(UINT32_MAX)) {
        fail(ErrorCode::Parse, "line " + std::to_string(line) + ": node id out of range");
    }
    Node node;
    node.id = static_cast<NodeId>(id);
    node.kind = parse_node_kind(kind);
    if (!label.empty() && label.front() == '{') {
        node.parties = parse_party_set(label);
    } else {
        node.tag = std::string(label);
    }
    return node;
}

}  // namespace

std::string dag_to_text(const CausalDag &dag) {
    std::ostringstream out;
    auto nodes = sorted_nodes(dag);
    for (const Node *n : nodes) {
        out << "node " << n->id << ' ' << node_kind_name(n->kind) << ' ' << n->label() << '\n';
    }
    for (const auto &[a, b] : sorted_edges(dag, nodes)) {
        out << "edge " << a << ' ' << b << '\n';
    }
    return out.str();
}

CausalDag dag_from_text(std::string_view text) {
    CausalDag dag;
    std::vector<std::pair<long long, long long>> edges;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') {
            continue;
        }
        std::string extra;
        if (word == "node") {
            long long id;
            std::string kind, label;
            if (!(ls >> id >> kind >> label) || (ls >> extra)) {
                fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 'node <id> <kind> <label>'");
            }
            try {
                dag.add_node(make_node(id, kind, label, line_no));
            } catch (const Error &e) {
                fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + e.what());
            }
        } else if (word == "edge") {
            long long a, b;
            if (!(ls >> a >> b) || (ls >> extra)) {
                fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 'edge <src> <dst>'");
            }
            edges.push_back({a, b});
        } else {
            fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": unknown record '" + word + "'");
        }
    }
    for (const auto &[a, b] : edges) {
        if (a < 0 || b < 0 || !dag.has_node(static_cast<NodeId>(a)) || !dag.has_node(static_cast<NodeId>(b))) {
            fail(ErrorCode::Parse, "edge " + std::to_string(a) + " " + std::to_string(b) + " references a missing node");
        }
        dag.add_edge(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
    dag.validate();
    return dag;
}

std::string dag_to_json(const CausalDag &dag) {
    nlohmann::ordered_json j;
    auto nodes = sorted_nodes(dag);
    j["nodes"] = nlohmann::ordered_json::array();
    for (const Node *n : nodes) {
        nlohmann::ordered_json jn;
        jn["id"] = n->id;
        jn["kind"] = node_kind_name(n->kind);
        jn["label"] = n->label();
        j["nodes"].push_back(jn);
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto &[a, b] : sorted_edges(dag, nodes)) {
        j["edges"].push_back({a, b});
    }
    return j.dump(2) + "\n";
}

CausalDag dag_from_json(std::string_view text) {
    CausalDag dag;
    try {
        auto j = nlohmann::json::parse(text);
        std::size_t index = 0;
        for (const auto &jn : j.at("nodes")) {
            dag.add_node(make_node(jn.at("id").get<long long>(), jn.at("kind").get<std::string>(),
                                   jn.at("label").get<std::string>(), ++index));
        }
        for (const auto &je : j.at("edges")) {
            if (!je.is_array() || je.size() != 2) {
                fail(ErrorCode::Parse, "edges must be [src, dst] pairs");
            }
            dag.add_edge(je[0].get<NodeId>(), je[1].get<NodeId>());
        }
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, std::string("bad DAG JSON: ") + e.what());
    }
    dag.validate();
    return dag;
}

}  // namespace coord
