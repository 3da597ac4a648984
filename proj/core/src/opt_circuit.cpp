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
#include <array>
#include <deque>
#include <sstream>

#include "coordcert/opt.hpp"

namespace coord {

namespace {

bool contains(const std::vector<int> &v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

std::string port_name(const Circuit &c, PortRef p) {
    std::string id = p.test < c.tests().size() ? c.tests()[p.test].id : "#" + std::to_string(p.test);
    return id + "." + std::to_string(p.type);
}

}  // namespace

std::size_t Circuit::add_test(std::string id, int kind) {
    test_kind(kind);
    if (id.empty() || id.find_first_of(" \t.") != std::string::npos) {
        fail(ErrorCode::InvalidArgument, "test id '" + id + "' must be nonempty without spaces or dots");
    }
    if (find(id)) {
        fail(ErrorCode::InvalidArgument, "duplicate test id '" + id + "'");
    }
    tests_.push_back({std::move(id), kind});
    return tests_.size() - 1;
}

std::size_t Circuit::add_test(int kind) {
    const char *prefix = "p";
    if (test_kind(kind).category == TestCategory::Transformation) {
        prefix = "t";
    } else if (test_kind(kind).category == TestCategory::Observation) {
        prefix = "o";
    }
    for (std::size_t k = 1;; k++) {
        std::string id = prefix + std::to_string(k);
        if (!find(id)) {
            return add_test(id, kind);
        }
    }
}

void Circuit::wire(PortRef from, PortRef to) {
    wires_.push_back({from, to});
}

void Circuit::connect(std::size_t from, std::size_t to) {
    const auto &out = test_kind(test(from).kind).outputs;
    const auto &in = test_kind(test(to).kind).inputs;
    for (int t : out) {
        if (contains(in, t)) {
            wire({from, t}, {to, t});
            return;
        }
    }
    fail(ErrorCode::TypeMismatch, "no shared system type between " + test(from).id + " and " + test(to).id);
}

void Circuit::trace(PortRef port) {
    traces_.push_back(port);
}

void Circuit::trace_unused_outputs() {
    std::set<PortRef> used;
    for (const auto &w : wires_) {
        used.insert(w.from);
    }
    for (const auto &t : traces_) {
        used.insert(t);
    }
    for (std::size_t i = 0; i < tests_.size(); i++) {
        for (int t : test_kind(tests_[i].kind).outputs) {
            if (!used.count({i, t})) {
                traces_.push_back({i, t});
            }
        }
    }
}

const TestInstance &Circuit::test(std::size_t index) const {
    if (index >= tests_.size()) {
        fail(ErrorCode::InvalidArgument, "no test at index " + std::to_string(index));
    }
    return tests_[index];
}

std::optional<std::size_t> Circuit::find(std::string_view id) const {
    for (std::size_t i = 0; i < tests_.size(); i++) {
        if (tests_[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> Circuit::observations() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tests_.size(); i++) {
        if (test_kind(tests_[i].kind).category == TestCategory::Observation) {
            out.push_back(i);
        }
    }
    return out;
}

std::size_t Circuit::preparation_count() const {
    return std::count_if(tests_.begin(), tests_.end(), [](const TestInstance &t) {
        return test_kind(t.kind).category == TestCategory::Preparation;
    });
}

std::vector<CircuitIssue> validate_circuit(const Circuit &c) {
    std::vector<CircuitIssue> issues;
    auto report = [&](ErrorCode code, std::string msg) { issues.push_back({code, std::move(msg)}); };
    std::size_t n = c.tests().size();

    std::map<PortRef, int> output_uses;
    std::map<PortRef, int> input_feeds;
    std::vector<std::set<std::size_t>> succ(n);
    for (const auto &w : c.wires()) {
        if (w.from.test >= n || w.to.test >= n) {
            report(ErrorCode::InvalidArgument, "wire " + port_name(c, w.from) + " -> " + port_name(c, w.to) +
                                                   " references a missing test");
            continue;
        }
        const auto &src = test_kind(c.tests()[w.from.test].kind);
        const auto &dst = test_kind(c.tests()[w.to.test].kind);
        bool ok = true;
        if (!contains(src.outputs, w.from.type)) {
            report(ErrorCode::TypeMismatch, "port " + port_name(c, w.from) + " is not an output of " + src.name);
            ok = false;
        }
        if (!contains(dst.inputs, w.to.type)) {
            report(ErrorCode::TypeMismatch, "port " + port_name(c, w.to) + " is not an input of " + dst.name);
            ok = false;
        }
        if (ok && w.from.type != w.to.type) {
            report(ErrorCode::TypeMismatch, "wire " + port_name(c, w.from) + " -> " + port_name(c, w.to) +
                                                " joins system types " + std::to_string(w.from.type) + " and " +
                                                std::to_string(w.to.type));
            ok = false;
        }
        if (!ok) {
            continue;
        }
        output_uses[w.from]++;
        input_feeds[w.to]++;
        succ[w.from.test].insert(w.to.test);
    }
    for (const auto &t : c.traces()) {
        if (t.test >= n || !contains(test_kind(c.tests()[t.test].kind).outputs, t.type)) {
            report(ErrorCode::TypeMismatch, "trace " + port_name(c, t) + " is not an output port");
            continue;
        }
        output_uses[t]++;
    }
    for (const auto &[port, uses] : output_uses) {
        if (uses > 1) {
            report(ErrorCode::Broadcast, "output " + port_name(c, port) + " is used " + std::to_string(uses) +
                                             " times (broadcasting is not allowed)");
        }
    }
    for (const auto &[port, feeds] : input_feeds) {
        if (feeds > 1) {
            report(ErrorCode::Broadcast, "input " + port_name(c, port) + " is fed " + std::to_string(feeds) + " times");
        }
    }

    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j : succ[i]) {
            indegree[j]++;
        }
    }
    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < n; i++) {
        if (indegree[i] == 0) {
            ready.push_back(i);
        }
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::size_t i = ready.front();
        ready.pop_front();
        seen++;
        for (std::size_t j : succ[i]) {
            if (--indegree[j] == 0) {
                ready.push_back(j);
            }
        }
    }
    if (seen != n) {
        report(ErrorCode::Cycle, "wiring contains a directed cycle");
    }

    for (std::size_t i = 0; i < n; i++) {
        const auto &k = test_kind(c.tests()[i].kind);
        for (int t : k.inputs) {
            if (!input_feeds.count({i, t})) {
                report(ErrorCode::OpenCircuit, "input " + port_name(c, {i, t}) + " is not fed");
            }
        }
        for (int t : k.outputs) {
            if (!output_uses.count({i, t})) {
                report(ErrorCode::OpenCircuit, "output " + port_name(c, {i, t}) + " is neither wired nor traced");
            }
        }
    }
    return issues;
}

void require_valid(const Circuit &c) {
    auto issues = validate_circuit(c);
    if (!issues.empty()) {
        throw Error(issues.front().code, issues.front().message);
    }
}

std::string circuit_to_text(const Circuit &c) {
    std::ostringstream out;
    for (const auto &t : c.tests()) {
        const auto &k = test_kind(t.kind);
        out << category_keyword(k.category) << ' ' << t.id << ' ' << k.name << '\n';
    }
    for (const auto &w : c.wires()) {
        out << "wire " << port_name(c, w.from) << ' ' << port_name(c, w.to) << '\n';
    }
    for (const auto &t : c.traces()) {
        out << "trace " << port_name(c, t) << '\n';
    }
    return out.str();
}

Circuit circuit_from_text(std::string_view text) {
    Circuit c;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<std::size_t, std::string>> pending;
    auto where = [&]() { return "line " + std::to_string(line_no) + ": "; };
    while (std::getline(in, line)) {
        line_no++;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') {
            continue;
        }
        if (word == "prep" || word == "trans" || word == "obs") {
            std::string id, kind, extra;
            if (!(ls >> id >> kind) || (ls >> extra)) {
                fail(ErrorCode::Parse, where() + "expected '" + word + " <id> <kind>'");
            }
            int k = kind_by_name(kind);
            if (category_keyword(test_kind(k).category) != word) {
                fail(ErrorCode::Parse, where() + "kind " + kind + " is not a " + word);
            }
            try {
                c.add_test(id, k);
            } catch (const Error &e) {
                fail(ErrorCode::Parse, where() + e.what());
            }
        } else if (word == "wire" || word == "trace") {
            pending.push_back({line_no, line});
        } else {
            fail(ErrorCode::Parse, where() + "unknown record '" + word + "'");
        }
    }
    auto parse_port = [&](const std::string &token, std::size_t at) -> PortRef {
        std::size_t dot = token.rfind('.');
        if (dot == std::string::npos) {
            fail(ErrorCode::Parse, "line " + std::to_string(at) + ": port '" + token + "' must be <id>.<type>");
        }
        auto test = c.find(token.substr(0, dot));
        if (!test) {
            fail(ErrorCode::Parse, "line " + std::to_string(at) + ": unknown test '" + token.substr(0, dot) + "'");
        }
        int type = 0;
        try {
            std::size_t used = 0;
            type = std::stoi(token.substr(dot + 1), &used);
            if (used != token.size() - dot - 1) {
                throw std::invalid_argument(token);
            }
        } catch (const std::exception &) {
            fail(ErrorCode::Parse, "line " + std::to_string(at) + ": bad system type in '" + token + "'");
        }
        return {*test, type};
    };
    for (const auto &[at, text_line] : pending) {
        std::istringstream ls(text_line);
        std::string word, a, b, extra;
        ls >> word;
        if (word == "wire") {
            if (!(ls >> a >> b) || (ls >> extra)) {
                fail(ErrorCode::Parse, "line " + std::to_string(at) + ": expected 'wire <src>.<type> <dst>.<type>'");
            }
            c.wire(parse_port(a, at), parse_port(b, at));
        } else {
            if (!(ls >> a) || (ls >> extra)) {
                fail(ErrorCode::Parse, "line " + std::to_string(at) + ": expected 'trace <src>.<type>'");
            }
            c.trace(parse_port(a, at));
        }
    }
    return c;
}

Circuit remove_observation(const Circuit &c, std::size_t observation) {
    if (test_kind(c.test(observation).kind).category != TestCategory::Observation) {
        fail(ErrorCode::InvalidArgument, c.test(observation).id + " is not an observation");
    }
    Circuit out;
    std::vector<std::size_t> remap(c.tests().size());
    for (std::size_t i = 0; i < c.tests().size(); i++) {
        if (i != observation) {
            remap[i] = out.add_test(c.tests()[i].id, c.tests()[i].kind);
        }
    }
    for (const auto &w : c.wires()) {
        if (w.to.test == observation) {
            out.trace({remap[w.from.test], w.from.type});
        } else if (w.from.test != observation) {
            out.wire({remap[w.from.test], w.from.type}, {remap[w.to.test], w.to.type});
        }
    }
    for (const auto &t : c.traces()) {
        if (t.test != observation) {
            out.trace({remap[t.test], t.type});
        }
    }
    return out;
}

namespace {

/// Wires every input of `consumers` from the listed producers by system type.
void wire_layer(Circuit &c, const std::vector<std::size_t> &producers, const std::vector<std::size_t> &consumers) {
    for (std::size_t dst : consumers) {
        for (int t : test_kind(c.test(dst).kind).inputs) {
            for (std::size_t src : producers) {
                if (contains(test_kind(c.test(src).kind).outputs, t)) {
                    c.wire({src, t}, {dst, t});
                    break;
                }
            }
        }
    }
}

}  // namespace

Circuit tetrahedron_circuit() {
    Circuit c;
    std::vector<std::size_t> preps, trans, obs;
    for (int p = 4; p >= 1; p--) {
        preps.push_back(c.add_test(preparation_kind(p)));
    }
    for (int k = 9; k >= 4; k--) {
        trans.push_back(c.add_test(k));
    }
    for (int p = 1; p <= 4; p++) {
        obs.push_back(c.add_test(observation_kind(p)));
    }
    wire_layer(c, preps, trans);
    wire_layer(c, trans, obs);
    c.trace_unused_outputs();
    return c;
}

Circuit embeddable_pair_circuit() {
    Circuit c;
    std::vector<std::size_t> preps, trans;
    for (int p = 4; p >= 1; p--) {
        preps.push_back(c.add_test(preparation_kind(p)));
    }
    for (auto [a, b] : std::array<std::pair<int, int>, 5>{{{3, 4}, {2, 4}, {2, 3}, {1, 4}, {1, 3}}}) {
        trans.push_back(c.add_test(transformation_kind(a, b)));
    }
    std::vector<std::size_t> obs{c.add_test(observation_kind(1)), c.add_test(observation_kind(2))};
    wire_layer(c, preps, trans);
    wire_layer(c, trans, obs);
    c.trace_unused_outputs();
    return c;
}

Circuit duplicated_source_circuit() {
    Circuit c;
    std::size_t not_a4 = c.add_test(preparation_kind(4));
    std::size_t not_a3 = c.add_test(preparation_kind(3));
    std::size_t not_a2 = c.add_test(preparation_kind(2));
    std::size_t not_a4_again = c.add_test(preparation_kind(4));
    std::size_t t34 = c.add_test(transformation_kind(3, 4));
    std::size_t t24 = c.add_test(transformation_kind(2, 4));
    std::size_t t23 = c.add_test(transformation_kind(2, 3));
    std::size_t a1 = c.add_test(observation_kind(1));
    wire_layer(c, {not_a4, not_a3}, {t34});
    wire_layer(c, {not_a4_again, not_a2}, {t24});
    wire_layer(c, {not_a3, not_a2}, {t23});
    wire_layer(c, {t34, t24, t23}, {a1});
    c.trace_unused_outputs();
    return c;
}

}  // namespace coord
