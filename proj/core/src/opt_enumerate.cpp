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
#include <functional>
#include <mutex>
#include <sstream>

#include "coordcert/opt.hpp"
#include "coordcert/parallel.hpp"

namespace coord {

namespace {

using Signature = std::pair<int, std::vector<std::pair<int, int>>>;

struct Adjacency {
    /// (system type, neighbour test); traced ports use neighbour -1.
    std::vector<std::vector<std::pair<int, int>>> ports;
};

Adjacency adjacency(const Circuit &c) {
    Adjacency adj;
    adj.ports.resize(c.tests().size());
    for (const auto &w : c.wires()) {
        adj.ports[w.from.test].push_back({w.from.type, static_cast<int>(w.to.test)});
        adj.ports[w.to.test].push_back({w.to.type, static_cast<int>(w.from.test)});
    }
    for (const auto &t : c.traces()) {
        adj.ports[t.test].push_back({t.type, -1});
    }
    return adj;
}

/// Colour refinement until the partition is stable; colours become dense ranks.
void refine(const Adjacency &adj, std::vector<int> &colours) {
    std::size_t n = colours.size();
    std::size_t classes = 0;
    while (true) {
        std::vector<Signature> sigs(n);
        for (std::size_t v = 0; v < n; v++) {
            sigs[v].first = colours[v];
            for (auto [type, u] : adj.ports[v]) {
                sigs[v].second.push_back({type, u < 0 ? -1 : colours[u]});
            }
            std::sort(sigs[v].second.begin(), sigs[v].second.end());
        }
        std::vector<Signature> sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t v = 0; v < n; v++) {
            colours[v] = std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin();
        }
        if (sorted.size() == classes) {
            return;
        }
        classes = sorted.size();
    }
}

std::string encode(const Circuit &c, const std::vector<int> &rank) {
    std::size_t n = c.tests().size();
    std::vector<int> kinds(n);
    for (std::size_t v = 0; v < n; v++) {
        kinds[rank[v]] = c.tests()[v].kind;
    }
    std::vector<std::array<int, 3>> wires;
    for (const auto &w : c.wires()) {
        wires.push_back({rank[w.from.test], w.from.type, rank[w.to.test]});
    }
    std::vector<std::array<int, 2>> traces;
    for (const auto &t : c.traces()) {
        traces.push_back({rank[t.test], t.type});
    }
    std::sort(wires.begin(), wires.end());
    std::sort(traces.begin(), traces.end());
    std::ostringstream out;
    for (int k : kinds) {
        out << test_kind(k).name << ' ';
    }
    out << '|';
    for (const auto &w : wires) {
        out << ' ' << w[0] << '.' << w[1] << '>' << w[2];
    }
    out << " |";
    for (const auto &t : traces) {
        out << ' ' << t[0] << '.' << t[1];
    }
    return out.str();
}

/// Individualisation-refinement search for the least encoding.
void search(const Circuit &c, const Adjacency &adj, std::vector<int> colours, std::string &best) {
    refine(adj, colours);
    std::size_t n = colours.size();
    std::vector<int> size(n, 0);
    for (int col : colours) {
        size[col]++;
    }
    int target = -1;
    for (std::size_t col = 0; col < n; col++) {
        if (size[col] > 1) {
            target = static_cast<int>(col);
            break;
        }
    }
    if (target < 0) {
        std::string code = encode(c, colours);
        if (best.empty() || code < best) {
            best = std::move(code);
        }
        return;
    }
    for (std::size_t v = 0; v < n; v++) {
        if (colours[v] != target) {
            continue;
        }
        std::vector<int> next(n);
        for (std::size_t u = 0; u < n; u++) {
            next[u] = 2 * colours[u];
        }
        next[v] += 1;
        search(c, adj, std::move(next), best);
    }
}

// ---------------------------------------------------------------------------

struct TransInstance {
    int kind;
    /// Global observation indices served, -1 when the output is traced.
    int first = -1;
    int second = -1;
};

/// The two observed parties a transformation kind feeds, ascending.
std::array<int, 2> served_parties(int kind) {
    const auto &excluded = test_kind(kind).parties;
    std::array<int, 2> out{};
    int k = 0;
    for (int p = 1; p <= 4; p++) {
        if (p != excluded[0] && p != excluded[1]) {
            out[k++] = p;
        }
    }
    return out;
}

class Enumerator {
   public:
    Enumerator(std::array<int, 5> counts, int bound) : counts_(counts), bound_(bound) {
        for (int p = 1; p <= 4; p++) {
            for (int i = 0; i < counts_[p]; i++) {
                obs_party_.push_back(p);
            }
        }
    }

    std::map<std::string, Circuit> run() {
        choose_transformations(4);
        return std::move(found_);
    }

   private:
    std::vector<int> observations_of(int party) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < obs_party_.size(); i++) {
            if (obs_party_[i] == party) {
                out.push_back(static_cast<int>(i));
            }
        }
        return out;
    }

    /// Least preparation count achievable with the transformations chosen so far.
    int preparation_floor() const {
        int total = 0;
        for (int q = 1; q <= 4; q++) {
            int most = 0;
            for (int x = 1; x <= 4; x++) {
                if (x != q) {
                    most = std::max(most, instance_count(transformation_kind(q, x)));
                }
            }
            total += most;
        }
        return total;
    }

    int instance_count(int kind) const {
        if (kind < next_kind_) {
            return static_cast<int>(std::count_if(trans_.begin(), trans_.end(),
                                                  [&](const TransInstance &t) { return t.kind == kind; }));
        }
        auto [s, t] = served_parties(kind);
        return std::max(counts_[s], counts_[t]);
    }

    void choose_transformations(int kind) {
        next_kind_ = kind;
        if (preparation_floor() > bound_) {
            return;
        }
        if (kind == 10) {
            blocks_ = {};
            choose_preparations(1, 0);
            return;
        }
        auto [s, t] = served_parties(kind);
        auto first = observations_of(s);
        auto second = observations_of(t);
        std::vector<bool> used(second.size(), false);
        std::size_t base = trans_.size();
        std::function<void(std::size_t)> match = [&](std::size_t i) {
            if (i == first.size()) {
                std::size_t mark = trans_.size();
                for (std::size_t j = 0; j < second.size(); j++) {
                    if (!used[j]) {
                        trans_.push_back({kind, -1, second[j]});
                    }
                }
                choose_transformations(kind + 1);
                next_kind_ = kind;
                trans_.resize(mark);
                return;
            }
            trans_.push_back({kind, first[i], -1});
            match(i + 1);
            trans_.pop_back();
            for (std::size_t j = 0; j < second.size(); j++) {
                if (!used[j]) {
                    used[j] = true;
                    trans_.push_back({kind, first[i], second[j]});
                    match(i + 1);
                    trans_.pop_back();
                    used[j] = false;
                }
            }
        };
        match(0);
        trans_.resize(base);
    }

    /// Remaining floor from preparation parties after `party`.
    int floor_after(int party) const {
        int total = 0;
        for (int q = party + 1; q <= 4; q++) {
            int most = 0;
            for (int x = 1; x <= 4; x++) {
                if (x != q) {
                    most = std::max(most, instance_count(transformation_kind(q, x)));
                }
            }
            total += most;
        }
        return total;
    }

    void choose_preparations(int party, int used) {
        if (party == 5) {
            emit();
            return;
        }
        std::vector<std::size_t> order;
        std::vector<int> slot;
        for (int x = 1; x <= 4; x++) {
            if (x == party) {
                continue;
            }
            int kind = transformation_kind(party, x);
            for (std::size_t i = 0; i < trans_.size(); i++) {
                if (trans_[i].kind == kind) {
                    order.push_back(i);
                    slot.push_back(x);
                }
            }
        }
        int budget = bound_ - used - floor_after(party);
        auto &blocks = blocks_[party];
        blocks.clear();
        std::vector<std::array<bool, 5>> filled;
        std::function<void(std::size_t)> place = [&](std::size_t i) {
            if (i == order.size()) {
                choose_preparations(party + 1, used + static_cast<int>(blocks.size()));
                return;
            }
            for (std::size_t b = 0; b < blocks.size(); b++) {
                if (!filled[b][slot[i]]) {
                    filled[b][slot[i]] = true;
                    blocks[b].push_back(order[i]);
                    place(i + 1);
                    blocks[b].pop_back();
                    filled[b][slot[i]] = false;
                }
            }
            if (static_cast<int>(blocks.size()) < budget) {
                std::array<bool, 5> fresh{};
                fresh[slot[i]] = true;
                filled.push_back(fresh);
                blocks.push_back({order[i]});
                place(i + 1);
                blocks.pop_back();
                filled.pop_back();
            }
        };
        place(0);
        blocks.clear();
    }

    void emit() {
        Circuit c;
        std::vector<std::size_t> trans_index(trans_.size());
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> preps;
        for (int q = 1; q <= 4; q++) {
            for (const auto &block : blocks_[q]) {
                preps.push_back({c.add_test(preparation_kind(q)), block});
            }
        }
        for (std::size_t i = 0; i < trans_.size(); i++) {
            trans_index[i] = c.add_test(trans_[i].kind);
        }
        std::vector<std::size_t> obs_index;
        for (int p : obs_party_) {
            obs_index.push_back(c.add_test(observation_kind(p)));
        }
        for (const auto &[prep, block] : preps) {
            for (std::size_t t : block) {
                c.connect(prep, trans_index[t]);
            }
        }
        for (std::size_t i = 0; i < trans_.size(); i++) {
            for (int o : {trans_[i].first, trans_[i].second}) {
                if (o >= 0) {
                    c.connect(trans_index[i], obs_index[o]);
                }
            }
        }
        c.trace_unused_outputs();
        found_.emplace(canonical_circuit_form(c), std::move(c));
    }

    std::array<int, 5> counts_;
    int bound_;
    std::vector<int> obs_party_;
    std::vector<TransInstance> trans_;
    int next_kind_ = 4;
    std::array<std::vector<std::vector<std::size_t>>, 5> blocks_;
    std::map<std::string, Circuit> found_;
};

int multiset_floor(const std::array<int, 5> &counts) {
    int total = 0;
    for (int q = 1; q <= 4; q++) {
        int most = 0;
        for (int x = 1; x <= 4; x++) {
            if (x != q) {
                auto [s, t] = served_parties(transformation_kind(q, x));
                most = std::max({most, counts[s], counts[t]});
            }
        }
        total += most;
    }
    return total;
}

}  // namespace

std::string canonical_circuit_form(const Circuit &c) {
    if (c.tests().empty()) {
        return "|";
    }
    Adjacency adj = adjacency(c);
    std::vector<int> colours(c.tests().size());
    for (std::size_t v = 0; v < colours.size(); v++) {
        colours[v] = c.tests()[v].kind;
    }
    std::string best;
    search(c, adj, std::move(colours), best);
    return best;
}

std::vector<Circuit> enumerate_circuits(int max_preparations) {
    if (max_preparations < 0) {
        fail(ErrorCode::InvalidArgument, "preparation bound must be nonnegative");
    }
    if (max_preparations > kMaxEnumerationBound) {
        fail(ErrorCode::BoundExceeded, "preparation bound " + std::to_string(max_preparations) + " exceeds " +
                                           std::to_string(kMaxEnumerationBound));
    }
    std::vector<std::array<int, 5>> multisets;
    for (int a = 0; a <= max_preparations; a++) {
        for (int b = 0; b <= max_preparations; b++) {
            for (int c = 0; c <= max_preparations; c++) {
                for (int d = 0; d <= max_preparations; d++) {
                    std::array<int, 5> counts{0, a, b, c, d};
                    if (a + b + c + d > 0 && multiset_floor(counts) <= max_preparations) {
                        multisets.push_back(counts);
                    }
                }
            }
        }
    }
    std::vector<std::map<std::string, Circuit>> results(multisets.size());
    parallel_for(multisets.size(),
                 [&](std::size_t i) { results[i] = Enumerator(multisets[i], max_preparations).run(); });

    std::map<std::pair<std::size_t, std::string>, Circuit> ordered;
    if (max_preparations >= 1) {
        for (int q = 1; q <= 4; q++) {
            Circuit c;
            c.add_test(preparation_kind(q));
            c.trace_unused_outputs();
            ordered.emplace(std::pair{std::size_t{1}, canonical_circuit_form(c)}, std::move(c));
        }
    }
    for (auto &found : results) {
        for (auto &[code, circuit] : found) {
            std::size_t preps = circuit.preparation_count();
            ordered.emplace(std::pair{preps, code}, std::move(circuit));
        }
    }
    std::vector<Circuit> out;
    out.reserve(ordered.size());
    for (auto &[key, circuit] : ordered) {
        out.push_back(std::move(circuit));
    }
    return out;
}

}  // namespace coord
