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

#ifndef COORDCERT_INFLATION_HPP
#define COORDCERT_INFLATION_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace coord {

/// One inflated observed node: a party, optionally pinned to a measurement setting, and
/// the copy of every source in its past. Source k is the one excluding party k+1.
struct InflationRow {
    int party = 1;
    std::optional<int> setting;
    /// copies[k] for source k; 0 marks the party's own (absent) source.
    std::vector<int> copies;
    /// Copy of the classical broadcast source, 0 when the scenario has none.
    int lambda_copy = 0;

    std::string label() const;
};

struct InflationSpec {
    int n = 0;
    bool has_lambda = false;
    std::vector<InflationRow> rows;

    /// Throws unless every off-diagonal index is 1 or 2 and every diagonal entry is absent.
    void validate() const;
    std::optional<std::size_t> find_row(int party, std::optional<int> setting = std::nullopt) const;
    std::size_t row(int party, std::optional<int> setting = std::nullopt) const;
    /// Highest copy index used per source.
    std::vector<int> copies_per_source() const;
};

using RowPair = std::pair<std::size_t, std::size_t>;

/// Pairs of rows (first < second, distinct parties).
struct DerivedStructure {
    std::set<RowPair> injectable_pairs;
    std::set<RowPair> commuting_pairs;
    std::set<RowPair> independent_pairs;
};

/// Row i takes copy 2 of the sources excluding parties 2..i-1 and copy 1 elsewhere.
InflationSpec build_cut_inflation(int n);

/// Per-setting rows for the GHZ game inflation, with a broadcast lambda column.
InflationSpec build_ghz_inflation(int n);

/// Over the quantum sources both rows see:
///   injectable  - every shared copy agrees (and lambda agrees);
///   independent - no shared copy agrees;
///   commuting   - injectable or independent, i.e. never a partial match.
DerivedStructure derive_structure(const InflationSpec &spec);

/// Rows from distinct parties that are pairwise injectable.
bool is_injectable_set(const InflationSpec &spec, std::span<const std::size_t> rows);

/// Table with rows as parties (settings merged when their copies agree), columns as sources.
std::string inflation_to_csv(const InflationSpec &spec);

}  // namespace coord

#endif
