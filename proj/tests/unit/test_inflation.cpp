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

#include <gtest/gtest.h>

#include "coordcert/error.hpp"
#include "coordcert/inflation.hpp"

namespace coord {
namespace {

RowPair pair_of(std::size_t a, std::size_t b) {
    return {std::min(a, b), std::max(a, b)};
}

/// Direct reading of the copy tables: shared sources all equal, none equal, or mixed.
enum class Relation { AllEqual, NoneEqual, Mixed };

Relation relation(const InflationRow &a, const InflationRow &b) {
    bool any_equal = false;
    bool any_differ = false;
    for (std::size_t k = 0; k < a.copies.size(); k++) {
        if (a.copies[k] && b.copies[k]) {
            (a.copies[k] == b.copies[k] ? any_equal : any_differ) = true;
        }
    }
    if (!any_differ) {
        return Relation::AllEqual;
    }
    return any_equal ? Relation::Mixed : Relation::NoneEqual;
}

TEST(CutInflation, FourPartyTable) {
    auto spec = build_cut_inflation(4);
    ASSERT_EQ(spec.rows.size(), 4u);
    EXPECT_EQ(spec.rows[0].copies, (std::vector<int>{0, 1, 1, 1}));
    EXPECT_EQ(spec.rows[1].copies, (std::vector<int>{1, 0, 1, 1}));
    EXPECT_EQ(spec.rows[2].copies, (std::vector<int>{1, 2, 0, 1}));
    EXPECT_EQ(spec.rows[3].copies, (std::vector<int>{1, 2, 2, 0}));
    EXPECT_EQ(spec.copies_per_source(), (std::vector<int>{1, 2, 2, 1}));
    EXPECT_FALSE(spec.has_lambda);
}

TEST(CutInflation, ThreePartyTable) {
    auto spec = build_cut_inflation(3);
    EXPECT_EQ(spec.rows[0].copies, (std::vector<int>{0, 1, 1}));
    EXPECT_EQ(spec.rows[1].copies, (std::vector<int>{1, 0, 1}));
    EXPECT_EQ(spec.rows[2].copies, (std::vector<int>{1, 2, 0}));
}

TEST(CutInflation, CsvLayout) {
    EXPECT_EQ(inflation_to_csv(build_cut_inflation(4)),
              "node,not(A1),not(A2),not(A3),not(A4)\n"
              "A1,-,1,1,1\n"
              "A2,1,-,1,1\n"
              "A3,1,2,-,1\n"
              "A4,1,2,2,-\n");
}

TEST(CutInflation, FourPartyStructure) {
    auto spec = build_cut_inflation(4);
    auto d = derive_structure(spec);
    EXPECT_EQ(d.injectable_pairs, (std::set<RowPair>{{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_EQ(d.independent_pairs, (std::set<RowPair>{{0, 3}}));
    EXPECT_FALSE(d.commuting_pairs.count({0, 2}));
    EXPECT_EQ(relation(spec.rows[0], spec.rows[2]), Relation::Mixed);
}

TEST(CutInflation, StructureForAllSizes) {
    for (int n = 3; n <= 12; n++) {
        auto spec = build_cut_inflation(n);
        auto d = derive_structure(spec);
        std::set<RowPair> adjacent;
        for (int i = 0; i + 1 < n; i++) {
            adjacent.insert({i, i + 1});
        }
        EXPECT_EQ(d.injectable_pairs, adjacent) << "n=" << n;
        EXPECT_EQ(d.independent_pairs, (std::set<RowPair>{{0, std::size_t(n - 1)}})) << "n=" << n;
        for (const auto &p : d.injectable_pairs) {
            EXPECT_TRUE(d.commuting_pairs.count(p));
            EXPECT_FALSE(d.independent_pairs.count(p));
        }
        for (int i = 0; i < n; i++) {
            for (int j = i + 1; j < n; j++) {
                Relation r = relation(spec.rows[i], spec.rows[j]);
                EXPECT_EQ(d.injectable_pairs.count({i, j}) > 0, r == Relation::AllEqual);
                EXPECT_EQ(d.independent_pairs.count({i, j}) > 0, r == Relation::NoneEqual);
                EXPECT_EQ(d.commuting_pairs.count({i, j}) > 0, r != Relation::Mixed);
            }
        }
        EXPECT_THROW(build_cut_inflation(2), Error);
    }
}

TEST(GhzInflation, FourPartyRows) {
    auto spec = build_ghz_inflation(4);
    ASSERT_TRUE(spec.has_lambda);
    const auto &a22 = spec.rows[spec.row(2, 2)];
    EXPECT_EQ(a22.copies, (std::vector<int>{2, 0, 1, 1}));
    EXPECT_EQ(a22.lambda_copy, 1);
    const auto &a40 = spec.rows[spec.row(4, 0)];
    EXPECT_EQ(a40.copies, (std::vector<int>{2, 2, 2, 0}));
    EXPECT_EQ(a40.lambda_copy, 1);
    for (const auto &r : spec.rows) {
        EXPECT_EQ(r.lambda_copy, 1);
    }
    EXPECT_FALSE(spec.find_row(3, 2).has_value());
    EXPECT_THROW(build_ghz_inflation(3), Error);
}

TEST(GhzInflation, ChshBlockIsInjectable) {
    for (int n = 4; n <= 8; n++) {
        auto spec = build_ghz_inflation(n);
        for (int x = 0; x <= 1; x++) {
            for (int y = 0; y <= 1; y++) {
                std::vector<std::size_t> block{spec.row(1, x), spec.row(2, y)};
                for (int p = 3; p <= n; p++) {
                    block.push_back(spec.row(p, 1));
                }
                EXPECT_TRUE(is_injectable_set(spec, block)) << "n=" << n << " x=" << x << " y=" << y;
            }
        }
        std::vector<std::size_t> same_party{spec.row(1, 0), spec.row(1, 1)};
        EXPECT_FALSE(is_injectable_set(spec, same_party));
        std::vector<std::size_t> mixed{spec.row(1, 0), spec.row(3, 0)};
        EXPECT_FALSE(is_injectable_set(spec, mixed));
    }
}

TEST(GhzInflation, SameGamePairs) {
    for (int n = 4; n <= 10; n++) {
        auto spec = build_ghz_inflation(n);
        auto d = derive_structure(spec);
        auto injectable = [&](std::size_t a, std::size_t b) { return d.injectable_pairs.count(pair_of(a, b)) > 0; };
        EXPECT_TRUE(injectable(spec.row(1, 0), spec.row(2, 2)));
        EXPECT_TRUE(injectable(spec.row(2, 2), spec.row(3, 0)));
        for (int i = 3; i < n; i++) {
            EXPECT_TRUE(injectable(spec.row(i, 0), spec.row(i + 1, 0))) << "n=" << n << " i=" << i;
        }
        EXPECT_TRUE(d.independent_pairs.count(pair_of(spec.row(1, 0), spec.row(n, 0))));
    }
}

TEST(GhzInflation, CsvMergesSettings) {
    auto csv = inflation_to_csv(build_ghz_inflation(4));
    EXPECT_NE(csv.find("A1^{0,1},-,1,1,1,1\n"), std::string::npos) << csv;
    EXPECT_NE(csv.find("A2^2,2,-,1,1,1\n"), std::string::npos) << csv;
    EXPECT_NE(csv.find("A4^0,2,2,2,-,1\n"), std::string::npos) << csv;
}

TEST(InflationSpec, ValidationRejectsBadTables) {
    auto spec = build_cut_inflation(4);
    spec.rows[1].copies[1] = 1;
    EXPECT_THROW(spec.validate(), Error);
    spec = build_cut_inflation(4);
    spec.rows[2].copies[0] = 3;
    EXPECT_THROW(spec.validate(), Error);
}

}  // namespace
}  // namespace coord
