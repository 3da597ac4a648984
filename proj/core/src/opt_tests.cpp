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

#include "coordcert/opt.hpp"

namespace coord {

namespace {

std::array<TestKind, kTestKindCount> make_kinds() {
    using C = TestCategory;
    return {{
        {C::Preparation, {1}, {}, {10, 11, 12}, "notA1"},
        {C::Preparation, {2}, {}, {7, 8, 9}, "notA2"},
        {C::Preparation, {3}, {}, {4, 5, 6}, "notA3"},
        {C::Preparation, {4}, {}, {1, 2, 3}, "notA4"},
        {C::Transformation, {1, 2}, {9, 12}, {21, 24}, "notA1A2"},
        {C::Transformation, {1, 3}, {6, 11}, {18, 23}, "notA1A3"},
        {C::Transformation, {1, 4}, {3, 10}, {17, 20}, "notA1A4"},
        {C::Transformation, {2, 3}, {5, 8}, {15, 22}, "notA2A3"},
        {C::Transformation, {2, 4}, {2, 7}, {14, 19}, "notA2A4"},
        {C::Transformation, {3, 4}, {1, 4}, {13, 16}, "notA3A4"},
        {C::Observation, {1}, {13, 14, 15}, {}, "A1"},
        {C::Observation, {2}, {16, 17, 18}, {}, "A2"},
        {C::Observation, {3}, {19, 20, 21}, {}, "A3"},
        {C::Observation, {4}, {22, 23, 24}, {}, "A4"},
    }};
}

const std::array<TestKind, kTestKindCount> &kinds() {
    static const auto table = make_kinds();
    return table;
}

int find_kind(int system_type, bool producer) {
    if (system_type < 1 || system_type > kSystemTypeCount) {
        fail(ErrorCode::InvalidArgument, "no system type " + std::to_string(system_type));
    }
    for (int k = 0; k < kTestKindCount; k++) {
        const auto &ports = producer ? kinds()[k].outputs : kinds()[k].inputs;
        if (std::find(ports.begin(), ports.end(), system_type) != ports.end()) {
            return k;
        }
    }
    fail(ErrorCode::Internal, "system type without a kind");
}

void check_party(int party) {
    if (party < 1 || party > 4) {
        fail(ErrorCode::InvalidArgument, "party must be in [1, 4], got " + std::to_string(party));
    }
}

}  // namespace

const TestKind &test_kind(int kind) {
    if (kind < 0 || kind >= kTestKindCount) {
        fail(ErrorCode::InvalidArgument, "no test kind " + std::to_string(kind));
    }
    return kinds()[kind];
}

int preparation_kind(int excluded_party) {
    check_party(excluded_party);
    return excluded_party - 1;
}

int transformation_kind(int excluded_a, int excluded_b) {
    check_party(excluded_a);
    check_party(excluded_b);
    if (excluded_a == excluded_b) {
        fail(ErrorCode::InvalidArgument, "transformation needs two distinct parties");
    }
    std::vector<int> want{std::min(excluded_a, excluded_b), std::max(excluded_a, excluded_b)};
    for (int k = 4; k < 10; k++) {
        if (kinds()[k].parties == want) {
            return k;
        }
    }
    fail(ErrorCode::Internal, "missing transformation kind");
}

int observation_kind(int party) {
    check_party(party);
    return 9 + party;
}

int kind_by_name(std::string_view name) {
    for (int k = 0; k < kTestKindCount; k++) {
        if (kinds()[k].name == name) {
            return k;
        }
    }
    fail(ErrorCode::Parse, "unknown test kind '" + std::string(name) + "'");
}

int producer_kind(int system_type) {
    return find_kind(system_type, true);
}

int consumer_kind(int system_type) {
    return find_kind(system_type, false);
}

std::string_view category_keyword(TestCategory category) {
    switch (category) {
        case TestCategory::Preparation:
            return "prep";
        case TestCategory::Transformation:
            return "trans";
        case TestCategory::Observation:
            return "obs";
    }
    return "?";
}

}  // namespace coord
