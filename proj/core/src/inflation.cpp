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

#include "coordcert/inflation.hpp"

#include <algorithm>
#include <sstream>

#include "coordcert/error.hpp"

namespace coord {

std::string InflationRow::label() const {
    std::string out = "A" + std::to_string(party);
    if (setting) {
        out += "^" + std::to_string(*setting);
    }
    return out;
}

void InflationSpec::validate() const {
    if (n < 2) {
        fail(ErrorCode::InvalidArity, "inflation needs at least 2 parties");
    }
    for (const auto &r : rows) {
        if (r.party < 1 || r.party > n || static_cast<int>(r.copies.size()) != n) {
            fail(ErrorCode::InvalidArgument, "row " + r.label() + " has the wrong shape");
        }
        for (int k = 0; k < n; k++) {
            int c = r.copies[k];
            if (k == r.party - 1 ? c != 0 : (c < 1 || c > 2)) {
                fail(ErrorCode::InvalidArgument, "row " + r.label() + " has copy index " + std::to_string(c) +
                                                     " at source " + std::to_string(k + 1));
            }
        }
        if (has_lambda ? (r.lambda_copy < 1 || r.lambda_copy > 2) : r.lambda_copy != 0) {
            fail(ErrorCode::InvalidArgument, "row " + r.label() + " has a bad lambda copy");
        }
    }
}

std::optional<std::size_t> InflationSpec::find_row(int party, std::optional<int> setting) const {
    for (std::size_t i = 0; i < rows.size(); i++) {
        if (rows[i].party == party && rows[i].setting == setting) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t InflationSpec::row(int party, std::optional<int> setting) const {
    auto r = find_row(party, setting);
    if (!r) {
        fail(ErrorCode::InvalidArgument, "no inflation row for party " + std::to_string(party));
    }
    return *r;
}

std::vector<int> InflationSpec::copies_per_source() const {
    std::vector<int> out(n, 0);
    for (const auto &r : rows) {
        for (int k = 0; k < n; k++) {
            out[k] = std::max(out[k], r.copies[k]);
        }
    }
    return out;
}

InflationSpec build_cut_inflation(int n) {
    if (n < 3) {
        fail(ErrorCode::InvalidArity, "cut inflation needs n >= 3, got " + std::to_string(n));
    }
    InflationSpec spec;
    spec.n = n;
    for (int i = 1; i <= n; i++) {
        InflationRow r;
        r.party = i;
        r.copies.assign(n, 1);
        r.copies[i - 1] = 0;
        for (int j = 2; j < i; j++) {
            r.copies[j - 1] = 2;
        }
        spec.rows.push_back(r);
    }
    return spec;
}

InflationSpec build_ghz_inflation(int n) {
    if (n < 4) {
        fail(ErrorCode::InvalidArity, "GHZ inflation needs n >= 4, got " + std::to_string(n));
    }
    InflationSpec spec;
    spec.n = n;
    spec.has_lambda = true;
    auto base = [n](int party, int setting) {
        InflationRow r;
        r.party = party;
        r.setting = setting;
        r.copies.assign(n, 1);
        r.copies[party - 1] = 0;
        r.lambda_copy = 1;
        return r;
    };
    // CHSH-game settings share the original copies; "same"-game settings follow the cut pattern.
    for (int party = 1; party <= n; party++) {
        for (int s : party <= 2 ? std::vector<int>{0, 1} : std::vector<int>{1}) {
            spec.rows.push_back(base(party, s));
        }
    }
    for (int party = 2; party <= n; party++) {
        InflationRow r = base(party, party == 2 ? 2 : 0);
        for (int j = 1; j < party; j++) {
            r.copies[j - 1] = 2;
        }
        spec.rows.push_back(r);
    }
    return spec;
}

DerivedStructure derive_structure(const InflationSpec &spec) {
    spec.validate();
    DerivedStructure out;
    for (std::size_t a = 0; a < spec.rows.size(); a++) {
        for (std::size_t b = a + 1; b < spec.rows.size(); b++) {
            const auto &ra = spec.rows[a];
            const auto &rb = spec.rows[b];
            if (ra.party == rb.party) {
                continue;
            }
            int equal = 0;
            int differ = 0;
            for (int k = 0; k < spec.n; k++) {
                if (ra.copies[k] == 0 || rb.copies[k] == 0) {
                    continue;
                }
                (ra.copies[k] == rb.copies[k] ? equal : differ)++;
            }
            bool lambda_equal = ra.lambda_copy == rb.lambda_copy;
            if (differ == 0 && lambda_equal) {
                out.injectable_pairs.insert({a, b});
            }
            if (equal == 0) {
                out.independent_pairs.insert({a, b});
            }
            if (differ == 0 || equal == 0) {
                out.commuting_pairs.insert({a, b});
            }
        }
    }
    return out;
}

bool is_injectable_set(const InflationSpec &spec, std::span<const std::size_t> rows) {
    DerivedStructure d = derive_structure(spec);
    for (std::size_t i = 0; i < rows.size(); i++) {
        for (std::size_t j = i + 1; j < rows.size(); j++) {
            std::size_t a = std::min(rows[i], rows[j]);
            std::size_t b = std::max(rows[i], rows[j]);
            if (!d.injectable_pairs.count({a, b})) {
                return false;
            }
        }
    }
    return true;
}

std::string inflation_to_csv(const InflationSpec &spec) {
    spec.validate();
    std::ostringstream out;
    out << "node";
    for (int k = 1; k <= spec.n; k++) {
        out << ",not(A" << k << ")";
    }
    if (spec.has_lambda) {
        out << ",lambda";
    }
    out << '\n';

    std::vector<bool> done(spec.rows.size(), false);
    for (std::size_t i = 0; i < spec.rows.size(); i++) {
        if (done[i]) {
            continue;
        }
        const auto &r = spec.rows[i];
        std::vector<int> settings;
        if (r.setting) {
            settings.push_back(*r.setting);
        }
        for (std::size_t j = i + 1; j < spec.rows.size(); j++) {
            const auto &o = spec.rows[j];
            if (!done[j] && o.party == r.party && o.setting && r.setting && o.copies == r.copies &&
                o.lambda_copy == r.lambda_copy) {
                settings.push_back(*o.setting);
                done[j] = true;
            }
        }
        out << "A" << r.party;
        if (settings.size() == 1) {
            out << "^" << settings[0];
        } else if (settings.size() > 1) {
            out << "^{";
            for (std::size_t s = 0; s < settings.size(); s++) {
                out << (s ? "," : "") << settings[s];
            }
            out << "}";
        }
        for (int k = 0; k < spec.n; k++) {
            out << ',';
            if (r.copies[k] == 0) {
                out << '-';
            } else {
                out << r.copies[k];
            }
        }
        if (spec.has_lambda) {
            out << ',' << r.lambda_copy;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace coord
