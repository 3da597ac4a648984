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

#include "coordcert/distribution.hpp"

#include <cmath>
#include <sstream>

#include "coordcert/error.hpp"
#include "json.hpp"

namespace coord {

namespace {

void check_arity(int n) {
    if (n < 1 || n > kMaxDistributionParties) {
        fail(ErrorCode::InvalidArity,
             "distribution party count must be in [1, " + std::to_string(kMaxDistributionParties) + "], got " +
                 std::to_string(n));
    }
}

std::string trim(std::string_view s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) {
        return {};
    }
    std::size_t b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

bool is_bitstring(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c != '0' && c != '1') {
            return false;
        }
    }
    return true;
}

double parse_probability(const std::string &text, const std::string &where) {
    try {
        std::size_t used = 0;
        double p = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(p)) {
            throw std::invalid_argument(text);
        }
        return p;
    } catch (const std::exception &) {
        fail(ErrorCode::Parse, where + ": bad probability '" + text + "'");
    }
}

}  // namespace

Distribution::Distribution(int n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {
    check_arity(n);
    if (probs_.size() != (std::size_t{1} << n)) {
        fail(ErrorCode::InvalidArgument, "distribution needs 2^n entries");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < probs_.size(); k++) {
        if (!std::isfinite(probs_[k]) || probs_[k] < -kProbabilityTolerance) {
            fail(ErrorCode::Domain, "negative probability at outcome " + outcome_string(k));
        }
        total += probs_[k];
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
        fail(ErrorCode::Domain, "probabilities sum to " + format_real(total, 17) + ", not 1");
    }
}

Distribution Distribution::perfect_coordination(int n) {
    check_arity(n);
    std::vector<double> p(std::size_t{1} << n, 0.0);
    p.front() = 0.5;
    p.back() = 0.5;
    return Distribution(n, std::move(p));
}

Distribution Distribution::uniform(int n) {
    check_arity(n);
    std::size_t size = std::size_t{1} << n;
    return Distribution(n, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

Distribution Distribution::white_noise_mixture(int n, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        fail(ErrorCode::Domain, "visibility must lie in [0, 1]");
    }
    check_arity(n);
    std::size_t size = std::size_t{1} << n;
    std::vector<double> p(size, (1.0 - v) / static_cast<double>(size));
    p.front() += 0.5 * v;
    p.back() += 0.5 * v;
    return Distribution(n, std::move(p));
}

int Distribution::outcome_bit(std::uint64_t outcome, int party) const {
    if (party < 1 || party > n_) {
        fail(ErrorCode::InvalidArgument, "party index out of range: " + std::to_string(party));
    }
    return static_cast<int>((outcome >> (n_ - party)) & 1u);
}

std::string Distribution::outcome_string(std::uint64_t outcome) const {
    std::string s(n_, '0');
    for (int i = 1; i <= n_; i++) {
        s[i - 1] = static_cast<char>('0' + ((outcome >> (n_ - i)) & 1u));
    }
    return s;
}

std::uint64_t Distribution::parse_outcome(std::string_view bits) const {
    if (static_cast<int>(bits.size()) != n_ || !is_bitstring(bits)) {
        fail(ErrorCode::Parse, "outcome '" + std::string(bits) + "' is not a " + std::to_string(n_) + "-bit string");
    }
    std::uint64_t k = 0;
    for (char c : bits) {
        k = (k << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return k;
}

Distribution distribution_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    int n = -1;
    std::vector<std::pair<std::string, double>> rows;
    bool seen_data = false;
    while (std::getline(in, line)) {
        line_no++;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        std::string where = "row " + std::to_string(line_no);
        std::size_t comma = t.find(',');
        if (comma == std::string::npos) {
            fail(ErrorCode::Parse, where + ": expected 'outcome_bits,probability'");
        }
        std::string bits = trim(t.substr(0, comma));
        std::string prob = trim(t.substr(comma + 1));
        if (!seen_data && !is_bitstring(bits)) {
            seen_data = true;
            continue;
        }
        seen_data = true;
        if (!is_bitstring(bits)) {
            fail(ErrorCode::Parse, where + ": outcome '" + bits + "' is not a bit string");
        }
        if (prob.find(',') != std::string::npos) {
            fail(ErrorCode::Parse, where + ": too many columns");
        }
        if (n < 0) {
            n = static_cast<int>(bits.size());
            if (n > kMaxDistributionParties) {
                fail(ErrorCode::Parse, where + ": too many parties");
            }
        } else if (static_cast<int>(bits.size()) != n) {
            fail(ErrorCode::Parse, where + ": outcome has " + std::to_string(bits.size()) + " bits, expected " +
                                       std::to_string(n));
        }
        rows.push_back({bits, parse_probability(prob, where)});
    }
    if (n < 0) {
        fail(ErrorCode::Parse, "no outcome rows");
    }
    std::vector<double> p(std::size_t{1} << n, 0.0);
    std::vector<bool> seen(p.size(), false);
    for (const auto &[bits, prob] : rows) {
        std::uint64_t k = 0;
        for (char c : bits) {
            k = (k << 1) | static_cast<std::uint64_t>(c - '0');
        }
        if (seen[k]) {
            fail(ErrorCode::Parse, "outcome " + bits + " listed twice");
        }
        seen[k] = true;
        p[k] = prob;
    }
    return Distribution(n, std::move(p));
}

Distribution distribution_from_json(std::string_view text) {
    try {
        auto j = nlohmann::json::parse(text);
        int n = j.at("n").get<int>();
        check_arity(n);
        std::vector<double> p(std::size_t{1} << n, 0.0);
        for (const auto &[bits, prob] : j.at("probabilities").items()) {
            if (static_cast<int>(bits.size()) != n || !is_bitstring(bits)) {
                fail(ErrorCode::Parse, "outcome '" + bits + "' is not a " + std::to_string(n) + "-bit string");
            }
            std::uint64_t k = 0;
            for (char c : bits) {
                k = (k << 1) | static_cast<std::uint64_t>(c - '0');
            }
            p[k] = prob.get<double>();
        }
        return Distribution(n, std::move(p));
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, std::string("bad distribution JSON: ") + e.what());
    }
}

std::string distribution_to_csv(const Distribution &d, int precision) {
    std::ostringstream out;
    out << "outcome_bits,probability\n";
    for (std::size_t k = 0; k < d.probs().size(); k++) {
        if (d.probs()[k] != 0.0) {
            out << d.outcome_string(k) << ',' << format_real(d.probs()[k], precision) << '\n';
        }
    }
    return out.str();
}

}  // namespace coord
