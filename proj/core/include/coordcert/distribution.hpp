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

#ifndef COORDCERT_DISTRIBUTION_HPP
#define COORDCERT_DISTRIBUTION_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "coordcert/format.hpp"

namespace coord {

constexpr int kMaxDistributionParties = 20;
constexpr double kProbabilityTolerance = 1e-12;

/// Joint distribution of n binary outcomes. Outcome index bit (n - i) holds party i,
/// so party 1 is the most significant bit and "0001" is index 1.
class Distribution {
   public:
    /// Throws Domain unless every entry is >= -tol and they sum to 1 within tol.
    Distribution(int n, std::vector<double> probs);

    static Distribution perfect_coordination(int n);
    static Distribution uniform(int n);
    /// v * perfect_coordination + (1 - v) * uniform.
    static Distribution white_noise_mixture(int n, double v);

    int n() const {
        return n_;
    }
    const std::vector<double> &probs() const {
        return probs_;
    }
    double prob(std::uint64_t outcome) const {
        return probs_.at(outcome);
    }
    /// Outcome bit (0 or 1) of `party` (1-based) in `outcome`.
    int outcome_bit(std::uint64_t outcome, int party) const;
    std::string outcome_string(std::uint64_t outcome) const;
    std::uint64_t parse_outcome(std::string_view bits) const;

   private:
    int n_;
    std::vector<double> probs_;
};

/// Lines `outcome_bits,probability`; blank lines, `#` comments and one optional header
/// row are skipped. Missing outcomes have probability 0. Errors name the offending row.
Distribution distribution_from_csv(std::string_view text);

/// {"n": 4, "probabilities": {"0000": 0.5, "1111": 0.5}}
Distribution distribution_from_json(std::string_view text);

/// Nonzero outcomes only, in outcome order.
std::string distribution_to_csv(const Distribution &d, int precision = kDefaultPrecision);

}  // namespace coord

#endif
