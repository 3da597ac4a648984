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

#ifndef COORDCERT_WITNESS_HPP
#define COORDCERT_WITNESS_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coordcert/format.hpp"
#include "coordcert/variant.hpp"

namespace coord {

/// Symmetric n x n witness supported on the diagonal, the first off-diagonals and the two corners.
struct WitnessMatrix {
    int n = 0;
    Variant variant = Variant::Trig;
    Eigen::MatrixXd entries;

    /// True for positions the witness is allowed to touch (0-based).
    static bool in_pattern(int n, int i, int j);
};

/// Trig: diag (c/2, c, ..., c, c/2), neighbours -1/2, corners s/2 with c, s = cos, sin of pi/(2(n-1)).
/// Alt: diag (n-2, 2(n-1), ..., 2(n-1), n-2), neighbours 1-n, corners 1.
WitnessMatrix build_witness(int n, Variant variant);

/// Known kernel vector: cos((j-1) theta) for Trig, all ones for Alt.
Eigen::VectorXd analytic_null_vector(const WitnessMatrix &w);

struct PsdReport {
    double min_eigenvalue = 0.0;
    /// Infinity norm of W v for the analytic kernel vector.
    double null_vector_residual = 0.0;
};

PsdReport psd_check(const WitnessMatrix &w);

struct MinorReport {
    /// Leading principal minors of size 1..n-1 from the three-term recurrence.
    std::vector<double> recurrence;
    /// 2^{-m} cos(m theta) for the same sizes.
    std::vector<double> closed_form;
    double max_deviation = 0.0;
    /// Determinant of the whole matrix (corners included), by LU.
    double full_determinant = 0.0;
};

/// Trig only; throws UnsupportedVariant for Alt.
MinorReport minor_determinants(const WitnessMatrix &w);

/// Leading principal minors of size 1..n by partial-pivot LU, for either variant.
std::vector<double> direct_leading_minors(const WitnessMatrix &w);

/// Partially known symmetric moment matrix over n parties with unit diagonal.
/// Indices are 1-based party numbers.
class MomentMatrix {
   public:
    explicit MomentMatrix(int n);

    int n() const {
        return n_;
    }
    void set(int i, int j, double value);
    std::optional<double> get(int i, int j) const;
    bool known(int i, int j) const;

    /// Unit diagonal, neighbours (i, i+1) from `adjacent`, and the (1, n) entry.
    static MomentMatrix cycle(const std::vector<double> &adjacent, double end_to_end);

   private:
    int n_;
    std::map<std::pair<int, int>, double> known_;
};

/// Tr(Gamma W); throws SupportViolation if W needs an entry Gamma leaves unknown.
double certificate(const MomentMatrix &gamma, const WitnessMatrix &w);

std::string witness_to_csv(const WitnessMatrix &w, int precision = kDefaultPrecision);

}  // namespace coord

#endif
