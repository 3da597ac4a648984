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

#include "coordcert/witness.hpp"

#include <cmath>
#include <sstream>

#include "coordcert/error.hpp"

namespace coord {

bool WitnessMatrix::in_pattern(int n, int i, int j) {
    int d = std::abs(i - j);
    return d <= 1 || d == n - 1;
}

WitnessMatrix build_witness(int n, Variant variant) {
    if (n < 3) {
        fail(ErrorCode::InvalidArity, "witness needs n >= 3, got " + std::to_string(n));
    }
    WitnessMatrix w;
    w.n = n;
    w.variant = variant;
    w.entries = Eigen::MatrixXd::Zero(n, n);
    double diag_end, diag_mid, neighbour, corner;
    if (variant == Variant::Trig) {
        double theta = trig_angle(n);
        diag_mid = std::cos(theta);
        diag_end = 0.5 * diag_mid;
        neighbour = -0.5;
        corner = 0.5 * std::sin(theta);
    } else {
        diag_end = n - 2;
        diag_mid = 2.0 * (n - 1);
        neighbour = 1.0 - n;
        corner = 1.0;
    }
    for (int i = 0; i < n; i++) {
        w.entries(i, i) = (i == 0 || i == n - 1) ? diag_end : diag_mid;
        if (i + 1 < n) {
            w.entries(i, i + 1) = w.entries(i + 1, i) = neighbour;
        }
    }
    w.entries(0, n - 1) = w.entries(n - 1, 0) = corner;
    return w;
}

Eigen::VectorXd analytic_null_vector(const WitnessMatrix &w) {
    Eigen::VectorXd v(w.n);
    if (w.variant == Variant::Trig) {
        double theta = trig_angle(w.n);
        for (int j = 0; j < w.n; j++) {
            v(j) = std::cos(j * theta);
        }
    } else {
        v.setOnes();
    }
    return v;
}

PsdReport psd_check(const WitnessMatrix &w) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w.entries, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        fail(ErrorCode::Internal, "eigensolver did not converge for n=" + std::to_string(w.n));
    }
    PsdReport r;
    r.min_eigenvalue = solver.eigenvalues().minCoeff();
    r.null_vector_residual = (w.entries * analytic_null_vector(w)).cwiseAbs().maxCoeff();
    return r;
}

MinorReport minor_determinants(const WitnessMatrix &w) {
    if (w.variant != Variant::Trig) {
        fail(ErrorCode::UnsupportedVariant, "the Chebyshev minor recurrence applies to the trig witness only");
    }
    double theta = trig_angle(w.n);
    double c = std::cos(theta);
    MinorReport r;
    double prev2 = 1.0;
    double prev1 = 0.5 * c;
    for (int m = 1; m < w.n; m++) {
        double f = m == 1 ? prev1 : c * prev1 - 0.25 * prev2;
        if (m > 1) {
            prev2 = prev1;
            prev1 = f;
        }
        double exact = std::ldexp(std::cos(m * theta), -m);
        r.recurrence.push_back(f);
        r.closed_form.push_back(exact);
        r.max_deviation = std::max(r.max_deviation, std::abs(f - exact));
    }
    r.full_determinant = w.entries.partialPivLu().determinant();
    return r;
}

std::vector<double> direct_leading_minors(const WitnessMatrix &w) {
    std::vector<double> out;
    for (int m = 1; m <= w.n; m++) {
        out.push_back(w.entries.topLeftCorner(m, m).partialPivLu().determinant());
    }
    return out;
}

MomentMatrix::MomentMatrix(int n) : n_(n) {
    if (n < 2) {
        fail(ErrorCode::InvalidArity, "moment matrix needs n >= 2");
    }
}

void MomentMatrix::set(int i, int j, double value) {
    if (i < 1 || j < 1 || i > n_ || j > n_) {
        fail(ErrorCode::InvalidArgument, "moment index out of range");
    }
    if (i == j) {
        fail(ErrorCode::InvalidArgument, "moment diagonal is fixed to 1");
    }
    if (!(value >= -1.0 && value <= 1.0)) {
        fail(ErrorCode::InvalidArgument, "moment entries must lie in [-1, 1]");
    }
    known_[{std::min(i, j), std::max(i, j)}] = value;
}

std::optional<double> MomentMatrix::get(int i, int j) const {
    if (i == j) {
        return 1.0;
    }
    auto it = known_.find({std::min(i, j), std::max(i, j)});
    if (it == known_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool MomentMatrix::known(int i, int j) const {
    return get(i, j).has_value();
}

MomentMatrix MomentMatrix::cycle(const std::vector<double> &adjacent, double end_to_end) {
    int n = static_cast<int>(adjacent.size()) + 1;
    MomentMatrix g(n);
    for (int i = 1; i < n; i++) {
        g.set(i, i + 1, adjacent[i - 1]);
    }
    if (n > 2) {
        g.set(1, n, end_to_end);
    }
    return g;
}

double certificate(const MomentMatrix &gamma, const WitnessMatrix &w) {
    if (gamma.n() != w.n) {
        fail(ErrorCode::InvalidArity, "moment matrix and witness sizes differ");
    }
    double trace = 0.0;
    for (int i = 0; i < w.n; i++) {
        for (int j = 0; j < w.n; j++) {
            double wij = w.entries(i, j);
            if (wij == 0.0) {
                continue;
            }
            auto g = gamma.get(i + 1, j + 1);
            if (!g) {
                fail(ErrorCode::SupportViolation, "witness uses unknown moment (" + std::to_string(i + 1) + "," +
                                                      std::to_string(j + 1) + ")");
            }
            trace += wij * *g;
        }
    }
    return trace;
}

std::string witness_to_csv(const WitnessMatrix &w, int precision) {
    std::ostringstream out;
    for (int i = 0; i < w.n; i++) {
        for (int j = 0; j < w.n; j++) {
            out << (j ? "," : "") << format_real(w.entries(i, j), precision);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace coord
