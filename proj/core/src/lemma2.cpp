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

#include <cmath>
#include <random>
#include <vector>

#include "coordcert/error.hpp"
#include "coordcert/quantum.hpp"

namespace coord {

namespace {

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; i++) {
        for (int j = 0; j < dim; j++) {
            m(i, j) = Complex(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::MatrixXcd q = qr.householderQ();
    // Haar phase fix from the diagonal of R.
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; j++) {
        Complex d = r(j, j);
        if (std::abs(d) > 0) {
            q.col(j) *= d / std::abs(d);
        }
    }
    return q;
}

Eigen::MatrixXcd diagonal_in(const Eigen::MatrixXcd &u, const std::vector<int> &diag) {
    Eigen::VectorXcd d(diag.size());
    for (std::size_t k = 0; k < diag.size(); k++) {
        d(k) = static_cast<double>(diag[k]);
    }
    return u * d.asDiagonal() * u.adjoint();
}

void check_dim(int dim) {
    if (dim < 2 || dim > 64) {
        fail(ErrorCode::InvalidArgument, "probe dimension must be in [2, 64], got " + std::to_string(dim));
    }
}

}  // namespace

Lemma2Check evaluate_lemma2(const Eigen::MatrixXcd &p, const Eigen::MatrixXcd &q, const Eigen::VectorXcd &psi) {
    if (p.rows() != psi.size() || q.rows() != psi.size() || p.cols() != psi.size() || q.cols() != psi.size()) {
        fail(ErrorCode::InvalidArgument, "projector and state dimensions differ");
    }
    Eigen::VectorXcd p_psi = p * psi;
    Eigen::VectorXcd q_psi = q * psi;
    Eigen::VectorXcd pq_psi = p * q_psi;
    Eigen::VectorXcd qp_psi = q * p_psi;
    double npq = pq_psi.squaredNorm();
    double np = p_psi.squaredNorm();
    double nq = q_psi.squaredNorm();
    Lemma2Check c;
    c.commutator = (pq_psi - qp_psi).norm();
    c.norm_gap = std::max(std::abs(npq - np), std::abs(np - nq));
    c.residual = (p_psi - q_psi).norm();
    return c;
}

Lemma2ProbeResult lemma2_probe(int dim, int trials, std::uint64_t seed) {
    check_dim(dim);
    if (trials < 1) {
        fail(ErrorCode::InvalidArgument, "need at least one trial");
    }
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::normal_distribution<double> g;
    Lemma2ProbeResult out;
    out.trials = trials;
    for (int t = 0; t < trials; t++) {
        Eigen::MatrixXcd u = random_unitary(dim, rng);
        std::vector<int> p(dim), q(dim);
        for (int k = 0; k < dim; k++) {
            p[k] = coin(rng);
            q[k] = coin(rng);
        }
        q[0] = p[0];
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
        for (int k = 0; k < dim; k++) {
            if (p[k] == q[k]) {
                c(k) = Complex(g(rng), g(rng));
            }
        }
        if (c.norm() == 0.0) {
            c(0) = 1.0;
        }
        c.normalize();
        Lemma2Check check = evaluate_lemma2(diagonal_in(u, p), diagonal_in(u, q), u * c);
        out.max_residual = std::max(out.max_residual, check.residual);
        out.max_premise_gap = std::max({out.max_premise_gap, check.commutator, check.norm_gap});
    }
    return out;
}

Lemma2Check lemma2_negative_control(int dim, double gap, std::uint64_t seed) {
    check_dim(dim);
    if (!(gap > 0.0 && gap < 1.0)) {
        fail(ErrorCode::InvalidArgument, "gap must lie in (0, 1)");
    }
    std::mt19937_64 rng(seed);
    Eigen::MatrixXcd u = random_unitary(dim, rng);
    std::vector<int> p(dim, 0), q(dim, 0);
    p[0] = p[1] = 1;
    q[0] = 1;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
    c(0) = std::sqrt(1.0 - gap);
    c(1) = std::sqrt(gap);
    return evaluate_lemma2(diagonal_in(u, p), diagonal_in(u, q), u * c);
}

}  // namespace coord
