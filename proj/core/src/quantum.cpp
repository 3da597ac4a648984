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

#include <bit>
#include <cmath>

#include "coordcert/error.hpp"
#include "coordcert/quantum.hpp"

namespace coord {

namespace {

constexpr double kStateTolerance = 1e-10;

void check_qubits(int n, int lo = 1) {
    if (n < lo || n > kMaxQubits) {
        fail(ErrorCode::InvalidArity, "qubit count must be in [" + std::to_string(lo) + ", " +
                                          std::to_string(kMaxQubits) + "], got " + std::to_string(n));
    }
}

void check_shape(int n, const Eigen::MatrixXcd &rho) {
    check_qubits(n);
    Eigen::Index dim = Eigen::Index{1} << n;
    if (rho.rows() != dim || rho.cols() != dim) {
        fail(ErrorCode::InvalidArgument, "density matrix must be 2^n x 2^n");
    }
}

Complex i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd entries) : n_(n_qubits), rho_(std::move(entries)) {
    check_shape(n_, rho_);
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
        fail(ErrorCode::Domain, "density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1.0)) > kStateTolerance) {
        fail(ErrorCode::Domain, "density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success || solver.eigenvalues().minCoeff() < -kStateTolerance) {
        fail(ErrorCode::Domain, "density matrix is not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::trusted(int n_qubits, Eigen::MatrixXcd entries) {
    check_shape(n_qubits, entries);
    DensityMatrix d;
    d.n_ = n_qubits;
    d.rho_ = std::move(entries);
    return d;
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return rho_.cwiseAbs2().sum();
}

Distribution DensityMatrix::z_basis_distribution() const {
    std::vector<double> p(rho_.rows());
    for (Eigen::Index k = 0; k < rho_.rows(); k++) {
        p[k] = rho_(k, k).real();
    }
    return Distribution(n_, std::move(p));
}

DensityMatrix ghz_state(int n) {
    return noisy_ghz(n, 1.0);
}

DensityMatrix noisy_ghz(int n, double v) {
    check_qubits(n, 2);
    if (!(v >= 0.0 && v <= 1.0)) {
        fail(ErrorCode::Domain, "visibility must lie in [0, 1]");
    }
    Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim) * ((1.0 - v) / static_cast<double>(dim));
    Eigen::Index last = dim - 1;
    rho(0, 0) += 0.5 * v;
    rho(last, last) += 0.5 * v;
    rho(0, last) += 0.5 * v;
    rho(last, 0) += 0.5 * v;
    return DensityMatrix::trusted(n, std::move(rho));
}

double fidelity_with_ghz(const DensityMatrix &rho) {
    const auto &m = rho.entries();
    Eigen::Index last = m.rows() - 1;
    return 0.5 * (m(0, 0) + m(last, last) + m(0, last) + m(last, 0)).real();
}

double noisy_ghz_fidelity(int n, double v) {
    double dim = std::ldexp(1.0, n);
    return (1.0 + v * (dim - 1.0)) / dim;
}

PauliString PauliString::identity() {
    return {};
}

PauliString PauliString::single(int n, int qubit, char pauli) {
    if (qubit < 1 || qubit > n || n > 32) {
        fail(ErrorCode::InvalidArgument, "qubit index out of range");
    }
    std::uint32_t bit = std::uint32_t{1} << (n - qubit);
    switch (pauli) {
        case 'I':
            return {};
        case 'X':
            return {bit, 0, 0};
        case 'Z':
            return {0, bit, 0};
        case 'Y':
            return {bit, bit, 1};
        default:
            fail(ErrorCode::InvalidArgument, std::string("unknown Pauli '") + pauli + "'");
    }
}

PauliString PauliString::operator*(const PauliString &o) const {
    int sign_flips = std::popcount(z & o.x);
    return {x ^ o.x, z ^ o.z, (phase + o.phase + 2 * sign_flips) % 4};
}

bool PauliString::commutes_with(const PauliString &o) const {
    return ((std::popcount(z & o.x) + std::popcount(o.z & x)) % 2) == 0;
}

PauliSum PauliSum::of(const PauliString &p, Complex c) {
    PauliSum s;
    s.terms.push_back({c, p});
    return s;
}

PauliSum PauliSum::operator*(const PauliSum &o) const {
    PauliSum out;
    for (const auto &[ca, pa] : terms) {
        for (const auto &[cb, pb] : o.terms) {
            out.terms.push_back({ca * cb, pa * pb});
        }
    }
    return out.simplified();
}

PauliSum PauliSum::operator+(const PauliSum &o) const {
    PauliSum out = *this;
    out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
    return out.simplified();
}

PauliSum PauliSum::scaled(Complex c) const {
    PauliSum out = *this;
    for (auto &t : out.terms) {
        t.first *= c;
    }
    return out;
}

PauliSum PauliSum::simplified() const {
    PauliSum out;
    for (const auto &[c, p] : terms) {
        Complex coeff = c * i_power(p.phase);
        PauliString bare{p.x, p.z, 0};
        bool merged = false;
        for (auto &t : out.terms) {
            if (t.second.x == bare.x && t.second.z == bare.z) {
                t.first += coeff;
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.terms.push_back({coeff, bare});
        }
    }
    std::erase_if(out.terms, [](const auto &t) { return std::abs(t.first) < 1e-15; });
    return out;
}

Complex expectation(const DensityMatrix &rho, const PauliString &p) {
    const auto &m = rho.entries();
    Complex total = 0.0;
    for (Eigen::Index b = 0; b < m.rows(); b++) {
        std::uint64_t ub = static_cast<std::uint64_t>(b);
        double sign = (std::popcount(ub & p.z) & 1) ? -1.0 : 1.0;
        total += sign * m(b, static_cast<Eigen::Index>(ub ^ p.x));
    }
    return i_power(p.phase) * total;
}

double expectation(const DensityMatrix &rho, const PauliSum &op) {
    Complex total = 0.0;
    for (const auto &[c, p] : op.terms) {
        total += c * expectation(rho, p);
    }
    return total.real();
}

double conditional_expectation(const DensityMatrix &rho, const PauliSum &op, const PauliSum &pivot, int sign,
                               double *probability) {
    if (sign != 1 && sign != -1) {
        fail(ErrorCode::InvalidArgument, "conditioning sign must be +1 or -1");
    }
    PauliSum projector = (PauliSum::of(PauliString::identity()) + pivot.scaled(static_cast<double>(sign))).scaled(0.5);
    double p = expectation(rho, projector);
    if (probability) {
        *probability = p;
    }
    if (p < 1e-14) {
        fail(ErrorCode::Domain, "conditioning event has probability 0");
    }
    return expectation(rho, projector * op * projector) / p;
}

}  // namespace coord
