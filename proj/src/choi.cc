// Copyright 2026 The incompat Authors
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

#include "incompat/choi.h"

#include <cmath>
#include <sstream>

#include "incompat/error.h"
#include "incompat/pencil.h"

namespace incompat {

namespace {

void validate_observables(const std::vector<Observable> &observables) {
    if (observables.size() < 2) {
        throw Error(ErrorKind::InvalidObservable, "need at least two observables");
    }
    int n = observables[0].num_qubits();
    for (const auto &o : observables) {
        if (o.num_qubits() != n) {
            throw Error(ErrorKind::DimensionMismatch, "observables act on different qubit counts");
        }
    }
    if ((int)observables.size() > n) {
        throw Error(ErrorKind::InvalidObservable, "more observables than qubits");
    }
}

}  // namespace

bool is_reserved_j(uint64_t j, int n, int n_obs) {
    if (j == 0) {
        return true;
    }
    for (int q = 0; q < n_obs; q++) {
        if (j == PauliString::z_on(q, n).index()) {
            return true;
        }
    }
    return false;
}

std::vector<BetaKey> beta_candidates(int n, int n_obs) {
    std::vector<BetaKey> out;
    uint64_t total = uint64_t(1) << (2 * n);
    for (uint64_t k = 1; k < total; k++) {
        for (uint64_t j = 0; j < total; j++) {
            if (!is_reserved_j(j, n, n_obs)) {
                out.push_back({k, j});
            }
        }
    }
    return out;
}

std::string beta_key_str(const BetaKey &key, int n) {
    return PauliString::from_index(key.first, n).str() + "," + PauliString::from_index(key.second, n).str();
}

CMatrix observable_coupling(const std::vector<Observable> &observables) {
    int n = observables.at(0).num_qubits();
    Eigen::Index d = Eigen::Index(1) << n;
    CMatrix out = CMatrix::Zero(d * d, d * d);
    for (size_t i = 0; i < observables.size(); i++) {
        out += kron(observables[i].matrix(), pauli_operator(PauliString::z_on((int)i, n)));
    }
    return out;
}

ChoiMatrix build_choi(const std::vector<Observable> &observables, double alpha, const BetaMap &beta) {
    validate_observables(observables);
    if (!(alpha > 0 && alpha <= 1)) {
        throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
    }
    int n = observables[0].num_qubits();
    int n_obs = (int)observables.size();
    uint64_t total = uint64_t(1) << (2 * n);
    ChoiMatrix c;
    c.n_ = n;
    c.alpha_ = alpha;
    c.observables_ = observables;
    c.dense_ = alpha * observable_coupling(observables);
    c.dense_.diagonal().array() += 1.0;
    for (const auto &[key, value] : beta) {
        if (key.first >= total || key.second >= total) {
            throw Error(ErrorKind::DimensionMismatch, "beta key index out of range");
        }
        if (key.first == 0 || is_reserved_j(key.second, n, n_obs)) {
            throw Error(ErrorKind::ReservedBetaKey, beta_key_str(key, n));
        }
        if (value == 0) {
            continue;
        }
        c.beta_[key] = value;
        PauliString p = PauliString::from_index(key.first, n).tensor(PauliString::from_index(key.second, n));
        PauliMonomial::of(p).add_to(c.dense_, value);
    }
    return c;
}

double ChoiMatrix::coefficient(uint64_t k, uint64_t j) const {
    PauliString p = PauliString::from_index(k, n_).tensor(PauliString::from_index(j, n_));
    return PauliMonomial::of(p).trace_with(dense_).real() / (double)dense_.rows();
}

CpCheck check_cp(const ChoiMatrix &j, double tol) {
    double lmin = hermitian_eig(j.dense()).values.minCoeff();
    return {lmin >= -tol, lmin};
}

bool check_unital_tp(const CMatrix &dense, int n, double tol) {
    Eigen::Index d = Eigen::Index(1) << n;
    if (dense.rows() != d * d || dense.cols() != d * d) {
        throw Error(ErrorKind::DimensionMismatch, "Choi matrix must be 4^n x 4^n");
    }
    CMatrix reduced = partial_trace_left(dense, (int)d, (int)d);
    reduced.diagonal().array() -= (double)d;
    if (!(reduced.cwiseAbs().maxCoeff() <= tol)) {
        return false;
    }
    std::complex<double> identity_coefficient = dense.trace() / (double)(d * d);
    return std::abs(identity_coefficient - 1.0) <= tol;
}

bool check_unital_tp(const ChoiMatrix &j, double tol) {
    return check_unital_tp(j.dense(), j.num_qubits(), tol);
}

double solve_alpha_zero_beta(const std::vector<Observable> &observables, const BetaMap &beta) {
    validate_observables(observables);
    std::vector<BetaKey> support;
    for (const auto &[key, value] : beta) {
        support.push_back(key);
    }
    ChoiPencil pencil(observables, support);
    double a = pencil.solve_alpha(pencil.from_map(beta));
    if (a < 0) {
        throw Error(ErrorKind::InfeasibleBeta, "J(1e-9, beta) has a negative eigenvalue");
    }
    return a;
}

Eigen::VectorXcd pauli_coefficients(const CMatrix &a) {
    int n = 0;
    while ((Eigen::Index(1) << n) < a.rows()) {
        n++;
    }
    uint64_t total = uint64_t(1) << (2 * n);
    Eigen::VectorXcd out(total);
    for (uint64_t k = 0; k < total; k++) {
        out(k) = PauliMonomial::of(PauliString::from_index(k, n)).trace_with(a) / (double)a.rows();
    }
    return out;
}

PauliChannel::PauliChannel(int n, Eigen::MatrixXd coefficients) : n_(n), adjoint_(std::move(coefficients)) {
    uint64_t total = uint64_t(1) << (2 * n);
    if (adjoint_.rows() != (Eigen::Index)total || adjoint_.cols() != (Eigen::Index)total) {
        throw Error(ErrorKind::DimensionMismatch, "coefficient table must be 4^n x 4^n");
    }
    for (uint64_t j = 0; j < total; j++) {
        PauliString pj = PauliString::from_index(j, n);
        basis_.push_back(PauliMonomial::of(pj));
        if (pj.count_y() & 1) {
            adjoint_.col(j) *= -1.0;
        }
    }
}

namespace {

Eigen::MatrixXd coefficient_table(const ChoiMatrix &c) {
    int n = c.num_qubits();
    uint64_t total = uint64_t(1) << (2 * n);
    Eigen::MatrixXd table = Eigen::MatrixXd::Zero(total, total);
    table(0, 0) = 1.0;
    for (size_t i = 0; i < c.observables().size(); i++) {
        Eigen::VectorXcd o = pauli_coefficients(c.observables()[i].matrix());
        uint64_t j = PauliString::z_on((int)i, n).index();
        for (uint64_t k = 0; k < total; k++) {
            table(k, j) = c.alpha() * o(k).real();
        }
    }
    for (const auto &[key, value] : c.beta()) {
        table(key.first, key.second) = value;
    }
    return table;
}

}  // namespace

PauliChannel::PauliChannel(const ChoiMatrix &j) : PauliChannel(j.num_qubits(), coefficient_table(j)) {
}

CMatrix PauliChannel::adjoint(uint64_t j) const {
    Eigen::Index d = Eigen::Index(1) << n_;
    CMatrix out = CMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < adjoint_.rows(); k++) {
        if (adjoint_(k, j) != 0) {
            basis_[k].add_to(out, adjoint_(k, j));
        }
    }
    return out;
}

CMatrix PauliChannel::adjoint(const CMatrix &op) const {
    Eigen::VectorXcd c = pauli_coefficients(op);
    Eigen::VectorXcd mapped = adjoint_.cast<std::complex<double>>() * c;
    Eigen::Index d = Eigen::Index(1) << n_;
    CMatrix out = CMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < mapped.size(); k++) {
        if (mapped(k) != 0.0) {
            basis_[k].add_to(out, mapped(k));
        }
    }
    return out;
}

CMatrix PauliChannel::apply(const CMatrix &rho) const {
    Eigen::VectorXcd c = pauli_coefficients(rho);
    Eigen::VectorXcd mapped = adjoint_.cast<std::complex<double>>().transpose() * c;
    Eigen::Index d = Eigen::Index(1) << n_;
    CMatrix out = CMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < mapped.size(); k++) {
        if (mapped(k) != 0.0) {
            basis_[k].add_to(out, mapped(k));
        }
    }
    return out;
}

}  // namespace incompat
