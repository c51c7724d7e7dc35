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

#include "incompat/operators.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "incompat/error.h"
#include "incompat/rng.h"

namespace incompat {

namespace {

int qubits_for_dim(Eigen::Index d) {
    int n = 0;
    while ((Eigen::Index(1) << n) < d) {
        n++;
    }
    if ((Eigen::Index(1) << n) != d || n == 0) {
        return -1;
    }
    return n;
}

}  // namespace

std::string observable_violation(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        return "square";
    }
    if (qubits_for_dim(m.rows()) < 0) {
        return "dimension";
    }
    if (!(hermiticity_defect(m) <= 1e-10)) {
        return "hermitian";
    }
    if (!(std::abs(m.trace()) <= 1e-10)) {
        return "traceless";
    }
    if (!(spectral_norm_hermitian(m) <= 1 + 1e-9)) {
        return "norm";
    }
    return "";
}

Observable::Observable(int n, CMatrix matrix) : n_(n), matrix_(std::move(matrix)) {
    if (n < 1 || matrix_.rows() != (Eigen::Index(1) << n)) {
        throw Error(ErrorKind::InvalidObservable, "dimension");
    }
    std::string bad = observable_violation(matrix_);
    if (!bad.empty()) {
        throw Error(ErrorKind::InvalidObservable, bad);
    }
}

Observable::Observable(CMatrix matrix) : Observable(qubits_for_dim(matrix.rows()), CMatrix(matrix)) {
}

DensityMatrix::DensityMatrix(int n, CMatrix matrix) : n_(n), matrix_(std::move(matrix)) {
    if (n < 1 || matrix_.rows() != (Eigen::Index(1) << n) || matrix_.cols() != matrix_.rows()) {
        throw Error(ErrorKind::InvalidState, "dimension");
    }
    if (!(hermiticity_defect(matrix_) <= 1e-10)) {
        throw Error(ErrorKind::InvalidState, "hermitian");
    }
    if (!(std::abs(matrix_.trace() - 1.0) <= 1e-10)) {
        throw Error(ErrorKind::InvalidState, "trace");
    }
    if (!(min_eigenvalue(matrix_) >= -1e-10)) {
        throw Error(ErrorKind::InvalidState, "positive");
    }
}

DensityMatrix::DensityMatrix(CMatrix matrix) : DensityMatrix(qubits_for_dim(matrix.rows()), CMatrix(matrix)) {
}

DensityMatrix DensityMatrix::pure(const CVector &psi) {
    CVector v = psi / psi.norm();
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    Eigen::Index d = Eigen::Index(1) << n;
    return DensityMatrix(n, CMatrix::Identity(d, d) / (double)d);
}

Observable random_observable(int n, uint64_t seed) {
    Rng rng(seed);
    const Eigen::Index d = Eigen::Index(1) << n;
    CMatrix a(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            a(i, j) = rng.complex_normal();
        }
    }
    CMatrix h = (a + a.adjoint()) / 2.0;
    h -= (h.trace() / (double)d) * CMatrix::Identity(d, d);
    h = (h + h.adjoint()) / 2.0;
    h /= spectral_norm_hermitian(h);
    return Observable(n, h);
}

CVector haar_vector(int n, uint64_t seed) {
    Rng rng(seed);
    const Eigen::Index d = Eigen::Index(1) << n;
    CVector v(d);
    for (Eigen::Index i = 0; i < d; i++) {
        v(i) = rng.complex_normal();
    }
    return v / v.norm();
}

DensityMatrix haar_state(int n, uint64_t seed) {
    return DensityMatrix::pure(haar_vector(n, seed));
}

double expectation(const DensityMatrix &rho, const CMatrix &o) {
    if (o.rows() != rho.dim() || o.cols() != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state and operator dimensions differ");
    }
    std::complex<double> t = (rho.matrix().transpose().cwiseProduct(o)).sum();
    if (!(std::abs(t.imag()) <= 1e-10)) {
        std::ostringstream ss;
        ss << "tr(rho O) has imaginary part " << t.imag();
        throw Error(ErrorKind::NotHermitian, ss.str());
    }
    return t.real();
}

double expectation(const DensityMatrix &rho, const Observable &o) {
    return expectation(rho, o.matrix());
}

}  // namespace incompat
