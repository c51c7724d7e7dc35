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

#include "incompat/linalg.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "incompat/error.h"

namespace incompat {

double hermiticity_defect(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::NotHermitian, "matrix is not square");
    }
    if (m.size() == 0) {
        return;
    }
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    double defect = hermiticity_defect(m);
    if (!(defect <= tol * scale)) {
        std::ostringstream ss;
        ss << "max |M - M^dagger| = " << defect;
        throw Error(ErrorKind::NotHermitian, ss.str());
    }
}

Spectrum hermitian_eig(const CMatrix &m) {
    require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    const Eigen::Index d = m.rows();
    Spectrum out;
    out.values.resize(d);
    out.vectors.resize(d, d);
    // Eigen returns ascending values; reversing keeps ties in a stable, deterministic order.
    for (Eigen::Index k = 0; k < d; k++) {
        out.values(k) = solver.eigenvalues()(d - 1 - k);
        CVector v = solver.eigenvectors().col(d - 1 - k);
        for (Eigen::Index r = 0; r < d; r++) {
            double a = std::abs(v(r));
            if (a > 1e-12) {
                v *= std::conj(v(r)) / a;
                v(r) = a;
                break;
            }
        }
        out.vectors.col(k) = v;
    }
    return out;
}

double min_eigenvalue(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

CMatrix partial_trace_left(const CMatrix &m, int dim_left, int dim_right) {
    if (dim_left <= 0 || dim_right <= 0 || m.rows() != (Eigen::Index)dim_left * dim_right ||
        m.cols() != m.rows()) {
        std::ostringstream ss;
        ss << "matrix of size " << m.rows() << "x" << m.cols() << " does not factor as " << dim_left << "*"
           << dim_right;
        throw Error(ErrorKind::DimensionMismatch, ss.str());
    }
    CMatrix out = CMatrix::Zero(dim_right, dim_right);
    for (int a = 0; a < dim_left; a++) {
        out += m.block((Eigen::Index)a * dim_right, (Eigen::Index)a * dim_right, dim_right, dim_right);
    }
    return out;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double spectral_norm_hermitian(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    const auto &w = solver.eigenvalues();
    return std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
}

}  // namespace incompat
