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

#ifndef INCOMPAT_LINALG_H
#define INCOMPAT_LINALG_H

#include <Eigen/Dense>
#include <complex>

namespace incompat {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Eigen-decomposition of a Hermitian matrix. Values are in descending order and vectors(:, k)
/// belongs to values(k).
struct Spectrum {
    RVector values;
    CMatrix vectors;
};

/// max |M - M^dagger| entrywise.
double hermiticity_defect(const CMatrix &m);

/// Throws NotHermitian unless m is square and Hermitian within tol * max(1, max|m_ij|).
void require_hermitian(const CMatrix &m, double tol = 1e-10);

/// Descending eigen-decomposition. Equal eigenvalues keep the solver's order; each eigenvector is
/// rotated so that its first entry with modulus above 1e-12 is real and positive.
Spectrum hermitian_eig(const CMatrix &m);

/// Smallest eigenvalue without the Hermitian check. Hot path for the alpha solvers.
double min_eigenvalue(const CMatrix &m);

/// sum_a (<a| (x) I) M (|a> (x) I) for M acting on C^dim_left (x) C^dim_right.
CMatrix partial_trace_left(const CMatrix &m, int dim_left, int dim_right);

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Largest absolute eigenvalue of a Hermitian matrix.
double spectral_norm_hermitian(const CMatrix &m);

}  // namespace incompat

#endif
