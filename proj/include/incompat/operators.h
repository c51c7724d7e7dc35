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

#ifndef INCOMPAT_OPERATORS_H
#define INCOMPAT_OPERATORS_H

#include <cstdint>
#include <string>

#include "incompat/linalg.h"

namespace incompat {

/// Traceless Hermitian matrix on n qubits with every eigenvalue in [-1, 1].
class Observable {
   public:
    /// Throws InvalidObservable naming the violated invariant.
    Observable(int n, CMatrix matrix);
    /// Infers n from the dimension.
    explicit Observable(CMatrix matrix);

    int num_qubits() const {
        return n_;
    }
    Eigen::Index dim() const {
        return matrix_.rows();
    }
    const CMatrix &matrix() const {
        return matrix_;
    }

   private:
    int n_;
    CMatrix matrix_;
};

/// Returns an empty string when m satisfies the observable invariants, else the name of the first
/// violated one ("square", "dimension", "hermitian", "traceless", "norm").
std::string observable_violation(const CMatrix &m);

class DensityMatrix {
   public:
    /// Throws InvalidState.
    DensityMatrix(int n, CMatrix matrix);
    explicit DensityMatrix(CMatrix matrix);
    static DensityMatrix pure(const CVector &psi);
    static DensityMatrix maximally_mixed(int n);

    int num_qubits() const {
        return n_;
    }
    Eigen::Index dim() const {
        return matrix_.rows();
    }
    const CMatrix &matrix() const {
        return matrix_;
    }

   private:
    int n_;
    CMatrix matrix_;
};

/// Traceless GUE draw divided by its spectral norm.
Observable random_observable(int n, uint64_t seed);

/// Normalized complex-Gaussian vector of dimension 2^n.
CVector haar_vector(int n, uint64_t seed);
DensityMatrix haar_state(int n, uint64_t seed);

/// Re tr(rho O). Throws DimensionMismatch, or NotHermitian if the imaginary part exceeds 1e-10.
double expectation(const DensityMatrix &rho, const CMatrix &o);
double expectation(const DensityMatrix &rho, const Observable &o);

}  // namespace incompat

#endif
