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

#ifndef INCOMPAT_PENCIL_H
#define INCOMPAT_PENCIL_H

#include <cstdint>
#include <vector>

#include "incompat/choi.h"

namespace incompat {

/// The affine family J(alpha, beta) = I + alpha B + sum_s beta_s P_s over a fixed support of
/// (k, j) keys, with beta stored densely in support order.
class ChoiPencil {
   public:
    ChoiPencil(const std::vector<Observable> &observables, std::vector<BetaKey> support);

    int num_qubits() const {
        return n_;
    }
    int num_observables() const {
        return n_obs_;
    }
    const std::vector<BetaKey> &support() const {
        return support_;
    }
    size_t size() const {
        return support_.size();
    }
    const CMatrix &coupling() const {
        return coupling_;
    }
    const PauliMonomial &term(size_t s) const {
        return terms_[s];
    }

    CMatrix assemble(double alpha, const RVector &beta) const;
    BetaMap to_map(const RVector &beta, double drop_below = 0.0) const;
    /// Throws InvalidArgument if a nonzero entry of `beta` is outside the support.
    RVector from_map(const BetaMap &beta) const;

    /// Exact feasibility boundary in alpha at fixed beta. Returns the largest alpha in (0, 1] with
    /// lambda_min >= 0 within 1e-10, or a negative value if J(1e-9, beta) is not PSD. The root is
    /// bracketed and refined with Newton steps on the concave lambda_min, falling back to bisection.
    double solve_alpha(const RVector &beta, double guess = -1) const;

    struct Smoothed {
        double alpha;
        /// d alpha_tau / d beta.
        RVector gradient;
    };
    /// Root in alpha of the Gibbs soft-minimum lambda_min - tau log sum exp(-(lambda_i - lambda_min)/tau),
    /// with its implicit derivative in beta. The soft-minimum is concave in J, so the root is unique.
    Smoothed solve_alpha_smoothed(const RVector &beta, double tau, double guess) const;

    /// Soft-minimum of J(alpha, beta) and its gradient in beta.
    double soft_min(double alpha, const RVector &beta, double tau, RVector *gradient) const;

    double lambda_min(double alpha, const RVector &beta) const;

    uint64_t eigensolves() const {
        return eigensolves_;
    }

    /// Ascending eigenvalues and, if requested, eigenvectors of J(alpha, beta). When every active
    /// term acts diagonally on the X factor, J is block diagonal with one 2^n block per
    /// computational basis state of X and the blocks are diagonalized separately.
    void decompose(double alpha, const RVector &beta, bool vectors, RVector &values, CMatrix &vecs) const;

   private:
    struct Eval {
        double value;
        double slope;
    };
    Eval eval_exact(double alpha, const RVector &beta) const;
    bool block_diagonal(const RVector &beta) const;

    int n_;
    int n_obs_;
    std::vector<BetaKey> support_;
    std::vector<PauliMonomial> terms_;
    std::vector<bool> x_diagonal_;
    CMatrix coupling_;
    mutable uint64_t eigensolves_ = 0;
};

/// Bracketed safeguarded Newton solve of f(alpha) = 0 for a concave decreasing f on [lo, hi],
/// given f(lo) >= 0 > f(hi). `eval` returns (f, f'). The returned point satisfies f >= 0 and lies
/// within `tol` of the root.
template <typename F>
double concave_root(F &&eval, double lo, double hi, double guess, double tol);

}  // namespace incompat

#include "incompat/pencil.inl"

#endif
