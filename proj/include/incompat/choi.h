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

#ifndef INCOMPAT_CHOI_H
#define INCOMPAT_CHOI_H

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "incompat/linalg.h"
#include "incompat/operators.h"
#include "incompat/pauli.h"

namespace incompat {

/// (k, j) Pauli indices of the coefficient of M_k (x) M_j. k acts on the Y (output) factor.
using BetaKey = std::pair<uint64_t, uint64_t>;
using BetaMap = std::map<BetaKey, double>;

/// True for j = I and j = Z_1 .. Z_{n_obs}, whose coefficients are fixed by trace preservation and
/// by the observables.
bool is_reserved_j(uint64_t j, int n, int n_obs);

/// Every (k, j) with k != I and j not reserved, in (k, j) order.
std::vector<BetaKey> beta_candidates(int n, int n_obs);

/// "XI,ZZ" style label.
std::string beta_key_str(const BetaKey &key, int n);

/// J = I (x) I + alpha sum_i O_i (x) Z_i + sum beta_kj M_k (x) M_j, with the Y factor first and no
/// 1/4^n normalization, so unitality reads Tr_Y J = 2^n I.
class ChoiMatrix {
   public:
    int num_qubits() const {
        return n_;
    }
    double alpha() const {
        return alpha_;
    }
    const BetaMap &beta() const {
        return beta_;
    }
    const std::vector<Observable> &observables() const {
        return observables_;
    }
    const CMatrix &dense() const {
        return dense_;
    }

    /// Coefficient of M_k (x) M_j recomputed from the dense matrix: tr(J (M_k (x) M_j)) / 4^n.
    double coefficient(uint64_t k, uint64_t j) const;

   private:
    friend ChoiMatrix build_choi(const std::vector<Observable> &, double, const BetaMap &);
    int n_ = 0;
    double alpha_ = 0;
    BetaMap beta_;
    std::vector<Observable> observables_;
    CMatrix dense_;
};

/// Throws InvalidObservable, ReservedBetaKey, DimensionMismatch, or InvalidArgument for alpha
/// outside (0, 1].
ChoiMatrix build_choi(const std::vector<Observable> &observables, double alpha, const BetaMap &beta);

/// sum_i O_i (x) Z_i on 4^n dimensions.
CMatrix observable_coupling(const std::vector<Observable> &observables);

struct CpCheck {
    bool cp;
    double lambda_min;
};
CpCheck check_cp(const ChoiMatrix &j, double tol);

/// Tr_Y J = 2^n I and the I (x) I coefficient equals 1, both within tol.
bool check_unital_tp(const ChoiMatrix &j, double tol);
bool check_unital_tp(const CMatrix &dense, int n, double tol);

/// Largest alpha in (0, 1] with lambda_min(J(alpha, beta)) >= 0, to 1e-10. Throws InfeasibleBeta
/// when J(1e-9, beta) already has a negative eigenvalue.
double solve_alpha_zero_beta(const std::vector<Observable> &observables, const BetaMap &beta = {});

/// The unital map certified by a positive semidefinite Choi record. Its adjoint acts on Pauli
/// strings as Phi^dagger(M_j) = (-1)^{#Y(j)} sum_k c_kj M_k, where c_kj are the Choi coefficients:
/// J is the partial transpose over the X factor of the standard Choi matrix, and M_j^T picks up one
/// sign per Y.
class PauliChannel {
   public:
    explicit PauliChannel(const ChoiMatrix &j);
    /// Build from the full coefficient table c(k, j), 4^n x 4^n.
    PauliChannel(int n, Eigen::MatrixXd coefficients);

    int num_qubits() const {
        return n_;
    }
    /// A(k, j) with Phi^dagger(M_j) = sum_k A(k, j) M_k.
    const Eigen::MatrixXd &adjoint_table() const {
        return adjoint_;
    }
    CMatrix adjoint(uint64_t j) const;
    CMatrix adjoint(const CMatrix &op) const;
    /// Schrodinger picture, Phi(M_k) = sum_j A(k, j) M_j.
    CMatrix apply(const CMatrix &rho) const;

   private:
    int n_;
    Eigen::MatrixXd adjoint_;
    std::vector<PauliMonomial> basis_;
};

/// Pauli coefficients c_k = tr(M_k A) / 2^n of an operator.
Eigen::VectorXcd pauli_coefficients(const CMatrix &a);

}  // namespace incompat

#endif
