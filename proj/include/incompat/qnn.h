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

#ifndef INCOMPAT_QNN_H
#define INCOMPAT_QNN_H

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "incompat/linalg.h"
#include "incompat/operators.h"

namespace incompat {

/// exp(-i sum_k theta_k P_k) over the 4^n - 1 non-identity Pauli strings in index order. Throws
/// InvalidArgument unless theta has 4^n - 1 entries.
CMatrix unitary_from_params(const RVector &theta);

/// E(rho) = sum_i w_i U_i rho U_i^dagger with w = softmax(logits) and U_i built from row i of the
/// generator parameters.
class MixedUnitaryChannel {
   public:
    /// Identity channel with d_a equal weights.
    MixedUnitaryChannel(int n, int d_a);
    MixedUnitaryChannel(int n, RVector logits, Eigen::MatrixXd generator_params);

    int num_qubits() const {
        return n_;
    }
    int ancilla_dim() const {
        return (int)logits_.size();
    }
    const RVector &logits() const {
        return logits_;
    }
    const Eigen::MatrixXd &generator_params() const {
        return params_;
    }
    const RVector &weights() const {
        return weights_;
    }
    const CMatrix &unitary(int i) const {
        return unitaries_[i];
    }

    void set_logits(const RVector &logits);
    void set_generator(int i, const RVector &theta);

   private:
    int n_;
    RVector logits_;
    Eigen::MatrixXd params_;
    RVector weights_;
    std::vector<CMatrix> unitaries_;
};

/// Throws DimensionMismatch.
DensityMatrix apply_channel(const MixedUnitaryChannel &e, const DensityMatrix &rho);

/// E^dagger(Z_q) = sum_i w_i U_i^dagger Z_q U_i for a 0-based qubit q. Throws InvalidArgument for
/// q outside [0, n).
CMatrix adjoint_observable(const MixedUnitaryChannel &e, int qubit);

struct LabeledState {
    DensityMatrix rho;
    double target;
};

/// Haar-random pure states labelled with tr(rho O). Throws InvalidArgument when size < 1.
std::vector<LabeledState> generate_dataset(const Observable &o, int size, uint64_t seed);

struct LossValue {
    /// L_O - alpha.
    double loss;
    double loss_o;
};

/// Mean squared mismatch between alpha * label and tr(Z_j E(rho)) summed over the two datasets,
/// evaluated by dense simulation. Throws EmptyDataset.
LossValue loss(const MixedUnitaryChannel &e, double alpha, const std::vector<LabeledState> &data1,
               const std::vector<LabeledState> &data2);

struct TrainingConfig {
    int d_a = 4;
    int epochs = 2000;
    double learning_rate = 0.05;
    int dataset_l = 100;
    int dataset_m = 100;
    double fd_step = 1e-4;
    uint64_t seed = 0;
    double alpha_init = 0.5;
    /// Standard deviation of the initial generator parameters.
    double init_scale = 0.1;
    /// The optimized objective is L_O - gamma_t alpha with
    /// gamma_t = max(alpha_weight_final, alpha_weight_initial * exp(-t / alpha_weight_decay)).
    /// Setting both weights to 1 optimizes L exactly.
    double alpha_weight_initial = 1.0;
    double alpha_weight_final = 1e-3;
    double alpha_weight_decay = 200.0;
};

struct LossRecord {
    int epoch;
    double loss_o;
    double loss;
};

struct TrainResult {
    double alpha;
    std::vector<LossRecord> loss_history;
    MixedUnitaryChannel channel;
};

/// Adam on (logits, generator parameters, alpha) with central finite-difference gradients.
/// Throws InvalidArgument for an invalid config.
TrainResult train(const Observable &o1, const Observable &o2, const TrainingConfig &config);

/// Loss evaluator on precomputed Pauli moments: with a_j the Pauli coefficients of E^dagger(Z_j),
/// L_O = sum_j a_j^T G_j a_j - 2 alpha a_j^T h_j + alpha^2 s_j, where G_j, h_j, s_j are dataset
/// averages of r r^T, y r and y^2 with r_k = tr(rho M_k).
class FastLoss {
   public:
    FastLoss(const std::vector<LabeledState> &data1, const std::vector<LabeledState> &data2);
    /// Per-component coefficient vectors: column j of the result is the Pauli expansion of
    /// U^dagger Z_j U.
    Eigen::MatrixXd component(const CMatrix &u) const;
    /// L_O for weighted components.
    double loss_o(const RVector &weights, const std::vector<Eigen::MatrixXd> &components, double alpha) const;

   private:
    int n_;
    std::vector<Eigen::MatrixXd> gram_;
    std::vector<RVector> h_;
    std::vector<double> s_;
};

/// Central-difference gradient of L_O - gamma alpha with respect to (logits, generator rows, alpha),
/// in that order. `comps` holds fast.component(U_i) for the current channel; only U_i is perturbed
/// when differentiating row i, and the entries are restored before returning.
RVector fd_gradient(const FastLoss &fast, const MixedUnitaryChannel &e, std::vector<Eigen::MatrixXd> &comps,
                    double alpha, double gamma, double h);

struct Checkpoint {
    MixedUnitaryChannel channel;
    double alpha;
    int epoch;
};

/// Key-value text:
///
///     incompat-checkpoint
///     n=<n>
///     d_a=<d_a>
///     epoch=<epoch>
///     alpha=<alpha>
///     logits=<d_a values>
///     theta.<i>=<4^n - 1 values>     (one line per i)
///
/// Numbers use the shortest round-trip decimal form.
void write_checkpoint(std::ostream &out, const Checkpoint &c);
/// Throws ParseError with the line number.
Checkpoint read_checkpoint(std::istream &in);

}  // namespace incompat

#endif
