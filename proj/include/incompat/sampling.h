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

#ifndef INCOMPAT_SAMPLING_H
#define INCOMPAT_SAMPLING_H

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "incompat/choi.h"
#include "incompat/linalg.h"
#include "incompat/operators.h"
#include "incompat/qnn.h"
#include "incompat/rng.h"

namespace incompat {

enum class EstimatorKind { Projective, QnnZ };
const char *estimator_kind_name(EstimatorKind k);

struct EstimatorStats {
    uint64_t n = 0;
    double mean = 0;
    /// Unbiased (N - 1 divisor); 0 when N = 1.
    double sample_variance = 0;
    EstimatorKind kind = EstimatorKind::Projective;
    /// Scaling applied to the raw +-1 outcomes (QnnZ only).
    double alpha = 1;
    /// Mean of the raw outcomes before the 1/alpha scaling.
    double raw_mean = 0;
};

/// A finite outcome distribution with one or more real-valued estimators per outcome. Each shot
/// draws an outcome with probability probs[o] and reports values(o, e) for every estimator e;
/// truth(e) is the exact expectation the estimator targets.
struct OutcomeModel {
    std::vector<double> probs;
    Eigen::MatrixXd values;
    RVector truth;
};

/// Born-rule model of measuring o on rho, with eigenvalues that agree within 1e-10 merged into one
/// outcome. Throws InvalidState when the outcome probabilities are not a distribution.
OutcomeModel projective_model(const DensityMatrix &rho, const Observable &o);

/// Z-basis readout of a channel output state. Outcome b is the computational basis string, and
/// estimator q reports (-1)^{bit q} / alpha with qubit 0 the most significant bit. Probabilities
/// below zero by at most 1e-10 are clipped.
OutcomeModel z_readout_model(const CMatrix &output_state, int num_estimators, double alpha, const RVector &truth);

/// Counts for N shots of a model, drawn as one multinomial.
std::vector<uint64_t> sample_counts(const OutcomeModel &model, uint64_t shots, Rng &rng);
/// Per-estimator statistics of a count vector.
std::vector<EstimatorStats> summarize(const OutcomeModel &model, const std::vector<uint64_t> &counts, EstimatorKind kind,
                                      double alpha);

/// Throws InvalidState, or InvalidArgument for N < 1.
EstimatorStats sample_projective(const DensityMatrix &rho, const Observable &o, uint64_t shots, uint64_t seed);

/// Both qubits read from the same shots of Z measurements on E(rho), scaled by 1/alpha.
std::pair<EstimatorStats, EstimatorStats> sample_qnn_z(const MixedUnitaryChannel &e, const DensityMatrix &rho,
                                                       double alpha, uint64_t shots, uint64_t seed);

struct Variances {
    double var_o;
    double var_z;
};
/// var_o = tr(rho O^2) - tr(rho O)^2 and var_z = 1/alpha^2 - tr(rho O)^2. Throws InvalidArgument
/// for alpha outside (0, 1].
Variances analytic_variances(const DensityMatrix &rho, const Observable &o, double alpha);

/// (1 - alpha^2 min{<O_1>^2, <O_2>^2}) / (alpha^2 (Var O_1 + Var O_2)). Throws
/// DegenerateDenominator when the denominator is at most 1e-12.
double lambda_ratio(const DensityMatrix &rho, const Observable &o1, const Observable &o2, double alpha);

/// (d (d + 1) - alpha^2 min{tr O_1^2, tr O_2^2}) / (d alpha^2 (tr O_1^2 + tr O_2^2)) with d = 2^n.
/// Throws DegenerateDenominator when tr O_1^2 + tr O_2^2 <= 1e-12.
double lambda_haar(const Observable &o1, const Observable &o2, double alpha);

struct BernsteinBounds {
    double epsilon;
    double delta;
    double n_o;
    double n_z;
};
/// With c = 2 ln(2/delta) / epsilon^2:
///   N_O = c [E o_1^2 + E o_2^2 - (E o_1)^2 - (E o_2)^2 + (2/3)(E o_1 + E o_2) epsilon]
///   N_Z = c [1/alpha^2 - min{(E o_1)^2, (E o_2)^2} + (2/3)((alpha + 1)/alpha) epsilon]
/// Throws InvalidArgument unless epsilon and delta lie in (0, 1).
BernsteinBounds bernstein_bounds(const Observable &o1, const Observable &o2, const DensityMatrix &rho, double alpha,
                                 double epsilon, double delta);

struct CopiesOptions {
    /// Checkpoints per doubling: the schedule is ceil(2^(min_exponent + i / substeps)).
    int substeps = 1;
    int min_exponent = 6;
    /// Independent running estimates. An estimator counts as within epsilon at a checkpoint when at
    /// least `coverage` of the replicates are.
    int replicates = 1;
    double coverage = 1.0;
    uint64_t max_shots = uint64_t(1) << 24;
};

/// For each estimator, the first checkpoint N at which the running estimate is within epsilon of
/// its truth at every checkpoint from N through 2N. All estimators share the same shots. Throws
/// BudgetExceeded when some estimator has no such N with 2N <= max_shots, InvalidArgument for
/// nonpositive epsilon or bad options.
std::vector<uint64_t> copies_per_estimator(const OutcomeModel &model, double epsilon, uint64_t seed,
                                           const CopiesOptions &opts = {});
/// Max over the estimators of copies_per_estimator.
uint64_t copies_to_accuracy(const OutcomeModel &model, double epsilon, uint64_t seed, const CopiesOptions &opts = {});

struct ComplexityReport {
    double p;
    double alpha_max;
    double lambda;
    double lambda_haar;
    double lambda_exp;
    uint64_t n_z_exp;
    uint64_t n_o_exp;
    int trials;
};

struct SweepOptions {
    CopiesOptions copies;
    /// Cap on worker threads; 0 uses the default from parallel_workers().
    int threads = 0;
};

/// Copies protocol used by fig3_sweep unless overridden: eight checkpoints per doubling, 128
/// replicates and 90% coverage.
CopiesOptions fig3_copies_options();

/// Per p: alpha_max from iterative_alpha_max on the fig3 preset, lambda_haar at that alpha, and
/// over `trials` Haar-random pure states the median of N_Z / (N_O1 + N_O2). N_Z samples Z readout
/// of the certified channel output and is the larger of the two qubits' counts on shared shots.
/// lambda is the Haar-state median of lambda_ratio; n_z_exp and n_o_exp are lower medians.
std::vector<ComplexityReport> fig3_sweep(const std::vector<double> &p_values, int trials, double epsilon,
                                         uint64_t seed, const SweepOptions &opts);
std::vector<ComplexityReport> fig3_sweep(const std::vector<double> &p_values, int trials, double epsilon,
                                         uint64_t seed);

/// One trial of the sweep protocol for given observables and certified channel: returns
/// (N_Z, N_O1 + N_O2).
std::pair<uint64_t, uint64_t> copies_trial(const std::vector<Observable> &observables, const PauliChannel &channel,
                                           double alpha, const DensityMatrix &rho, double epsilon, uint64_t seed,
                                           const CopiesOptions &opts);

/// Header p,alpha_max,lambda_haar,lambda_exp,n_z,n_o,trials.
void write_sweep_csv(std::ostream &out, const std::vector<ComplexityReport> &reports);
/// One JSON object per line with the CSV fields.
void write_sweep_jsonl(std::ostream &out, const std::vector<ComplexityReport> &reports);

/// Median of a nonempty sample (mean of the middle pair for even sizes).
double median(std::vector<double> v);

}  // namespace incompat

#endif
