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

#ifndef INCOMPAT_ALPHA_SOLVER_H
#define INCOMPAT_ALPHA_SOLVER_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "incompat/choi.h"

namespace incompat {

enum class Strategy { Iterative, Penalty };
const char *strategy_name(Strategy s);

struct AlphaResult {
    double alpha_max = 0;
    BetaMap beta;
    std::vector<double> alpha_history;
    std::vector<int> ground_dim_history;
    double final_lambda_min = 0;
    int iterations = 0;
    Strategy strategy = Strategy::Iterative;
    /// Iterations spent in the ground-space sign rule before it stalled or converged.
    int sign_rule_iterations = 0;
    /// Whether the smoothed continuation stage improved on the sign rule.
    bool continuation_improved = false;
    uint64_t eigensolves = 0;
};

enum class SupportMode {
    /// Every (k, Z..Z) with Z..Z a product of two or more of the Z_i, plus pairs flagged
    /// uniform-sign at least once whose j is a Z-type string. Keeping j diagonal makes J block
    /// diagonal over the X factor.
    FlaggedAndZProducts,
    Full,
};

struct SolverOptions {
    double eta = 0.01;
    int max_iterations = 500;
    int window = 10;
    double window_tol = 1e-6;
    double degeneracy_tol = 1e-8;
    double lambda_floor = -1e-8;
    SupportMode support = SupportMode::FlaggedAndZProducts;
    /// Recompute the sign table every iteration instead of keeping the first table's signs.
    bool rescan = true;
    /// Continue with the smoothed ground-ensemble ascent once the sign rule stops improving.
    bool continuation = true;
    std::vector<double> taus = {1e-2, 1e-4, 1e-6};
    int bfgs_iterations = 400;
    /// Try dyadic roundings of the final beta and keep any that raise the exact alpha.
    bool polish = true;
    /// Penalty strategy.
    double delta_alpha = 1e-3;
    std::vector<double> penalty_taus = {1e-2, 1e-3, 1e-4};
    int penalty_bfgs_iterations = 200;
};

/// Orthonormal eigenvectors (columns) whose eigenvalue is within degeneracy_tol of lambda_min.
CMatrix ground_space(const ChoiMatrix &j, double degeneracy_tol = 1e-8);
CMatrix ground_space(const CMatrix &dense, double degeneracy_tol = 1e-8);

enum class Sign { Minus, Plus, Mixed };

/// s(k, j) over beta_candidates(n, n_obs): the common sign of <g_i|M_k (x) M_j|g_i> across the
/// ground space, treating |value| < 1e-9 as compatible with either sign. Pairs that vanish on every
/// ground vector are omitted.
std::map<BetaKey, Sign> sign_table(const CMatrix &ground, int n, int n_obs = -1);

AlphaResult iterative_alpha_max(const std::vector<Observable> &observables, const SolverOptions &opts = {});
AlphaResult penalty_alpha_max(const std::vector<Observable> &observables, const SolverOptions &opts = {});

/// Support used by the continuation and penalty stages.
std::vector<BetaKey> default_support(int n, int n_obs, const std::vector<BetaKey> &flagged, SupportMode mode);

}  // namespace incompat

#endif
