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

#include "incompat/alpha_solver.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>

#include "ceres/ceres.h"
#include "glog/logging.h"
#include "incompat/error.h"
#include "incompat/pencil.h"

namespace incompat {

const char *strategy_name(Strategy s) {
    return s == Strategy::Iterative ? "iterative" : "penalty";
}

CMatrix ground_space(const CMatrix &dense, double degeneracy_tol) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(dense);
    const RVector &w = es.eigenvalues();
    Eigen::Index count = 1;
    while (count < w.size() && w(count) <= w(0) + degeneracy_tol) {
        count++;
    }
    return es.eigenvectors().leftCols(count);
}

CMatrix ground_space(const ChoiMatrix &j, double degeneracy_tol) {
    return ground_space(j.dense(), degeneracy_tol);
}

namespace {

constexpr double kSandwichZero = 1e-9;

void validate(const std::vector<Observable> &observables) {
    if (observables.size() < 2) {
        throw Error(ErrorKind::InvalidObservable, "need at least two observables");
    }
    int n = observables[0].num_qubits();
    for (const auto &o : observables) {
        if (o.num_qubits() != n) {
            throw Error(ErrorKind::InvalidObservable, "observables act on different qubit counts");
        }
    }
    if ((int)observables.size() > n) {
        throw Error(ErrorKind::InvalidObservable, "more observables than qubits");
    }
}

/// Direction of the sign rule for each pencil term: +1, -1, or 0 (mixed or vanishing).
RVector sign_directions(const ChoiPencil &pencil, const CMatrix &ground) {
    RVector dir = RVector::Zero(pencil.size());
    for (size_t s = 0; s < pencil.size(); s++) {
        bool pos = true;
        bool neg = true;
        bool zero = true;
        for (Eigen::Index i = 0; i < ground.cols(); i++) {
            double v = pencil.term(s).sandwich(ground.col(i));
            if (v < -kSandwichZero) {
                pos = false;
                zero = false;
            } else if (v > kSandwichZero) {
                neg = false;
                zero = false;
            }
        }
        if (zero) {
            continue;
        }
        if (pos) {
            dir(s) = 1;
        } else if (neg) {
            dir(s) = -1;
        }
    }
    return dir;
}

class SmoothedAlphaCost : public ceres::FirstOrderFunction {
   public:
    SmoothedAlphaCost(const ChoiPencil &pencil, double tau, double *guess)
        : pencil_(pencil), tau_(tau), guess_(guess) {
    }
    bool Evaluate(const double *const parameters, double *cost, double *gradient) const override {
        RVector beta = Eigen::Map<const RVector>(parameters, pencil_.size());
        if (!beta.allFinite()) {
            return false;
        }
        ChoiPencil::Smoothed r = pencil_.solve_alpha_smoothed(beta, tau_, *guess_);
        *guess_ = r.alpha;
        *cost = -r.alpha;
        if (gradient) {
            Eigen::Map<RVector>(gradient, pencil_.size()) = -r.gradient;
        }
        return true;
    }
    int NumParameters() const override {
        return (int)pencil_.size();
    }

   private:
    const ChoiPencil &pencil_;
    double tau_;
    double *guess_;
};

class SoftMinCost : public ceres::FirstOrderFunction {
   public:
    SoftMinCost(const ChoiPencil &pencil, double alpha, double tau) : pencil_(pencil), alpha_(alpha), tau_(tau) {
    }
    bool Evaluate(const double *const parameters, double *cost, double *gradient) const override {
        RVector beta = Eigen::Map<const RVector>(parameters, pencil_.size());
        if (!beta.allFinite()) {
            return false;
        }
        RVector g;
        *cost = -pencil_.soft_min(alpha_, beta, tau_, gradient ? &g : nullptr);
        if (gradient) {
            Eigen::Map<RVector>(gradient, pencil_.size()) = -g;
        }
        return true;
    }
    int NumParameters() const override {
        return (int)pencil_.size();
    }

   private:
    const ChoiPencil &pencil_;
    double alpha_;
    double tau_;
};

ceres::GradientProblemSolver::Options bfgs_options(int max_iterations, double function_tolerance = 1e-15) {
    // The line search warns on degenerate interpolation polynomials, which BFGS recovers from.
    static const bool quiet = [] {
        FLAGS_minloglevel = std::max(FLAGS_minloglevel, 2);
        return true;
    }();
    (void)quiet;
    ceres::GradientProblemSolver::Options o;
    o.line_search_direction_type = ceres::BFGS;
    o.max_num_iterations = max_iterations;
    o.function_tolerance = function_tolerance;
    o.gradient_tolerance = 1e-11;
    o.parameter_tolerance = 1e-15;
    o.logging_type = ceres::SILENT;
    o.minimizer_progress_to_stdout = false;
    return o;
}

/// Annealed maximization of the smoothed boundary alpha_tau(beta). Returns the exact alpha at the
/// final beta, or -1 if that beta is infeasible.
double smoothed_ascent(const ChoiPencil &pencil, RVector &beta, double alpha_guess, const SolverOptions &opts) {
    if (pencil.size() == 0) {
        return pencil.solve_alpha(beta, alpha_guess);
    }
    double guess = alpha_guess;
    for (double tau : opts.taus) {
        ceres::GradientProblem problem(new SmoothedAlphaCost(pencil, tau, &guess));
        ceres::GradientProblemSolver::Summary summary;
        std::vector<double> x(beta.data(), beta.data() + beta.size());
        ceres::Solve(bfgs_options(opts.bfgs_iterations, std::max(1e-15, 1e-8 * tau)), problem, x.data(), &summary);
        beta = Eigen::Map<RVector>(x.data(), x.size());
    }
    return pencil.solve_alpha(beta, guess);
}

/// Dyadic roundings of beta, kept only when they raise the exact alpha.
double polish(const ChoiPencil &pencil, RVector &beta, double alpha) {
    if (alpha >= 1.0 || pencil.size() == 0) {
        return alpha;
    }
    for (int m = 0; m <= 30; m++) {
        double scale = std::ldexp(1.0, m);
        RVector r = (beta * scale).array().round() / scale;
        if (r == beta) {
            continue;
        }
        double a = pencil.solve_alpha(r, alpha);
        if (a > alpha) {
            alpha = a;
            beta = r;
            if (alpha >= 1.0) {
                break;
            }
        }
    }
    return alpha;
}

int ground_dim(const ChoiPencil &pencil, double alpha, const RVector &beta, double tol) {
    return (int)ground_space(pencil.assemble(alpha, beta), tol).cols();
}

bool window_converged(const std::vector<double> &history, const SolverOptions &opts) {
    size_t w = (size_t)std::max(1, opts.window);
    return history.size() > w && history.back() - history[history.size() - 1 - w] < opts.window_tol;
}

std::vector<BetaKey> flagged_keys(const ChoiPencil &pencil, const RVector &flags) {
    std::vector<BetaKey> out;
    for (size_t s = 0; s < pencil.size(); s++) {
        if (flags(s) != 0) {
            out.push_back(pencil.support()[s]);
        }
    }
    return out;
}

void finish(AlphaResult &res, const ChoiPencil &pencil, const RVector &beta, double alpha, const SolverOptions &opts) {
    res.alpha_max = alpha;
    res.beta = pencil.to_map(beta);
    res.final_lambda_min = pencil.lambda_min(alpha, beta);
    if (res.alpha_history.empty() || res.alpha_history.back() != alpha) {
        res.alpha_history.push_back(alpha);
        res.ground_dim_history.push_back(ground_dim(pencil, alpha, beta, opts.degeneracy_tol));
    }
}

}  // namespace

std::map<BetaKey, Sign> sign_table(const CMatrix &ground, int n, int n_obs) {
    if (n_obs < 0) {
        n_obs = n;
    }
    std::map<BetaKey, Sign> out;
    for (const BetaKey &key : beta_candidates(n, n_obs)) {
        PauliString p = PauliString::from_index(key.first, n).tensor(PauliString::from_index(key.second, n));
        PauliMonomial m = PauliMonomial::of(p);
        bool pos = true;
        bool neg = true;
        bool zero = true;
        for (Eigen::Index i = 0; i < ground.cols(); i++) {
            double v = m.sandwich(ground.col(i));
            if (v < -kSandwichZero) {
                pos = false;
                zero = false;
            } else if (v > kSandwichZero) {
                neg = false;
                zero = false;
            }
        }
        if (zero) {
            continue;
        }
        out[key] = pos ? Sign::Plus : (neg ? Sign::Minus : Sign::Mixed);
    }
    return out;
}

std::vector<BetaKey> default_support(int n, int n_obs, const std::vector<BetaKey> &flagged, SupportMode mode) {
    if (mode == SupportMode::Full) {
        return beta_candidates(n, n_obs);
    }
    std::set<BetaKey> keys;
    for (const BetaKey &key : flagged) {
        PauliString j = PauliString::from_index(key.second, n);
        bool z_type = true;
        for (int q = 0; q < n; q++) {
            z_type &= j.letter(q) == 0 || j.letter(q) == 3;
        }
        if (z_type) {
            keys.insert(key);
        }
    }
    uint64_t total = uint64_t(1) << (2 * n);
    for (uint32_t mask = 1; mask < (1u << n_obs); mask++) {
        if (__builtin_popcount(mask) < 2) {
            continue;
        }
        PauliString z = PauliString::identity(n);
        std::string letters = z.str();
        for (int q = 0; q < n_obs; q++) {
            if (mask & (1u << q)) {
                letters[q] = 'Z';
            }
        }
        uint64_t j = PauliString::from_str(letters).index();
        for (uint64_t k = 1; k < total; k++) {
            keys.insert({k, j});
        }
    }
    return {keys.begin(), keys.end()};
}

AlphaResult iterative_alpha_max(const std::vector<Observable> &observables, const SolverOptions &opts) {
    validate(observables);
    const int n = observables[0].num_qubits();
    const int n_obs = (int)observables.size();
    ChoiPencil all(observables, beta_candidates(n, n_obs));

    AlphaResult res;
    res.strategy = Strategy::Iterative;
    RVector beta = RVector::Zero(all.size());
    RVector flags = RVector::Zero(all.size());
    RVector fixed_dir;
    double alpha = all.solve_alpha(beta);
    res.alpha_history.push_back(alpha);

    for (int it = 0; it < opts.max_iterations && alpha < 1.0; it++) {
        CMatrix ground = ground_space(all.assemble(alpha, beta), opts.degeneracy_tol);
        res.ground_dim_history.push_back((int)ground.cols());
        RVector dir;
        if (opts.rescan || it == 0) {
            dir = sign_directions(all, ground);
            if (it == 0) {
                fixed_dir = dir;
            }
        } else {
            dir = fixed_dir;
        }
        flags += dir.cwiseAbs();
        if (dir.isZero()) {
            break;
        }
        double h = opts.eta;
        bool accepted = false;
        while (h > 1e-12) {
            RVector trial = beta + h * dir;
            // alpha(trial) >= alpha exactly when J(alpha, trial) is still PSD.
            if (all.lambda_min(alpha, trial) < 0) {
                h *= 0.5;
                continue;
            }
            double a = all.solve_alpha(trial, alpha);
            if (a >= alpha && all.lambda_min(a, trial) >= opts.lambda_floor) {
                beta = trial;
                alpha = a;
                accepted = true;
                break;
            }
            h *= 0.5;
        }
        if (!accepted) {
            break;
        }
        res.alpha_history.push_back(alpha);
        res.sign_rule_iterations++;
        if (window_converged(res.alpha_history, opts)) {
            break;
        }
    }
    if (res.ground_dim_history.size() < res.alpha_history.size()) {
        res.ground_dim_history.push_back(ground_dim(all, alpha, beta, opts.degeneracy_tol));
    }
    res.iterations = res.sign_rule_iterations;

    std::vector<BetaKey> support = default_support(n, n_obs, flagged_keys(all, flags), opts.support);
    BetaMap sign_beta = all.to_map(beta);
    uint64_t spent = all.eigensolves();

    if (opts.continuation && alpha < 1.0) {
        ChoiPencil reduced(observables, support);
        BetaMap projected;
        for (const auto &[key, value] : sign_beta) {
            if (std::binary_search(support.begin(), support.end(), key)) {
                projected[key] = value;
            }
        }
        RVector trial = reduced.from_map(projected);
        double start = reduced.solve_alpha(trial, alpha);
        if (start < 0) {
            trial.setZero();
            start = reduced.solve_alpha(trial);
        }
        double a = smoothed_ascent(reduced, trial, start, opts);
        spent += reduced.eigensolves();
        if (a > alpha + 1e-10) {
            alpha = a;
            sign_beta = reduced.to_map(trial);
            res.continuation_improved = true;
        }
    }
    for (const auto &[key, value] : sign_beta) {
        if (!std::binary_search(support.begin(), support.end(), key)) {
            support.insert(std::upper_bound(support.begin(), support.end(), key), key);
        }
    }
    ChoiPencil pencil(observables, support);
    RVector b = pencil.from_map(sign_beta);
    if (res.continuation_improved) {
        res.alpha_history.push_back(alpha);
        res.ground_dim_history.push_back(ground_dim(pencil, alpha, b, opts.degeneracy_tol));
        res.iterations++;
    }
    if (opts.polish) {
        double a = polish(pencil, b, alpha);
        if (a > alpha) {
            alpha = a;
            res.alpha_history.push_back(alpha);
            res.ground_dim_history.push_back(ground_dim(pencil, alpha, b, opts.degeneracy_tol));
        }
    }
    finish(res, pencil, b, alpha, opts);
    res.eigensolves = spent + pencil.eigensolves();
    return res;
}

AlphaResult penalty_alpha_max(const std::vector<Observable> &observables, const SolverOptions &opts) {
    validate(observables);
    const int n = observables[0].num_qubits();
    const int n_obs = (int)observables.size();
    ChoiPencil all(observables, beta_candidates(n, n_obs));
    double alpha = all.solve_alpha(RVector::Zero(all.size()));
    RVector flags = sign_directions(all, ground_space(all.assemble(alpha, RVector::Zero(all.size())), opts.degeneracy_tol));

    ChoiPencil pencil(observables, default_support(n, n_obs, flagged_keys(all, flags), opts.support));
    AlphaResult res;
    res.strategy = Strategy::Penalty;
    RVector beta = RVector::Zero(pencil.size());
    res.alpha_history.push_back(alpha);
    res.ground_dim_history.push_back(ground_dim(pencil, alpha, beta, opts.degeneracy_tol));

    const int max_steps = (int)std::ceil((1.0 - alpha) / opts.delta_alpha) + 1;
    for (int step = 0; step < max_steps && alpha < 1.0 && pencil.size() > 0; step++) {
        double target = std::min(1.0, alpha + opts.delta_alpha);
        RVector trial = beta;
        bool feasible = false;
        for (double tau : opts.penalty_taus) {
            ceres::GradientProblem problem(new SoftMinCost(pencil, target, tau));
            ceres::GradientProblemSolver::Summary summary;
            std::vector<double> x(trial.data(), trial.data() + trial.size());
            ceres::Solve(bfgs_options(opts.penalty_bfgs_iterations), problem, x.data(), &summary);
            trial = Eigen::Map<RVector>(x.data(), x.size());
            if (pencil.lambda_min(target, trial) >= 0) {
                feasible = true;
                break;
            }
        }
        if (!feasible) {
            break;
        }
        alpha = target;
        beta = trial;
        res.alpha_history.push_back(alpha);
        res.ground_dim_history.push_back(ground_dim(pencil, alpha, beta, opts.degeneracy_tol));
        res.iterations++;
        if (window_converged(res.alpha_history, opts)) {
            break;
        }
    }
    double exact = pencil.solve_alpha(beta, alpha);
    if (exact > alpha) {
        alpha = exact;
    }
    if (opts.polish) {
        alpha = polish(pencil, beta, alpha);
    }
    finish(res, pencil, beta, alpha, opts);
    res.eigensolves = all.eigensolves() + pencil.eigensolves();
    return res;
}

}  // namespace incompat
