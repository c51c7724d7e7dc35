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

#include "incompat/sampling.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include "incompat/alpha_solver.h"
#include "incompat/error.h"
#include "incompat/parallel.h"
#include "incompat/pauli.h"
#include "incompat/presets.h"
#include "incompat/text.h"
#include "json.hpp"

namespace incompat {

const char *estimator_kind_name(EstimatorKind k) {
    return k == EstimatorKind::Projective ? "projective" : "qnn_z";
}

namespace {

void normalize_probs(std::vector<double> &probs) {
    double total = 0;
    for (double &p : probs) {
        if (p < 0 && p >= -1e-10) {
            p = 0;
        }
        if (!(p >= 0)) {
            throw Error(ErrorKind::InvalidState, "negative outcome probability");
        }
        total += p;
    }
    if (!(std::abs(total - 1) <= 1e-10)) {
        throw Error(ErrorKind::InvalidState, "outcome probabilities do not sum to 1");
    }
    for (double &p : probs) {
        p /= total;
    }
}

void require_shots(uint64_t shots) {
    if (shots < 1) {
        throw Error(ErrorKind::InvalidArgument, "need at least one shot");
    }
}

}  // namespace

OutcomeModel projective_model(const DensityMatrix &rho, const Observable &o) {
    if (rho.dim() != o.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state and observable dimensions differ");
    }
    Spectrum s = hermitian_eig(o.matrix());
    OutcomeModel m;
    std::vector<double> vals;
    for (Eigen::Index k = 0; k < s.values.size(); k++) {
        double p = (s.vectors.col(k).adjoint() * rho.matrix() * s.vectors.col(k))(0, 0).real();
        if (!vals.empty() && std::abs(vals.back() - s.values(k)) <= 1e-10) {
            m.probs.back() += p;
        } else {
            vals.push_back(s.values(k));
            m.probs.push_back(p);
        }
    }
    normalize_probs(m.probs);
    m.values = Eigen::Map<Eigen::MatrixXd>(vals.data(), (Eigen::Index)vals.size(), 1);
    m.truth = RVector::Constant(1, expectation(rho, o));
    return m;
}

OutcomeModel z_readout_model(const CMatrix &output_state, int num_estimators, double alpha, const RVector &truth) {
    if (!(alpha > 0 && alpha <= 1)) {
        throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
    }
    const Eigen::Index d = output_state.rows();
    int n = std::countr_zero((uint64_t)d);
    if ((Eigen::Index(1) << n) != d || num_estimators > n || truth.size() != num_estimators) {
        throw Error(ErrorKind::DimensionMismatch, "readout needs a 2^n state and one truth per read qubit");
    }
    OutcomeModel m;
    m.probs.resize(d);
    m.values.resize(d, num_estimators);
    for (Eigen::Index b = 0; b < d; b++) {
        m.probs[b] = output_state(b, b).real();
        for (int q = 0; q < num_estimators; q++) {
            m.values(b, q) = (((b >> (n - 1 - q)) & 1) ? -1.0 : 1.0) / alpha;
        }
    }
    normalize_probs(m.probs);
    m.truth = truth;
    return m;
}

std::vector<uint64_t> sample_counts(const OutcomeModel &model, uint64_t shots, Rng &rng) {
    return rng.multinomial(shots, model.probs);
}

std::vector<EstimatorStats> summarize(const OutcomeModel &model, const std::vector<uint64_t> &counts, EstimatorKind kind,
                                      double alpha) {
    uint64_t n = 0;
    for (uint64_t c : counts) {
        n += c;
    }
    std::vector<EstimatorStats> out;
    for (Eigen::Index e = 0; e < model.values.cols(); e++) {
        double mean = 0;
        for (size_t o = 0; o < counts.size(); o++) {
            mean += (double)counts[o] * model.values(o, e);
        }
        mean /= (double)n;
        double ss = 0;
        for (size_t o = 0; o < counts.size(); o++) {
            double dv = model.values(o, e) - mean;
            ss += (double)counts[o] * dv * dv;
        }
        EstimatorStats s;
        s.n = n;
        s.mean = mean;
        s.sample_variance = n > 1 ? ss / (double)(n - 1) : 0.0;
        s.kind = kind;
        s.alpha = kind == EstimatorKind::QnnZ ? alpha : 1.0;
        s.raw_mean = mean * s.alpha;
        out.push_back(s);
    }
    return out;
}

EstimatorStats sample_projective(const DensityMatrix &rho, const Observable &o, uint64_t shots, uint64_t seed) {
    require_shots(shots);
    OutcomeModel m = projective_model(rho, o);
    Rng rng(seed);
    return summarize(m, sample_counts(m, shots, rng), EstimatorKind::Projective, 1.0)[0];
}

std::pair<EstimatorStats, EstimatorStats> sample_qnn_z(const MixedUnitaryChannel &e, const DensityMatrix &rho,
                                                       double alpha, uint64_t shots, uint64_t seed) {
    require_shots(shots);
    if (e.num_qubits() < 2) {
        throw Error(ErrorKind::InvalidArgument, "two-qubit readout needs n >= 2");
    }
    DensityMatrix out = apply_channel(e, rho);
    RVector truth(2);
    for (int q = 0; q < 2; q++) {
        truth(q) = expectation(out, pauli_operator(PauliString::z_on(q, e.num_qubits()))) / alpha;
    }
    OutcomeModel m = z_readout_model(out.matrix(), 2, alpha, truth);
    Rng rng(seed);
    auto stats = summarize(m, sample_counts(m, shots, rng), EstimatorKind::QnnZ, alpha);
    return {stats[0], stats[1]};
}

Variances analytic_variances(const DensityMatrix &rho, const Observable &o, double alpha) {
    if (!(alpha > 0 && alpha <= 1)) {
        throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
    }
    double e = expectation(rho, o);
    double e2 = expectation(rho, CMatrix(o.matrix() * o.matrix()));
    return {e2 - e * e, 1 / (alpha * alpha) - e * e};
}

double lambda_ratio(const DensityMatrix &rho, const Observable &o1, const Observable &o2, double alpha) {
    Variances v1 = analytic_variances(rho, o1, alpha);
    Variances v2 = analytic_variances(rho, o2, alpha);
    double e1 = expectation(rho, o1);
    double e2 = expectation(rho, o2);
    double den = alpha * alpha * (v1.var_o + v2.var_o);
    if (!(den > 1e-12)) {
        throw Error(ErrorKind::DegenerateDenominator, "both observables are deterministic on the state");
    }
    return (1 - alpha * alpha * std::min(e1 * e1, e2 * e2)) / den;
}

double lambda_haar(const Observable &o1, const Observable &o2, double alpha) {
    if (o1.dim() != o2.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "observables act on different dimensions");
    }
    if (!(alpha > 0 && alpha <= 1)) {
        throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
    }
    double t1 = (o1.matrix() * o1.matrix()).trace().real();
    double t2 = (o2.matrix() * o2.matrix()).trace().real();
    if (!(t1 + t2 > 1e-12)) {
        throw Error(ErrorKind::DegenerateDenominator, "both observables vanish");
    }
    double d = (double)o1.dim();
    double a2 = alpha * alpha;
    return (d * (d + 1) - a2 * std::min(t1, t2)) / (d * a2 * (t1 + t2));
}

BernsteinBounds bernstein_bounds(const Observable &o1, const Observable &o2, const DensityMatrix &rho, double alpha,
                                 double epsilon, double delta) {
    if (!(epsilon > 0 && epsilon < 1) || !(delta > 0 && delta < 1)) {
        throw Error(ErrorKind::InvalidArgument, "epsilon and delta must lie in (0, 1)");
    }
    if (!(alpha > 0 && alpha <= 1)) {
        throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
    }
    double e1 = expectation(rho, o1);
    double e2 = expectation(rho, o2);
    double s1 = expectation(rho, CMatrix(o1.matrix() * o1.matrix()));
    double s2 = expectation(rho, CMatrix(o2.matrix() * o2.matrix()));
    double c = 2 * std::log(2 / delta) / (epsilon * epsilon);
    BernsteinBounds b;
    b.epsilon = epsilon;
    b.delta = delta;
    b.n_o = c * (s1 + s2 - e1 * e1 - e2 * e2 + (2.0 / 3) * (e1 + e2) * epsilon);
    b.n_z = c * (1 / (alpha * alpha) - std::min(e1 * e1, e2 * e2) + (2.0 / 3) * ((alpha + 1) / alpha) * epsilon);
    return b;
}

std::vector<uint64_t> copies_per_estimator(const OutcomeModel &model, double epsilon, uint64_t seed,
                                           const CopiesOptions &opts) {
    if (!(epsilon > 0)) {
        throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    }
    if (opts.substeps < 1 || opts.replicates < 1 || !(opts.coverage > 0 && opts.coverage <= 1) ||
        opts.min_exponent < 0 || opts.min_exponent > 62) {
        throw Error(ErrorKind::InvalidArgument, "invalid copies options");
    }
    const Eigen::Index num_e = model.values.cols();
    const size_t num_o = model.probs.size();
    if (model.values.rows() != (Eigen::Index)num_o || model.truth.size() != num_e || num_e < 1) {
        throw Error(ErrorKind::DimensionMismatch, "outcome model shapes disagree");
    }

    std::vector<uint64_t> grid;
    for (int i = 0;; i++) {
        double x = std::ceil(std::exp2(opts.min_exponent + (double)i / opts.substeps));
        if (x > (double)opts.max_shots) {
            break;
        }
        uint64_t c = (uint64_t)x;
        if (grid.empty() || c != grid.back()) {
            grid.push_back(c);
        }
    }
    // Checkpoint j is decided once every checkpoint up to 2 grid[j] has been drawn.
    std::vector<size_t> window_end(grid.size());
    for (size_t j = 0, k = 0; j < grid.size(); j++) {
        k = std::max(k, j);
        while (k + 1 < grid.size() && grid[k + 1] <= 2 * grid[j]) {
            k++;
        }
        window_end[j] = k;
    }

    const int reps = opts.replicates;
    const uint64_t need = (uint64_t)std::ceil(opts.coverage * reps - 1e-9);
    Rng rng(seed);
    std::vector<std::vector<uint64_t>> counts(reps, std::vector<uint64_t>(num_o, 0));
    std::vector<std::vector<bool>> ok(grid.size(), std::vector<bool>(num_e, false));
    std::vector<uint64_t> result(num_e, 0);
    std::vector<size_t> next(num_e, 0);
    Eigen::Index unresolved = num_e;
    uint64_t drawn = 0;

    for (size_t i = 0; i < grid.size() && unresolved > 0; i++) {
        uint64_t add = grid[i] - drawn;
        drawn = grid[i];
        std::vector<uint64_t> within(num_e, 0);
        for (int r = 0; r < reps; r++) {
            std::vector<uint64_t> inc = rng.multinomial(add, model.probs);
            for (size_t o = 0; o < num_o; o++) {
                counts[r][o] += inc[o];
            }
            for (Eigen::Index e = 0; e < num_e; e++) {
                double est = 0;
                for (size_t o = 0; o < num_o; o++) {
                    est += (double)counts[r][o] * model.values(o, e);
                }
                est /= (double)drawn;
                if (std::abs(est - model.truth(e)) <= epsilon) {
                    within[e]++;
                }
            }
        }
        for (Eigen::Index e = 0; e < num_e; e++) {
            ok[i][e] = within[e] >= need;
        }
        for (Eigen::Index e = 0; e < num_e; e++) {
            if (result[e]) {
                continue;
            }
            while (next[e] <= i && window_end[next[e]] <= i && 2 * grid[next[e]] <= opts.max_shots) {
                size_t j = next[e];
                bool pass = true;
                for (size_t k = j; k <= window_end[j] && pass; k++) {
                    pass = ok[k][e];
                }
                if (pass) {
                    result[e] = grid[j];
                    unresolved--;
                    break;
                }
                next[e]++;
            }
        }
    }
    if (unresolved > 0) {
        throw Error(ErrorKind::BudgetExceeded, "no checkpoint reached the target accuracy within max_shots");
    }
    return result;
}

uint64_t copies_to_accuracy(const OutcomeModel &model, double epsilon, uint64_t seed, const CopiesOptions &opts) {
    auto per = copies_per_estimator(model, epsilon, seed, opts);
    return *std::max_element(per.begin(), per.end());
}

CopiesOptions fig3_copies_options() {
    CopiesOptions o;
    o.substeps = 8;
    o.replicates = 128;
    o.coverage = 0.9;
    return o;
}

std::pair<uint64_t, uint64_t> copies_trial(const std::vector<Observable> &observables, const PauliChannel &channel,
                                           double alpha, const DensityMatrix &rho, double epsilon, uint64_t seed,
                                           const CopiesOptions &opts) {
    const int m = (int)observables.size();
    uint64_t n_o = 0;
    RVector truth(m);
    for (int i = 0; i < m; i++) {
        OutcomeModel pm = projective_model(rho, observables[i]);
        truth(i) = pm.truth(0);
        n_o += copies_to_accuracy(pm, epsilon, derive_seed(seed, i), opts);
    }
    OutcomeModel zm = z_readout_model(channel.apply(rho.matrix()), m, alpha, truth);
    uint64_t n_z = copies_to_accuracy(zm, epsilon, derive_seed(seed, m), opts);
    return {n_z, n_o};
}

double median(std::vector<double> v) {
    if (v.empty()) {
        throw Error(ErrorKind::InvalidArgument, "median of an empty sample");
    }
    std::sort(v.begin(), v.end());
    size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

namespace {

uint64_t lower_median(std::vector<uint64_t> v) {
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

}  // namespace

std::vector<ComplexityReport> fig3_sweep(const std::vector<double> &p_values, int trials, double epsilon,
                                         uint64_t seed, const SweepOptions &opts) {
    if (trials < 1) {
        throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
    }
    std::vector<ComplexityReport> out;
    for (double p : p_values) {
        std::vector<Observable> obs = preset_fig3(p);
        AlphaResult solved = iterative_alpha_max(obs);
        double alpha = solved.alpha_max;
        PauliChannel channel(build_choi(obs, alpha, solved.beta));

        std::vector<uint64_t> nz(trials);
        std::vector<uint64_t> no(trials);
        std::vector<double> ratio(trials);
        std::vector<double> lam(trials);
        uint64_t p_stream = std::bit_cast<uint64_t>(p);
        parallel_for((size_t)trials, opts.threads, [&](size_t t) {
            DensityMatrix rho = haar_state(2, derive_seed(seed, 2 * t));
            auto [z, o] = copies_trial(obs, channel, alpha, rho, epsilon, derive_seed(derive_seed(seed, 2 * t + 1), p_stream),
                                       opts.copies);
            nz[t] = z;
            no[t] = o;
            ratio[t] = (double)z / (double)o;
            lam[t] = lambda_ratio(rho, obs[0], obs[1], alpha);
        });

        ComplexityReport r;
        r.p = p;
        r.alpha_max = alpha;
        r.lambda = median(lam);
        r.lambda_haar = lambda_haar(obs[0], obs[1], alpha);
        r.lambda_exp = median(ratio);
        r.n_z_exp = lower_median(nz);
        r.n_o_exp = lower_median(no);
        r.trials = trials;
        out.push_back(r);
    }
    return out;
}

std::vector<ComplexityReport> fig3_sweep(const std::vector<double> &p_values, int trials, double epsilon,
                                         uint64_t seed) {
    SweepOptions opts;
    opts.copies = fig3_copies_options();
    return fig3_sweep(p_values, trials, epsilon, seed, opts);
}

void write_sweep_csv(std::ostream &out, const std::vector<ComplexityReport> &reports) {
    out << "p,alpha_max,lambda_haar,lambda_exp,n_z,n_o,trials\n";
    for (const auto &r : reports) {
        out << format_double(r.p) << ',' << format_double(r.alpha_max) << ',' << format_double(r.lambda_haar) << ','
            << format_double(r.lambda_exp) << ',' << r.n_z_exp << ',' << r.n_o_exp << ',' << r.trials << '\n';
    }
}

void write_sweep_jsonl(std::ostream &out, const std::vector<ComplexityReport> &reports) {
    for (const auto &r : reports) {
        nlohmann::ordered_json j;
        j["p"] = r.p;
        j["alpha_max"] = r.alpha_max;
        j["lambda_haar"] = r.lambda_haar;
        j["lambda_exp"] = r.lambda_exp;
        j["n_z"] = r.n_z_exp;
        j["n_o"] = r.n_o_exp;
        j["trials"] = r.trials;
        out << j.dump() << '\n';
    }
}

}  // namespace incompat
