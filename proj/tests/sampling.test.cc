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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "helpers.h"
#include "incompat/alpha_solver.h"
#include "incompat/error.h"
#include "incompat/pauli.h"
#include "incompat/presets.h"

using namespace incompat;

namespace {

Observable z1() {
    return Observable(pauli_sum({{"ZI", 1}}));
}
Observable z2() {
    return Observable(pauli_sum({{"IZ", 1}}));
}

DensityMatrix zero_state() {
    CVector v = CVector::Zero(4);
    v(0) = 1;
    return DensityMatrix::pure(v);
}

// Standard error of the unbiased sample variance of a discrete distribution at N shots.
double variance_se(const OutcomeModel &m, int e, double n) {
    double mu = 0;
    for (size_t o = 0; o < m.probs.size(); o++) {
        mu += m.probs[o] * m.values(o, e);
    }
    double m2 = 0, m4 = 0;
    for (size_t o = 0; o < m.probs.size(); o++) {
        double d = m.values(o, e) - mu;
        m2 += m.probs[o] * d * d;
        m4 += m.probs[o] * d * d * d * d;
    }
    return std::sqrt(std::max(m4 - m2 * m2, 1e-30) / n);
}

}  // namespace

TEST(SampleProjective, deterministic_state) {
    EstimatorStats s = sample_projective(zero_state(), z1(), 1000, 1);
    EXPECT_EQ(s.mean, 1.0);
    EXPECT_EQ(s.sample_variance, 0.0);
    EXPECT_EQ(s.n, 1000u);
    EXPECT_EQ(s.kind, EstimatorKind::Projective);
}

TEST(SampleProjective, maximally_mixed) {
    EstimatorStats s = sample_projective(DensityMatrix::maximally_mixed(2), z1(), 1000000, 2);
    EXPECT_NEAR(s.mean, 0, 0.004);
    EXPECT_NEAR(s.sample_variance, 1, 1e-3);
    OutcomeModel m = projective_model(DensityMatrix::maximally_mixed(2), z1());
    EXPECT_EQ(m.probs.size(), 2u);
    double total = 0;
    for (double p : m.probs) {
        total += p;
    }
    EXPECT_NEAR(total, 1, 1e-12);
}

TEST(SampleQnnZ, identity_channel) {
    auto [a, b] = sample_qnn_z(MixedUnitaryChannel(2, 2), zero_state(), 1.0, 500, 3);
    EXPECT_EQ(a.mean, 1.0);
    EXPECT_EQ(b.mean, 1.0);
    EXPECT_EQ(a.sample_variance, 0.0);
    EXPECT_EQ(a.kind, EstimatorKind::QnnZ);
}

TEST(SampleQnnZ, trained_channel_reproduces_expectations) {
    auto ex1 = preset_example1();
    TrainingConfig cfg;
    cfg.seed = 1;
    TrainResult t = train(ex1[0], ex1[1], cfg);
    for (int s = 0; s < 3; s++) {
        DensityMatrix rho = haar_state(2, 40 + s);
        auto [a, b] = sample_qnn_z(t.channel, rho, t.alpha, 1000000, s);
        EXPECT_NEAR(a.mean, expectation(rho, ex1[0]), 0.01);
        EXPECT_NEAR(b.mean, expectation(rho, ex1[1]), 0.01);
        EXPECT_LE(std::abs(a.raw_mean), 1.0);
        EXPECT_LE(std::abs(b.raw_mean), 1.0);
    }
}

TEST(AnalyticVariances, examples) {
    Variances v = analytic_variances(DensityMatrix::maximally_mixed(2), z1(), 1.0);
    EXPECT_DOUBLE_EQ(v.var_o, 1);
    EXPECT_DOUBLE_EQ(v.var_z, 1);
    v = analytic_variances(DensityMatrix::maximally_mixed(2), z1(), 0.5);
    EXPECT_DOUBLE_EQ(v.var_o, 1);
    EXPECT_DOUBLE_EQ(v.var_z, 4);
}

TEST(AnalyticVariances, z_readout_never_beats_projective) {
    Rng rng(8);
    for (int t = 0; t < 1000; t++) {
        Observable o = random_observable(2, 1000 + t);
        DensityMatrix rho = test_util::random_density(2, 5000 + t);
        double alpha = 0.05 + 0.95 * rng.uniform();
        Variances v = analytic_variances(rho, o, alpha);
        EXPECT_GE(v.var_z, v.var_o);
    }
}

TEST(LambdaRatio, examples) {
    DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    EXPECT_DOUBLE_EQ(lambda_ratio(mixed, z1(), z2(), 1.0), 0.5);
    EXPECT_DOUBLE_EQ(lambda_ratio(mixed, z1(), z2(), 0.5), 2.0);
    double prev = lambda_ratio(mixed, z1(), z2(), 0.2);
    for (double a = 0.3; a <= 1.0; a += 0.1) {
        double cur = lambda_ratio(mixed, z1(), z2(), a);
        EXPECT_LT(cur, prev);
        prev = cur;
    }
    try {
        lambda_ratio(zero_state(), z1(), z2(), 1.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateDenominator);
    }
}

TEST(LambdaHaar, examples) {
    auto fig = preset_fig3(0);
    EXPECT_NEAR(lambda_haar(fig[0], fig[1], 1.0), 0.5, 1e-15);
    auto ex1 = preset_example1();
    EXPECT_NEAR(lambda_haar(ex1[0], ex1[1], std::sqrt(2.0) / 2), 19.0 / 12, 1e-12);
}

TEST(LambdaHaar, identical_observables_exceed_one) {
    for (int s = 0; s < 100; s++) {
        Observable o = random_observable(2, 300 + s);
        double a = iterative_alpha_max({o, o}).alpha_max;
        EXPECT_GT(lambda_haar(o, o, a), 1.0) << s;
    }
}

TEST(BernsteinBounds, examples) {
    DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    BernsteinBounds b = bernstein_bounds(z1(), z2(), mixed, 1.0, 0.1, 2 / std::exp(1.0));
    EXPECT_NEAR(b.n_o, 400, 1e-9);
    EXPECT_NEAR(b.n_z, 200 * (1 + 2.0 / 3 * 2 * 0.1), 1e-9);
    EXPECT_THROW(bernstein_bounds(z1(), z2(), mixed, 1.0, 0, 0.1), Error);
}

TEST(BernsteinBounds, small_epsilon_ratio_is_lambda) {
    for (int s = 0; s < 20; s++) {
        auto obs = test_util::random_pair(s);
        DensityMatrix rho = haar_state(2, 900 + s);
        double alpha = 0.5 + 0.025 * s;
        BernsteinBounds b = bernstein_bounds(obs[0], obs[1], rho, alpha, 1e-4, 0.05);
        double lam = lambda_ratio(rho, obs[0], obs[1], alpha);
        EXPECT_NEAR(b.n_z / b.n_o / lam, 1.0, 0.01) << s;
    }
}

TEST(CopiesToAccuracy, zero_variance_stops_at_first_checkpoint) {
    OutcomeModel m;
    m.probs = {1.0};
    m.values = Eigen::MatrixXd::Constant(1, 1, 0.25);
    m.truth = RVector::Constant(1, 0.25);
    EXPECT_EQ(copies_to_accuracy(m, 0.01, 1), 64u);
}

TEST(CopiesToAccuracy, central_limit_scaling) {
    OutcomeModel m = projective_model(DensityMatrix::maximally_mixed(2), z1());
    std::vector<double> n;
    for (int s = 0; s < 100; s++) {
        n.push_back((double)copies_to_accuracy(m, 0.01, s));
    }
    double med = median(n);
    EXPECT_GE(med, 1e4 / 4);
    EXPECT_LE(med, 1e4 * 4);
}

TEST(CopiesToAccuracy, reduced_alpha_costs_more) {
    DensityMatrix rho = haar_state(2, 6);
    Observable o = z1();
    OutcomeModel pm = projective_model(rho, o);
    // With the identity channel, Z_1 / alpha estimates tr(rho Z_1) / alpha.
    OutcomeModel zm = z_readout_model(rho.matrix(), 1, 0.5, RVector::Constant(1, expectation(rho, o) / 0.5));
    std::vector<double> np, nz;
    for (int s = 0; s < 60; s++) {
        np.push_back((double)copies_to_accuracy(pm, 0.02, s));
        nz.push_back((double)copies_to_accuracy(zm, 0.02, 1000 + s));
    }
    EXPECT_GT(median(nz), median(np));
}

TEST(CopiesToAccuracy, budget_exceeded) {
    OutcomeModel m = projective_model(DensityMatrix::maximally_mixed(2), z1());
    CopiesOptions opts;
    opts.max_shots = 1024;
    try {
        copies_to_accuracy(m, 1e-4, 1, opts);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
    }
}

TEST(Sampling, empirical_variances_match_analytic) {
    const double n = 1e5;
    for (int c = 0; c < 20; c++) {
        Observable o = random_observable(2, 700 + c);
        DensityMatrix rho = test_util::random_density(2, 800 + c);
        double alpha = 0.5 + 0.02 * c;
        Variances v = analytic_variances(rho, o, alpha);

        OutcomeModel pm = projective_model(rho, o);
        EstimatorStats sp = sample_projective(rho, o, (uint64_t)n, c);
        EXPECT_NEAR(sp.sample_variance, v.var_o, 5 * variance_se(pm, 0, n)) << c;

        // A readout with P(+1) = (1 + alpha tr(rho O)) / 2 realizes the ideal Z estimator.
        double t = expectation(rho, o);
        OutcomeModel zm;
        zm.probs = {(1 + alpha * t) / 2, (1 - alpha * t) / 2};
        zm.values.resize(2, 1);
        zm.values << 1 / alpha, -1 / alpha;
        zm.truth = RVector::Constant(1, t);
        Rng rng(derive_seed(99, c));
        EstimatorStats sz = summarize(zm, sample_counts(zm, (uint64_t)n, rng), EstimatorKind::QnnZ, alpha)[0];
        EXPECT_NEAR(sz.sample_variance, v.var_z, 5 * variance_se(zm, 0, n)) << c;
    }
}

TEST(Sampling, qnn_estimator_is_unbiased_at_root_n_rate) {
    auto obs = test_util::random_pair(2);
    AlphaResult r = iterative_alpha_max(obs);
    PauliChannel channel(build_choi(obs, r.alpha_max, r.beta));
    DensityMatrix rho = haar_state(2, 12);
    RVector truth(2);
    truth << expectation(rho, obs[0]), expectation(rho, obs[1]);
    OutcomeModel m = z_readout_model(channel.apply(rho.matrix()), 2, r.alpha_max, truth);
    std::vector<double> xs, ys;
    for (double n : {1e3, 1e4, 1e5, 1e6}) {
        double se = 0;
        const int reps = 400;
        for (int s = 0; s < reps; s++) {
            Rng rng(derive_seed((uint64_t)n, s));
            EstimatorStats st = summarize(m, sample_counts(m, (uint64_t)n, rng), EstimatorKind::QnnZ, r.alpha_max)[0];
            se += (st.mean - truth(0)) * (st.mean - truth(0));
        }
        xs.push_back(std::log(n));
        ys.push_back(0.5 * std::log(se / reps));
    }
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        mx += xs[i] / xs.size();
        my += ys[i] / ys.size();
    }
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    EXPECT_NEAR(sxy / sxx, -0.5, 0.05);
}

TEST(Fig3Sweep, small_sweep) {
    SweepOptions opts;
    opts.copies = fig3_copies_options();
    opts.copies.replicates = 16;
    auto reports = fig3_sweep({0.0, 1.0}, 4, 0.05, 7, opts);
    ASSERT_EQ(reports.size(), 2u);
    EXPECT_EQ(reports[0].alpha_max, 1.0);
    EXPECT_NEAR(reports[0].lambda_haar, 0.5, 1e-9);
    EXPECT_NEAR(reports[1].alpha_max, std::sqrt(0.5), 1e-6);
    for (const auto &r : reports) {
        EXPECT_GT(r.lambda_exp, 0);
        EXPECT_EQ(r.trials, 4);
    }
}

TEST(Fig3Sweep, thread_count_does_not_change_results) {
    SweepOptions a;
    a.copies = fig3_copies_options();
    a.copies.replicates = 8;
    a.threads = 1;
    SweepOptions b = a;
    b.threads = 4;
    std::ostringstream sa, sb;
    write_sweep_csv(sa, fig3_sweep({0.3}, 6, 0.05, 11, a));
    write_sweep_csv(sb, fig3_sweep({0.3}, 6, 0.05, 11, b));
    EXPECT_EQ(sa.str(), sb.str());
}

TEST(Fig3Sweep, output_formats) {
    ComplexityReport r{0.5, 0.75, 1.0, 1.25, 1.5, 128, 256, 3};
    std::ostringstream csv, jsonl;
    write_sweep_csv(csv, {r});
    EXPECT_EQ(csv.str(), "p,alpha_max,lambda_haar,lambda_exp,n_z,n_o,trials\n0.5,0.75,1.25,1.5,128,256,3\n");
    write_sweep_jsonl(jsonl, {r});
    EXPECT_EQ(jsonl.str(),
              "{\"p\":0.5,\"alpha_max\":0.75,\"lambda_haar\":1.25,\"lambda_exp\":1.5,\"n_z\":128,\"n_o\":256,\"trials\":3}\n");
}
