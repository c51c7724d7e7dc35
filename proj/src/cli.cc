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

#include "incompat/cli.h"

#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "incompat/alpha_solver.h"
#include "incompat/choi.h"
#include "incompat/error.h"
#include "incompat/majorization.h"
#include "incompat/observable_io.h"
#include "incompat/presets.h"
#include "incompat/qnn.h"
#include "incompat/sampling.h"
#include "incompat/sdp.h"
#include "incompat/text.h"
#include "json.hpp"

namespace incompat {

using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string preset;
    std::string obs1;
    std::string obs2;
    std::string out;
    uint64_t seed = 0;
};

void add_common(CLI::App *cmd, Common &c, bool observables = true) {
    if (observables) {
        cmd->add_option("--preset", c.preset, "example1, example2 or fig3:p=<x>");
        cmd->add_option("--obs1", c.obs1, "first observable file");
        cmd->add_option("--obs2", c.obs2, "second observable file");
    }
    cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
    cmd->add_option("--out", c.out, "output path");
}

std::vector<Observable> resolve(const Common &c) {
    bool files = !c.obs1.empty() || !c.obs2.empty();
    if (c.preset.empty() == !files) {
        throw UsageError("--preset: give either --preset or both --obs1 and --obs2");
    }
    if (!c.preset.empty()) {
        try {
            return resolve_preset(c.preset);
        } catch (const Error &e) {
            throw UsageError(std::string("--preset: ") + e.what());
        }
    }
    if (c.obs1.empty() || c.obs2.empty()) {
        throw UsageError(std::string(c.obs1.empty() ? "--obs1" : "--obs2") + ": both observable files are required");
    }
    return {load_observable_file(c.obs1), load_observable_file(c.obs2)};
}

std::string source_name(const Common &c) {
    return c.preset.empty() ? c.obs1 + "," + c.obs2 : c.preset;
}

void emit(const Common &c, const std::string &text, std::ostream &out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
        throw Error(ErrorKind::InvalidArgument, "cannot write '" + c.out + "'");
    }
    f << text;
}

ordered_json beta_json(const BetaMap &beta, int n) {
    ordered_json j = ordered_json::object();
    for (const auto &[key, value] : beta) {
        j[beta_key_str(key, n)] = value;
    }
    return j;
}

/// The one-line summary goes to stdout when the result itself went to a file.
std::ostream &summary(const Common &c, std::ostream &out, std::ostream &err) {
    return c.out.empty() ? err : out;
}

std::string fixed(double x, int digits) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(digits);
    ss << x;
    return ss.str();
}

}  // namespace

std::vector<double> parse_p_values(const std::string &spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ':')) {
            double x;
            if (!parse_double(item, x)) {
                throw Error(ErrorKind::InvalidArgument, "bad p range '" + spec + "'");
            }
            parts.push_back(x);
        }
        if (parts.size() != 3 || !(parts[2] > 0) || !(parts[1] >= parts[0])) {
            throw Error(ErrorKind::InvalidArgument, "p range must be start:stop:step with step > 0");
        }
        long count = std::lround(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
        for (long i = 0; i < count; i++) {
            out.push_back(std::round((parts[0] + i * parts[2]) * 1e12) / 1e12);
        }
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double x;
        if (!parse_double(item, x)) {
            throw Error(ErrorKind::InvalidArgument, "bad p value '" + item + "'");
        }
        out.push_back(x);
    }
    if (out.empty()) {
        throw Error(ErrorKind::InvalidArgument, "no p values");
    }
    return out;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Unital-channel measurement of incompatible observables"};
    app.name("incompat");
    app.require_subcommand(1);

    Common solve_c;
    std::string strategy = "iterative";
    std::string support = "flagged";
    SolverOptions solver;
    auto *solve = app.add_subcommand("alpha-solve", "compute alpha_max and its certificate");
    add_common(solve, solve_c);
    solve->add_option("--strategy", strategy)->check(CLI::IsMember({"iterative", "penalty"}))->capture_default_str();
    solve->add_option("--support", support)->check(CLI::IsMember({"flagged", "full"}))->capture_default_str();
    solve->add_option("--eta", solver.eta)->check(CLI::PositiveNumber)->capture_default_str();
    solve->add_option("--max-iterations", solver.max_iterations)->check(CLI::NonNegativeNumber)->capture_default_str();
    solve->add_option("--delta-alpha", solver.delta_alpha)->check(CLI::PositiveNumber)->capture_default_str();

    Common train_c;
    TrainingConfig tc;
    std::string checkpoint;
    auto *train_cmd = app.add_subcommand("train", "train a mixed-unitary channel");
    add_common(train_cmd, train_c);
    train_cmd->add_option("--da", tc.d_a)->check(CLI::Range(2, 64))->capture_default_str();
    train_cmd->add_option("--epochs", tc.epochs)->check(CLI::NonNegativeNumber)->capture_default_str();
    train_cmd->add_option("--lr", tc.learning_rate)->check(CLI::PositiveNumber)->capture_default_str();
    train_cmd->add_option("--L", tc.dataset_l)->check(CLI::PositiveNumber)->capture_default_str();
    train_cmd->add_option("--M", tc.dataset_m)->check(CLI::PositiveNumber)->capture_default_str();
    train_cmd->add_option("--fd-step", tc.fd_step)->check(CLI::Range(1e-12, 1e-2))->capture_default_str();
    train_cmd->add_option("--alpha-init", tc.alpha_init)->check(CLI::Range(1e-6, 1.0))->capture_default_str();
    train_cmd->add_option("--alpha-weight-final", tc.alpha_weight_final)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    train_cmd->add_option("--checkpoint", checkpoint, "write the trained parameters here");

    Common var_c;
    uint64_t shots = 100000;
    double var_alpha = 0;
    double epsilon_b = 0.01;
    double delta_b = 0.05;
    auto *variance = app.add_subcommand("variance", "estimator variances on a Haar-random state");
    add_common(variance, var_c);
    variance->add_option("--shots", shots)->check(CLI::PositiveNumber)->capture_default_str();
    variance->add_option("--alpha", var_alpha, "scaling; default is the solver's alpha_max")->check(CLI::Range(1e-9, 1.0));
    variance->add_option("--epsilon", epsilon_b)->check(CLI::Range(1e-12, 0.999999))->capture_default_str();
    variance->add_option("--delta", delta_b)->check(CLI::Range(1e-12, 0.999999))->capture_default_str();

    Common sweep_c;
    std::string p_spec = "0:1:0.05";
    int trials = 200;
    double epsilon = 0.01;
    std::string jsonl;
    SweepOptions sweep_opts;
    sweep_opts.copies = fig3_copies_options();
    auto *sweep = app.add_subcommand("sweep", "copy-count ratios over the fig3 observable family");
    add_common(sweep, sweep_c, false);
    sweep->add_option("--p", p_spec, "start:stop:step or comma list")->capture_default_str();
    sweep->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--epsilon", epsilon)->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--jsonl", jsonl, "also write JSON lines here");
    sweep->add_option("--substeps", sweep_opts.copies.substeps)->check(CLI::Range(1, 64))->capture_default_str();
    sweep->add_option("--replicates", sweep_opts.copies.replicates)->check(CLI::Range(1, 100000))->capture_default_str();
    sweep->add_option("--coverage", sweep_opts.copies.coverage)->check(CLI::Range(1e-9, 1.0))->capture_default_str();
    sweep->add_option("--threads", sweep_opts.threads)->check(CLI::NonNegativeNumber);

    Common maj_c;
    int directions = 360;
    auto *maj = app.add_subcommand("majorization", "majorization upper bound on alpha");
    add_common(maj, maj_c);
    maj->add_option("--directions", directions)->check(CLI::Range(4, 1000000))->capture_default_str();

    Common sdp_c;
    auto *sdp = app.add_subcommand("export-sdp", "write the alpha_max semidefinite program");
    add_common(sdp, sdp_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (solve->parsed()) {
            auto obs = resolve(solve_c);
            solver.support = support == "full" ? SupportMode::Full : SupportMode::FlaggedAndZProducts;
            AlphaResult r = strategy == "penalty" ? penalty_alpha_max(obs, solver) : iterative_alpha_max(obs, solver);
            ChoiMatrix choi = build_choi(obs, r.alpha_max, r.beta);
            int n = obs[0].num_qubits();
            ordered_json j;
            j["command"] = "alpha-solve";
            j["observables"] = source_name(solve_c);
            j["strategy"] = strategy_name(r.strategy);
            j["alpha_max"] = r.alpha_max;
            j["alpha_zero"] = r.alpha_history.front();
            j["alpha_history"] = r.alpha_history;
            j["ground_dim_history"] = r.ground_dim_history;
            j["beta"] = beta_json(r.beta, n);
            j["final_lambda_min"] = r.final_lambda_min;
            j["iterations"] = r.iterations;
            j["cp"] = check_cp(choi, 1e-8).cp;
            j["unital_tp"] = check_unital_tp(choi, 1e-9);
            emit(solve_c, j.dump(2) + "\n", out);
            summary(solve_c, out, err) << "alpha_max=" << fixed(r.alpha_max, 10) << " alpha_zero=" << fixed(r.alpha_history.front(), 10)
                << " strategy=" << strategy_name(r.strategy) << " iterations=" << r.iterations << '\n';
        } else if (train_cmd->parsed()) {
            auto obs = resolve(train_c);
            if (obs.size() != 2) {
                throw UsageError("--preset: training needs exactly two observables");
            }
            tc.seed = train_c.seed;
            TrainResult r = train(obs[0], obs[1], tc);
            ordered_json j;
            j["command"] = "train";
            j["observables"] = source_name(train_c);
            j["d_a"] = tc.d_a;
            j["epochs"] = tc.epochs;
            j["learning_rate"] = tc.learning_rate;
            j["seed"] = tc.seed;
            j["alpha"] = r.alpha;
            j["final_loss_o"] = r.loss_history.back().loss_o;
            j["final_loss"] = r.loss_history.back().loss;
            j["weights"] = std::vector<double>(r.channel.weights().data(), r.channel.weights().data() + tc.d_a);
            ordered_json hist = ordered_json::array();
            for (const auto &h : r.loss_history) {
                hist.push_back({h.epoch, h.loss_o, h.loss});
            }
            j["loss_history"] = hist;
            emit(train_c, j.dump(2) + "\n", out);
            if (!checkpoint.empty()) {
                std::ofstream f(checkpoint, std::ios::binary);
                if (!f) {
                    throw Error(ErrorKind::InvalidArgument, "cannot write '" + checkpoint + "'");
                }
                write_checkpoint(f, {r.channel, r.alpha, tc.epochs});
            }
            summary(train_c, out, err) << "alpha=" << fixed(r.alpha, 6) << " final_loss_o=" << r.loss_history.back().loss_o << " d_a=" << tc.d_a
                << '\n';
        } else if (variance->parsed()) {
            auto obs = resolve(var_c);
            int n = obs[0].num_qubits();
            AlphaResult solved = iterative_alpha_max(obs);
            double alpha = var_alpha > 0 ? var_alpha : solved.alpha_max;
            DensityMatrix rho = haar_state(n, derive_seed(var_c.seed, 0));
            // Z readout always uses the solver's certified channel; --alpha only rescales it.
            PauliChannel channel(build_choi(obs, solved.alpha_max, solved.beta));
            RVector truth(obs.size());
            ordered_json per = ordered_json::array();
            for (size_t i = 0; i < obs.size(); i++) {
                truth(i) = expectation(rho, obs[i]);
            }
            OutcomeModel zm = z_readout_model(channel.apply(rho.matrix()), (int)obs.size(), solved.alpha_max, truth);
            Rng rng(derive_seed(var_c.seed, 100));
            auto zs = summarize(zm, sample_counts(zm, shots, rng), EstimatorKind::QnnZ, solved.alpha_max);
            for (size_t i = 0; i < obs.size(); i++) {
                Variances v = analytic_variances(rho, obs[i], alpha);
                EstimatorStats ps = sample_projective(rho, obs[i], shots, derive_seed(var_c.seed, 1 + i));
                ordered_json o;
                o["expectation"] = truth(i);
                o["var_o"] = v.var_o;
                o["var_z"] = v.var_z;
                o["empirical_var_o"] = ps.sample_variance;
                o["empirical_var_z"] = zs[i].sample_variance;
                o["mean_o"] = ps.mean;
                o["mean_z"] = zs[i].mean;
                per.push_back(o);
            }
            ordered_json j;
            j["command"] = "variance";
            j["observables"] = source_name(var_c);
            j["seed"] = var_c.seed;
            j["alpha"] = alpha;
            j["shots"] = shots;
            j["per_observable"] = per;
            if (obs.size() == 2) {
                BernsteinBounds b = bernstein_bounds(obs[0], obs[1], rho, alpha, epsilon_b, delta_b);
                j["lambda"] = lambda_ratio(rho, obs[0], obs[1], alpha);
                j["lambda_haar"] = lambda_haar(obs[0], obs[1], alpha);
                j["bernstein"] = {{"epsilon", b.epsilon}, {"delta", b.delta}, {"n_o", b.n_o}, {"n_z", b.n_z}};
            }
            emit(var_c, j.dump(2) + "\n", out);
            summary(var_c, out, err) << "alpha=" << fixed(alpha, 6) << " var_o=" << per[0]["var_o"].get<double>()
                << " var_z=" << per[0]["var_z"].get<double>() << '\n';
        } else if (sweep->parsed()) {
            std::vector<double> p_values;
            try {
                p_values = parse_p_values(p_spec);
            } catch (const Error &e) {
                throw UsageError(std::string("--p: ") + e.what());
            }
            auto reports = fig3_sweep(p_values, trials, epsilon, sweep_c.seed, sweep_opts);
            std::ostringstream csv;
            bool as_jsonl = sweep_c.out.size() >= 6 && sweep_c.out.ends_with(".jsonl");
            if (as_jsonl) {
                write_sweep_jsonl(csv, reports);
            } else {
                write_sweep_csv(csv, reports);
            }
            emit(sweep_c, csv.str(), out);
            if (!jsonl.empty()) {
                std::ofstream f(jsonl, std::ios::binary);
                if (!f) {
                    throw Error(ErrorKind::InvalidArgument, "cannot write '" + jsonl + "'");
                }
                write_sweep_jsonl(f, reports);
            }
            summary(sweep_c, out, err) << "sweep rows=" << reports.size() << " trials=" << trials << " epsilon=" << epsilon << '\n';
        } else if (maj->parsed()) {
            auto obs = resolve(maj_c);
            if (obs.size() != 2) {
                throw UsageError("--preset: the majorization bound takes exactly two observables");
            }
            double a = majorization_bound(obs[0], obs[1], directions);
            ordered_json j;
            j["command"] = "majorization";
            j["observables"] = source_name(maj_c);
            j["directions"] = directions;
            j["alpha_maj"] = a;
            emit(maj_c, j.dump(2) + "\n", out);
            summary(maj_c, out, err) << "alpha_maj=" << fixed(a, 10) << '\n';
        } else if (sdp->parsed()) {
            auto obs = resolve(sdp_c);
            SdpProblem p = export_sdp(obs);
            std::ostringstream text;
            write_sdp(text, p);
            emit(sdp_c, text.str(), out);
            summary(sdp_c, out, err) << "sdp dim=" << p.psd_dim << " constraints=" << p.constraints.size() << '\n';
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace incompat
