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

#include "incompat/qnn.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "incompat/choi.h"
#include "incompat/error.h"
#include "incompat/pauli.h"
#include "incompat/rng.h"
#include "incompat/text.h"

namespace incompat {

namespace {

int qubits_for_generator(Eigen::Index size) {
    int n = 0;
    while ((Eigen::Index(1) << (2 * n)) < size + 1) {
        n++;
    }
    if ((Eigen::Index(1) << (2 * n)) != size + 1 || n == 0) {
        throw Error(ErrorKind::InvalidArgument, "generator needs 4^n - 1 parameters");
    }
    return n;
}

const std::vector<PauliMonomial> &monomials(int n) {
    static thread_local std::vector<std::vector<PauliMonomial>> cache;
    if ((int)cache.size() <= n) {
        cache.resize(n + 1);
    }
    if (cache[n].empty()) {
        for (const PauliString &p : all_pauli_strings(n)) {
            cache[n].push_back(PauliMonomial::of(p));
        }
    }
    return cache[n];
}

RVector softmax(const RVector &logits) {
    RVector w = (logits.array() - logits.maxCoeff()).exp();
    return w / w.sum();
}

}  // namespace

CMatrix unitary_from_params(const RVector &theta) {
    const int n = qubits_for_generator(theta.size());
    const auto &basis = monomials(n);
    const Eigen::Index d = Eigen::Index(1) << n;
    CMatrix h = CMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < theta.size(); k++) {
        if (theta(k) != 0) {
            basis[k + 1].add_to(h, theta(k));
        }
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    CVector phases = (eig.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0, -1)).array().exp();
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

MixedUnitaryChannel::MixedUnitaryChannel(int n, int d_a)
    : MixedUnitaryChannel(n, RVector::Zero(d_a), Eigen::MatrixXd::Zero(d_a, (Eigen::Index(1) << (2 * n)) - 1)) {
}

MixedUnitaryChannel::MixedUnitaryChannel(int n, RVector logits, Eigen::MatrixXd generator_params)
    : n_(n), logits_(std::move(logits)), params_(std::move(generator_params)) {
    if (n < 1 || logits_.size() < 1) {
        throw Error(ErrorKind::InvalidArgument, "channel needs n >= 1 and at least one component");
    }
    if (params_.rows() != logits_.size() || params_.cols() != (Eigen::Index(1) << (2 * n)) - 1) {
        throw Error(ErrorKind::DimensionMismatch, "generator parameters must be d_a x (4^n - 1)");
    }
    weights_ = softmax(logits_);
    for (Eigen::Index i = 0; i < params_.rows(); i++) {
        unitaries_.push_back(unitary_from_params(params_.row(i).transpose()));
    }
}

void MixedUnitaryChannel::set_logits(const RVector &logits) {
    if (logits.size() != logits_.size()) {
        throw Error(ErrorKind::DimensionMismatch, "logit count differs from d_a");
    }
    logits_ = logits;
    weights_ = softmax(logits_);
}

void MixedUnitaryChannel::set_generator(int i, const RVector &theta) {
    if (theta.size() != params_.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "generator needs 4^n - 1 parameters");
    }
    params_.row(i) = theta.transpose();
    unitaries_[i] = unitary_from_params(theta);
}

DensityMatrix apply_channel(const MixedUnitaryChannel &e, const DensityMatrix &rho) {
    if (rho.num_qubits() != e.num_qubits()) {
        throw Error(ErrorKind::DimensionMismatch, "state and channel act on different qubit counts");
    }
    CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
    for (int i = 0; i < e.ancilla_dim(); i++) {
        out += e.weights()(i) * e.unitary(i) * rho.matrix() * e.unitary(i).adjoint();
    }
    out = (out + out.adjoint()) / 2.0;
    return DensityMatrix(e.num_qubits(), out);
}

CMatrix adjoint_observable(const MixedUnitaryChannel &e, int qubit) {
    if (qubit < 0 || qubit >= e.num_qubits()) {
        throw Error(ErrorKind::InvalidArgument, "qubit index out of range");
    }
    CMatrix z = pauli_operator(PauliString::z_on(qubit, e.num_qubits()));
    CMatrix out = CMatrix::Zero(z.rows(), z.cols());
    for (int i = 0; i < e.ancilla_dim(); i++) {
        out += e.weights()(i) * e.unitary(i).adjoint() * z * e.unitary(i);
    }
    return out;
}

std::vector<LabeledState> generate_dataset(const Observable &o, int size, uint64_t seed) {
    if (size < 1) {
        throw Error(ErrorKind::InvalidArgument, "dataset size must be at least 1");
    }
    std::vector<LabeledState> out;
    out.reserve(size);
    for (int l = 0; l < size; l++) {
        DensityMatrix rho = DensityMatrix::pure(haar_vector(o.num_qubits(), derive_seed(seed, l)));
        double y = expectation(rho, o);
        out.push_back({std::move(rho), y});
    }
    return out;
}

LossValue loss(const MixedUnitaryChannel &e, double alpha, const std::vector<LabeledState> &data1,
               const std::vector<LabeledState> &data2) {
    if (data1.empty() || data2.empty()) {
        throw Error(ErrorKind::EmptyDataset, "loss needs two nonempty datasets");
    }
    const std::vector<LabeledState> *sets[2] = {&data1, &data2};
    double lo = 0;
    for (int j = 0; j < 2; j++) {
        CMatrix z = pauli_operator(PauliString::z_on(j, e.num_qubits()));
        double sum = 0;
        for (const LabeledState &s : *sets[j]) {
            double f = expectation(apply_channel(e, s.rho), z);
            sum += (alpha * s.target - f) * (alpha * s.target - f);
        }
        lo += sum / (double)sets[j]->size();
    }
    return {lo - alpha, lo};
}

FastLoss::FastLoss(const std::vector<LabeledState> &data1, const std::vector<LabeledState> &data2) {
    if (data1.empty() || data2.empty()) {
        throw Error(ErrorKind::EmptyDataset, "loss needs two nonempty datasets");
    }
    n_ = data1[0].rho.num_qubits();
    const auto &basis = monomials(n_);
    for (const auto *set : {&data1, &data2}) {
        Eigen::MatrixXd r(set->size(), basis.size());
        RVector y(set->size());
        for (size_t l = 0; l < set->size(); l++) {
            const LabeledState &s = (*set)[l];
            if (s.rho.num_qubits() != n_) {
                throw Error(ErrorKind::DimensionMismatch, "dataset states act on different qubit counts");
            }
            for (size_t k = 0; k < basis.size(); k++) {
                r(l, k) = basis[k].trace_with(s.rho.matrix()).real();
            }
            y(l) = s.target;
        }
        double inv = 1.0 / (double)set->size();
        gram_.push_back(r.transpose() * r * inv);
        h_.push_back(r.transpose() * y * inv);
        s_.push_back(y.squaredNorm() * inv);
    }
}

Eigen::MatrixXd FastLoss::component(const CMatrix &u) const {
    const auto &basis = monomials(n_);
    const double scale = 1.0 / (double)u.rows();
    Eigen::MatrixXd out(basis.size(), 2);
    for (int j = 0; j < 2; j++) {
        // U^dagger Z_j U with Z_j diagonal.
        RVector z = pauli_operator(PauliString::z_on(j, n_)).diagonal().real();
        CMatrix m = u.adjoint() * z.cast<std::complex<double>>().asDiagonal() * u;
        for (size_t k = 0; k < basis.size(); k++) {
            out(k, j) = basis[k].trace_with(m).real() * scale;
        }
    }
    return out;
}

double FastLoss::loss_o(const RVector &weights, const std::vector<Eigen::MatrixXd> &components, double alpha) const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(components[0].rows(), 2);
    for (size_t i = 0; i < components.size(); i++) {
        a += weights(i) * components[i];
    }
    double out = 0;
    for (int j = 0; j < 2; j++) {
        out += a.col(j).dot(gram_[j] * a.col(j)) - 2 * alpha * a.col(j).dot(h_[j]) + alpha * alpha * s_[j];
    }
    return out;
}

RVector fd_gradient(const FastLoss &fast, const MixedUnitaryChannel &e, std::vector<Eigen::MatrixXd> &comps,
                    double alpha, double gamma, double h) {
    const int da = e.ancilla_dim();
    const Eigen::Index np = e.generator_params().cols();
    RVector grad(da + da * np + 1);
    const RVector &logits = e.logits();
    for (int i = 0; i < da; i++) {
        RVector lp = logits;
        RVector lm = logits;
        lp(i) += h;
        lm(i) -= h;
        grad(i) = (fast.loss_o(softmax(lp), comps, alpha) - fast.loss_o(softmax(lm), comps, alpha)) / (2 * h);
    }
    for (int i = 0; i < da; i++) {
        Eigen::MatrixXd saved = comps[i];
        RVector row = e.generator_params().row(i).transpose();
        for (Eigen::Index k = 0; k < np; k++) {
            RVector tp = row;
            tp(k) += h;
            comps[i] = fast.component(unitary_from_params(tp));
            double fp = fast.loss_o(e.weights(), comps, alpha);
            tp(k) = row(k) - h;
            comps[i] = fast.component(unitary_from_params(tp));
            double fm = fast.loss_o(e.weights(), comps, alpha);
            grad(da + i * np + k) = (fp - fm) / (2 * h);
        }
        comps[i] = saved;
    }
    double fp = fast.loss_o(e.weights(), comps, alpha + h) - gamma * (alpha + h);
    double fm = fast.loss_o(e.weights(), comps, alpha - h) - gamma * (alpha - h);
    grad(grad.size() - 1) = (fp - fm) / (2 * h);
    return grad;
}

TrainResult train(const Observable &o1, const Observable &o2, const TrainingConfig &config) {
    if (config.d_a < 2) {
        throw Error(ErrorKind::InvalidArgument, "d_a must be at least 2");
    }
    if (!(config.learning_rate > 0)) {
        throw Error(ErrorKind::InvalidArgument, "learning rate must be positive");
    }
    if (!(config.fd_step > 0 && config.fd_step <= 1e-2)) {
        throw Error(ErrorKind::InvalidArgument, "fd_step must lie in (0, 1e-2]");
    }
    if (config.epochs < 0) {
        throw Error(ErrorKind::InvalidArgument, "epochs must be nonnegative");
    }
    if (!(config.alpha_init > 0 && config.alpha_init <= 1)) {
        throw Error(ErrorKind::InvalidArgument, "alpha_init must lie in (0, 1]");
    }
    if (o1.num_qubits() != o2.num_qubits()) {
        throw Error(ErrorKind::DimensionMismatch, "observables act on different qubit counts");
    }
    const int n = o1.num_qubits();
    if (n < 2) {
        throw Error(ErrorKind::InvalidObservable, "two observables need at least two qubits");
    }
    auto data1 = generate_dataset(o1, config.dataset_l, derive_seed(config.seed, 1));
    auto data2 = generate_dataset(o2, config.dataset_m, derive_seed(config.seed, 2));
    FastLoss fast(data1, data2);

    const int da = config.d_a;
    const int np = (1 << (2 * n)) - 1;
    Rng rng(derive_seed(config.seed, 3));
    Eigen::MatrixXd theta(da, np);
    for (int i = 0; i < da; i++) {
        for (int k = 0; k < np; k++) {
            theta(i, k) = config.init_scale * rng.normal();
        }
    }
    MixedUnitaryChannel channel(n, RVector::Zero(da), theta);
    double alpha = config.alpha_init;

    std::vector<Eigen::MatrixXd> comps;
    for (int i = 0; i < da; i++) {
        comps.push_back(fast.component(channel.unitary(i)));
    }

    const int dim = da + da * np + 1;
    RVector m = RVector::Zero(dim);
    RVector v = RVector::Zero(dim);
    const double b1 = 0.9;
    const double b2 = 0.999;
    const double eps = 1e-8;
    const double h = config.fd_step;

    TrainResult res{alpha, {}, channel};
    res.loss_history.reserve(config.epochs + 1);
    for (int t = 0; t <= config.epochs; t++) {
        double lo = fast.loss_o(channel.weights(), comps, alpha);
        res.loss_history.push_back({t, lo, lo - alpha});
        if (t == config.epochs) {
            break;
        }
        double gamma = std::max(config.alpha_weight_final, config.alpha_weight_initial * std::exp(-t / config.alpha_weight_decay));

        RVector logits = channel.logits();
        RVector grad = fd_gradient(fast, channel, comps, alpha, gamma, h);

        m = b1 * m + (1 - b1) * grad;
        v = b2 * v + (1 - b2) * grad.cwiseAbs2();
        double c1 = 1 - std::pow(b1, t + 1);
        double c2 = 1 - std::pow(b2, t + 1);
        RVector step = config.learning_rate * (m / c1).array() / ((v / c2).array().sqrt() + eps);

        channel.set_logits(logits - step.head(da));
        for (int i = 0; i < da; i++) {
            RVector row = channel.generator_params().row(i).transpose() - step.segment(da + i * np, np);
            channel.set_generator(i, row);
            comps[i] = fast.component(channel.unitary(i));
        }
        alpha = std::clamp(alpha - step(dim - 1), 1e-6, 1.0);
    }
    res.alpha = alpha;
    res.channel = channel;
    return res;
}

void write_checkpoint(std::ostream &out, const Checkpoint &c) {
    const MixedUnitaryChannel &e = c.channel;
    out << "incompat-checkpoint\n";
    out << "n=" << e.num_qubits() << '\n';
    out << "d_a=" << e.ancilla_dim() << '\n';
    out << "epoch=" << c.epoch << '\n';
    out << "alpha=" << format_double(c.alpha) << '\n';
    out << "logits=";
    for (Eigen::Index i = 0; i < e.logits().size(); i++) {
        out << (i ? " " : "") << format_double(e.logits()(i));
    }
    out << '\n';
    for (Eigen::Index i = 0; i < e.generator_params().rows(); i++) {
        out << "theta." << i << '=';
        for (Eigen::Index k = 0; k < e.generator_params().cols(); k++) {
            out << (k ? " " : "") << format_double(e.generator_params()(i, k));
        }
        out << '\n';
    }
}

namespace {

[[noreturn]] void checkpoint_fail(int line, const std::string &what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

struct KeyLine {
    std::string key;
    std::vector<double> values;
};

KeyLine read_key_line(std::istream &in, int &line) {
    std::string s;
    if (!std::getline(in, s)) {
        checkpoint_fail(line + 1, "unexpected end of input");
    }
    line++;
    size_t eq = s.find('=');
    if (eq == std::string::npos) {
        checkpoint_fail(line, "expected key=value");
    }
    KeyLine k{s.substr(0, eq), {}};
    for (std::string_view f : split_fields(std::string_view(s).substr(eq + 1))) {
        double x;
        if (!parse_double(f, x)) {
            checkpoint_fail(line, "bad number '" + std::string(f) + "'");
        }
        k.values.push_back(x);
    }
    return k;
}

double expect_scalar(std::istream &in, int &line, const std::string &key) {
    KeyLine k = read_key_line(in, line);
    if (k.key != key || k.values.size() != 1) {
        checkpoint_fail(line, "expected " + key + "=<value>");
    }
    return k.values[0];
}

int expect_int(std::istream &in, int &line, const std::string &key, int lo) {
    double x = expect_scalar(in, line, key);
    if (x != std::floor(x) || x < lo || x > 1e9) {
        checkpoint_fail(line, "bad integer for " + key);
    }
    return (int)x;
}

}  // namespace

Checkpoint read_checkpoint(std::istream &in) {
    int line = 0;
    std::string s;
    if (!std::getline(in, s) || s != "incompat-checkpoint") {
        checkpoint_fail(1, "expected 'incompat-checkpoint'");
    }
    line = 1;
    int n = expect_int(in, line, "n", 1);
    if (n > 8) {
        checkpoint_fail(line, "n out of range");
    }
    int da = expect_int(in, line, "d_a", 1);
    int epoch = expect_int(in, line, "epoch", 0);
    double alpha = expect_scalar(in, line, "alpha");
    KeyLine logits = read_key_line(in, line);
    if (logits.key != "logits" || (int)logits.values.size() != da) {
        checkpoint_fail(line, "expected logits with d_a values");
    }
    const int np = (1 << (2 * n)) - 1;
    Eigen::MatrixXd theta(da, np);
    for (int i = 0; i < da; i++) {
        KeyLine row = read_key_line(in, line);
        if (row.key != "theta." + std::to_string(i) || (int)row.values.size() != np) {
            checkpoint_fail(line, "expected theta." + std::to_string(i) + " with 4^n - 1 values");
        }
        theta.row(i) = Eigen::Map<RVector>(row.values.data(), np).transpose();
    }
    RVector l = Eigen::Map<RVector>(logits.values.data(), da);
    return {MixedUnitaryChannel(n, l, theta), alpha, epoch};
}

}  // namespace incompat
