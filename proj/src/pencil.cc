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

#include "incompat/pencil.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "incompat/error.h"

namespace incompat {

namespace {

constexpr double kAlphaFloor = 1e-9;
constexpr double kAlphaTol = 1e-10;

}  // namespace

ChoiPencil::ChoiPencil(const std::vector<Observable> &observables, std::vector<BetaKey> support)
    : support_(std::move(support)) {
    if (observables.empty()) {
        throw Error(ErrorKind::InvalidObservable, "no observables");
    }
    n_ = observables[0].num_qubits();
    n_obs_ = (int)observables.size();
    coupling_ = observable_coupling(observables);
    terms_.reserve(support_.size());
    for (const auto &[k, j] : support_) {
        if (k == 0 || is_reserved_j(j, n_, n_obs_)) {
            throw Error(ErrorKind::ReservedBetaKey, beta_key_str({k, j}, n_));
        }
        PauliString pk = PauliString::from_index(k, n_);
        PauliString pj = PauliString::from_index(j, n_);
        terms_.push_back(PauliMonomial::of(pk.tensor(pj)));
        bool diag = true;
        for (int q = 0; q < n_; q++) {
            diag &= pj.letter(q) == 0 || pj.letter(q) == 3;
        }
        x_diagonal_.push_back(diag);
    }
}

CMatrix ChoiPencil::assemble(double alpha, const RVector &beta) const {
    CMatrix m = alpha * coupling_;
    m.diagonal().array() += 1.0;
    for (size_t s = 0; s < terms_.size(); s++) {
        if (beta(s) != 0) {
            terms_[s].add_to(m, beta(s));
        }
    }
    return m;
}

BetaMap ChoiPencil::to_map(const RVector &beta, double drop_below) const {
    BetaMap out;
    for (size_t s = 0; s < support_.size(); s++) {
        if (beta(s) != 0 && std::abs(beta(s)) >= drop_below) {
            out[support_[s]] = beta(s);
        }
    }
    return out;
}

RVector ChoiPencil::from_map(const BetaMap &beta) const {
    RVector out = RVector::Zero(support_.size());
    size_t matched = 0;
    for (size_t s = 0; s < support_.size(); s++) {
        auto it = beta.find(support_[s]);
        if (it != beta.end()) {
            out(s) = it->second;
            matched++;
        }
    }
    if (matched != beta.size()) {
        for (const auto &[key, value] : beta) {
            if (value != 0 && std::find(support_.begin(), support_.end(), key) == support_.end()) {
                throw Error(ErrorKind::InvalidArgument, "beta key " + beta_key_str(key, n_) + " outside support");
            }
        }
    }
    return out;
}

bool ChoiPencil::block_diagonal(const RVector &beta) const {
    for (size_t s = 0; s < terms_.size(); s++) {
        if (beta(s) != 0 && !x_diagonal_[s]) {
            return false;
        }
    }
    return true;
}

void ChoiPencil::decompose(double alpha, const RVector &beta, bool vectors, RVector &values, CMatrix &vecs) const {
    eigensolves_++;
    CMatrix j = assemble(alpha, beta);
    const Eigen::Index dim = j.rows();
    auto options = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    if (!block_diagonal(beta)) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(j, options);
        values = es.eigenvalues();
        if (vectors) {
            vecs = es.eigenvectors();
        }
        return;
    }
    // Row index is y * d + x with the Y factor first; block x gathers the rows with that x.
    const Eigen::Index d = Eigen::Index(1) << n_;
    std::vector<std::pair<double, Eigen::Index>> order;
    order.reserve(dim);
    CMatrix block_vectors(d, dim);
    CMatrix block(d, d);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(d);
    for (Eigen::Index x = 0; x < d; x++) {
        for (Eigen::Index y = 0; y < d; y++) {
            for (Eigen::Index y2 = 0; y2 < d; y2++) {
                block(y, y2) = j(y * d + x, y2 * d + x);
            }
        }
        es.compute(block, options);
        for (Eigen::Index i = 0; i < d; i++) {
            order.push_back({es.eigenvalues()(i), x * d + i});
        }
        if (vectors) {
            block_vectors.middleCols(x * d, d) = es.eigenvectors();
        }
    }
    std::stable_sort(order.begin(), order.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    values.resize(dim);
    if (vectors) {
        vecs = CMatrix::Zero(dim, dim);
    }
    for (Eigen::Index c = 0; c < dim; c++) {
        Eigen::Index src = order[c].second;
        values(c) = order[c].first;
        if (vectors) {
            Eigen::Index x = src / d;
            for (Eigen::Index y = 0; y < d; y++) {
                vecs(y * d + x, c) = block_vectors(y, src);
            }
        }
    }
}

ChoiPencil::Eval ChoiPencil::eval_exact(double alpha, const RVector &beta) const {
    RVector w;
    CMatrix v;
    decompose(alpha, beta, true, w, v);
    double slope = (v.col(0).adjoint() * coupling_ * v.col(0))(0).real();
    return {w(0), slope};
}

double ChoiPencil::lambda_min(double alpha, const RVector &beta) const {
    RVector w;
    CMatrix v;
    decompose(alpha, beta, false, w, v);
    return w(0);
}

double ChoiPencil::solve_alpha(const RVector &beta, double guess) const {
    if (lambda_min(1.0, beta) >= 0) {
        return 1.0;
    }
    if (lambda_min(kAlphaFloor, beta) < 0) {
        return -1.0;
    }
    auto f = [&](double a) {
        Eval e = eval_exact(a, beta);
        return std::pair<double, double>(e.value, e.slope);
    };
    return concave_root(f, kAlphaFloor, 1.0, guess, kAlphaTol);
}

double ChoiPencil::soft_min(double alpha, const RVector &beta, double tau, RVector *gradient) const {
    RVector w;
    CMatrix vecs;
    decompose(alpha, beta, gradient != nullptr, w, vecs);
    const Eigen::Index d = w.size();
    RVector p(d);
    double z = 0;
    for (Eigen::Index i = 0; i < d; i++) {
        p(i) = std::exp(-(w(i) - w(0)) / tau);
        z += p(i);
    }
    p /= z;
    if (gradient) {
        gradient->setZero(terms_.size());
        for (Eigen::Index i = 0; i < d; i++) {
            if (p(i) < 1e-17) {
                continue;
            }
            auto v = vecs.col(i);
            for (size_t s = 0; s < terms_.size(); s++) {
                (*gradient)(s) += p(i) * terms_[s].sandwich(v);
            }
        }
    }
    return w(0) - tau * std::log(z);
}

ChoiPencil::Smoothed ChoiPencil::solve_alpha_smoothed(const RVector &beta, double tau, double guess) const {
    // One eigensolve per Newton iterate; the last one is reused for the implicit gradient.
    RVector w;
    CMatrix vecs;
    RVector p;
    double last_alpha = -1;
    auto evaluate = [&](double a) {
        decompose(a, beta, true, w, vecs);
        const Eigen::Index d = w.size();
        p.resize(d);
        double z = 0;
        for (Eigen::Index i = 0; i < d; i++) {
            p(i) = std::exp(-(w(i) - w(0)) / tau);
            z += p(i);
        }
        p /= z;
        double slope = 0;
        for (Eigen::Index i = 0; i < d; i++) {
            if (p(i) < 1e-17) {
                continue;
            }
            auto v = vecs.col(i);
            slope += p(i) * (v.adjoint() * coupling_ * v)(0).real();
        }
        last_alpha = a;
        return std::pair<double, double>(w(0) - tau * std::log(z), slope);
    };

    Smoothed out;
    out.gradient = RVector::Zero(terms_.size());
    double lo = kAlphaFloor;
    double hi = 1.0;
    guess = (guess > lo && guess < hi) ? guess : 0.5;
    auto [f0, d0] = evaluate(guess);
    if (f0 >= 0) {
        lo = guess;
        if (evaluate(1.0).first >= 0) {
            out.alpha = 1.0;
            return out;
        }
    } else {
        hi = guess;
    }
    double next = d0 < 0 ? guess - f0 / d0 : 0.5 * (lo + hi);
    double a = concave_root(evaluate, lo, hi, next, std::max(1e-13, 1e-7 * tau));
    if (last_alpha != a) {
        evaluate(a);
    }
    out.alpha = a;
    double slope = 0;
    for (Eigen::Index i = 0; i < p.size(); i++) {
        if (p(i) < 1e-17) {
            continue;
        }
        auto v = vecs.col(i);
        slope += p(i) * (v.adjoint() * coupling_ * v)(0).real();
        for (size_t s = 0; s < terms_.size(); s++) {
            out.gradient(s) += p(i) * terms_[s].sandwich(v);
        }
    }
    if (slope < 0) {
        out.gradient /= -slope;
    } else {
        out.gradient.setZero();
    }
    return out;
}

}  // namespace incompat
