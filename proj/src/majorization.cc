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

#include "incompat/majorization.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "incompat/error.h"
#include "incompat/pauli.h"

namespace incompat {

double majorization_limit(const RVector &z, const RVector &c) {
    double best = std::numeric_limits<double>::infinity();
    double zs = 0;
    double cs = 0;
    for (Eigen::Index i = 0; i < c.size(); i++) {
        zs += z(i);
        cs += c(i);
        if (cs > 1e-12) {
            best = std::min(best, std::max(zs, 0.0) / cs);
        }
    }
    return best;
}

double majorization_bound(const Observable &o1, const Observable &o2, int directions) {
    if (o1.dim() != o2.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "observables act on different dimensions");
    }
    if (directions < 4) {
        throw Error(ErrorKind::InvalidArgument, "directions must be at least 4");
    }
    const int n = o1.num_qubits();
    const Eigen::Index d = o1.dim();
    // Z_1 and Z_2 are diagonal; their diagonals give the spectrum of x Z_1 + y Z_2 directly.
    RVector z1 = pauli_operator(PauliString::z_on(0, n)).diagonal().real();
    RVector z2 = n > 1 ? RVector(pauli_operator(PauliString::z_on(1, n)).diagonal().real()) : RVector(RVector::Zero(d));
    Eigen::SelfAdjointEigenSolver<CMatrix> eig;
    double bound = 1.0;
    for (int t = 0; t < directions; t++) {
        double theta = 2 * std::numbers::pi * t / directions;
        double x = std::cos(theta);
        double y = std::sin(theta);
        RVector z = x * z1 + y * z2;
        std::sort(z.data(), z.data() + d, std::greater<double>());
        eig.compute(x * o1.matrix() + y * o2.matrix(), Eigen::EigenvaluesOnly);
        RVector c = eig.eigenvalues().reverse();
        bound = std::min(bound, majorization_limit(z, c));
    }
    return bound;
}

}  // namespace incompat
