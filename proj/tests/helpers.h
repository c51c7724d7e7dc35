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

#ifndef INCOMPAT_TESTS_HELPERS_H
#define INCOMPAT_TESTS_HELPERS_H

#include <cstdint>
#include <vector>

#include "incompat/linalg.h"
#include "incompat/operators.h"
#include "incompat/rng.h"

namespace incompat::test_util {

/// The s-th seeded random pair used across the suites.
inline std::vector<Observable> random_pair(int s) {
    return {random_observable(2, 2 * (uint64_t)s), random_observable(2, 2 * (uint64_t)s + 1)};
}

inline CMatrix random_hermitian(int d, uint64_t seed) {
    Rng rng(seed);
    CMatrix a(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            a(i, j) = rng.complex_normal();
        }
    }
    return (a + a.adjoint()) / 2.0;
}

/// Mixed state from a Ginibre draw.
inline DensityMatrix random_density(int n, uint64_t seed) {
    Rng rng(seed);
    const int d = 1 << n;
    CMatrix g(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            g(i, j) = rng.complex_normal();
        }
    }
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = (rho + rho.adjoint()) / 2.0;
    return DensityMatrix(n, rho);
}

inline double max_abs(const CMatrix &m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace incompat::test_util

#endif
