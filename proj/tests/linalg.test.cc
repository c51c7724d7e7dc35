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

#include "incompat/linalg.h"

#include <gtest/gtest.h>

#include "helpers.h"
#include "incompat/error.h"

using namespace incompat;

TEST(HermitianEig, residuals_order_and_phase) {
    for (uint64_t seed = 0; seed < 50; seed++) {
        CMatrix m = test_util::random_hermitian(16, seed);
        Spectrum s = hermitian_eig(m);
        for (Eigen::Index k = 0; k < 16; k++) {
            EXPECT_LT((m * s.vectors.col(k) - s.values(k) * s.vectors.col(k)).norm(), 1e-10);
            if (k > 0) {
                EXPECT_GE(s.values(k - 1), s.values(k));
            }
            for (Eigen::Index r = 0; r < 16; r++) {
                if (std::abs(s.vectors(r, k)) > 1e-12) {
                    EXPECT_NEAR(s.vectors(r, k).imag(), 0.0, 1e-14);
                    EXPECT_GT(s.vectors(r, k).real(), 0.0);
                    break;
                }
            }
        }
        EXPECT_LT(test_util::max_abs(s.vectors.adjoint() * s.vectors - CMatrix::Identity(16, 16)), 1e-10);
        EXPECT_NEAR(min_eigenvalue(m), s.values(15), 1e-10);
        EXPECT_NEAR(spectral_norm_hermitian(m), std::max(std::abs(s.values(0)), std::abs(s.values(15))), 1e-10);
    }
}

TEST(HermitianEig, rejects_non_hermitian) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(hermitian_eig(m), Error);
    try {
        require_hermitian(m);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
    }
}

TEST(PartialTrace, traces_out_left_factor) {
    CMatrix a = test_util::random_hermitian(2, 1);
    CMatrix b = test_util::random_hermitian(4, 2);
    CMatrix pt = partial_trace_left(kron(a, b), 2, 4);
    EXPECT_LT(test_util::max_abs(pt - a.trace() * b), 1e-12);
    EXPECT_THROW(partial_trace_left(b, 3, 2), Error);
}

TEST(Kron, dimensions_and_entries) {
    CMatrix a = test_util::random_hermitian(2, 5);
    CMatrix b = test_util::random_hermitian(3, 6);
    CMatrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 6);
    EXPECT_EQ(k(4, 2), a(1, 0) * b(1, 2));
}
