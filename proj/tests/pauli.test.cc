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

#include "incompat/pauli.h"

#include <gtest/gtest.h>

#include "helpers.h"
#include "incompat/error.h"

using namespace incompat;

TEST(PauliString, index_round_trip) {
    PauliString p = PauliString::from_str("ZI");
    EXPECT_EQ(p.index(), 12u);
    EXPECT_EQ(p.str(), "ZI");
    for (uint64_t k = 0; k < 64; k++) {
        EXPECT_EQ(PauliString::from_index(k, 3).index(), k);
    }
    EXPECT_EQ(PauliString::from_str("_X").str(), "IX");
    EXPECT_EQ(PauliString::z_on(1, 3).str(), "IZI");
    EXPECT_TRUE(PauliString::identity(2).is_identity());
    EXPECT_EQ(PauliString::from_str("YXY").count_y(), 2);
    EXPECT_EQ(PauliString::from_str("XY").tensor(PauliString::from_str("Z")).str(), "XYZ");
}

TEST(PauliString, rejects_bad_letters) {
    EXPECT_THROW(PauliString::from_str("XQ"), Error);
}

TEST(PauliOperator, single_qubit_products) {
    CMatrix x = pauli_operator(PauliString::from_str("X"));
    CMatrix y = pauli_operator(PauliString::from_str("Y"));
    CMatrix z = pauli_operator(PauliString::from_str("Z"));
    std::complex<double> i(0, 1);
    EXPECT_LT(test_util::max_abs(x * y - i * z), 1e-15);
    EXPECT_LT(test_util::max_abs(y * z - i * x), 1e-15);
    EXPECT_LT(test_util::max_abs(z * x - i * y), 1e-15);
    EXPECT_EQ(z(1, 1), -1.0);
}

TEST(PauliOperator, hilbert_schmidt_orthogonality) {
    for (int n = 1; n <= 3; n++) {
        auto all = all_pauli_strings(n);
        const double d = (double)(1 << n);
        for (const auto &a : all) {
            CMatrix pa = pauli_operator(a);
            for (const auto &b : all) {
                std::complex<double> t = (pa * pauli_operator(b)).trace();
                EXPECT_NEAR(std::abs(t - (a == b ? d : 0.0)), 0.0, 1e-12) << a.str() << " " << b.str();
            }
        }
    }
}

TEST(PauliMonomial, matches_dense) {
    CMatrix m = test_util::random_hermitian(8, 3);
    CVector v = m.col(0);
    CVector u = m.col(1);
    for (const auto &p : all_pauli_strings(3)) {
        CMatrix dense = pauli_operator(p);
        PauliMonomial mono = PauliMonomial::of(p);
        CMatrix built = CMatrix::Zero(8, 8);
        mono.add_to(built, 1.0);
        EXPECT_LT(test_util::max_abs(built - dense), 1e-15) << p.str();
        EXPECT_NEAR(mono.sandwich(v), (v.adjoint() * dense * v)(0, 0).real(), 1e-12);
        EXPECT_LT(std::abs(mono.inner(u, v) - (u.adjoint() * dense * v)(0, 0)), 1e-12);
        EXPECT_LT(std::abs(mono.trace_with(m) - (dense * m).trace()), 1e-12);
    }
}
