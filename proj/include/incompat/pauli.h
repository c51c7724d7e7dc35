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

#ifndef INCOMPAT_PAULI_H
#define INCOMPAT_PAULI_H

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "incompat/linalg.h"

namespace incompat {

/// A Pauli string on n qubits. Letters are stored as 0..3 for I, X, Y, Z; the base-4 index puts
/// qubit 0 in the most significant digit, so "ZI" on two qubits is index 12.
class PauliString {
   public:
    PauliString() = default;
    static PauliString from_str(std::string_view letters);
    static PauliString from_index(uint64_t index, int n);
    /// Z on `qubit` (0-based) and identity elsewhere.
    static PauliString z_on(int qubit, int n);
    static PauliString identity(int n);

    int num_qubits() const {
        return (int)letters_.size();
    }
    uint64_t index() const;
    std::string str() const;
    uint8_t letter(int q) const {
        return letters_[q];
    }
    bool is_identity() const;
    int count_y() const;
    /// String on n+m qubits with this string on the first n.
    PauliString tensor(const PauliString &other) const;

    bool operator==(const PauliString &other) const = default;

   private:
    std::vector<uint8_t> letters_;
};

/// Sparse form of a Pauli matrix: one nonzero per row, P[r, col[r]] = phase[r].
struct PauliMonomial {
    std::vector<uint32_t> col;
    std::vector<std::complex<double>> phase;

    static PauliMonomial of(const PauliString &p);
    /// <v|P|v>, real for Hermitian P.
    double sandwich(const Eigen::Ref<const Eigen::VectorXcd> &v) const;
    /// <u|P|v>.
    std::complex<double> inner(const Eigen::Ref<const Eigen::VectorXcd> &u, const Eigen::Ref<const Eigen::VectorXcd> &v) const;
    /// M += c * P.
    void add_to(CMatrix &m, std::complex<double> c) const;
    /// tr(P M).
    std::complex<double> trace_with(const CMatrix &m) const;
};

/// Dense 2^n x 2^n matrix of the Kronecker product in qubit order.
CMatrix pauli_operator(const PauliString &p);

/// All 4^n Pauli strings in index order.
std::vector<PauliString> all_pauli_strings(int n);

}  // namespace incompat

#endif
