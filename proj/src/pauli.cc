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

#include "incompat/error.h"

namespace incompat {

namespace {

constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};

}  // namespace

PauliString PauliString::from_str(std::string_view letters) {
    if (letters.empty()) {
        throw Error(ErrorKind::InvalidArgument, "empty Pauli string");
    }
    PauliString p;
    p.letters_.reserve(letters.size());
    for (char c : letters) {
        switch (c) {
            case 'I':
            case '_':
                p.letters_.push_back(0);
                break;
            case 'X':
                p.letters_.push_back(1);
                break;
            case 'Y':
                p.letters_.push_back(2);
                break;
            case 'Z':
                p.letters_.push_back(3);
                break;
            default:
                throw Error(ErrorKind::InvalidArgument, "bad Pauli letter '" + std::string(1, c) + "'");
        }
    }
    return p;
}

PauliString PauliString::from_index(uint64_t index, int n) {
    if (n < 1 || n > 31) {
        throw Error(ErrorKind::InvalidArgument, "qubit count out of range");
    }
    if (index >> (2 * n)) {
        throw Error(ErrorKind::InvalidArgument, "Pauli index out of range");
    }
    PauliString p;
    p.letters_.resize(n);
    for (int q = n - 1; q >= 0; q--) {
        p.letters_[q] = (uint8_t)(index & 3);
        index >>= 2;
    }
    return p;
}

PauliString PauliString::z_on(int qubit, int n) {
    PauliString p = identity(n);
    if (qubit < 0 || qubit >= n) {
        throw Error(ErrorKind::InvalidArgument, "qubit out of range");
    }
    p.letters_[qubit] = 3;
    return p;
}

PauliString PauliString::identity(int n) {
    if (n < 1) {
        throw Error(ErrorKind::InvalidArgument, "qubit count must be positive");
    }
    PauliString p;
    p.letters_.assign(n, 0);
    return p;
}

uint64_t PauliString::index() const {
    uint64_t k = 0;
    for (uint8_t l : letters_) {
        k = (k << 2) | l;
    }
    return k;
}

std::string PauliString::str() const {
    std::string s;
    for (uint8_t l : letters_) {
        s.push_back(kLetters[l]);
    }
    return s;
}

bool PauliString::is_identity() const {
    for (uint8_t l : letters_) {
        if (l) {
            return false;
        }
    }
    return true;
}

int PauliString::count_y() const {
    int c = 0;
    for (uint8_t l : letters_) {
        c += l == 2;
    }
    return c;
}

PauliString PauliString::tensor(const PauliString &other) const {
    PauliString p = *this;
    p.letters_.insert(p.letters_.end(), other.letters_.begin(), other.letters_.end());
    return p;
}

PauliMonomial PauliMonomial::of(const PauliString &p) {
    const int n = p.num_qubits();
    const uint32_t d = 1u << n;
    uint32_t xmask = 0;
    uint32_t zmask = 0;
    int ny = 0;
    for (int q = 0; q < n; q++) {
        uint32_t bit = 1u << (n - 1 - q);
        uint8_t l = p.letter(q);
        if (l == 1 || l == 2) {
            xmask |= bit;
        }
        if (l == 2 || l == 3) {
            zmask |= bit;
        }
        ny += l == 2;
    }
    // Y = i X Z, so the row phase is i^{#Y} (-1)^{|c & zmask|} with c the column bit string.
    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    PauliMonomial m;
    m.col.resize(d);
    m.phase.resize(d);
    for (uint32_t r = 0; r < d; r++) {
        uint32_t c = r ^ xmask;
        int sign = __builtin_popcount(c & zmask) & 1;
        m.col[r] = c;
        m.phase[r] = sign ? -ipow[ny & 3] : ipow[ny & 3];
    }
    return m;
}

double PauliMonomial::sandwich(const Eigen::Ref<const Eigen::VectorXcd> &v) const {
    double acc = 0;
    for (size_t r = 0; r < col.size(); r++) {
        acc += (std::conj(v(r)) * phase[r] * v(col[r])).real();
    }
    return acc;
}

std::complex<double> PauliMonomial::inner(const Eigen::Ref<const Eigen::VectorXcd> &u,
                                          const Eigen::Ref<const Eigen::VectorXcd> &v) const {
    std::complex<double> acc = 0;
    for (size_t r = 0; r < col.size(); r++) {
        acc += std::conj(u(r)) * phase[r] * v(col[r]);
    }
    return acc;
}

void PauliMonomial::add_to(CMatrix &m, std::complex<double> c) const {
    for (size_t r = 0; r < col.size(); r++) {
        m(r, col[r]) += c * phase[r];
    }
}

std::complex<double> PauliMonomial::trace_with(const CMatrix &m) const {
    std::complex<double> acc = 0;
    for (size_t r = 0; r < col.size(); r++) {
        acc += phase[r] * m(col[r], r);
    }
    return acc;
}

CMatrix pauli_operator(const PauliString &p) {
    const Eigen::Index d = Eigen::Index(1) << p.num_qubits();
    CMatrix m = CMatrix::Zero(d, d);
    PauliMonomial::of(p).add_to(m, 1.0);
    return m;
}

std::vector<PauliString> all_pauli_strings(int n) {
    std::vector<PauliString> out;
    uint64_t total = uint64_t(1) << (2 * n);
    out.reserve(total);
    for (uint64_t k = 0; k < total; k++) {
        out.push_back(PauliString::from_index(k, n));
    }
    return out;
}

}  // namespace incompat
