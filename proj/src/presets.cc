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

#include "incompat/presets.h"

#include "incompat/error.h"
#include "incompat/pauli.h"
#include "incompat/text.h"

namespace incompat {

CMatrix pauli_sum(const std::vector<std::pair<std::string, double>> &terms) {
    if (terms.empty()) {
        throw Error(ErrorKind::InvalidArgument, "empty Pauli sum");
    }
    CMatrix out;
    for (const auto &[label, c] : terms) {
        PauliString p = PauliString::from_str(label);
        if (out.size() == 0) {
            Eigen::Index d = Eigen::Index(1) << p.num_qubits();
            out = CMatrix::Zero(d, d);
        }
        PauliMonomial::of(p).add_to(out, c);
    }
    return out;
}

std::vector<Observable> preset_example1() {
    return {Observable(pauli_sum({{"XX", 1}})), Observable(pauli_sum({{"ZI", 0.5}, {"IZ", 0.5}}))};
}

std::vector<Observable> preset_example2() {
    return {Observable(pauli_sum({{"ZI", 0.5}, {"IZ", 0.5}})),
            Observable(pauli_sum({{"XX", 1.0 / 3}, {"XZ", -1.0 / 3}, {"IY", 1.0 / 3}}))};
}

std::vector<Observable> preset_fig3(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw Error(ErrorKind::InvalidArgument, "p must lie in [0, 1]");
    }
    return {Observable(pauli_sum({{"ZZ", 1 - p}, {"ZI", p / 2}, {"IZ", p / 2}})), Observable(pauli_sum({{"XX", 1}}))};
}

std::vector<Observable> resolve_preset(const std::string &name) {
    if (name == "example1") {
        return preset_example1();
    }
    if (name == "example2") {
        return preset_example2();
    }
    const std::string prefix = "fig3:p=";
    double p;
    if (name.rfind(prefix, 0) == 0 && parse_double(std::string_view(name).substr(prefix.size()), p)) {
        return preset_fig3(p);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown preset '" + name + "'");
}

}  // namespace incompat
