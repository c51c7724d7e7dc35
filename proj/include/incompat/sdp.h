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

#ifndef INCOMPAT_SDP_H
#define INCOMPAT_SDP_H

#include <iosfwd>
#include <vector>

#include "incompat/linalg.h"
#include "incompat/operators.h"

namespace incompat {

struct SdpConstraint {
    CMatrix a;
    double b = 0;
};

/// Maximize C . X subject to A_k . X = b_k and X >= 0, with A . X = sum_ij a_ij x_ij = tr(A^T X).
struct SdpProblem {
    int n = 0;
    int psd_dim = 0;
    CMatrix objective;
    std::vector<SdpConstraint> constraints;
};

/// C . X = sum_ij c_ij x_ij.
std::complex<double> bullet(const CMatrix &c, const CMatrix &x);

/// The alpha_max problem over Choi matrices J. The objective C^T = S / tr(S^2) with
/// S = sum_i O_i (x) Z_i reads off alpha from any J of the form built by build_choi. Constraints, in
/// order: tr J = 4^n; tr(J (I (x) M_j)) = 0 and tr(J (M_k (x) I)) = 0 for non-identity Pauli
/// strings; tr(J (Obar (x) Z_i)) = 0 for a Gram-Schmidt basis Obar of the orthogonal complement of
/// O_i among Hermitian operators; and tr(J (a O_i (x) Z_i - b O_{i+1} (x) Z_{i+1})) = 0 with
/// (a, b) proportional to (tr O_{i+1}^2, tr O_i^2), which forces a common alpha. Each constraint is
/// stored as A = M^T so that A . J = tr(M J).
///
/// Throws DegenerateBasis when some O_i has Frobenius norm below 1e-12.
SdpProblem export_sdp(const std::vector<Observable> &observables);

/// Plain-text form:
///
///     sdp n=<n> dim=<4^n> constraints=<m>
///     C
///     <dim lines of dim "re im" pairs>
///     A <k> b=<rhs>
///     <dim lines of dim "re im" pairs>
///     ...
///
/// with k counting from 1. Numbers use the shortest decimal form that round-trips.
void write_sdp(std::ostream &out, const SdpProblem &problem);
/// Throws ParseError with the offending line number.
SdpProblem read_sdp(std::istream &in);

}  // namespace incompat

#endif
