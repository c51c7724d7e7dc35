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

#include "incompat/sdp.h"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "incompat/choi.h"
#include "incompat/error.h"
#include "incompat/pauli.h"
#include "incompat/text.h"

namespace incompat {

namespace {

/// <a, b> = tr(a^dagger b).
std::complex<double> hs(const CMatrix &a, const CMatrix &b) {
    return (a.conjugate().cwiseProduct(b)).sum();
}

/// Orthonormal basis of the complement of o among Hermitian operators, from Gram-Schmidt over
/// o followed by the Pauli strings.
std::vector<CMatrix> complement_basis(const CMatrix &o, int n) {
    double norm = o.norm();
    if (!(norm >= 1e-12)) {
        throw Error(ErrorKind::DegenerateBasis, "observable has vanishing Frobenius norm");
    }
    std::vector<CMatrix> basis = {o / norm};
    for (const PauliString &p : all_pauli_strings(n)) {
        CMatrix v = pauli_operator(p);
        for (int pass = 0; pass < 2; pass++) {
            for (const CMatrix &b : basis) {
                v -= hs(b, v) * b;
            }
        }
        double r = v.norm();
        if (r > 1e-8) {
            basis.push_back(v / r);
        }
    }
    size_t expected = (size_t(1) << (2 * n));
    if (basis.size() != expected) {
        throw Error(ErrorKind::DegenerateBasis, "Gram-Schmidt did not span the operator space");
    }
    basis.erase(basis.begin());
    return basis;
}

void add_constraint(SdpProblem &p, const CMatrix &m, double b) {
    p.constraints.push_back({m.transpose(), b});
}

void write_block(std::ostream &out, const CMatrix &m) {
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            if (c) {
                out << ' ';
            }
            out << format_double(m(r, c).real()) << ' ' << format_double(m(r, c).imag());
        }
        out << '\n';
    }
}

[[noreturn]] void parse_fail(int line, const std::string &what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

struct LineReader {
    std::istream &in;
    int line = 0;

    std::string next() {
        std::string s;
        if (!std::getline(in, s)) {
            parse_fail(line + 1, "unexpected end of input");
        }
        line++;
        return s;
    }
};

CMatrix read_block(LineReader &r, int dim) {
    CMatrix m(dim, dim);
    for (int row = 0; row < dim; row++) {
        std::string s = r.next();
        auto fields = split_fields(s);
        if ((int)fields.size() != 2 * dim) {
            parse_fail(r.line, "expected " + std::to_string(2 * dim) + " numbers");
        }
        for (int c = 0; c < dim; c++) {
            double re;
            double im;
            if (!parse_double(fields[2 * c], re) || !parse_double(fields[2 * c + 1], im)) {
                parse_fail(r.line, "bad number");
            }
            m(row, c) = {re, im};
        }
    }
    return m;
}

int parse_int_field(const LineReader &r, std::string_view field, std::string_view key) {
    std::string_view v;
    if (!key_value(field, key, v)) {
        parse_fail(r.line, "expected " + std::string(key) + "=");
    }
    double x;
    if (!parse_double(v, x) || x != (double)(long long)x || x < 0) {
        parse_fail(r.line, "bad integer for " + std::string(key));
    }
    return (int)x;
}

}  // namespace

std::complex<double> bullet(const CMatrix &c, const CMatrix &x) {
    return c.cwiseProduct(x).sum();
}

SdpProblem export_sdp(const std::vector<Observable> &observables) {
    if (observables.size() < 2) {
        throw Error(ErrorKind::InvalidObservable, "need at least two observables");
    }
    const int n = observables[0].num_qubits();
    for (const auto &o : observables) {
        if (o.num_qubits() != n) {
            throw Error(ErrorKind::DimensionMismatch, "observables act on different qubit counts");
        }
    }
    if ((int)observables.size() > n) {
        throw Error(ErrorKind::InvalidObservable, "more observables than qubits");
    }
    const Eigen::Index d = Eigen::Index(1) << n;
    const CMatrix id = CMatrix::Identity(d, d);
    std::vector<CMatrix> z;
    for (size_t i = 0; i < observables.size(); i++) {
        z.push_back(pauli_operator(PauliString::z_on((int)i, n)));
    }
    std::vector<std::vector<CMatrix>> complements;
    for (const auto &o : observables) {
        complements.push_back(complement_basis(o.matrix(), n));
    }

    SdpProblem p;
    p.n = n;
    p.psd_dim = (int)(d * d);
    CMatrix s = observable_coupling(observables);
    p.objective = (s / (s * s).trace().real()).transpose();

    add_constraint(p, CMatrix::Identity(d * d, d * d), (double)(d * d));
    std::vector<PauliString> paulis = all_pauli_strings(n);
    for (size_t j = 1; j < paulis.size(); j++) {
        add_constraint(p, kron(id, pauli_operator(paulis[j])), 0);
    }
    for (size_t k = 1; k < paulis.size(); k++) {
        add_constraint(p, kron(pauli_operator(paulis[k]), id), 0);
    }
    for (size_t i = 0; i < observables.size(); i++) {
        for (const CMatrix &b : complements[i]) {
            add_constraint(p, kron(b, z[i]), 0);
        }
    }
    for (size_t i = 0; i + 1 < observables.size(); i++) {
        double t1 = (observables[i].matrix() * observables[i].matrix()).trace().real();
        double t2 = (observables[i + 1].matrix() * observables[i + 1].matrix()).trace().real();
        double a = t2 / (t1 + t2);
        double b = t1 / (t1 + t2);
        add_constraint(p, a * kron(observables[i].matrix(), z[i]) - b * kron(observables[i + 1].matrix(), z[i + 1]), 0);
    }
    return p;
}

void write_sdp(std::ostream &out, const SdpProblem &problem) {
    out << "sdp n=" << problem.n << " dim=" << problem.psd_dim << " constraints=" << problem.constraints.size() << '\n';
    out << "C\n";
    write_block(out, problem.objective);
    for (size_t k = 0; k < problem.constraints.size(); k++) {
        out << "A " << (k + 1) << " b=" << format_double(problem.constraints[k].b) << '\n';
        write_block(out, problem.constraints[k].a);
    }
}

SdpProblem read_sdp(std::istream &in) {
    LineReader r{in};
    std::string header = r.next();
    auto fields = split_fields(header);
    if (fields.size() != 4 || fields[0] != "sdp") {
        parse_fail(r.line, "expected 'sdp n=<n> dim=<dim> constraints=<m>'");
    }
    SdpProblem p;
    p.n = parse_int_field(r, fields[1], "n");
    p.psd_dim = parse_int_field(r, fields[2], "dim");
    int m = parse_int_field(r, fields[3], "constraints");
    if (p.n < 1 || p.n > 8 || p.psd_dim != (1 << (2 * p.n))) {
        parse_fail(r.line, "dim must equal 4^n");
    }
    if (r.next() != "C") {
        parse_fail(r.line, "expected 'C'");
    }
    p.objective = read_block(r, p.psd_dim);
    for (int k = 1; k <= m; k++) {
        std::string s = r.next();
        auto f = split_fields(s);
        std::string_view v;
        double b;
        if (f.size() != 3 || f[0] != "A" || f[1] != std::to_string(k) || !key_value(f[2], "b", v) || !parse_double(v, b)) {
            parse_fail(r.line, "expected 'A " + std::to_string(k) + " b=<rhs>'");
        }
        SdpConstraint c;
        c.b = b;
        c.a = read_block(r, p.psd_dim);
        p.constraints.push_back(std::move(c));
    }
    return p;
}

}  // namespace incompat
