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

#include "incompat/observable_io.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "incompat/error.h"
#include "incompat/text.h"

namespace incompat {

namespace {

[[noreturn]] void parse_fail(int line, const std::string &what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

bool content_line(std::istream &in, std::string &s, int &line) {
    while (std::getline(in, s)) {
        line++;
        auto fields = split_fields(s);
        if (!fields.empty() && fields[0][0] != '#') {
            return true;
        }
    }
    return false;
}

}  // namespace

std::string format_complex(std::complex<double> z) {
    std::string im = format_double(std::abs(z.imag()));
    return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

bool parse_complex(std::string_view text, std::complex<double> &out) {
    if (text.empty()) {
        return false;
    }
    if (text.back() != 'i') {
        double re;
        if (!parse_double(text, re)) {
            return false;
        }
        out = {re, 0.0};
        return true;
    }
    text.remove_suffix(1);
    // The imaginary sign is the last '+' or '-' not opening the string or an exponent.
    size_t split = std::string_view::npos;
    for (size_t k = text.size(); k-- > 1;) {
        char c = text[k];
        char prev = text[k - 1];
        if ((c == '+' || c == '-') && prev != 'e' && prev != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        return false;
    }
    double re;
    double im;
    std::string_view im_text = text.substr(split + 1);
    if (im_text.empty() || im_text[0] == '+' || im_text[0] == '-') {
        return false;
    }
    if (!parse_double(text.substr(0, split), re) || !parse_double(im_text, im)) {
        return false;
    }
    out = {re, text[split] == '-' ? -im : im};
    return true;
}

void write_matrix(std::ostream &out, const CMatrix &m) {
    int n = 0;
    while ((Eigen::Index(1) << n) < m.rows()) {
        n++;
    }
    out << "obs n=" << n << '\n';
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            out << (c ? " " : "") << format_complex(m(r, c));
        }
        out << '\n';
    }
}

void write_observable(std::ostream &out, const Observable &o) {
    write_matrix(out, o.matrix());
}

CMatrix read_matrix(std::istream &in) {
    int line = 0;
    std::string s;
    if (!content_line(in, s, line)) {
        parse_fail(line + 1, "missing 'obs n=<n>' header");
    }
    auto header = split_fields(s);
    std::string_view v;
    double nd;
    if (header.size() != 2 || header[0] != "obs" || !key_value(header[1], "n", v) || !parse_double(v, nd) ||
        nd != std::floor(nd) || nd < 1 || nd > 8) {
        parse_fail(line, "expected 'obs n=<n>' with 1 <= n <= 8");
    }
    const Eigen::Index d = Eigen::Index(1) << (int)nd;
    CMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; r++) {
        if (!content_line(in, s, line)) {
            parse_fail(line + 1, "expected " + std::to_string(d) + " matrix rows");
        }
        auto fields = split_fields(s);
        if ((Eigen::Index)fields.size() != d) {
            parse_fail(line, "expected " + std::to_string(d) + " entries, found " + std::to_string(fields.size()));
        }
        for (Eigen::Index c = 0; c < d; c++) {
            std::complex<double> z;
            if (!parse_complex(fields[c], z)) {
                parse_fail(line, "bad entry '" + std::string(fields[c]) + "'");
            }
            m(r, c) = z;
        }
    }
    if (content_line(in, s, line)) {
        parse_fail(line, "unexpected content after the matrix");
    }
    return m;
}

Observable read_observable(std::istream &in) {
    CMatrix m = read_matrix(in);
    return Observable(m);
}

Observable load_observable_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    }
    return read_observable(in);
}

}  // namespace incompat
