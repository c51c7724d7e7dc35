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

#ifndef INCOMPAT_OBSERVABLE_IO_H
#define INCOMPAT_OBSERVABLE_IO_H

#include <iosfwd>
#include <string>

#include "incompat/operators.h"

namespace incompat {

/// Operator text format: a header line `obs n=<n>` followed by 2^n rows of 2^n entries written as
/// `<re><+|-><|im|>i`, for example `0.5+0i` or `-1-0.25i`. Numbers use the shortest decimal
/// form that round-trips, so write followed by read is exact. Blank lines and lines starting with
/// '#' are skipped.
void write_matrix(std::ostream &out, const CMatrix &m);
void write_observable(std::ostream &out, const Observable &o);

/// Throws ParseError with the line number.
CMatrix read_matrix(std::istream &in);
/// Throws ParseError, or InvalidObservable naming the violated invariant.
Observable read_observable(std::istream &in);
/// Throws ParseError when the file cannot be opened.
Observable load_observable_file(const std::string &path);

/// One complex entry in the format above.
std::string format_complex(std::complex<double> z);
bool parse_complex(std::string_view text, std::complex<double> &out);

}  // namespace incompat

#endif
