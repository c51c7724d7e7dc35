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

#ifndef INCOMPAT_CLI_H
#define INCOMPAT_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace incompat {

/// Command-line entry point. Commands: alpha-solve, train, variance, sweep, majorization,
/// export-sdp. Returns 0 on success, 2 on a usage error and 1 when the library raises an error.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Parses "start:stop:step" (inclusive of stop up to rounding) or a comma-separated list.
/// Throws InvalidArgument.
std::vector<double> parse_p_values(const std::string &spec);

}  // namespace incompat

#endif
