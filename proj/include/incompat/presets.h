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

#ifndef INCOMPAT_PRESETS_H
#define INCOMPAT_PRESETS_H

#include <string>
#include <utility>
#include <vector>

#include "incompat/operators.h"

namespace incompat {

/// sum_t c_t P_t for Pauli labels such as "XX" or "IZ".
CMatrix pauli_sum(const std::vector<std::pair<std::string, double>> &terms);

/// (X_1 X_2, (Z_1 + Z_2) / 2).
std::vector<Observable> preset_example1();
/// ((Z_1 + Z_2) / 2, (X_1 X_2 - X_1 Z_2 + I_1 Y_2) / 3).
std::vector<Observable> preset_example2();
/// ((1 - p) Z_1 Z_2 + (p / 2)(Z_1 + Z_2), X_1 X_2). Throws InvalidArgument for p outside [0, 1].
std::vector<Observable> preset_fig3(double p);

/// "example1", "example2" or "fig3:p=<x>". Throws InvalidArgument for unknown names.
std::vector<Observable> resolve_preset(const std::string &name);

}  // namespace incompat

#endif
