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

#ifndef INCOMPAT_MAJORIZATION_H
#define INCOMPAT_MAJORIZATION_H

#include "incompat/linalg.h"
#include "incompat/operators.h"

namespace incompat {

/// Largest alpha with z > alpha c in the majorization order, where z and c are descending spectra:
/// the minimum over prefixes with positive c-sum of (sum z) / (sum c). Returns +inf when no prefix
/// constrains alpha.
double majorization_limit(const RVector &z, const RVector &c);

/// Upper bound on alpha from x Z_1 + y Z_2 > alpha (x O_1 + y O_2) over `directions` evenly spaced
/// angles (x, y) = (cos t, sin t) in [0, 2 pi), clamped to 1. Throws DimensionMismatch when the
/// observables act on different spaces, InvalidArgument when directions < 4.
double majorization_bound(const Observable &o1, const Observable &o2, int directions = 360);

}  // namespace incompat

#endif
