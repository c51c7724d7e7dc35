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

#include <algorithm>
#include <cmath>

namespace incompat {

template <typename F>
double concave_root(F &&eval, double lo, double hi, double guess, double tol) {
    double a = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; iter++) {
        auto [f, df] = eval(a);
        if (f >= 0) {
            lo = a;
        } else {
            hi = a;
        }
        if (f == 0 || hi - lo <= tol) {
            break;
        }
        // A tangent of a concave function lies above it, so the Newton point is never left of the
        // root. Iterates therefore approach from the infeasible side.
        double next = (df < 0 && std::isfinite(df)) ? a - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (hi - next < 0.5 * tol) {
            next = std::max(0.5 * (lo + hi), hi - 0.5 * tol);
        } else if (next - lo < 0.5 * tol) {
            next = std::min(0.5 * (lo + hi), lo + 0.5 * tol);
        }
        a = next;
    }
    return lo;
}

}  // namespace incompat
