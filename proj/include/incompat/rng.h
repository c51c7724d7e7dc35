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

#ifndef INCOMPAT_RNG_H
#define INCOMPAT_RNG_H

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace incompat {

/// SplitMix64 finalizer. Used to decorrelate user seeds before they reach the engine.
uint64_t splitmix64(uint64_t x);

/// Independent stream seed for (seed, stream). Trials and dataset draws are keyed this way so that
/// results do not depend on evaluation order.
uint64_t derive_seed(uint64_t seed, uint64_t stream);

/// mt19937_64 seeded through splitmix64. Normal and uniform draws are computed here rather than by
/// <random> distributions so that sequences are identical across standard libraries.
class Rng {
   public:
    explicit Rng(uint64_t seed);

    uint64_t next_u64() {
        return engine_();
    }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double normal();
    std::complex<double> complex_normal();
    uint64_t binomial(uint64_t trials, double p);
    /// Counts for `trials` categorical draws from `probs` (must sum to 1 up to rounding).
    std::vector<uint64_t> multinomial(uint64_t trials, const std::vector<double> &probs);
    /// Single categorical draw.
    size_t categorical(const std::vector<double> &probs);

    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

}  // namespace incompat

#endif
