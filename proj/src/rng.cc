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

#include "incompat/rng.h"

#include <cmath>
#include <numbers>

namespace incompat {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

Rng::Rng(uint64_t seed) : engine_(splitmix64(seed)) {
}

double Rng::uniform() {
    return (double)(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

std::complex<double> Rng::complex_normal() {
    double re = normal();
    double im = normal();
    return {re, im};
}

uint64_t Rng::binomial(uint64_t trials, double p) {
    if (trials == 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return trials;
    }
    std::binomial_distribution<uint64_t> dist(trials, p);
    return dist(engine_);
}

std::vector<uint64_t> Rng::multinomial(uint64_t trials, const std::vector<double> &probs) {
    std::vector<uint64_t> counts(probs.size(), 0);
    double remaining_mass = 1.0;
    uint64_t remaining = trials;
    for (size_t k = 0; k + 1 < probs.size() && remaining > 0; k++) {
        double p = remaining_mass > 0 ? probs[k] / remaining_mass : 0.0;
        counts[k] = binomial(remaining, std::min(1.0, std::max(0.0, p)));
        remaining -= counts[k];
        remaining_mass -= probs[k];
    }
    if (!probs.empty()) {
        counts.back() += remaining;
    }
    return counts;
}

size_t Rng::categorical(const std::vector<double> &probs) {
    double u = uniform();
    double acc = 0;
    for (size_t k = 0; k < probs.size(); k++) {
        acc += probs[k];
        if (u < acc) {
            return k;
        }
    }
    for (size_t k = probs.size(); k-- > 0;) {
        if (probs[k] > 0) {
            return k;
        }
    }
    return 0;
}

}  // namespace incompat
