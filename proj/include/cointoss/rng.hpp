// Copyright 2026 The cointoss Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace cointoss {

/// SplitMix64 finalizer. Used to derive independent child seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seedable, splittable deterministic random source.
///
/// The seed fully determines the stream. `split(i)` derives the generator for
/// child stream `i` without consuming anything from the parent, so per-trial
/// generators are independent of the order in which trials are executed.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(mix64(seed)) {
    }

    std::uint64_t seed() const noexcept {
        return seed_;
    }

    Rng split(std::uint64_t stream) const {
        return Rng(mix64(seed_ ^ mix64(stream + 0x632BE59BD9B4E019ULL)));
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    std::uint64_t below(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

    double normal() {
        return std::normal_distribution<double>(0.0, 1.0)(engine_);
    }

    // UniformRandomBitGenerator interface.
    static constexpr result_type min() {
        return std::mt19937_64::min();
    }
    static constexpr result_type max() {
        return std::mt19937_64::max();
    }
    result_type operator()() {
        return engine_();
    }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace cointoss
