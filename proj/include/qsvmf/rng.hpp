// Copyright 2026 The QSVMF Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Seeded random source and stable hashing.
 *
 * The standard library leaves the output of its distributions
 * implementation-defined, so bounded integers, uniform reals and shuffles
 * are derived here directly from the raw mt19937_64 stream. Runs are
 * therefore reproducible bit-for-bit across standard library vendors.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace qsvmf {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next() >> 11U) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t below(std::size_t n);

    bool bernoulli(double p) { return uniform() < p; }

    /// Fisher-Yates shuffle.
    template <class T> void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = below(i);
            std::swap(items[i - 1], items[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Order-dependent combination of two seeds.
std::uint64_t combine_seeds(std::uint64_t a, std::uint64_t b);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

} // namespace qsvmf
