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
 * Chromosome layout and decoding into feature-map circuit descriptions.
 *
 * Bit layout, in order:
 *
 *     [feature mask | N rotation flags | 2 axis bits | C(N,2) entangler bits | 2 repetition bits]
 *
 * Multi-bit fields are read most-significant bit first.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsvmf/rng.hpp"

namespace qsvmf {

enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_name(Axis axis);

std::size_t chromosome_length(std::size_t n_features, std::size_t n_qubits);

/// Offsets of each field inside a chromosome.
struct ChromosomeLayout {
    std::size_t n_features;
    std::size_t n_qubits;

    [[nodiscard]] std::size_t n_pairs() const {
        return n_qubits * (n_qubits - 1) / 2;
    }
    [[nodiscard]] std::size_t rotation_offset() const { return n_features; }
    [[nodiscard]] std::size_t axis_offset() const {
        return n_features + n_qubits;
    }
    [[nodiscard]] std::size_t entangler_offset() const {
        return axis_offset() + 2;
    }
    [[nodiscard]] std::size_t repetition_offset() const {
        return entangler_offset() + n_pairs();
    }
    [[nodiscard]] std::size_t length() const {
        return repetition_offset() + 2;
    }
};

struct Chromosome {
    std::vector<std::uint8_t> bits;
    std::size_t n_features = 0;
    std::size_t n_qubits = 0;

    [[nodiscard]] ChromosomeLayout layout() const {
        return {n_features, n_qubits};
    }
    /// 0/1 characters in layout order.
    [[nodiscard]] std::string to_string() const;

    /// Throws std::invalid_argument naming the expected length on mismatch.
    static Chromosome parse(std::string_view text, std::size_t n_features,
                            std::size_t n_qubits);

    friend bool operator==(const Chromosome &, const Chromosome &) = default;
};

struct CircuitSpec {
    /// Ascending feature indices chosen by the mask.
    std::vector<std::size_t> selected_features;
    /// Feature index feeding each qubit.
    std::vector<std::size_t> qubit_feature;
    std::vector<bool> rotation_flags;
    Axis axis = Axis::I;
    /// Subset of the lexicographic pairs (0,1), (0,2), ..., (N-2,N-1).
    std::vector<std::pair<std::size_t, std::size_t>> entangler_pairs;
    int repetitions = 1;

    [[nodiscard]] std::size_t n_qubits() const { return qubit_feature.size(); }
};

struct GateCounts {
    long local = 0;
    long cnot = 0;
};

/// Feature mask with the all-zero case forced to select feature 0.
std::vector<std::size_t> selected_features(const Chromosome &chromosome);

/**
 * Seed for the random feature-to-qubit assignment: the run seed mixed with
 * a hash of the chromosome after the empty-mask rule is applied, so two
 * chromosomes selecting the same features decode identically.
 */
std::uint64_t assignment_seed(const Chromosome &chromosome,
                              std::uint64_t run_seed);

/**
 * Decode a chromosome. With as many selected features as qubits, qubit j
 * reads the j-th selected feature. With more, N distinct features are
 * sampled (kept in ascending order). With fewer, the selected features are
 * cycled to fill the remaining qubits and that fill is shuffled.
 */
CircuitSpec decode(const Chromosome &chromosome, std::uint64_t sub_seed);

/// Per repetition: N Hadamards, one rotation per flagged qubit unless the
/// axis is I, and per entangler two CNOTs plus one Z rotation.
GateCounts gate_counts(const CircuitSpec &spec);

Chromosome random_chromosome(std::size_t n_features, std::size_t n_qubits,
                             Rng &rng);

} // namespace qsvmf
