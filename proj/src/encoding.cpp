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
#include "qsvmf/encoding.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>

namespace qsvmf {

char axis_name(Axis axis) {
    switch (axis) {
    case Axis::I:
        return 'I';
    case Axis::X:
        return 'X';
    case Axis::Y:
        return 'Y';
    case Axis::Z:
        return 'Z';
    }
    return '?';
}

std::size_t chromosome_length(std::size_t n_features, std::size_t n_qubits) {
    if (n_features == 0 || n_qubits == 0) {
        throw std::invalid_argument(
            "chromosome_length: need at least one feature and one qubit");
    }
    return ChromosomeLayout{n_features, n_qubits}.length();
}

std::string Chromosome::to_string() const {
    std::string out;
    out.reserve(bits.size());
    for (const auto b : bits) {
        out.push_back(b != 0U ? '1' : '0');
    }
    return out;
}

Chromosome Chromosome::parse(std::string_view text, std::size_t n_features,
                             std::size_t n_qubits) {
    const std::size_t expected = chromosome_length(n_features, n_qubits);
    if (text.size() != expected) {
        throw std::invalid_argument(
            "chromosome has " + std::to_string(text.size()) +
            " bits, expected " + std::to_string(expected) + " for " +
            std::to_string(n_features) + " features and " +
            std::to_string(n_qubits) + " qubits");
    }
    Chromosome c;
    c.n_features = n_features;
    c.n_qubits = n_qubits;
    c.bits.reserve(text.size());
    for (const char ch : text) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument(
                std::string("chromosome contains non-binary character '") +
                ch + "'");
        }
        c.bits.push_back(ch == '1' ? 1U : 0U);
    }
    return c;
}

namespace {

void check_shape(const Chromosome &c) {
    if (c.n_features == 0 || c.n_qubits == 0 ||
        c.bits.size() != chromosome_length(c.n_features, c.n_qubits)) {
        throw std::invalid_argument("malformed chromosome");
    }
}

unsigned two_bit_value(const Chromosome &c, std::size_t offset) {
    return (static_cast<unsigned>(c.bits[offset] != 0U) << 1U) |
           static_cast<unsigned>(c.bits[offset + 1] != 0U);
}

} // namespace

std::vector<std::size_t> selected_features(const Chromosome &chromosome) {
    check_shape(chromosome);
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < chromosome.n_features; ++f) {
        if (chromosome.bits[f] != 0U) {
            out.push_back(f);
        }
    }
    if (out.empty()) {
        out.push_back(0);
    }
    return out;
}

std::uint64_t assignment_seed(const Chromosome &chromosome,
                              std::uint64_t run_seed) {
    std::string canonical = chromosome.to_string();
    if (std::all_of(chromosome.bits.begin(),
                    chromosome.bits.begin() +
                        static_cast<std::ptrdiff_t>(chromosome.n_features),
                    [](std::uint8_t b) { return b == 0U; })) {
        canonical[0] = '1';
    }
    return combine_seeds(run_seed, fnv1a(canonical));
}

CircuitSpec decode(const Chromosome &chromosome, std::uint64_t sub_seed) {
    check_shape(chromosome);
    const auto layout = chromosome.layout();
    const std::size_t n = chromosome.n_qubits;

    CircuitSpec spec;
    spec.selected_features = selected_features(chromosome);

    const auto &sel = spec.selected_features;
    Rng rng(sub_seed);
    if (sel.size() == n) {
        spec.qubit_feature = sel;
    } else if (sel.size() > n) {
        std::vector<std::size_t> pool = sel;
        // Partial Fisher-Yates: the first n slots become a uniform sample.
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i + rng.below(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(n);
        std::sort(pool.begin(), pool.end());
        spec.qubit_feature = std::move(pool);
    } else {
        spec.qubit_feature = sel;
        std::vector<std::size_t> fill;
        for (std::size_t q = sel.size(); q < n; ++q) {
            fill.push_back(sel[q % sel.size()]);
        }
        rng.shuffle(std::span<std::size_t>(fill));
        spec.qubit_feature.insert(spec.qubit_feature.end(), fill.begin(),
                                  fill.end());
    }

    spec.rotation_flags.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        spec.rotation_flags[q] =
            chromosome.bits[layout.rotation_offset() + q] != 0U;
    }
    spec.axis = static_cast<Axis>(two_bit_value(chromosome, layout.axis_offset()));

    std::size_t bit = layout.entangler_offset();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k, ++bit) {
            if (chromosome.bits[bit] != 0U) {
                spec.entangler_pairs.emplace_back(j, k);
            }
        }
    }
    spec.repetitions =
        static_cast<int>(two_bit_value(chromosome, layout.repetition_offset())) + 1;
    return spec;
}

GateCounts gate_counts(const CircuitSpec &spec) {
    const long n = static_cast<long>(spec.n_qubits());
    long rotations = 0;
    if (spec.axis != Axis::I) {
        rotations = static_cast<long>(
            std::count(spec.rotation_flags.begin(), spec.rotation_flags.end(), true));
    }
    const long pairs = static_cast<long>(spec.entangler_pairs.size());
    const long d = spec.repetitions;
    return {d * (n + rotations + pairs), d * 2 * pairs};
}

Chromosome random_chromosome(std::size_t n_features, std::size_t n_qubits,
                             Rng &rng) {
    Chromosome c;
    c.n_features = n_features;
    c.n_qubits = n_qubits;
    c.bits.resize(chromosome_length(n_features, n_qubits));
    for (auto &b : c.bits) {
        b = static_cast<std::uint8_t>(rng.next() >> 63U);
    }
    return c;
}

} // namespace qsvmf
