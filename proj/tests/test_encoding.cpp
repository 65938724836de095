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
#include <algorithm>
#include <map>
#include <set>
#include <string>

#include <doctest.h>

#include "qsvmf/encoding.hpp"
#include "qsvmf/rng.hpp"

using namespace qsvmf;

namespace {

Chromosome from_bits(std::initializer_list<int> bits, std::size_t nf, std::size_t nq) {
    Chromosome c;
    c.n_features = nf;
    c.n_qubits = nq;
    for (int b : bits) {
        c.bits.push_back(static_cast<std::uint8_t>(b));
    }
    return c;
}

// Count gates by emitting the circuit gate by gate.
GateCounts walk_gates(const CircuitSpec &spec) {
    GateCounts g;
    for (int r = 0; r < spec.repetitions; ++r) {
        for (std::size_t q = 0; q < spec.n_qubits(); ++q) {
            ++g.local; // H
        }
        for (std::size_t q = 0; q < spec.n_qubits(); ++q) {
            if (spec.rotation_flags[q] && spec.axis != Axis::I) {
                ++g.local;
            }
        }
        for (std::size_t p = 0; p < spec.entangler_pairs.size(); ++p) {
            ++g.cnot;
            ++g.local; // Rz on the target
            ++g.cnot;
        }
    }
    return g;
}

const std::initializer_list<int> kExampleBits = {1, 0, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 0};

} // namespace

TEST_CASE("chromosome lengths") {
    CHECK(chromosome_length(4, 3) == 14);
    CHECK(chromosome_length(30, 5) == 49);
    CHECK(chromosome_length(30, 10) == 89);
    CHECK(chromosome_length(30, 1) == 35);
    CHECK_THROWS(chromosome_length(0, 3));
    CHECK_THROWS(chromosome_length(3, 0));
    const ChromosomeLayout l{30, 4};
    CHECK(l.rotation_offset() == 30);
    CHECK(l.axis_offset() == 34);
    CHECK(l.entangler_offset() == 36);
    CHECK(l.repetition_offset() == 42);
    CHECK(l.length() == 44);
}

TEST_CASE("4-feature 3-qubit example decodes") {
    const auto c = from_bits(kExampleBits, 4, 3);
    CHECK(selected_features(c) == std::vector<std::size_t>{0, 2, 3});
    const auto spec = decode(c, 123);
    CHECK(spec.selected_features == std::vector<std::size_t>{0, 2, 3});
    CHECK(spec.qubit_feature == std::vector<std::size_t>{0, 2, 3});
    CHECK(spec.rotation_flags == std::vector<bool>{true, true, true});
    CHECK(spec.axis == Axis::Y);
    CHECK(axis_name(spec.axis) == 'Y');
    using P = std::pair<std::size_t, std::size_t>;
    CHECK(spec.entangler_pairs == std::vector<P>{{0, 2}, {1, 2}});
    CHECK(spec.repetitions == 3);
    CHECK(c.to_string() == "10111111001110");
}

TEST_CASE("all-zero chromosome") {
    Chromosome c;
    c.n_features = 4;
    c.n_qubits = 3;
    c.bits.assign(14, 0);
    const auto spec = decode(c, 5);
    CHECK(spec.selected_features == std::vector<std::size_t>{0});
    CHECK(spec.qubit_feature == std::vector<std::size_t>{0, 0, 0});
    CHECK(std::none_of(spec.rotation_flags.begin(), spec.rotation_flags.end(),
                       [](bool b) { return b; }));
    CHECK(spec.axis == Axis::I);
    CHECK(spec.entangler_pairs.empty());
    CHECK(spec.repetitions == 1);
    const auto g = gate_counts(spec);
    CHECK(g.local == 3);
    CHECK(g.cnot == 0);
}

TEST_CASE("fewer features than qubits") {
    // features 1 and 3 of 5 on 3 qubits
    auto c = from_bits({0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 0, 1}, 5, 3);
    REQUIRE(c.bits.size() == chromosome_length(5, 3));
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 424242ULL}) {
        const auto a = decode(c, seed);
        const auto b = decode(c, seed);
        CHECK(a.qubit_feature == b.qubit_feature);
        REQUIRE(a.qubit_feature.size() == 3);
        CHECK(a.qubit_feature[0] == 1);
        CHECK(a.qubit_feature[1] == 3);
        CHECK(a.qubit_feature[2] == 1);
    }
    // 1 feature on 4 qubits: every qubit reads it
    Chromosome one;
    one.n_features = 3;
    one.n_qubits = 4;
    one.bits.assign(chromosome_length(3, 4), 0);
    one.bits[2] = 1;
    CHECK(decode(one, 8).qubit_feature == std::vector<std::size_t>{2, 2, 2, 2});

    // 2 features on 5 qubits: the fill is shuffled, multiset fixed
    Chromosome two;
    two.n_features = 4;
    two.n_qubits = 5;
    two.bits.assign(chromosome_length(4, 5), 0);
    two.bits[0] = 1;
    two.bits[3] = 1;
    std::set<std::vector<std::size_t>> seen;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto q = decode(two, seed).qubit_feature;
        CHECK(q[0] == 0);
        CHECK(q[1] == 3);
        CHECK(std::count(q.begin(), q.end(), 0) == 3);
        CHECK(std::count(q.begin(), q.end(), 3) == 2);
        seen.insert(q);
    }
    CHECK(seen.size() > 1);
}

TEST_CASE("more features than qubits") {
    Chromosome c;
    c.n_features = 10;
    c.n_qubits = 3;
    c.bits.assign(chromosome_length(10, 3), 0);
    for (std::size_t f : {1, 2, 4, 6, 7, 9}) {
        c.bits[f] = 1;
    }
    std::map<std::size_t, int> hits;
    for (std::uint64_t seed = 0; seed < 600; ++seed) {
        const auto spec = decode(c, seed);
        REQUIRE(spec.qubit_feature.size() == 3);
        CHECK(std::is_sorted(spec.qubit_feature.begin(), spec.qubit_feature.end()));
        CHECK(std::adjacent_find(spec.qubit_feature.begin(), spec.qubit_feature.end()) ==
              spec.qubit_feature.end());
        for (auto f : spec.qubit_feature) {
            CHECK(std::find(spec.selected_features.begin(), spec.selected_features.end(), f) !=
                  spec.selected_features.end());
            ++hits[f];
        }
        CHECK(decode(c, seed).qubit_feature == spec.qubit_feature);
    }
    // each of the 6 selected features lands on a qubit about half the time
    CHECK(hits.size() == 6);
    for (const auto &[f, n] : hits) {
        CHECK(n > 220);
        CHECK(n < 380);
    }
}

TEST_CASE("assignment seed ignores nothing but the empty-mask rule") {
    Chromosome zero;
    zero.n_features = 4;
    zero.n_qubits = 3;
    zero.bits.assign(14, 0);
    Chromosome forced = zero;
    forced.bits[0] = 1;
    CHECK(assignment_seed(zero, 11) == assignment_seed(forced, 11));
    CHECK(assignment_seed(forced, 11) != assignment_seed(forced, 12));
    Chromosome other = forced;
    other.bits[13] = 1;
    CHECK(assignment_seed(other, 11) != assignment_seed(forced, 11));
}

TEST_CASE("gate count examples") {
    auto spec = decode(from_bits(kExampleBits, 4, 3), 0);
    spec.repetitions = 1;
    CHECK(gate_counts(spec).local == 8);
    CHECK(gate_counts(spec).cnot == 4);

    CircuitSpec bare;
    bare.selected_features = {0, 1};
    bare.qubit_feature = {0, 1};
    bare.rotation_flags = {false, false};
    bare.axis = Axis::Z;
    bare.repetitions = 1;
    CHECK(gate_counts(bare).local == 2);
    CHECK(gate_counts(bare).cnot == 0);

    CircuitSpec ident;
    ident.selected_features = {0, 1, 2};
    ident.qubit_feature = {0, 1, 2};
    ident.rotation_flags = {true, true, true};
    ident.axis = Axis::I;
    ident.entangler_pairs = {{0, 1}};
    ident.repetitions = 2;
    CHECK(gate_counts(ident).local == 8);
    CHECK(gate_counts(ident).cnot == 4);
}

TEST_CASE("gate counts agree with a gate walk for random chromosomes") {
    Rng rng(2024);
    for (int i = 0; i < 500; ++i) {
        const std::size_t nq = 1 + rng.below(6);
        const std::size_t nf = 1 + rng.below(12);
        const auto c = random_chromosome(nf, nq, rng);
        const auto spec = decode(c, assignment_seed(c, 1));
        const auto g = gate_counts(spec);
        const auto w = walk_gates(spec);
        CHECK(g.local == w.local);
        CHECK(g.cnot == w.cnot);
        CHECK(g.cnot == 2L * spec.repetitions * static_cast<long>(spec.entangler_pairs.size()));
        CHECK(g.cnot % 2 == 0);
        CHECK(spec.repetitions >= 1);
        CHECK(spec.repetitions <= 4);

        // flipping mask bits (keeping one set) leaves cnot alone
        auto m = c;
        for (std::size_t b = 0; b < nf; ++b) {
            m.bits[b] = static_cast<std::uint8_t>(rng.next() >> 63U);
        }
        m.bits[rng.below(nf)] = 1;
        CHECK(gate_counts(decode(m, 3)).cnot == g.cnot);
    }
}

TEST_CASE("random chromosomes") {
    Rng a(17);
    Rng b(17);
    const auto x = random_chromosome(30, 4, a);
    CHECK(x.bits.size() == chromosome_length(30, 4));
    CHECK(x == random_chromosome(30, 4, b));
    CHECK(std::all_of(x.bits.begin(), x.bits.end(), [](auto v) { return v <= 1; }));

    Rng r(5);
    const std::size_t len = chromosome_length(6, 3);
    std::vector<int> ones(len, 0);
    const int samples = 10000;
    for (int s = 0; s < samples; ++s) {
        const auto c = random_chromosome(6, 3, r);
        for (std::size_t i = 0; i < len; ++i) {
            ones[i] += c.bits[i];
        }
    }
    for (int count : ones) {
        const double freq = static_cast<double>(count) / samples;
        CHECK(freq >= 0.45);
        CHECK(freq <= 0.55);
    }
}

TEST_CASE("parsing chromosome strings") {
    const auto c = Chromosome::parse("10111111001110", 4, 3);
    CHECK(c == from_bits(kExampleBits, 4, 3));
    CHECK(Chromosome::parse(c.to_string(), 4, 3) == c);
    CHECK_THROWS_WITH(Chromosome::parse("1011", 4, 3), doctest::Contains("14"));
    CHECK_THROWS(Chromosome::parse("1011111001111x", 4, 3));
}
