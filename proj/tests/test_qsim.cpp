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
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "qsvmf/data.hpp"
#include "qsvmf/qsim.hpp"
#include "qsvmf/rng.hpp"

using namespace qsvmf;
namespace or_ = qsvmf::oracle;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

double max_diff(const StateVector &s, const or_::CVector &v) {
    double worst = 0;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        worst = std::max(worst, std::abs(s.amplitude(i) - v(static_cast<Eigen::Index>(i))));
    }
    return worst;
}

or_::CVector basis(std::size_t n, std::size_t index) {
    or_::CVector v = or_::CVector::Zero(Eigen::Index{1} << n);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

CircuitSpec random_spec(std::size_t n, std::size_t p, Rng &rng) {
    CircuitSpec s;
    for (std::size_t q = 0; q < n; ++q) {
        s.qubit_feature.push_back(rng.below(p));
        s.rotation_flags.push_back(rng.bernoulli(0.5));
    }
    s.selected_features = s.qubit_feature;
    s.axis = static_cast<Axis>(rng.below(4));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            if (rng.bernoulli(0.5)) {
                s.entangler_pairs.emplace_back(j, k);
            }
        }
    }
    s.repetitions = 1 + static_cast<int>(rng.below(4));
    return s;
}

CircuitSpec z_circuit() {
    CircuitSpec s;
    s.selected_features = {0};
    s.qubit_feature = {0};
    s.rotation_flags = {true};
    s.axis = Axis::Z;
    s.repetitions = 1;
    return s;
}

} // namespace

TEST_CASE("zero state") {
    const auto one = zero_state(1);
    CHECK(one.dimension() == 2);
    CHECK(one.amplitude(0) == Complex(1, 0));
    CHECK(one.amplitude(1) == Complex(0, 0));
    const auto three = zero_state(3);
    CHECK(three.dimension() == 8);
    CHECK(three.norm_squared() == 1.0);
    CHECK_THROWS(zero_state(17));
    CHECK_THROWS(zero_state(0));
    CHECK_NOTHROW(zero_state(16));
}

TEST_CASE("hadamard") {
    auto s = zero_state(1);
    s.apply_h(0);
    CHECK(std::abs(s.amplitude(0) - kR) < 1e-15);
    CHECK(std::abs(s.amplitude(1) - kR) < 1e-15);
    s.apply_h(0);
    CHECK(std::abs(s.amplitude(0) - 1.0) < 1e-15);
    CHECK(std::abs(s.amplitude(1)) < 1e-15);

    auto two = zero_state(2);
    two.apply_h(1);
    const or_::CVector expect = or_::on_qubit(or_::hadamard(), 1, 2) * basis(2, 0);
    CHECK(max_diff(two, expect) < 1e-15);
    CHECK(std::abs(two.amplitude(2) - kR) < 1e-15);
    CHECK_THROWS_AS(two.apply_h(2), std::out_of_range);
}

TEST_CASE("rotations") {
    const double phi = 0.731;
    auto z = zero_state(1);
    z.apply_rotation(0, Axis::Z, phi);
    CHECK(std::abs(z.amplitude(0) - std::polar(1.0, phi)) < 1e-15);

    auto x = zero_state(1);
    x.apply_rotation(0, Axis::X, phi);
    CHECK(std::abs(x.amplitude(0) - Complex(std::cos(phi), 0)) < 1e-15);
    CHECK(std::abs(x.amplitude(1) - Complex(0, std::sin(phi))) < 1e-15);

    for (auto axis : {Axis::I, Axis::X, Axis::Y, Axis::Z}) {
        auto s = zero_state(2);
        s.apply_h(0);
        s.apply_h(1);
        s.apply_rotation(1, Axis::X, 0.2);
        const auto before = std::vector<Complex>(s.amplitudes().begin(), s.amplitudes().end());
        s.apply_rotation(0, axis, 0.0);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(s.amplitude(i) - before[i]) < 1e-15);
        }
    }

    Rng rng(4);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng.below(3);
        const std::size_t q = rng.below(n);
        const auto axis = static_cast<Axis>(rng.below(4));
        const double angle = (rng.uniform() - 0.5) * 10.0;
        auto s = zero_state(n);
        or_::CVector v = basis(n, 0);
        for (std::size_t h = 0; h < n; ++h) {
            s.apply_h(h);
            v = or_::on_qubit(or_::hadamard(), h, n) * v;
        }
        s.apply_rotation(0, Axis::Y, 0.4);
        v = or_::on_qubit(or_::expm(or_::cd(0, 0.4) * or_::pauli(Axis::Y)), 0, n) * v;
        s.apply_rotation(q, axis, angle);
        if (axis != Axis::I) { // I is a no-op, not the phase exp(i angle)
            v = or_::on_qubit(or_::expm(or_::cd(0, angle) * or_::pauli(axis)), q, n) * v;
        }
        CHECK(max_diff(s, v) < 1e-12);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
    }
}

TEST_CASE("cnot truth table") {
    // qubit 0 is the low bit: |q1 q0>
    const std::size_t map[4] = {0, 3, 2, 1};
    for (std::size_t in = 0; in < 4; ++in) {
        StateVector s(2);
        // prepare |in> with X rotations at pi/2 (= i X)
        if ((in & 1U) != 0) {
            s.apply_rotation(0, Axis::X, std::numbers::pi / 2);
        }
        if ((in & 2U) != 0) {
            s.apply_rotation(1, Axis::X, std::numbers::pi / 2);
        }
        REQUIRE(std::norm(s.amplitude(in)) == doctest::Approx(1.0));
        s.apply_cnot(0, 1);
        CHECK(std::norm(s.amplitude(map[in])) == doctest::Approx(1.0));
        auto e = s;
        e.apply_entangler(0, 1, 0.0);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(e.amplitude(i) - s.amplitude(i)) < 1e-15);
        }
    }
    StateVector s(2);
    CHECK_THROWS(s.apply_cnot(1, 1));
    CHECK_THROWS(s.apply_entangler(1, 1, 0.3));
    CHECK_THROWS(s.apply_cnot(0, 2));
}

TEST_CASE("entangler matches exp(i phi ZZ)") {
    Rng rng(31);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + rng.below(2);
        std::size_t j = rng.below(n);
        std::size_t k = rng.below(n - 1);
        if (k >= j) {
            ++k;
        }
        const double phi = (rng.uniform() - 0.5) * 8.0;
        auto s = zero_state(n);
        or_::CVector v = basis(n, 0);
        for (std::size_t q = 0; q < n; ++q) {
            s.apply_h(q);
            s.apply_rotation(q, Axis::Y, 0.3 * static_cast<double>(q + 1));
            v = or_::on_qubit(or_::hadamard(), q, n) * v;
            v = or_::on_qubit(or_::expm(or_::cd(0, 0.3 * static_cast<double>(q + 1)) *
                                        or_::pauli(Axis::Y)),
                              q, n) *
                v;
        }
        s.apply_entangler(j, k, phi);
        const or_::CMatrix zz =
            or_::on_qubit(or_::pauli(Axis::Z), j, n) * or_::on_qubit(or_::pauli(Axis::Z), k, n);
        v = or_::expm(or_::cd(0, phi) * zz) * v;
        CHECK(max_diff(s, v) < 1e-12);
    }
}

TEST_CASE("feature state examples") {
    const double x = 0.9;
    const std::vector<double> xv{x};
    const auto s = prepare_feature_state(z_circuit(), xv);
    CHECK(std::abs(s.amplitude(0) - std::polar(kR, x)) < 1e-15);
    CHECK(std::abs(s.amplitude(1) - std::polar(kR, -x)) < 1e-15);

    CircuitSpec plain;
    plain.selected_features = {0, 1};
    plain.qubit_feature = {0, 1};
    plain.rotation_flags = {false, false};
    plain.axis = Axis::X;
    plain.repetitions = 1;
    const std::vector<double> v{0.3, 2.0};
    const auto u = prepare_feature_state(plain, v);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(u.amplitude(i) - 0.5) < 1e-15);
    }

    const std::vector<double> bad{std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS(prepare_feature_state(z_circuit(), bad));
    const std::vector<double> empty;
    CHECK_THROWS(prepare_feature_state(z_circuit(), empty));
}

TEST_CASE("feature states match the dense oracle") {
    Rng rng(77);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + rng.below(3);
        const std::size_t p = 5;
        const auto spec = random_spec(n, p, rng);
        std::vector<double> x(p);
        for (auto &v : x) {
            v = rng.uniform() * std::numbers::pi;
        }
        const auto s = prepare_feature_state(spec, x);
        CHECK(max_diff(s, or_::dense_feature_state(spec, x)) < 1e-12);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
    }
}

TEST_CASE("kernel entries") {
    const std::vector<double> a{1.1};
    const std::vector<double> b{0.2};
    CHECK(std::abs(kernel_entry(z_circuit(), a, b) - std::pow(std::cos(1.1 - 0.2), 2)) < 1e-12);
    CHECK(std::abs(kernel_entry(z_circuit(), a, a) - 1.0) < 1e-12);

    Rng rng(8);
    for (int t = 0; t < 30; ++t) {
        const auto spec = random_spec(3, 4, rng);
        std::vector<double> x(4);
        std::vector<double> z(4);
        for (std::size_t i = 0; i < 4; ++i) {
            x[i] = rng.uniform() * std::numbers::pi;
            z[i] = rng.uniform() * std::numbers::pi;
        }
        const double kxz = kernel_entry(spec, x, z);
        CHECK(std::abs(kxz - kernel_entry(spec, z, x)) < 1e-12);
        CHECK(std::abs(kernel_entry(spec, x, x) - 1.0) < 1e-12);
        CHECK(kxz >= 0.0);
        CHECK(kxz <= 1.0);
        CHECK(std::abs(kxz - or_::dense_kernel(spec, x, z)) < 1e-10);
    }
}

TEST_CASE("kernel matrices on wdbc rows") {
    const auto ds = load_wdbc(QSVMF_DATA_DIR "/wdbc.data");
    const auto rows = all_indices(20);
    const auto scaled = apply_scaler(fit_scaler(ds.features, rows), select_rows(ds.features, rows));
    CircuitSpec spec;
    spec.selected_features = {0, 7, 21};
    spec.qubit_feature = {0, 7, 21};
    spec.rotation_flags = {true, false, true};
    spec.axis = Axis::X;
    spec.entangler_pairs = {{0, 1}, {1, 2}};
    spec.repetitions = 2;

    const auto g = gram_matrix(spec, scaled);
    REQUIRE(g.rows() == 20);
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((g.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-9);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-7);
    CHECK(g.minCoeff() >= 0.0);
    CHECK(g.maxCoeff() <= 1.0);

    const Matrix a = scaled.topRows(5);
    const Matrix b = scaled.bottomRows(7);
    const auto k = kernel_matrix(spec, a, b);
    REQUIRE(k.rows() == 5);
    REQUIRE(k.cols() == 7);
    for (Eigen::Index i = 0; i < 5; ++i) {
        for (Eigen::Index j = 0; j < 7; ++j) {
            const Eigen::RowVectorXd ra = a.row(i);
            const Eigen::RowVectorXd rb = b.row(j);
            CHECK(k(i, j) == kernel_entry(spec, std::span<const double>(ra.data(), 30),
                                          std::span<const double>(rb.data(), 30)));
        }
    }

    const Matrix single = scaled.topRows(1);
    const auto one = gram_matrix(spec, single);
    CHECK(one.rows() == 1);
    CHECK(std::abs(one(0, 0) - 1.0) < 1e-12);
}

TEST_CASE("norm is preserved by long gate sequences") {
    Rng rng(12);
    auto s = zero_state(4);
    for (int g = 0; g < 2000; ++g) {
        const std::size_t q = rng.below(4);
        switch (rng.below(4)) {
        case 0:
            s.apply_h(q);
            break;
        case 1:
            s.apply_rotation(q, static_cast<Axis>(rng.below(4)), rng.uniform() * 7.0);
            break;
        case 2:
            s.apply_cnot(q, (q + 1 + rng.below(3)) % 4);
            break;
        default:
            s.apply_entangler(q, (q + 1 + rng.below(3)) % 4, rng.uniform() * 7.0);
            break;
        }
        REQUIRE(std::abs(s.norm_squared() - 1.0) < 1e-10);
    }
}
