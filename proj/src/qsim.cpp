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
#include "qsvmf/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsvmf {

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(n_qubits) +
                                    " outside [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = Complex{1.0, 0.0};
}

void StateVector::check_qubit(std::size_t qubit) const {
    if (qubit >= n_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(qubit) +
                                " out of range for " +
                                std::to_string(n_qubits_) + " qubits");
    }
}

void StateVector::apply_h(std::size_t qubit) {
    check_qubit(qubit);
    const std::size_t stride = std::size_t{1} << qubit;
    const double r = 1.0 / std::numbers::sqrt2;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const Complex a0 = amps_[i0];
            const Complex a1 = amps_[i1];
            amps_[i0] = Complex{r * (a0.real() + a1.real()), r * (a0.imag() + a1.imag())};
            amps_[i1] = Complex{r * (a0.real() - a1.real()), r * (a0.imag() - a1.imag())};
        }
    }
}

void StateVector::apply_rotation(std::size_t qubit, Axis axis, double angle) {
    check_qubit(qubit);
    if (axis == Axis::I) {
        return;
    }
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const std::size_t stride = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const double r0 = amps_[i0].real();
            const double m0 = amps_[i0].imag();
            const double r1 = amps_[i1].real();
            const double m1 = amps_[i1].imag();
            switch (axis) {
            case Axis::X:
                // [[c, i s], [i s, c]]
                amps_[i0] = Complex{c * r0 - s * m1, c * m0 + s * r1};
                amps_[i1] = Complex{c * r1 - s * m0, c * m1 + s * r0};
                break;
            case Axis::Y:
                // [[c, s], [-s, c]]
                amps_[i0] = Complex{c * r0 + s * r1, c * m0 + s * m1};
                amps_[i1] = Complex{c * r1 - s * r0, c * m1 - s * m0};
                break;
            case Axis::Z:
                // diag(e^{i a}, e^{-i a})
                amps_[i0] = Complex{c * r0 - s * m0, c * m0 + s * r0};
                amps_[i1] = Complex{c * r1 + s * m1, c * m1 - s * r1};
                break;
            case Axis::I:
                break;
            }
        }
    }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("CNOT control and target coincide");
    }
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) != 0U && (i & tmask) == 0U) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

void StateVector::apply_entangler(std::size_t j, std::size_t k, double angle) {
    if (j == k) {
        throw std::invalid_argument("entangler needs two distinct qubits");
    }
    apply_cnot(j, k);
    apply_rotation(k, Axis::Z, angle);
    apply_cnot(j, k);
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amps_) {
        total += a.real() * a.real() + a.imag() * a.imag();
    }
    return total;
}

Complex StateVector::inner(const StateVector &other) const {
    if (other.amps_.size() != amps_.size()) {
        throw std::invalid_argument("inner product of states with different sizes");
    }
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const Complex a = amps_[i];
        const Complex b = other.amps_[i];
        re += a.real() * b.real() + a.imag() * b.imag();
        im += a.real() * b.imag() - a.imag() * b.real();
    }
    return {re, im};
}

StateVector prepare_feature_state(const CircuitSpec &spec,
                                  std::span<const double> x) {
    const std::size_t n = spec.n_qubits();
    for (const auto f : spec.qubit_feature) {
        if (f >= x.size()) {
            throw std::out_of_range("feature index " + std::to_string(f) +
                                    " beyond input of width " +
                                    std::to_string(x.size()));
        }
        if (!std::isfinite(x[f])) {
            throw std::invalid_argument("non-finite feature value at index " +
                                        std::to_string(f));
        }
    }
    StateVector state(n);
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        for (std::size_t q = 0; q < n; ++q) {
            state.apply_h(q);
        }
        if (spec.axis != Axis::I) {
            for (std::size_t q = 0; q < n; ++q) {
                if (spec.rotation_flags[q]) {
                    state.apply_rotation(q, spec.axis, x[spec.qubit_feature[q]]);
                }
            }
        }
        for (const auto &[j, k] : spec.entangler_pairs) {
            const double angle =
                2.0 * x[spec.qubit_feature[j]] * x[spec.qubit_feature[k]];
            state.apply_entangler(j, k, angle);
        }
    }
    return state;
}

double fidelity(const StateVector &a, const StateVector &b) {
    const double v = std::norm(a.inner(b));
    return std::clamp(v, 0.0, 1.0);
}

double kernel_entry(const CircuitSpec &spec, std::span<const double> x,
                    std::span<const double> z) {
    return fidelity(prepare_feature_state(spec, x), prepare_feature_state(spec, z));
}

namespace {

std::vector<StateVector> prepare_rows(const CircuitSpec &spec,
                                      const Matrix &rows) {
    std::vector<StateVector> states;
    states.reserve(static_cast<std::size_t>(rows.rows()));
    std::vector<double> buffer(static_cast<std::size_t>(rows.cols()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        for (Eigen::Index j = 0; j < rows.cols(); ++j) {
            buffer[static_cast<std::size_t>(j)] = rows(i, j);
        }
        states.push_back(prepare_feature_state(spec, buffer));
    }
    return states;
}

} // namespace

Matrix kernel_matrix(const CircuitSpec &spec, const Matrix &rows_a,
                     const Matrix &rows_b) {
    const auto a = prepare_rows(spec, rows_a);
    const auto b = prepare_rows(spec, rows_b);
    Matrix k(rows_a.rows(), rows_b.rows());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                fidelity(a[i], b[j]);
        }
    }
    return k;
}

Matrix gram_matrix(const CircuitSpec &spec, const Matrix &rows) {
    const auto states = prepare_rows(spec, rows);
    const auto n = static_cast<Eigen::Index>(states.size());
    Matrix k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = fidelity(states[static_cast<std::size_t>(i)],
                                      states[static_cast<std::size_t>(j)]);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

} // namespace qsvmf
