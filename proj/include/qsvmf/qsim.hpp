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
 * Statevector simulation of decoded feature-map circuits and the fidelity
 * kernel K(x, z) = |<phi(x)|phi(z)>|^2.
 *
 * Qubit q is bit q of the amplitude index (qubit 0 is least significant).
 * Rotations follow exp(i*angle*P) with no half-angle factor.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qsvmf/data.hpp"
#include "qsvmf/encoding.hpp"

namespace qsvmf {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 16;

class StateVector {
  public:
    /// |0...0> on n_qubits qubits, 1 <= n_qubits <= kMaxQubits.
    explicit StateVector(std::size_t n_qubits);

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] Complex amplitude(std::size_t index) const {
        return amps_.at(index);
    }

    void apply_h(std::size_t qubit);
    /// exp(i*angle*P). Axis I leaves the state unchanged.
    void apply_rotation(std::size_t qubit, Axis axis, double angle);
    void apply_cnot(std::size_t control, std::size_t target);
    /// CNOT(j->k), exp(i*angle*Z) on k, CNOT(j->k); equals exp(i*angle*Z_j Z_k).
    void apply_entangler(std::size_t j, std::size_t k, double angle);

    [[nodiscard]] double norm_squared() const;
    /// <this|other>
    [[nodiscard]] Complex inner(const StateVector &other) const;

  private:
    void check_qubit(std::size_t qubit) const;

    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

inline StateVector zero_state(std::size_t n_qubits) {
    return StateVector(n_qubits);
}

/**
 * Runs the repetition blocks [H layer; flagged rotations with angle
 * x[qubit_feature[j]]; entanglers with angle 2*x[f_j]*x[f_k]] on |0...0>.
 * x is a full scaled feature row indexed by feature id.
 */
StateVector prepare_feature_state(const CircuitSpec &spec,
                                  std::span<const double> x);

double fidelity(const StateVector &a, const StateVector &b);

double kernel_entry(const CircuitSpec &spec, std::span<const double> x,
                    std::span<const double> z);

/// Entry (i, j) = kernel_entry(spec, rows_a[i], rows_b[j]). One state is
/// prepared per row.
Matrix kernel_matrix(const CircuitSpec &spec, const Matrix &rows_a,
                     const Matrix &rows_b);

/// Symmetric Gram matrix of one row set; only the upper triangle is
/// evaluated.
Matrix gram_matrix(const CircuitSpec &spec, const Matrix &rows);

} // namespace qsvmf
