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
 * Soft-margin SVM trained from a precomputed kernel matrix by sequential
 * minimal optimization of the dual
 *
 *     max  sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
 *     s.t. sum_i a_i y_i = 0,  0 <= a_i <= C.
 *
 * Working pairs are picked by a deterministic full scan (second-order
 * maximal-violating-pair rule, lowest index wins ties), so identical inputs
 * give bit-identical models.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qsvmf/data.hpp"

namespace qsvmf {

struct SmoOptions {
    double c = 1.0;
    double tol = 1e-3;
    /// Iteration budget is max_passes * n pair updates.
    int max_passes = 200;
};

inline constexpr double kSupportThreshold = 1e-8;

struct SvmModel {
    std::vector<double> alphas;
    double bias = 0.0;
    Indices support;
    Labels labels;
    double c = 1.0;
    bool converged = true;
    long iterations = 0;
};

SvmModel smo_train(const Matrix &kernel, std::span<const int> labels,
                   const SmoOptions &options = {});

/// f_j = sum_i a_i y_i K(test_j, train_i) + b.
std::vector<double> decision_values(const SvmModel &model,
                                    const Matrix &kernel_test_train);

/// sign(f), with sign(0) = +1.
Labels predict(const SvmModel &model, const Matrix &kernel_test_train);

double accuracy(std::span<const int> predicted, std::span<const int> truth);

/// Dual objective at the model's multipliers.
double dual_objective(const SvmModel &model, const Matrix &kernel);

/// Largest KKT residual over the training set: 1 - y f for a = 0,
/// |y f - 1| for free multipliers and y f - 1 for a = C (clamped at 0).
double max_kkt_residual(const SvmModel &model, const Matrix &kernel);

enum class KernelKind { Linear, Poly, Rbf, Sigmoid };

struct ClassicalKernelSpec {
    KernelKind kind = KernelKind::Rbf;
    int degree = 3;
    /// Unset means 1 / (p * var(X)) over the training matrix.
    std::optional<double> gamma;
    /// Unset means 1 for poly and 0 for sigmoid.
    std::optional<double> coef0;
};

/// 1 / (p * var(X)) with var over every entry of X; 1 if X is constant.
double scale_gamma(const Matrix &x);

/// Fills unset gamma/coef0 from the training matrix.
ClassicalKernelSpec resolve_kernel(ClassicalKernelSpec spec, const Matrix &train);

Matrix classical_kernel(const ClassicalKernelSpec &spec, const Matrix &rows_a,
                        const Matrix &rows_b);

} // namespace qsvmf
