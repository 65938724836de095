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
 * QSVMF orchestration: fitness wiring, per-fold NSGA-II runs, Pareto
 * extraction, frequent-feature aggregation, retraining and the classical
 * comparison grid.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsvmf/data.hpp"
#include "qsvmf/encoding.hpp"
#include "qsvmf/moga.hpp"
#include "qsvmf/svm.hpp"

namespace qsvmf {

/// One outer fold prepared for fitness evaluation. The scaler is fitted on
/// the training rows only.
struct FitnessContext {
    int fold = 0;
    Matrix train_scaled;
    Matrix validation_scaled;
    Labels train_labels;
    Labels validation_labels;
    /// Unscaled training rows, for the covariance objective.
    Matrix train_raw;
    SmoOptions smo;
    std::uint64_t run_seed = 0;
};

FitnessContext make_fitness_context(const Dataset &dataset,
                                    std::span<const std::size_t> train_rows,
                                    std::span<const std::size_t> validation_rows,
                                    double scale_lo, double scale_hi,
                                    const SmoOptions &smo,
                                    std::uint64_t run_seed, int fold = 0);

struct FitnessDetail {
    CircuitSpec circuit;
    GateCounts gates;
    double accuracy = 0.0;
    Objectives objectives{};
};

FitnessDetail evaluate_fitness_detail(const Chromosome &chromosome,
                                      const FitnessContext &ctx);

/// 1 - validation accuracy, local gates, CNOTs, selected feature count and
/// covariance score of the selected features on the training rows.
Objectives evaluate_fitness(const Chromosome &chromosome,
                            const FitnessContext &ctx);

struct QsvmfConfig {
    GaConfig ga;
    std::size_t n_qubits = 4;
    int k_folds = 5;
    std::uint64_t seed = 7;
    SmoOptions smo;
    double scale_lo = 0.0;
    double scale_hi = std::numbers::pi;

    void validate() const;
};

struct ParetoSolution {
    Chromosome chromosome;
    Objectives objectives{};
    Indices features;
    CircuitSpec circuit;

    [[nodiscard]] double accuracy() const { return 1.0 - objectives[kError]; }
};

struct FoldResult {
    int fold = 0;
    /// Front 0 of the final population, in population order.
    std::vector<ParetoSolution> front;
    /// Index into front of the highest-accuracy member.
    std::size_t best = 0;
    std::vector<ParetoSolution> minimal;
    std::vector<GenerationStats> history;
};

struct SelectionReport {
    QsvmfConfig config;
    std::vector<FoldResult> folds;
    std::size_t m = 0;
    /// Most frequent features across the per-fold best solutions, most
    /// frequent first.
    Indices aggregated_features;
    int best_fold = 0;
    /// Best fold's circuit structure remapped onto the aggregated features.
    CircuitSpec final_circuit;
    /// Mean over folds of the best front-0 validation accuracy.
    double mean_best_accuracy = 0.0;
    /// Cross-validated accuracy of the final circuit.
    double retrained_accuracy = 0.0;
    double mean_best_local_gates = 0.0;
    double mean_best_cnot_gates = 0.0;
};

/// Min error, then fewer features, then lower index.
std::size_t best_solution_index(std::span<const ParetoSolution> front);

/// Members of the front with the fewest features.
std::vector<ParetoSolution>
pareto_minimal_features(std::span<const ParetoSolution> front);

/// m = round-half-up of the mean set size; the m features occurring most
/// often, ties by ascending index.
std::pair<std::size_t, Indices>
aggregate_features(std::span<const Indices> best_feature_sets);

/// Keeps the structure of a circuit and feeds qubit j from
/// features[j mod |features|].
CircuitSpec remap_circuit(const CircuitSpec &structure,
                          std::span<const std::size_t> features);

/// Z rotations on every qubit, every entangler pair, one repetition.
CircuitSpec default_circuit(std::size_t n_qubits,
                            std::span<const std::size_t> features);

/// Mean accuracy of a fixed-circuit QSVM over the folds of a plan, scaling
/// each fold from its training rows.
double qsvm_cross_validate(const Dataset &dataset, const CircuitSpec &circuit,
                           const FoldPlan &plan, double scale_lo,
                           double scale_hi, const SmoOptions &smo);

SelectionReport run_qsvmf(const Dataset &dataset, const QsvmfConfig &config);

enum class Classifier {
    Qsvm,
    SvmLinear,
    SvmPoly,
    SvmRbf,
    SvmSigmoid,
    LogisticRegression,
    NaiveBayes,
    KNeighbors,
};

std::string classifier_name(Classifier classifier);
const std::vector<Classifier> &all_classifiers();

struct CompareOptions {
    int k_folds = 5;
    std::uint64_t seed = 7;
    SmoOptions smo;
    double scale_lo = 0.0;
    double scale_hi = std::numbers::pi;
    /// Circuit structure for the QSVM rows.
    CircuitSpec qsvm_structure;
};

/// Stratified k-fold accuracy of one classifier on a feature subset.
/// Classical SVMs, logistic regression and kNN see per-fold standardized
/// features; naive Bayes sees raw values.
double cv_accuracy(const Dataset &dataset, std::span<const std::size_t> features,
                   Classifier classifier, const CompareOptions &options);

struct ComparisonTable {
    std::vector<std::string> columns;
    std::vector<Indices> column_features;
    std::vector<Classifier> rows;
    /// accuracy[row][column]
    std::vector<std::vector<double>> accuracy;
};

/// Columns: the given features, then chi2 and f_regression top-k with
/// k = |features|.
ComparisonTable compare_report(const Dataset &dataset,
                               std::span<const std::size_t> selected,
                               const CompareOptions &options);

} // namespace qsvmf
