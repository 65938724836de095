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
#include "qsvmf/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "qsvmf/baselines.hpp"
#include "qsvmf/qsim.hpp"

namespace qsvmf {

FitnessContext make_fitness_context(const Dataset &dataset,
                                    std::span<const std::size_t> train_rows,
                                    std::span<const std::size_t> validation_rows,
                                    double scale_lo, double scale_hi,
                                    const SmoOptions &smo,
                                    std::uint64_t run_seed, int fold) {
    const Scaler scaler = fit_scaler(dataset.features, train_rows, scale_lo, scale_hi);
    FitnessContext ctx;
    ctx.fold = fold;
    ctx.train_raw = select_rows(dataset.features, train_rows);
    ctx.train_scaled = apply_scaler(scaler, ctx.train_raw);
    ctx.validation_scaled =
        apply_scaler(scaler, select_rows(dataset.features, validation_rows));
    ctx.train_labels = select_labels(dataset.labels, train_rows);
    ctx.validation_labels = select_labels(dataset.labels, validation_rows);
    ctx.smo = smo;
    ctx.run_seed = run_seed;
    return ctx;
}

FitnessDetail evaluate_fitness_detail(const Chromosome &chromosome,
                                      const FitnessContext &ctx) {
    FitnessDetail d;
    d.circuit = decode(chromosome, assignment_seed(chromosome, ctx.run_seed));
    d.gates = gate_counts(d.circuit);

    const Matrix gram = gram_matrix(d.circuit, ctx.train_scaled);
    const SvmModel model = smo_train(gram, ctx.train_labels, ctx.smo);
    const Matrix cross = kernel_matrix(d.circuit, ctx.validation_scaled, ctx.train_scaled);
    d.accuracy = accuracy(predict(model, cross), ctx.validation_labels);

    const Indices rows = all_indices(static_cast<std::size_t>(ctx.train_raw.rows()));
    d.objectives[kError] = 1.0 - d.accuracy;
    d.objectives[kLocalGates] = static_cast<double>(d.gates.local);
    d.objectives[kCnotGates] = static_cast<double>(d.gates.cnot);
    d.objectives[kFeatureCount] = static_cast<double>(d.circuit.selected_features.size());
    d.objectives[kCovariance] =
        pairwise_covariance_score(ctx.train_raw, rows, d.circuit.selected_features);
    return d;
}

Objectives evaluate_fitness(const Chromosome &chromosome, const FitnessContext &ctx) {
    return evaluate_fitness_detail(chromosome, ctx).objectives;
}

void QsvmfConfig::validate() const {
    ga.validate();
    if (n_qubits < 2 || n_qubits > 12) {
        throw std::invalid_argument("qubits must lie in [2, 12], got " +
                                    std::to_string(n_qubits));
    }
    if (k_folds < 2) {
        throw std::invalid_argument("folds must be at least 2");
    }
    if (!(smo.c > 0.0)) {
        throw std::invalid_argument("SVM C must be positive");
    }
    if (!(scale_lo < scale_hi)) {
        throw std::invalid_argument("scale-lo must be below scale-hi");
    }
}

std::size_t best_solution_index(std::span<const ParetoSolution> front) {
    if (front.empty()) {
        throw std::invalid_argument("best_solution_index: empty front");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < front.size(); ++i) {
        const auto &a = front[i].objectives;
        const auto &b = front[best].objectives;
        if (a[kError] < b[kError] ||
            (a[kError] == b[kError] && a[kFeatureCount] < b[kFeatureCount])) {
            best = i;
        }
    }
    return best;
}

std::vector<ParetoSolution>
pareto_minimal_features(std::span<const ParetoSolution> front) {
    if (front.empty()) {
        throw std::invalid_argument("pareto_minimal_features: empty front");
    }
    double fewest = front[0].objectives[kFeatureCount];
    for (const auto &s : front) {
        fewest = std::min(fewest, s.objectives[kFeatureCount]);
    }
    std::vector<ParetoSolution> out;
    for (const auto &s : front) {
        if (s.objectives[kFeatureCount] == fewest) {
            out.push_back(s);
        }
    }
    return out;
}

std::pair<std::size_t, Indices>
aggregate_features(std::span<const Indices> best_feature_sets) {
    if (best_feature_sets.empty()) {
        throw std::invalid_argument("aggregate_features: no feature sets");
    }
    std::size_t total = 0;
    std::map<std::size_t, std::size_t> counts;
    for (const auto &set : best_feature_sets) {
        total += set.size();
        for (const auto f : set) {
            ++counts[f];
        }
    }
    const double mean =
        static_cast<double>(total) / static_cast<double>(best_feature_sets.size());
    auto m = static_cast<std::size_t>(std::floor(mean + 0.5));
    m = std::clamp<std::size_t>(m, 1, counts.size());

    std::vector<std::pair<std::size_t, std::size_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto &a, const auto &b) { return a.second > b.second; });
    Indices out;
    for (std::size_t i = 0; i < m; ++i) {
        out.push_back(ranked[i].first);
    }
    return {m, out};
}

CircuitSpec remap_circuit(const CircuitSpec &structure,
                          std::span<const std::size_t> features) {
    if (features.empty()) {
        throw std::invalid_argument("remap_circuit: no features");
    }
    CircuitSpec out = structure;
    out.selected_features.assign(features.begin(), features.end());
    std::sort(out.selected_features.begin(), out.selected_features.end());
    for (std::size_t q = 0; q < out.qubit_feature.size(); ++q) {
        out.qubit_feature[q] = features[q % features.size()];
    }
    return out;
}

CircuitSpec default_circuit(std::size_t n_qubits,
                            std::span<const std::size_t> features) {
    CircuitSpec structure;
    structure.qubit_feature.assign(n_qubits, 0);
    structure.rotation_flags.assign(n_qubits, true);
    structure.axis = Axis::Z;
    for (std::size_t j = 0; j < n_qubits; ++j) {
        for (std::size_t k = j + 1; k < n_qubits; ++k) {
            structure.entangler_pairs.emplace_back(j, k);
        }
    }
    structure.repetitions = 1;
    return remap_circuit(structure, features);
}

double qsvm_cross_validate(const Dataset &dataset, const CircuitSpec &circuit,
                           const FoldPlan &plan, double scale_lo,
                           double scale_hi, const SmoOptions &smo) {
    double total = 0.0;
    for (int f = 0; f < plan.k; ++f) {
        const Indices train = plan.train_rows(f);
        const Indices test = plan.test_rows(f);
        const FitnessContext ctx =
            make_fitness_context(dataset, train, test, scale_lo, scale_hi, smo, 0, f);
        const Matrix gram = gram_matrix(circuit, ctx.train_scaled);
        const SvmModel model = smo_train(gram, ctx.train_labels, smo);
        const Matrix cross = kernel_matrix(circuit, ctx.validation_scaled, ctx.train_scaled);
        total += accuracy(predict(model, cross), ctx.validation_labels);
    }
    return total / static_cast<double>(plan.k);
}

namespace {

FoldResult run_fold(const Dataset &dataset, const QsvmfConfig &config,
                    const FoldPlan &plan, int fold) {
    const Indices train = plan.train_rows(fold);
    const Indices validation = plan.test_rows(fold);
    const FitnessContext ctx =
        make_fitness_context(dataset, train, validation, config.scale_lo,
                             config.scale_hi, config.smo, config.seed, fold);

    // Fitness is a pure function of the bits for a fixed fold, so repeated
    // chromosomes (unchanged copies of parents) are looked up.
    std::unordered_map<std::string, Objectives> memo;
    const Evaluator evaluator = [&](const Chromosome &c) {
        const std::string key = c.to_string();
        if (const auto it = memo.find(key); it != memo.end()) {
            return it->second;
        }
        const Objectives obj = evaluate_fitness(c, ctx);
        memo.emplace(key, obj);
        return obj;
    };

    GaConfig ga = config.ga;
    ga.seed = combine_seeds(config.seed, static_cast<std::uint64_t>(fold) + 1);
    const EvolutionResult evo =
        evolve_with_restarts(ga, dataset.cols(), config.n_qubits, evaluator);

    FoldResult result;
    result.fold = fold;
    result.history = evo.history;
    for (const auto idx : evo.fronts.front()) {
        const auto &ind = evo.population[idx];
        ParetoSolution s;
        s.chromosome = ind.chromosome;
        s.objectives = ind.objectives;
        s.circuit = decode(ind.chromosome, assignment_seed(ind.chromosome, config.seed));
        s.features = s.circuit.selected_features;
        result.front.push_back(std::move(s));
    }
    result.best = best_solution_index(result.front);
    result.minimal = pareto_minimal_features(result.front);
    return result;
}

} // namespace

SelectionReport run_qsvmf(const Dataset &dataset, const QsvmfConfig &config) {
    config.validate();
    const FoldPlan plan = stratified_kfold(dataset.labels, config.k_folds, config.seed);

    SelectionReport report;
    report.config = config;
    for (int f = 0; f < config.k_folds; ++f) {
        try {
            report.folds.push_back(run_fold(dataset, config, plan, f));
        } catch (const std::exception &e) {
            throw std::runtime_error("fold " + std::to_string(f) + " failed: " + e.what());
        }
    }

    std::vector<Indices> best_sets;
    double acc_sum = 0.0;
    double local_sum = 0.0;
    double cnot_sum = 0.0;
    for (std::size_t f = 0; f < report.folds.size(); ++f) {
        const auto &fold = report.folds[f];
        const auto &best = fold.front[fold.best];
        best_sets.push_back(best.features);
        acc_sum += best.accuracy();
        local_sum += best.objectives[kLocalGates];
        cnot_sum += best.objectives[kCnotGates];

        const auto &incumbent =
            report.folds[static_cast<std::size_t>(report.best_fold)];
        const auto &inc = incumbent.front[incumbent.best].objectives;
        const auto &cand = best.objectives;
        if (cand[kError] < inc[kError] ||
            (cand[kError] == inc[kError] && cand[kFeatureCount] < inc[kFeatureCount])) {
            report.best_fold = static_cast<int>(f);
        }
    }
    const double k = static_cast<double>(report.folds.size());
    report.mean_best_accuracy = acc_sum / k;
    report.mean_best_local_gates = local_sum / k;
    report.mean_best_cnot_gates = cnot_sum / k;

    std::tie(report.m, report.aggregated_features) = aggregate_features(best_sets);
    const auto &best_fold = report.folds[static_cast<std::size_t>(report.best_fold)];
    report.final_circuit =
        remap_circuit(best_fold.front[best_fold.best].circuit, report.aggregated_features);
    report.retrained_accuracy =
        qsvm_cross_validate(dataset, report.final_circuit, plan, config.scale_lo,
                            config.scale_hi, config.smo);
    return report;
}

std::string classifier_name(Classifier classifier) {
    switch (classifier) {
    case Classifier::Qsvm:
        return "QSVMF";
    case Classifier::SvmLinear:
        return "SVM (Linear)";
    case Classifier::SvmPoly:
        return "SVM (Poly)";
    case Classifier::SvmRbf:
        return "SVM (RBF)";
    case Classifier::SvmSigmoid:
        return "SVM (Sigmoid)";
    case Classifier::LogisticRegression:
        return "Logistic Regression";
    case Classifier::NaiveBayes:
        return "Naive Bayes";
    case Classifier::KNeighbors:
        return "K-Neighbors";
    }
    return "?";
}

const std::vector<Classifier> &all_classifiers() {
    static const std::vector<Classifier> all{
        Classifier::Qsvm,       Classifier::SvmLinear,
        Classifier::SvmPoly,    Classifier::SvmRbf,
        Classifier::SvmSigmoid, Classifier::LogisticRegression,
        Classifier::NaiveBayes, Classifier::KNeighbors,
    };
    return all;
}

namespace {

Matrix select_columns(const Matrix &m, std::span<const std::size_t> cols) {
    Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = m.col(static_cast<Eigen::Index>(cols[j]));
    }
    return out;
}

Labels classical_svm_predict(KernelKind kind, const Matrix &train,
                             const Labels &train_labels, const Matrix &test,
                             const SmoOptions &smo) {
    ClassicalKernelSpec spec;
    spec.kind = kind;
    spec = resolve_kernel(spec, train);
    const Matrix gram = classical_kernel(spec, train, train);
    // Round-off in the polynomial/sigmoid paths can break exact symmetry.
    const Matrix sym = 0.5 * (gram + gram.transpose());
    const SvmModel model = smo_train(sym, train_labels, smo);
    return predict(model, classical_kernel(spec, test, train));
}

} // namespace

double cv_accuracy(const Dataset &dataset, std::span<const std::size_t> features,
                   Classifier classifier, const CompareOptions &options) {
    if (features.empty()) {
        throw std::invalid_argument("cv_accuracy: empty feature list");
    }
    for (const auto f : features) {
        if (f >= dataset.cols()) {
            throw std::out_of_range("unknown feature index " + std::to_string(f));
        }
    }
    const FoldPlan plan = stratified_kfold(dataset.labels, options.k_folds, options.seed);
    if (classifier == Classifier::Qsvm) {
        const CircuitSpec circuit = options.qsvm_structure.qubit_feature.empty()
                                        ? default_circuit(features.size(), features)
                                        : remap_circuit(options.qsvm_structure, features);
        return qsvm_cross_validate(dataset, circuit, plan, options.scale_lo,
                                   options.scale_hi, options.smo);
    }

    const Matrix x = select_columns(dataset.features, features);
    double total = 0.0;
    for (int f = 0; f < plan.k; ++f) {
        const Indices train_rows = plan.train_rows(f);
        const Indices test_rows = plan.test_rows(f);
        Matrix train = select_rows(x, train_rows);
        Matrix test = select_rows(x, test_rows);
        const Labels train_labels = select_labels(dataset.labels, train_rows);
        const Labels test_labels = select_labels(dataset.labels, test_rows);
        if (classifier != Classifier::NaiveBayes) {
            const Standardizer st = Standardizer::fit(train);
            train = st.apply(train);
            test = st.apply(test);
        }
        Labels pred;
        switch (classifier) {
        case Classifier::SvmLinear:
            pred = classical_svm_predict(KernelKind::Linear, train, train_labels, test, options.smo);
            break;
        case Classifier::SvmPoly:
            pred = classical_svm_predict(KernelKind::Poly, train, train_labels, test, options.smo);
            break;
        case Classifier::SvmRbf:
            pred = classical_svm_predict(KernelKind::Rbf, train, train_labels, test, options.smo);
            break;
        case Classifier::SvmSigmoid:
            pred = classical_svm_predict(KernelKind::Sigmoid, train, train_labels, test, options.smo);
            break;
        case Classifier::LogisticRegression: {
            LogisticRegression lr;
            lr.fit(train, train_labels);
            pred = lr.predict(test);
            break;
        }
        case Classifier::NaiveBayes: {
            GaussianNb nb;
            nb.fit(train, train_labels);
            pred = nb.predict(test);
            break;
        }
        case Classifier::KNeighbors: {
            KNeighbors knn(5);
            knn.fit(train, train_labels);
            pred = knn.predict(test);
            break;
        }
        case Classifier::Qsvm:
            break;
        }
        total += accuracy(pred, test_labels);
    }
    return total / static_cast<double>(plan.k);
}

ComparisonTable compare_report(const Dataset &dataset,
                               std::span<const std::size_t> selected,
                               const CompareOptions &options) {
    if (selected.empty()) {
        throw std::invalid_argument("compare_report: empty feature list");
    }
    const std::size_t k = selected.size();
    ComparisonTable table;
    table.columns = {"qsvmf", "chi2", "f_regression"};
    Indices own(selected.begin(), selected.end());
    table.column_features = {
        own,
        select_k_best(chi2_scores(dataset.features, dataset.labels), k),
        select_k_best(f_regression_scores(dataset.features, dataset.labels), k),
    };
    table.rows = all_classifiers();
    for (const auto c : table.rows) {
        std::vector<double> row;
        for (const auto &features : table.column_features) {
            row.push_back(cv_accuracy(dataset, features, c, options));
        }
        table.accuracy.push_back(std::move(row));
    }
    return table;
}

} // namespace qsvmf
