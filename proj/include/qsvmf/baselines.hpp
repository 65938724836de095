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
 * Univariate feature scoring with top-k selection, and the classical
 * classifiers used for comparison.
 */
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qsvmf/data.hpp"

namespace qsvmf {

enum class ScoreMethod { Chi2, FRegression };

std::string_view method_name(ScoreMethod method);
/// Accepts "chi2" and "f_regression"; throws otherwise.
ScoreMethod parse_method(std::string_view text);

struct FeatureScores {
    std::vector<double> scores;
    ScoreMethod method = ScoreMethod::Chi2;
};

/// Chi-squared statistic of each non-negative feature against the class,
/// treating feature totals per class as observed frequencies.
FeatureScores chi2_scores(const Matrix &x, std::span<const int> labels);

/// F = r^2 / (1 - r^2) * (n - 2) from the Pearson correlation with the
/// label. Perfect correlation yields kFScoreCap.
FeatureScores f_regression_scores(const Matrix &x, std::span<const int> labels);

inline constexpr double kFScoreCap = 1e300;

/// Indices of the k largest scores in ascending order; ties go to the lower
/// index.
Indices select_k_best(const FeatureScores &scores, std::size_t k);

/// Per-column mean / standard deviation fitted on training rows.
struct Standardizer {
    Eigen::RowVectorXd mean;
    Eigen::RowVectorXd scale;

    static Standardizer fit(const Matrix &x);
    [[nodiscard]] Matrix apply(const Matrix &x) const;
};

class GaussianNb {
  public:
    static constexpr double kVarianceFloor = 1e-9;

    void fit(const Matrix &x, std::span<const int> labels);
    [[nodiscard]] Labels predict(const Matrix &x) const;

  private:
    // Index 0 holds class +1, index 1 class -1.
    std::array<Eigen::RowVectorXd, 2> mean_;
    std::array<Eigen::RowVectorXd, 2> var_;
    std::array<double, 2> log_prior_{};
};

class KNeighbors {
  public:
    explicit KNeighbors(std::size_t k = 5) : k_(k) {}

    void fit(const Matrix &x, std::span<const int> labels);
    /// Majority of the k nearest (Euclidean) training rows; distance ties
    /// resolve to the lower training index and vote ties to the nearest
    /// neighbour's label.
    [[nodiscard]] Labels predict(const Matrix &x) const;

  private:
    std::size_t k_;
    Matrix train_;
    Labels labels_;
};

class LogisticRegression {
  public:
    struct Options {
        double l2 = 1e-4;
        double learning_rate = 0.1;
        int iterations = 500;
    };

    LogisticRegression() = default;
    explicit LogisticRegression(Options options) : options_(options) {}

    /// Full-batch gradient descent on the mean logistic loss from zero
    /// weights; the intercept is not regularized.
    void fit(const Matrix &x, std::span<const int> labels);
    [[nodiscard]] Labels predict(const Matrix &x) const;
    [[nodiscard]] const Eigen::VectorXd &weights() const { return weights_; }
    [[nodiscard]] double intercept() const { return intercept_; }

  private:
    Options options_{};
    Eigen::VectorXd weights_;
    double intercept_ = 0.0;
};

} // namespace qsvmf
