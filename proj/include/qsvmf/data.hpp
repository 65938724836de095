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
 * WDBC loading, per-fold min-max scaling, stratified folds and the
 * feature-redundancy statistic used as the fifth objective.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qsvmf {

using Matrix = Eigen::MatrixXd;
using Indices = std::vector<std::size_t>;

/// Class marks are +1 (malignant) and -1 (benign).
using Labels = std::vector<int>;

struct Dataset {
    Matrix features;
    Labels labels;
    std::vector<std::string> feature_names;

    [[nodiscard]] std::size_t rows() const {
        return static_cast<std::size_t>(features.rows());
    }
    [[nodiscard]] std::size_t cols() const {
        return static_cast<std::size_t>(features.cols());
    }
};

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t row, const std::string &what)
        : std::runtime_error("row " + std::to_string(row) + ": " + what),
          row_(row) {}
    /// 1-based line number of the offending row.
    [[nodiscard]] std::size_t row() const { return row_; }

  private:
    std::size_t row_;
};

/// Column names in file order.
const std::vector<std::string> &wdbc_feature_names();

/**
 * Parse WDBC records: id, diagnosis (M/B), 30 numeric features. A first
 * line whose id field is not numeric is treated as a header and skipped.
 * Blank lines are ignored.
 */
Dataset parse_wdbc(std::istream &in);
Dataset load_wdbc(const std::filesystem::path &path);

Matrix select_rows(const Matrix &m, std::span<const std::size_t> rows);
Labels select_labels(const Labels &labels, std::span<const std::size_t> rows);

struct Scaler {
    std::vector<double> min;
    std::vector<double> max;
    double lo = 0.0;
    double hi = std::numbers::pi;
};

/// Per-column min/max over the listed rows only.
Scaler fit_scaler(const Matrix &features, std::span<const std::size_t> rows,
                  double lo = 0.0, double hi = std::numbers::pi);

/// Maps [min, max] onto [lo, hi] and clamps anything outside. Constant
/// columns map to lo.
Matrix apply_scaler(const Scaler &scaler, const Matrix &features);

struct FoldPlan {
    int k = 0;
    /// Fold index of every row.
    std::vector<int> assignments;

    [[nodiscard]] Indices test_rows(int fold) const;
    [[nodiscard]] Indices train_rows(int fold) const;
};

/**
 * Each class is shuffled with the seeded generator and dealt round-robin
 * over the folds. The deal continues where the previous class stopped, so
 * fold sizes differ by at most one overall as well as per class.
 */
FoldPlan stratified_kfold(std::span<const int> labels, int k,
                          std::uint64_t seed);

/**
 * Sum over unordered column pairs of |cov| after standardizing each column
 * over the given rows (population moments). Zero-variance columns
 * standardize to zeros. Returns 0 for fewer than two columns.
 */
double pairwise_covariance_score(const Matrix &features,
                                 std::span<const std::size_t> rows,
                                 std::span<const std::size_t> columns);
double pairwise_covariance_score(const Matrix &features,
                                 std::span<const std::size_t> columns);

/// Raw population variance of each listed column over the given rows.
std::vector<double> column_variances(const Matrix &features,
                                     std::span<const std::size_t> rows,
                                     std::span<const std::size_t> columns);

Indices all_indices(std::size_t n);

} // namespace qsvmf
