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
#include "qsvmf/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qsvmf {

std::string_view method_name(ScoreMethod method) {
    return method == ScoreMethod::Chi2 ? "chi2" : "f_regression";
}

ScoreMethod parse_method(std::string_view text) {
    if (text == "chi2") {
        return ScoreMethod::Chi2;
    }
    if (text == "f_regression" || text == "f-regression") {
        return ScoreMethod::FRegression;
    }
    throw std::invalid_argument("unknown scoring method '" + std::string(text) +
                                "' (expected chi2 or f_regression)");
}

namespace {

void check_labels(const Matrix &x, std::span<const int> labels) {
    if (static_cast<std::size_t>(x.rows()) != labels.size()) {
        throw std::invalid_argument("feature/label row count mismatch");
    }
}

} // namespace

FeatureScores chi2_scores(const Matrix &x, std::span<const int> labels) {
    check_labels(x, labels);
    if ((x.array() < 0.0).any()) {
        throw std::invalid_argument("chi2 requires non-negative features");
    }
    const double n = static_cast<double>(labels.size());
    const double n_pos = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
    const std::array<double, 2> prior{n_pos / n, (n - n_pos) / n};

    FeatureScores out;
    out.method = ScoreMethod::Chi2;
    out.scores.assign(static_cast<std::size_t>(x.cols()), 0.0);
    for (Eigen::Index f = 0; f < x.cols(); ++f) {
        std::array<double, 2> observed{0.0, 0.0};
        for (std::size_t i = 0; i < labels.size(); ++i) {
            observed[labels[i] > 0 ? 0 : 1] += x(static_cast<Eigen::Index>(i), f);
        }
        const double total = observed[0] + observed[1];
        if (total <= 0.0) {
            continue;
        }
        double score = 0.0;
        for (std::size_t c = 0; c < 2; ++c) {
            const double expected = prior[c] * total;
            if (expected > 0.0) {
                const double d = observed[c] - expected;
                score += d * d / expected;
            }
        }
        out.scores[static_cast<std::size_t>(f)] = score;
    }
    return out;
}

FeatureScores f_regression_scores(const Matrix &x, std::span<const int> labels) {
    check_labels(x, labels);
    const std::size_t n = labels.size();
    if (n < 3) {
        throw std::invalid_argument("f_regression needs at least 3 samples");
    }
    double y_mean = 0.0;
    for (const int y : labels) {
        y_mean += y;
    }
    y_mean /= static_cast<double>(n);
    double y_ss = 0.0;
    for (const int y : labels) {
        y_ss += (y - y_mean) * (y - y_mean);
    }

    FeatureScores out;
    out.method = ScoreMethod::FRegression;
    out.scores.assign(static_cast<std::size_t>(x.cols()), 0.0);
    for (Eigen::Index f = 0; f < x.cols(); ++f) {
        const double x_mean = x.col(f).mean();
        double x_ss = 0.0;
        double xy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = x(static_cast<Eigen::Index>(i), f) - x_mean;
            x_ss += dx * dx;
            xy += dx * (labels[i] - y_mean);
        }
        if (x_ss <= 0.0 || y_ss <= 0.0) {
            continue;
        }
        const double r = xy / std::sqrt(x_ss * y_ss);
        const double r2 = r * r;
        double score = kFScoreCap;
        if (r2 < 1.0) {
            score = std::min(kFScoreCap, r2 / (1.0 - r2) * static_cast<double>(n - 2));
        }
        out.scores[static_cast<std::size_t>(f)] = score;
    }
    return out;
}

Indices select_k_best(const FeatureScores &scores, std::size_t k) {
    const std::size_t p = scores.scores.size();
    if (k < 1 || k > p) {
        throw std::invalid_argument("select_k_best: k=" + std::to_string(k) +
                                    " outside [1, " + std::to_string(p) + "]");
    }
    Indices order = all_indices(p);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores.scores[a] > scores.scores[b];
    });
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

Standardizer Standardizer::fit(const Matrix &x) {
    Standardizer s;
    s.mean = x.colwise().mean();
    s.scale.resize(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double var = (x.col(j).array() - s.mean(j)).square().mean();
        s.scale(j) = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    return s;
}

Matrix Standardizer::apply(const Matrix &x) const {
    if (x.cols() != mean.size()) {
        throw std::invalid_argument("Standardizer: column count mismatch");
    }
    return ((x.rowwise() - mean).array().rowwise() / scale.array()).matrix();
}

void GaussianNb::fit(const Matrix &x, std::span<const int> labels) {
    check_labels(x, labels);
    const double n = static_cast<double>(labels.size());
    for (std::size_t c = 0; c < 2; ++c) {
        const int label = c == 0 ? 1 : -1;
        std::vector<Eigen::Index> rows;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == label) {
                rows.push_back(static_cast<Eigen::Index>(i));
            }
        }
        mean_[c] = Eigen::RowVectorXd::Zero(x.cols());
        var_[c] = Eigen::RowVectorXd::Constant(x.cols(), kVarianceFloor);
        if (rows.empty()) {
            log_prior_[c] = -std::numeric_limits<double>::infinity();
            continue;
        }
        for (const auto r : rows) {
            mean_[c] += x.row(r);
        }
        mean_[c] /= static_cast<double>(rows.size());
        Eigen::RowVectorXd var = Eigen::RowVectorXd::Zero(x.cols());
        for (const auto r : rows) {
            var += (x.row(r) - mean_[c]).array().square().matrix();
        }
        var /= static_cast<double>(rows.size());
        var_[c] = var.cwiseMax(kVarianceFloor);
        log_prior_[c] = std::log(static_cast<double>(rows.size()) / n);
    }
}

Labels GaussianNb::predict(const Matrix &x) const {
    Labels out(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        std::array<double, 2> score{};
        for (std::size_t c = 0; c < 2; ++c) {
            double s = log_prior_[c];
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                const double d = x(i, j) - mean_[c](j);
                s -= 0.5 * (std::log(2.0 * std::numbers::pi * var_[c](j)) + d * d / var_[c](j));
            }
            score[c] = s;
        }
        out[static_cast<std::size_t>(i)] = score[0] >= score[1] ? 1 : -1;
    }
    return out;
}

void KNeighbors::fit(const Matrix &x, std::span<const int> labels) {
    check_labels(x, labels);
    if (labels.empty()) {
        throw std::invalid_argument("KNeighbors: empty training set");
    }
    train_ = x;
    labels_.assign(labels.begin(), labels.end());
}

Labels KNeighbors::predict(const Matrix &x) const {
    const auto n = static_cast<std::size_t>(train_.rows());
    const std::size_t k = std::min(k_, n);
    Labels out(static_cast<std::size_t>(x.rows()));
    std::vector<double> dist(n);
    std::vector<std::size_t> order(n);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (std::size_t t = 0; t < n; ++t) {
            dist[t] = (train_.row(static_cast<Eigen::Index>(t)) - x.row(i)).squaredNorm();
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                          order.end(), [&](std::size_t a, std::size_t b) {
                              return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
                          });
        int vote = 0;
        for (std::size_t t = 0; t < k; ++t) {
            vote += labels_[order[t]];
        }
        int label = labels_[order[0]];
        if (vote > 0) {
            label = 1;
        } else if (vote < 0) {
            label = -1;
        }
        out[static_cast<std::size_t>(i)] = label;
    }
    return out;
}

void LogisticRegression::fit(const Matrix &x, std::span<const int> labels) {
    check_labels(x, labels);
    const auto n = static_cast<double>(labels.size());
    Eigen::VectorXd target(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        target(i) = labels[static_cast<std::size_t>(i)] > 0 ? 1.0 : 0.0;
    }
    weights_ = Eigen::VectorXd::Zero(x.cols());
    intercept_ = 0.0;
    for (int it = 0; it < options_.iterations; ++it) {
        const Eigen::VectorXd z = (x * weights_).array() + intercept_;
        const Eigen::VectorXd p = (1.0 / (1.0 + (-z.array()).exp())).matrix();
        const Eigen::VectorXd err = p - target;
        const Eigen::VectorXd grad_w = x.transpose() * err / n + options_.l2 * weights_;
        const double grad_b = err.sum() / n;
        weights_ -= options_.learning_rate * grad_w;
        intercept_ -= options_.learning_rate * grad_b;
    }
}

Labels LogisticRegression::predict(const Matrix &x) const {
    const Eigen::VectorXd z = (x * weights_).array() + intercept_;
    Labels out(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        out[static_cast<std::size_t>(i)] = z(i) >= 0.0 ? 1 : -1;
    }
    return out;
}

} // namespace qsvmf
