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
#include "qsvmf/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "qsvmf/rng.hpp"

namespace qsvmf {

namespace {

constexpr std::size_t kWdbcFields = 32;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

bool parse_double(const std::string &text, double &value) {
    if (text.empty()) {
        return false;
    }
    const char *begin = text.data();
    const char *end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc{} && ptr == end && std::isfinite(value);
}

bool is_numeric(const std::string &text) {
    double ignored = 0.0;
    return parse_double(text, ignored);
}

} // namespace

const std::vector<std::string> &wdbc_feature_names() {
    static const std::vector<std::string> names = [] {
        const char *stats[] = {"mean", "error", "worst"};
        const char *props[] = {"radius",         "texture",
                               "perimeter",      "area",
                               "smoothness",     "compactness",
                               "concavity",      "concave points",
                               "symmetry",       "fractal dimension"};
        std::vector<std::string> out;
        for (int s = 0; s < 3; ++s) {
            for (const char *p : props) {
                if (s == 1) {
                    out.push_back(std::string(p) + " error");
                } else {
                    out.push_back(std::string(stats[s]) + " " + p);
                }
            }
        }
        return out;
    }();
    return names;
}

Dataset parse_wdbc(std::istream &in) {
    std::vector<std::vector<double>> rows;
    Labels labels;
    std::string line;
    std::size_t line_no = 0;
    bool first_record = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (first_record && !fields.empty() && !is_numeric(fields[0])) {
            first_record = false;
            continue;
        }
        first_record = false;
        if (fields.size() != kWdbcFields) {
            throw ParseError(line_no, "expected " + std::to_string(kWdbcFields) +
                                          " fields, found " +
                                          std::to_string(fields.size()));
        }
        int label = 0;
        if (fields[1] == "M") {
            label = +1;
        } else if (fields[1] == "B") {
            label = -1;
        } else {
            throw ParseError(line_no, "unknown diagnosis '" + fields[1] + "'");
        }
        std::vector<double> values(kWdbcFields - 2);
        for (std::size_t j = 2; j < kWdbcFields; ++j) {
            if (!parse_double(fields[j], values[j - 2])) {
                throw ParseError(line_no, "feature " + std::to_string(j - 2) +
                                              " is not a finite number: '" +
                                              fields[j] + "'");
            }
        }
        rows.push_back(std::move(values));
        labels.push_back(label);
    }
    if (rows.empty()) {
        throw ParseError(line_no, "no data rows");
    }

    Dataset ds;
    ds.features.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(kWdbcFields - 2));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            ds.features(static_cast<Eigen::Index>(i),
                        static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    ds.labels = std::move(labels);
    ds.feature_names = wdbc_feature_names();
    return ds;
}

Dataset load_wdbc(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset file " + path.string());
    }
    return parse_wdbc(in);
}

Matrix select_rows(const Matrix &m, std::span<const std::size_t> rows) {
    Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) =
            m.row(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
}

Labels select_labels(const Labels &labels, std::span<const std::size_t> rows) {
    Labels out;
    out.reserve(rows.size());
    for (const auto r : rows) {
        out.push_back(labels.at(r));
    }
    return out;
}

Scaler fit_scaler(const Matrix &features, std::span<const std::size_t> rows,
                  double lo, double hi) {
    if (rows.empty()) {
        throw std::invalid_argument("fit_scaler: no rows");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("fit_scaler: lo must be below hi");
    }
    Scaler s;
    s.lo = lo;
    s.hi = hi;
    const auto p = static_cast<std::size_t>(features.cols());
    s.min.assign(p, 0.0);
    s.max.assign(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        double mn = features(static_cast<Eigen::Index>(rows[0]), col);
        double mx = mn;
        for (const auto r : rows) {
            const double v = features(static_cast<Eigen::Index>(r), col);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        s.min[j] = mn;
        s.max[j] = mx;
    }
    return s;
}

Matrix apply_scaler(const Scaler &scaler, const Matrix &features) {
    if (static_cast<std::size_t>(features.cols()) != scaler.min.size()) {
        throw std::invalid_argument("apply_scaler: column count mismatch");
    }
    Matrix out(features.rows(), features.cols());
    const double span = scaler.hi - scaler.lo;
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const double width = scaler.max[jj] - scaler.min[jj];
        for (Eigen::Index i = 0; i < features.rows(); ++i) {
            if (width <= 0.0) {
                out(i, j) = scaler.lo;
                continue;
            }
            const double v =
                scaler.lo + (features(i, j) - scaler.min[jj]) * span / width;
            out(i, j) = std::clamp(v, scaler.lo, scaler.hi);
        }
    }
    return out;
}

Indices FoldPlan::test_rows(int fold) const {
    Indices out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] == fold) {
            out.push_back(i);
        }
    }
    return out;
}

Indices FoldPlan::train_rows(int fold) const {
    Indices out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] != fold) {
            out.push_back(i);
        }
    }
    return out;
}

FoldPlan stratified_kfold(std::span<const int> labels, int k,
                          std::uint64_t seed) {
    if (k < 2) {
        throw std::invalid_argument("stratified_kfold: k must be at least 2");
    }
    // Classes in descending label order so +1 is dealt first.
    std::map<int, Indices, std::greater<>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class[labels[i]].push_back(i);
    }
    for (const auto &[label, members] : by_class) {
        if (members.size() < static_cast<std::size_t>(k)) {
            throw std::invalid_argument(
                "stratified_kfold: class " + std::to_string(label) + " has " +
                std::to_string(members.size()) + " members, fewer than k=" +
                std::to_string(k));
        }
    }

    FoldPlan plan;
    plan.k = k;
    plan.assignments.assign(labels.size(), -1);
    Rng rng(seed);
    std::size_t next_fold = 0;
    for (auto &[label, members] : by_class) {
        rng.shuffle(std::span<std::size_t>(members));
        for (const auto row : members) {
            plan.assignments[row] = static_cast<int>(next_fold);
            next_fold = (next_fold + 1) % static_cast<std::size_t>(k);
        }
    }
    return plan;
}

namespace {

std::vector<double> standardized_column(const Matrix &features,
                                        std::span<const std::size_t> rows,
                                        std::size_t column) {
    const auto col = static_cast<Eigen::Index>(column);
    const double n = static_cast<double>(rows.size());
    double mean = 0.0;
    for (const auto r : rows) {
        mean += features(static_cast<Eigen::Index>(r), col);
    }
    mean /= n;
    double var = 0.0;
    for (const auto r : rows) {
        const double d = features(static_cast<Eigen::Index>(r), col) - mean;
        var += d * d;
    }
    var /= n;
    std::vector<double> z(rows.size(), 0.0);
    if (var <= 0.0) {
        return z;
    }
    const double sd = std::sqrt(var);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        z[i] = (features(static_cast<Eigen::Index>(rows[i]), col) - mean) / sd;
    }
    return z;
}

} // namespace

double pairwise_covariance_score(const Matrix &features,
                                 std::span<const std::size_t> rows,
                                 std::span<const std::size_t> columns) {
    if (columns.size() < 2 || rows.empty()) {
        return 0.0;
    }
    for (const auto c : columns) {
        if (c >= static_cast<std::size_t>(features.cols())) {
            throw std::out_of_range("pairwise_covariance_score: column " +
                                    std::to_string(c) + " out of range");
        }
    }
    std::vector<std::vector<double>> z;
    z.reserve(columns.size());
    for (const auto c : columns) {
        z.push_back(standardized_column(features, rows, c));
    }
    const double n = static_cast<double>(rows.size());
    double total = 0.0;
    for (std::size_t a = 0; a < z.size(); ++a) {
        for (std::size_t b = a + 1; b < z.size(); ++b) {
            double cov = 0.0;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                cov += z[a][i] * z[b][i];
            }
            total += std::abs(cov / n);
        }
    }
    return total;
}

double pairwise_covariance_score(const Matrix &features,
                                 std::span<const std::size_t> columns) {
    const auto rows = all_indices(static_cast<std::size_t>(features.rows()));
    return pairwise_covariance_score(features, rows, columns);
}

std::vector<double> column_variances(const Matrix &features,
                                     std::span<const std::size_t> rows,
                                     std::span<const std::size_t> columns) {
    std::vector<double> out;
    const double n = static_cast<double>(rows.size());
    for (const auto c : columns) {
        const auto col = static_cast<Eigen::Index>(c);
        double mean = 0.0;
        for (const auto r : rows) {
            mean += features(static_cast<Eigen::Index>(r), col);
        }
        mean /= n;
        double var = 0.0;
        for (const auto r : rows) {
            const double d = features(static_cast<Eigen::Index>(r), col) - mean;
            var += d * d;
        }
        out.push_back(var / n);
    }
    return out;
}

Indices all_indices(std::size_t n) {
    Indices out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = i;
    }
    return out;
}

} // namespace qsvmf
