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
 * Command implementations behind the qsvmf executable.
 *
 * Settings come from an optional flat key=value file (keys are the long
 * flag names without dashes, "#" starts a comment) and are then overridden
 * by command-line flags.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qsvmf/data.hpp"

namespace qsvmf {

struct RunConfig {
    std::filesystem::path data = "data/wdbc.data";
    std::size_t qubits = 4;
    std::size_t population = 100;
    std::size_t generations = 100;
    double pc = 0.2;
    double pm = 0.2;
    int folds = 5;
    std::uint64_t seed = 7;
    std::size_t restarts = 1;
    double svm_c = 1.0;
    std::filesystem::path out = ".";
    double scale_lo = 0.0;
    double scale_hi = std::numbers::pi;
    std::optional<double> early_stop;

    /// Throws std::invalid_argument on the first bad field.
    void validate(std::size_t min_qubits, std::size_t max_qubits) const;

    /// Sorted key=value lines over every field.
    [[nodiscard]] std::string canonical() const;
    /// "seed=<seed> config_hash=<16 hex digits>"
    [[nodiscard]] std::string provenance() const;

    /// Applies one key=value setting; unknown keys throw.
    void set(const std::string &key, const std::string &value);
};

RunConfig load_config_file(const std::filesystem::path &path, RunConfig base = {});

/// Half-open row range parsed from "begin:end".
struct RowRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    static RowRange parse(const std::string &text);
    friend bool operator==(const RowRange &, const RowRange &) = default;
};

/// Writes report.json, history.csv and pareto.csv. Nothing is left behind
/// on failure.
int cmd_select(const RunConfig &config, std::ostream &out, std::ostream &err);

int cmd_baseline(const RunConfig &config, const std::string &method,
                 std::size_t k, std::ostream &out, std::ostream &err);

/// Exactly one of features / report_path is used. Writes compare.csv.
int cmd_compare(const RunConfig &config, const std::optional<Indices> &features,
                const std::optional<std::filesystem::path> &report_path,
                std::ostream &out, std::ostream &err);

/// Writes kernel.csv and prints the diagonal deviation and minimum
/// eigenvalue.
int cmd_kernel(const RunConfig &config, const std::string &chromosome,
               const RowRange &rows_a, const RowRange &rows_b,
               std::ostream &out, std::ostream &err);

/// Full command-line entry point.
int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

} // namespace qsvmf
