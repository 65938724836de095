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
 * Serialization of selection reports, Pareto fronts, run histories,
 * comparison grids and kernel dumps. Every CSV starts with a "#" line
 * carrying the provenance string; JSON carries it as a "provenance" field.
 */
#pragma once

#include <string>

#include <json.hpp>

#include "qsvmf/pipeline.hpp"

namespace qsvmf {

using Json = nlohmann::ordered_json;

Json circuit_to_json(const CircuitSpec &circuit);
CircuitSpec circuit_from_json(const Json &j);

Json report_to_json(const SelectionReport &report, const std::string &provenance);

/// fold,generation,best_accuracy,min_gates,min_features,min_covariance
std::string history_csv(const SelectionReport &report, const std::string &provenance);

/// fold,bits,error,local_gates,cnot_gates,features,covariance
std::string pareto_csv(const SelectionReport &report, const std::string &provenance);

/// One row per classifier, one column per feature set.
std::string comparison_csv(const ComparisonTable &table, const std::string &provenance);

/// Row-major reals with 12 significant digits.
std::string kernel_csv(const Matrix &kernel, const std::string &provenance);

std::string format_indices(const Indices &indices);

} // namespace qsvmf
