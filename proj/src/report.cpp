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
#include "qsvmf/report.hpp"

#include <cstdio>
#include <sstream>

namespace qsvmf {

namespace {

std::string fixed12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Json objectives_to_json(const Objectives &obj) {
    return Json{{"accuracy", 1.0 - obj[kError]},
                {"error", obj[kError]},
                {"local_gates", obj[kLocalGates]},
                {"cnot_gates", obj[kCnotGates]},
                {"features", obj[kFeatureCount]},
                {"covariance", obj[kCovariance]}};
}

Json solution_to_json(const ParetoSolution &s) {
    return Json{{"chromosome", s.chromosome.to_string()},
                {"selected_features", s.features},
                {"objectives", objectives_to_json(s.objectives)},
                {"circuit", circuit_to_json(s.circuit)}};
}

} // namespace

Json circuit_to_json(const CircuitSpec &c) {
    Json pairs = Json::array();
    for (const auto &[j, k] : c.entangler_pairs) {
        pairs.push_back(Json::array({j, k}));
    }
    Json flags = Json::array();
    for (const bool b : c.rotation_flags) {
        flags.push_back(b ? 1 : 0);
    }
    return Json{{"n_qubits", c.n_qubits()},
                {"selected_features", c.selected_features},
                {"qubit_feature", c.qubit_feature},
                {"rotation_flags", flags},
                {"axis", std::string(1, axis_name(c.axis))},
                {"entangler_pairs", pairs},
                {"repetitions", c.repetitions}};
}

CircuitSpec circuit_from_json(const Json &j) {
    CircuitSpec c;
    c.selected_features = j.at("selected_features").get<Indices>();
    c.qubit_feature = j.at("qubit_feature").get<Indices>();
    for (const auto &f : j.at("rotation_flags")) {
        c.rotation_flags.push_back(f.get<int>() != 0);
    }
    const std::string axis = j.at("axis").get<std::string>();
    if (axis == "I") {
        c.axis = Axis::I;
    } else if (axis == "X") {
        c.axis = Axis::X;
    } else if (axis == "Y") {
        c.axis = Axis::Y;
    } else if (axis == "Z") {
        c.axis = Axis::Z;
    } else {
        throw std::invalid_argument("unknown axis '" + axis + "' in circuit");
    }
    for (const auto &p : j.at("entangler_pairs")) {
        c.entangler_pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
    }
    c.repetitions = j.at("repetitions").get<int>();
    if (c.rotation_flags.size() != c.qubit_feature.size() || c.repetitions < 1) {
        throw std::invalid_argument("inconsistent circuit description");
    }
    return c;
}

Json report_to_json(const SelectionReport &report, const std::string &provenance) {
    const auto &cfg = report.config;
    Json config{{"qubits", cfg.n_qubits},
                {"folds", cfg.k_folds},
                {"seed", cfg.seed},
                {"population", cfg.ga.population},
                {"generations", cfg.ga.generations},
                {"crossover_probability", cfg.ga.crossover_probability},
                {"mutation_probability", cfg.ga.mutation_probability},
                {"restarts", cfg.ga.restarts},
                {"svm_c", cfg.smo.c},
                {"svm_tol", cfg.smo.tol},
                {"scale_lo", cfg.scale_lo},
                {"scale_hi", cfg.scale_hi}};

    Json folds = Json::array();
    for (const auto &fold : report.folds) {
        Json front = Json::array();
        for (const auto &s : fold.front) {
            front.push_back(solution_to_json(s));
        }
        Json minimal = Json::array();
        for (const auto &s : fold.minimal) {
            minimal.push_back(Json{{"selected_features", s.features},
                                   {"accuracy", s.accuracy()},
                                   {"chromosome", s.chromosome.to_string()}});
        }
        folds.push_back(Json{{"fold", fold.fold},
                             {"best_index", fold.best},
                             {"best_accuracy", fold.front[fold.best].accuracy()},
                             {"best_features", fold.front[fold.best].features},
                             {"minimal_feature_solutions", minimal},
                             {"pareto_front", front}});
    }

    return Json{{"provenance", provenance},
                {"config", config},
                {"aggregated_features", report.aggregated_features},
                {"m", report.m},
                {"best_fold", report.best_fold},
                {"mean_best_accuracy", report.mean_best_accuracy},
                {"retrained_accuracy", report.retrained_accuracy},
                {"best_gate_counts",
                 Json{{"mean_local", report.mean_best_local_gates},
                      {"mean_cnot", report.mean_best_cnot_gates}}},
                {"final_circuit", circuit_to_json(report.final_circuit)},
                {"folds", folds}};
}

std::string history_csv(const SelectionReport &report, const std::string &provenance) {
    std::ostringstream out;
    out << "# " << provenance << "\n";
    out << "fold,generation,best_accuracy,min_gates,min_features,min_covariance\n";
    for (const auto &fold : report.folds) {
        for (const auto &h : fold.history) {
            out << fold.fold << ',' << h.generation << ',' << fixed12(1.0 - h.best[kError])
                << ',' << fixed12(h.best[kLocalGates] + h.best[kCnotGates]) << ','
                << fixed12(h.best[kFeatureCount]) << ',' << fixed12(h.best[kCovariance])
                << '\n';
        }
    }
    return out.str();
}

std::string pareto_csv(const SelectionReport &report, const std::string &provenance) {
    std::ostringstream out;
    out << "# " << provenance << "\n";
    out << "fold,bits,error,local_gates,cnot_gates,features,covariance\n";
    for (const auto &fold : report.folds) {
        for (const auto &s : fold.front) {
            out << fold.fold << ',' << s.chromosome.to_string();
            for (const double v : s.objectives) {
                out << ',' << fixed12(v);
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string comparison_csv(const ComparisonTable &table, const std::string &provenance) {
    std::ostringstream out;
    out << "# " << provenance << "\n";
    out << "classifier";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << ',' << table.columns[c] << ' ' << format_indices(table.column_features[c]);
    }
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << classifier_name(table.rows[r]);
        for (const double v : table.accuracy[r]) {
            out << ',' << fixed12(v);
        }
        out << '\n';
    }
    return out.str();
}

std::string kernel_csv(const Matrix &kernel, const std::string &provenance) {
    std::ostringstream out;
    out << "# " << provenance << "\n";
    for (Eigen::Index i = 0; i < kernel.rows(); ++i) {
        for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << fixed12(kernel(i, j));
        }
        out << '\n';
    }
    return out.str();
}

std::string format_indices(const Indices &indices) {
    std::string out = "[";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += std::to_string(indices[i]);
    }
    return out + "]";
}

} // namespace qsvmf
