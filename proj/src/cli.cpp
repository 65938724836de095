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
#include "qsvmf/cli.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "qsvmf/baselines.hpp"
#include "qsvmf/encoding.hpp"
#include "qsvmf/pipeline.hpp"
#include "qsvmf/qsim.hpp"
#include "qsvmf/report.hpp"
#include "qsvmf/rng.hpp"

namespace qsvmf {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <class T> T parse_number(const std::string &key, const std::string &value) {
    std::istringstream in(value);
    T out{};
    in >> out;
    if (in.fail() || !in.eof()) {
        throw std::invalid_argument("bad value '" + value + "' for " + key);
    }
    return out;
}

/// Writes all files or none: everything goes to temporaries first.
void write_files_atomically(
    const std::filesystem::path &dir,
    const std::vector<std::pair<std::string, std::string>> &files) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> temps;
    try {
        for (const auto &[name, content] : files) {
            const auto tmp = dir / (name + ".tmp");
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            temps.push_back(tmp);
            os << content;
            os.close();
            if (!os) {
                throw std::runtime_error("cannot write " + tmp.string());
            }
        }
        for (std::size_t i = 0; i < files.size(); ++i) {
            std::filesystem::rename(temps[i], dir / files[i].first);
        }
    } catch (...) {
        for (const auto &t : temps) {
            std::error_code ec;
            std::filesystem::remove(t, ec);
        }
        throw;
    }
}

QsvmfConfig to_qsvmf_config(const RunConfig &c) {
    QsvmfConfig q;
    q.ga.population = c.population;
    q.ga.generations = c.generations;
    q.ga.crossover_probability = c.pc;
    q.ga.mutation_probability = c.pm;
    q.ga.restarts = c.restarts;
    q.ga.seed = c.seed;
    q.ga.early_stop_accuracy = c.early_stop;
    q.n_qubits = c.qubits;
    q.k_folds = c.folds;
    q.seed = c.seed;
    q.smo.c = c.svm_c;
    q.scale_lo = c.scale_lo;
    q.scale_hi = c.scale_hi;
    return q;
}

CompareOptions to_compare_options(const RunConfig &c) {
    CompareOptions o;
    o.k_folds = c.folds;
    o.seed = c.seed;
    o.smo.c = c.svm_c;
    o.scale_lo = c.scale_lo;
    o.scale_hi = c.scale_hi;
    return o;
}

template <class Fn> int guarded(std::ostream &err, Fn &&fn) {
    try {
        return fn();
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

void RunConfig::validate(std::size_t min_qubits, std::size_t max_qubits) const {
    if (qubits < min_qubits || qubits > max_qubits) {
        throw std::invalid_argument("qubits must lie in [" + std::to_string(min_qubits) +
                                    ", " + std::to_string(max_qubits) + "], got " +
                                    std::to_string(qubits));
    }
    if (population < 2 || population % 2 != 0) {
        throw std::invalid_argument("pop must be even and at least 2");
    }
    if (!(pc >= 0.0 && pc <= 1.0) || !(pm >= 0.0 && pm <= 1.0)) {
        throw std::invalid_argument("pc and pm must lie in [0, 1]");
    }
    if (folds < 2) {
        throw std::invalid_argument("folds must be at least 2");
    }
    if (restarts < 1) {
        throw std::invalid_argument("restarts must be at least 1");
    }
    if (!(svm_c > 0.0)) {
        throw std::invalid_argument("svm-c must be positive");
    }
    if (!(scale_lo < scale_hi)) {
        throw std::invalid_argument("scale-lo must be below scale-hi");
    }
    if (early_stop && !(*early_stop >= 0.0 && *early_stop <= 1.0)) {
        throw std::invalid_argument("early-stop must lie in [0, 1]");
    }
}

std::string RunConfig::canonical() const {
    std::map<std::string, std::string> kv{
        {"data", data.string()},
        {"early-stop", early_stop ? fmt_double(*early_stop) : "none"},
        {"folds", std::to_string(folds)},
        {"gens", std::to_string(generations)},
        {"pc", fmt_double(pc)},
        {"pm", fmt_double(pm)},
        {"pop", std::to_string(population)},
        {"qubits", std::to_string(qubits)},
        {"restarts", std::to_string(restarts)},
        {"scale-hi", fmt_double(scale_hi)},
        {"scale-lo", fmt_double(scale_lo)},
        {"seed", std::to_string(seed)},
        {"svm-c", fmt_double(svm_c)},
    };
    std::string outs;
    for (const auto &[k, v] : kv) {
        outs += k + "=" + v + "\n";
    }
    return outs;
}

std::string RunConfig::provenance() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a(canonical()));
    return "seed=" + std::to_string(seed) + " config_hash=" + buf;
}

void RunConfig::set(const std::string &key, const std::string &value) {
    if (key == "data") {
        data = value;
    } else if (key == "qubits") {
        qubits = parse_number<std::size_t>(key, value);
    } else if (key == "pop") {
        population = parse_number<std::size_t>(key, value);
    } else if (key == "gens") {
        generations = parse_number<std::size_t>(key, value);
    } else if (key == "pc") {
        pc = parse_number<double>(key, value);
    } else if (key == "pm") {
        pm = parse_number<double>(key, value);
    } else if (key == "folds") {
        folds = parse_number<int>(key, value);
    } else if (key == "seed") {
        seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "restarts") {
        restarts = parse_number<std::size_t>(key, value);
    } else if (key == "svm-c") {
        svm_c = parse_number<double>(key, value);
    } else if (key == "out") {
        out = value;
    } else if (key == "scale-lo") {
        scale_lo = parse_number<double>(key, value);
    } else if (key == "scale-hi") {
        scale_hi = parse_number<double>(key, value);
    } else if (key == "early-stop") {
        early_stop = parse_number<double>(key, value);
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

RunConfig load_config_file(const std::filesystem::path &path, RunConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                        ": expected key=value");
        }
        base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

RowRange RowRange::parse(const std::string &text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("row range '" + text + "' must look like begin:end");
    }
    RowRange r;
    r.begin = parse_number<std::size_t>("row range", text.substr(0, colon));
    r.end = parse_number<std::size_t>("row range", text.substr(colon + 1));
    if (r.end <= r.begin) {
        throw std::invalid_argument("row range '" + text + "' is empty");
    }
    return r;
}

int cmd_select(const RunConfig &config, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        config.validate(2, 12);
        const Dataset ds = load_wdbc(config.data);
        const SelectionReport report = run_qsvmf(ds, to_qsvmf_config(config));
        const std::string prov = config.provenance();
        write_files_atomically(config.out,
                               {{"report.json", report_to_json(report, prov).dump(2) + "\n"},
                                {"history.csv", history_csv(report, prov)},
                                {"pareto.csv", pareto_csv(report, prov)}});
        out << "aggregated features: " << format_indices(report.aggregated_features)
            << "\nmean best accuracy: " << report.mean_best_accuracy
            << "\nretrained accuracy: " << report.retrained_accuracy << "\n";
        return 0;
    });
}

int cmd_baseline(const RunConfig &config, const std::string &method, std::size_t k,
                 std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        config.validate(1, kMaxQubits);
        const ScoreMethod m = parse_method(method);
        const Dataset ds = load_wdbc(config.data);
        if (k < 1 || k > ds.cols()) {
            throw std::invalid_argument("k must lie in [1, " + std::to_string(ds.cols()) +
                                        "], got " + std::to_string(k));
        }
        const FeatureScores scores = m == ScoreMethod::Chi2
                                         ? chi2_scores(ds.features, ds.labels)
                                         : f_regression_scores(ds.features, ds.labels);
        const Indices selected = select_k_best(scores, k);
        const CompareOptions opts = to_compare_options(config);
        out << "# " << config.provenance() << "\n";
        out << "method," << method_name(m) << "\n";
        out << "selected," << format_indices(selected) << "\n";
        out << "classifier,accuracy\n";
        for (const auto c : all_classifiers()) {
            if (c == Classifier::Qsvm) {
                continue;
            }
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.12g", cv_accuracy(ds, selected, c, opts));
            out << classifier_name(c) << "," << buf << "\n";
        }
        return 0;
    });
}

int cmd_compare(const RunConfig &config, const std::optional<Indices> &features,
                const std::optional<std::filesystem::path> &report_path,
                std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        config.validate(1, kMaxQubits);
        if (features.has_value() == report_path.has_value()) {
            throw std::invalid_argument("give exactly one of --features or --report");
        }
        const Dataset ds = load_wdbc(config.data);
        CompareOptions opts = to_compare_options(config);
        Indices selected;
        if (features) {
            selected = *features;
            for (const auto f : selected) {
                if (f >= ds.cols()) {
                    throw std::out_of_range("unknown feature index " + std::to_string(f));
                }
            }
            if (selected.empty()) {
                throw std::invalid_argument("empty feature list");
            }
            opts.qsvm_structure = default_circuit(config.qubits, selected);
        } else {
            std::ifstream in(*report_path);
            if (!in) {
                throw std::runtime_error("cannot open report " + report_path->string());
            }
            const Json j = Json::parse(in);
            selected = j.at("aggregated_features").get<Indices>();
            opts.qsvm_structure = circuit_from_json(j.at("final_circuit"));
        }
        const ComparisonTable table = compare_report(ds, selected, opts);
        const std::string csv = comparison_csv(table, config.provenance());
        write_files_atomically(config.out, {{"compare.csv", csv}});
        out << csv;
        return 0;
    });
}

int cmd_kernel(const RunConfig &config, const std::string &chromosome,
               const RowRange &rows_a, const RowRange &rows_b, std::ostream &out,
               std::ostream &err) {
    return guarded(err, [&] {
        config.validate(1, kMaxQubits);
        const Dataset ds = load_wdbc(config.data);
        const Chromosome c = Chromosome::parse(chromosome, ds.cols(), config.qubits);
        const CircuitSpec spec = decode(c, assignment_seed(c, config.seed));
        for (const auto &r : {rows_a, rows_b}) {
            if (r.end > ds.rows()) {
                throw std::out_of_range("row range beyond " + std::to_string(ds.rows()) +
                                        " rows");
            }
        }
        const Scaler scaler = fit_scaler(ds.features, all_indices(ds.rows()),
                                         config.scale_lo, config.scale_hi);
        const Matrix scaled = apply_scaler(scaler, ds.features);
        const auto block = [&](const RowRange &r) {
            return Matrix(scaled.middleRows(static_cast<Eigen::Index>(r.begin),
                                            static_cast<Eigen::Index>(r.end - r.begin)));
        };
        const Matrix k = kernel_matrix(spec, block(rows_a), block(rows_b));
        write_files_atomically(config.out, {{"kernel.csv", kernel_csv(k, config.provenance())}});

        out << "kernel " << k.rows() << "x" << k.cols() << " written to "
            << (config.out / "kernel.csv").string() << "\n";
        if (rows_a == rows_b) {
            const double diag_dev = (k.diagonal().array() - 1.0).abs().maxCoeff();
            const Matrix sym = 0.5 * (k + k.transpose());
            Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
            char buf[96];
            std::snprintf(buf, sizeof(buf), "max diagonal deviation: %.3e\nmin eigenvalue: %.6e\n",
                          diag_dev, solver.eigenvalues().minCoeff());
            out << buf;
        }
        return 0;
    });
}

namespace {

void add_common_options(CLI::App &cmd, RunConfig &cfg) {
    cmd.add_option("--data", cfg.data, "WDBC data file");
    cmd.add_option("--qubits", cfg.qubits, "Number of qubits");
    cmd.add_option("--pop", cfg.population, "Population size");
    cmd.add_option("--gens", cfg.generations, "Generations");
    cmd.add_option("--pc", cfg.pc, "Crossover probability");
    cmd.add_option("--pm", cfg.pm, "Mutation probability");
    cmd.add_option("--folds", cfg.folds, "Cross-validation folds");
    cmd.add_option("--seed", cfg.seed, "Run seed");
    cmd.add_option("--restarts", cfg.restarts, "NSGA-II restarts per fold");
    cmd.add_option("--svm-c", cfg.svm_c, "SVM box constraint C");
    cmd.add_option("--out", cfg.out, "Output directory");
    cmd.add_option("--scale-lo", cfg.scale_lo, "Lower end of the angle range");
    cmd.add_option("--scale-hi", cfg.scale_hi, "Upper end of the angle range");
    cmd.add_option_function<double>(
        "--early-stop", [&cfg](const double &v) { cfg.early_stop = v; },
        "Stop a run once this accuracy is reached");
    cmd.add_option("--config", "key=value settings file (flags override it)");
}

/// The config file must be applied before flags, so it is located first.
std::optional<std::string> find_config_arg(int argc, const char *const *argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            return std::string(argv[i + 1]);
        }
        if (arg.rfind("--config=", 0) == 0) {
            return arg.substr(9);
        }
    }
    return std::nullopt;
}

Indices parse_feature_list(const std::string &text) {
    Indices out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(item, &pos);
        } catch (const std::exception &) {
            pos = 0;
        }
        if (pos != item.size() || v < 0) {
            throw std::invalid_argument("bad feature index '" + item + "'");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    try {
        if (const auto path = find_config_arg(argc, argv)) {
            cfg = load_config_file(*path, cfg);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Quantum-kernel SVM feature selection with NSGA-II"};
    app.require_subcommand(1);

    auto *select = app.add_subcommand("select", "Run QSVMF feature selection");
    add_common_options(*select, cfg);

    std::string method = "chi2";
    std::size_t k = 0;
    auto *baseline = app.add_subcommand("baseline", "SelectKBest baseline with classical classifiers");
    add_common_options(*baseline, cfg);
    baseline->add_option("--method", method, "chi2 or f_regression")->required();
    baseline->add_option("--k", k, "Number of features to keep")->required();

    std::string feature_text;
    std::string report_text;
    auto *compare = app.add_subcommand("compare", "Classifier x feature-set accuracy grid");
    add_common_options(*compare, cfg);
    auto *feat_opt = compare->add_option("--features", feature_text, "Comma-separated feature indices");
    auto *rep_opt = compare->add_option("--report", report_text, "report.json from a select run");
    feat_opt->excludes(rep_opt);

    std::string chromosome;
    std::string range_a;
    std::string range_b;
    auto *kernel = app.add_subcommand("kernel", "Dump a quantum kernel matrix");
    add_common_options(*kernel, cfg);
    kernel->add_option("--chromosome", chromosome, "0/1 chromosome string")->required();
    kernel->add_option("--rows-a", range_a, "Row range begin:end")->required();
    kernel->add_option("--rows-b", range_b, "Row range begin:end (defaults to --rows-a)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }

    if (*select) {
        return cmd_select(cfg, out, err);
    }
    if (*baseline) {
        return cmd_baseline(cfg, method, k, out, err);
    }
    if (*compare) {
        return guarded(err, [&] {
            std::optional<Indices> features;
            std::optional<std::filesystem::path> report;
            if (*feat_opt) {
                features = parse_feature_list(feature_text);
            }
            if (*rep_opt) {
                report = report_text;
            }
            return cmd_compare(cfg, features, report, out, err);
        });
    }
    return guarded(err, [&] {
        const RowRange a = RowRange::parse(range_a);
        const RowRange b = range_b.empty() ? a : RowRange::parse(range_b);
        return cmd_kernel(cfg, chromosome, a, b, out, err);
    });
}

} // namespace qsvmf
