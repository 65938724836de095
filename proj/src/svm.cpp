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
#include "qsvmf/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qsvmf {

namespace {

constexpr double kTau = 1e-12;
constexpr double kSymmetryTol = 1e-9;

bool in_up(int y, double a, double c) {
    return (y > 0 && a < c) || (y < 0 && a > 0.0);
}

bool in_low(int y, double a, double c) {
    return (y > 0 && a > 0.0) || (y < 0 && a < c);
}

} // namespace

SvmModel smo_train(const Matrix &kernel, std::span<const int> labels,
                   const SmoOptions &options) {
    const auto n = static_cast<std::size_t>(kernel.rows());
    if (kernel.rows() != kernel.cols() || labels.size() != n) {
        throw std::invalid_argument("smo_train: kernel/label shape mismatch");
    }
    if (!(options.c > 0.0)) {
        throw std::invalid_argument("smo_train: C must be positive");
    }
    for (const int y : labels) {
        if (y != 1 && y != -1) {
            throw std::invalid_argument("smo_train: labels must be +1 or -1");
        }
    }
    for (Eigen::Index i = 0; i < kernel.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < kernel.cols(); ++j) {
            if (std::abs(kernel(i, j) - kernel(j, i)) > kSymmetryTol) {
                throw std::invalid_argument(
                    "smo_train: kernel not symmetric at (" + std::to_string(i) +
                    ", " + std::to_string(j) + ")");
            }
        }
    }

    const double c = options.c;
    std::vector<double> alpha(n, 0.0);
    // Gradient of the minimization form 1/2 a'Qa - e'a.
    std::vector<double> grad(n, -1.0);
    auto q = [&](std::size_t i, std::size_t j) {
        return static_cast<double>(labels[i] * labels[j]) *
               kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    };

    const long budget = static_cast<long>(options.max_passes) *
                        static_cast<long>(std::max<std::size_t>(n, 1));
    long iter = 0;
    bool converged = false;
    while (true) {
        // i maximizes -y G over the up set.
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i_sel = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (in_up(labels[t], alpha[t], c)) {
                const double v = -labels[t] * grad[t];
                if (v > gmax) {
                    gmax = v;
                    i_sel = t;
                }
            }
        }
        double gmax2 = -std::numeric_limits<double>::infinity();
        std::size_t j_sel = n;
        double best_obj = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            if (!in_low(labels[t], alpha[t], c)) {
                continue;
            }
            const double v = labels[t] * grad[t];
            gmax2 = std::max(gmax2, v);
            if (i_sel == n) {
                continue;
            }
            const double b = gmax + v;
            if (b > 0.0) {
                double a = q(i_sel, i_sel) + q(t, t) -
                           2.0 * labels[i_sel] * labels[t] * q(i_sel, t);
                if (a <= 0.0) {
                    a = kTau;
                }
                const double obj = -(b * b) / a;
                if (obj < best_obj) {
                    best_obj = obj;
                    j_sel = t;
                }
            }
        }
        if (i_sel == n || j_sel == n || gmax + gmax2 < options.tol) {
            converged = true;
            break;
        }
        if (iter >= budget) {
            break;
        }
        ++iter;

        const std::size_t i = i_sel;
        const std::size_t j = j_sel;
        const double old_ai = alpha[i];
        const double old_aj = alpha[j];
        const double qii = q(i, i);
        const double qjj = q(j, j);
        const double qij = q(i, j);
        if (labels[i] != labels[j]) {
            double quad = qii + qjj + 2.0 * qij;
            if (quad <= 0.0) {
                quad = kTau;
            }
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if (alpha[j] > c) {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            double quad = qii + qjj - 2.0 * qij;
            if (quad <= 0.0) {
                quad = kTau;
            }
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > c) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if (alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if (sum > c) {
                if (alpha[j] > c) {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        const double dai = alpha[i] - old_ai;
        const double daj = alpha[j] - old_aj;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += q(t, i) * dai + q(t, j) * daj;
        }
    }

    // Bias: average over free multipliers, else the middle of the feasible
    // interval. With one label only, the interval is one-sided.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = labels[t] * grad[t];
        if (alpha[t] >= c) {
            if (labels[t] < 0) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else if (alpha[t] <= 0.0) {
            if (labels[t] > 0) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else {
            ++n_free;
            free_sum += yg;
        }
    }
    double rho = 0.0;
    if (n_free > 0) {
        rho = free_sum / static_cast<double>(n_free);
    } else if (std::isfinite(ub) && std::isfinite(lb)) {
        rho = 0.5 * (ub + lb);
    } else if (std::isfinite(ub)) {
        rho = ub;
    } else if (std::isfinite(lb)) {
        rho = lb;
    }

    SvmModel model;
    model.alphas = std::move(alpha);
    model.bias = -rho;
    model.labels.assign(labels.begin(), labels.end());
    model.c = c;
    model.converged = converged;
    model.iterations = iter;
    for (std::size_t t = 0; t < n; ++t) {
        if (model.alphas[t] > kSupportThreshold) {
            model.support.push_back(t);
        }
    }
    return model;
}

std::vector<double> decision_values(const SvmModel &model,
                                    const Matrix &kernel_test_train) {
    if (static_cast<std::size_t>(kernel_test_train.cols()) != model.alphas.size()) {
        throw std::invalid_argument(
            "decision_values: kernel has " +
            std::to_string(kernel_test_train.cols()) + " columns, model has " +
            std::to_string(model.alphas.size()) + " training points");
    }
    std::vector<double> out(static_cast<std::size_t>(kernel_test_train.rows()),
                            model.bias);
    for (Eigen::Index r = 0; r < kernel_test_train.rows(); ++r) {
        double f = 0.0;
        for (const auto i : model.support) {
            f += model.alphas[i] * model.labels[i] *
                 kernel_test_train(r, static_cast<Eigen::Index>(i));
        }
        out[static_cast<std::size_t>(r)] += f;
    }
    return out;
}

Labels predict(const SvmModel &model, const Matrix &kernel_test_train) {
    const auto f = decision_values(model, kernel_test_train);
    Labels out(f.size());
    std::transform(f.begin(), f.end(), out.begin(),
                   [](double v) { return v >= 0.0 ? 1 : -1; });
    return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size()) {
        throw std::invalid_argument("accuracy: length mismatch");
    }
    if (truth.empty()) {
        return 0.0;
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        hits += predicted[i] == truth[i] ? 1U : 0U;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double dual_objective(const SvmModel &model, const Matrix &kernel) {
    double linear = 0.0;
    double quad = 0.0;
    for (const auto i : model.support) {
        linear += model.alphas[i];
        for (const auto j : model.support) {
            quad += model.alphas[i] * model.alphas[j] * model.labels[i] *
                    model.labels[j] *
                    kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return linear - 0.5 * quad;
}

double max_kkt_residual(const SvmModel &model, const Matrix &kernel) {
    const auto f = decision_values(model, kernel);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double margin = model.labels[i] * f[i];
        const double a = model.alphas[i];
        double r = 0.0;
        if (a <= 0.0) {
            r = std::max(0.0, 1.0 - margin);
        } else if (a >= model.c) {
            r = std::max(0.0, margin - 1.0);
        } else {
            r = std::abs(margin - 1.0);
        }
        worst = std::max(worst, r);
    }
    return worst;
}

double scale_gamma(const Matrix &x) {
    if (x.size() == 0) {
        return 1.0;
    }
    const double mean = x.mean();
    const double var = (x.array() - mean).square().mean();
    if (var <= 0.0) {
        return 1.0;
    }
    return 1.0 / (static_cast<double>(x.cols()) * var);
}

ClassicalKernelSpec resolve_kernel(ClassicalKernelSpec spec, const Matrix &train) {
    if (!spec.gamma) {
        spec.gamma = scale_gamma(train);
    }
    if (!spec.coef0) {
        spec.coef0 = spec.kind == KernelKind::Poly ? 1.0 : 0.0;
    }
    return spec;
}

Matrix classical_kernel(const ClassicalKernelSpec &spec, const Matrix &rows_a,
                        const Matrix &rows_b) {
    if (rows_a.cols() != rows_b.cols()) {
        throw std::invalid_argument("classical_kernel: column counts differ");
    }
    if (spec.kind == KernelKind::Linear) {
        return rows_a * rows_b.transpose();
    }
    const double gamma = spec.gamma.value_or(scale_gamma(rows_a));
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("classical_kernel: gamma must be positive");
    }
    const double coef0 =
        spec.coef0.value_or(spec.kind == KernelKind::Poly ? 1.0 : 0.0);
    Matrix dot = rows_a * rows_b.transpose();
    switch (spec.kind) {
    case KernelKind::Poly:
        return (gamma * dot.array() + coef0).pow(spec.degree).matrix();
    case KernelKind::Sigmoid:
        return (gamma * dot.array() + coef0).tanh().matrix();
    case KernelKind::Rbf: {
        const Eigen::VectorXd na = rows_a.rowwise().squaredNorm();
        const Eigen::VectorXd nb = rows_b.rowwise().squaredNorm();
        Matrix out(rows_a.rows(), rows_b.rows());
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            for (Eigen::Index j = 0; j < out.cols(); ++j) {
                const double d2 = std::max(0.0, na(i) + nb(j) - 2.0 * dot(i, j));
                out(i, j) = std::exp(-gamma * d2);
            }
        }
        return out;
    }
    case KernelKind::Linear:
        break;
    }
    return dot;
}

} // namespace qsvmf
