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
#include "qsvmf/moga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qsvmf {

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dominates: objective arity differs");
    }
    bool strictly_better = false;
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m] > b[m]) {
            return false;
        }
        if (a[m] < b[m]) {
            strictly_better = true;
        }
    }
    return strictly_better;
}

Fronts fast_nondominated_sort(std::span<const Objectives> objectives) {
    const std::size_t n = objectives.size();
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    Fronts fronts;
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(objectives[p], objectives[q])) {
                dominated_by_me[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(objectives[q], objectives[p])) {
                dominated_by_me[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) {
            current.push_back(p);
        }
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (const auto p : current) {
            for (const auto q : dominated_by_me[p]) {
                if (--domination_count[q] == 0) {
                    next.push_back(q);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const Objectives> front) {
    const std::size_t n = front.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < kObjectiveCount; ++m) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return front[a][m] < front[b][m];
                         });
        const double range = front[order.back()][m] - front[order.front()][m];
        if (range <= 0.0) {
            continue;
        }
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            distance[order[k]] +=
                (front[order[k + 1]][m] - front[order[k - 1]][m]) / range;
        }
    }
    return distance;
}

Fronts assign_rank_and_crowding(std::vector<Individual> &population) {
    std::vector<Objectives> objs;
    objs.reserve(population.size());
    for (const auto &ind : population) {
        objs.push_back(ind.objectives);
    }
    Fronts fronts = fast_nondominated_sort(objs);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        std::vector<Objectives> front_objs;
        front_objs.reserve(fronts[r].size());
        for (const auto idx : fronts[r]) {
            front_objs.push_back(objs[idx]);
        }
        const auto cd = crowding_distance(front_objs);
        for (std::size_t k = 0; k < fronts[r].size(); ++k) {
            population[fronts[r][k]].rank = static_cast<int>(r);
            population[fronts[r][k]].crowding = cd[k];
        }
    }
    return fronts;
}

bool crowded_less(const Individual &a, std::size_t index_a,
                  const Individual &b, std::size_t index_b) {
    if (a.rank != b.rank) {
        return a.rank < b.rank;
    }
    if (a.crowding != b.crowding) {
        return a.crowding > b.crowding;
    }
    return index_a < index_b;
}

std::size_t tournament_select(std::span<const Individual> population, Rng &rng,
                              std::size_t tournament_size) {
    if (population.empty()) {
        throw std::invalid_argument("tournament_select: empty population");
    }
    std::size_t winner = rng.below(population.size());
    for (std::size_t t = 1; t < tournament_size; ++t) {
        const std::size_t challenger = rng.below(population.size());
        if (crowded_less(population[challenger], challenger, population[winner],
                         winner)) {
            winner = challenger;
        }
    }
    return winner;
}

std::pair<Chromosome, Chromosome> two_point_crossover(const Chromosome &a,
                                                      const Chromosome &b,
                                                      std::size_t first_cut,
                                                      std::size_t second_cut) {
    if (a.bits.size() != b.bits.size()) {
        throw std::invalid_argument("crossover: parent lengths differ");
    }
    if (first_cut > second_cut || second_cut > a.bits.size()) {
        throw std::invalid_argument("crossover: invalid cut points");
    }
    Chromosome ca = a;
    Chromosome cb = b;
    for (std::size_t i = first_cut; i < second_cut; ++i) {
        std::swap(ca.bits[i], cb.bits[i]);
    }
    return {std::move(ca), std::move(cb)};
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome &a,
                                            const Chromosome &b,
                                            double probability, Rng &rng) {
    const std::size_t len = a.bits.size();
    if (!rng.bernoulli(probability) || len < 3) {
        return {a, b};
    }
    std::size_t first = 1 + rng.below(len - 1);
    std::size_t second = 1 + rng.below(len - 2);
    if (second >= first) {
        ++second;
    }
    if (first > second) {
        std::swap(first, second);
    }
    return two_point_crossover(a, b, first, second);
}

void mutate(Chromosome &child, double probability, Rng &rng) {
    if (!rng.bernoulli(probability) || child.bits.empty()) {
        return;
    }
    const double per_bit = 1.0 / static_cast<double>(child.bits.size());
    for (auto &bit : child.bits) {
        if (rng.bernoulli(per_bit)) {
            bit ^= 1U;
        }
    }
}

void GaConfig::validate() const {
    if (population < 2 || population % 2 != 0) {
        throw std::invalid_argument("population must be even and at least 2");
    }
    auto check_prob = [](double p, const char *name) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(std::string(name) +
                                        " probability must lie in [0, 1]");
        }
    };
    check_prob(crossover_probability, "crossover");
    check_prob(mutation_probability, "mutation");
    if (tournament_size < 1) {
        throw std::invalid_argument("tournament size must be positive");
    }
    if (restarts < 1) {
        throw std::invalid_argument("restarts must be at least 1");
    }
}

namespace {

Objectives evaluate_checked(const Evaluator &evaluator, const Chromosome &c) {
    Objectives obj{};
    try {
        obj = evaluator(c);
    } catch (const std::exception &e) {
        throw EvaluationError(c.to_string(), e.what());
    }
    for (const double v : obj) {
        if (!std::isfinite(v)) {
            throw EvaluationError(c.to_string(), "non-finite objective");
        }
    }
    return obj;
}

GenerationStats stats_of(std::size_t generation,
                         const std::vector<Individual> &population) {
    GenerationStats s;
    s.generation = generation;
    s.best.fill(std::numeric_limits<double>::infinity());
    for (const auto &ind : population) {
        for (std::size_t m = 0; m < kObjectiveCount; ++m) {
            s.best[m] = std::min(s.best[m], ind.objectives[m]);
        }
    }
    return s;
}

bool reached_target(const GaConfig &config, const GenerationStats &s) {
    return config.early_stop_accuracy &&
           1.0 - s.best[kError] >= *config.early_stop_accuracy;
}

} // namespace

EvolutionResult evolve(const GaConfig &config, std::size_t n_features,
                       std::size_t n_qubits, const Evaluator &evaluator) {
    config.validate();
    Rng rng(config.seed);

    std::vector<Individual> population(config.population);
    for (auto &ind : population) {
        ind.chromosome = random_chromosome(n_features, n_qubits, rng);
    }
    for (auto &ind : population) {
        ind.objectives = evaluate_checked(evaluator, ind.chromosome);
    }
    EvolutionResult result;
    result.fronts = assign_rank_and_crowding(population);
    result.history.push_back(stats_of(0, population));

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        if (reached_target(config, result.history.back())) {
            break;
        }
        std::vector<Individual> offspring;
        offspring.reserve(config.population);
        while (offspring.size() < config.population) {
            const std::size_t pa =
                tournament_select(population, rng, config.tournament_size);
            const std::size_t pb =
                tournament_select(population, rng, config.tournament_size);
            auto [ca, cb] = crossover(population[pa].chromosome,
                                      population[pb].chromosome,
                                      config.crossover_probability, rng);
            mutate(ca, config.mutation_probability, rng);
            mutate(cb, config.mutation_probability, rng);
            offspring.push_back(Individual{std::move(ca), {}, -1, 0.0});
            offspring.push_back(Individual{std::move(cb), {}, -1, 0.0});
        }
        for (auto &child : offspring) {
            child.objectives = evaluate_checked(evaluator, child.chromosome);
        }

        std::vector<Individual> merged = std::move(population);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        const Fronts merged_fronts = assign_rank_and_crowding(merged);

        std::vector<Individual> next;
        next.reserve(config.population);
        for (const auto &front : merged_fronts) {
            if (next.size() + front.size() <= config.population) {
                for (const auto idx : front) {
                    next.push_back(merged[idx]);
                }
                continue;
            }
            std::vector<std::size_t> order = front;
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) {
                                 return merged[a].crowding > merged[b].crowding;
                             });
            for (const auto idx : order) {
                if (next.size() == config.population) {
                    break;
                }
                next.push_back(merged[idx]);
            }
            break;
        }
        population = std::move(next);
        result.fronts = assign_rank_and_crowding(population);
        result.history.push_back(stats_of(gen, population));
    }
    result.population = std::move(population);
    return result;
}

EvolutionResult evolve_with_restarts(const GaConfig &config,
                                     std::size_t n_features,
                                     std::size_t n_qubits,
                                     const Evaluator &evaluator) {
    config.validate();
    if (config.restarts == 1) {
        return evolve(config, n_features, n_qubits, evaluator);
    }
    EvolutionResult combined;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        GaConfig run = config;
        run.seed = combine_seeds(config.seed, r);
        run.restarts = 1;
        auto result = evolve(run, n_features, n_qubits, evaluator);
        combined.population.insert(combined.population.end(),
                                   result.population.begin(),
                                   result.population.end());
        combined.history.insert(combined.history.end(), result.history.begin(),
                                result.history.end());
    }
    combined.fronts = assign_rank_and_crowding(combined.population);
    return combined;
}

} // namespace qsvmf
