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
 * NSGA-II over fixed-length bit-string chromosomes. All objectives are
 * minimized.
 */
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsvmf/encoding.hpp"
#include "qsvmf/rng.hpp"

namespace qsvmf {

inline constexpr std::size_t kObjectiveCount = 5;

/// 1 - accuracy, local gates, CNOT gates, feature count, covariance score.
using Objectives = std::array<double, kObjectiveCount>;

enum ObjectiveIndex : std::size_t {
    kError = 0,
    kLocalGates = 1,
    kCnotGates = 2,
    kFeatureCount = 3,
    kCovariance = 4,
};

struct Individual {
    Chromosome chromosome;
    Objectives objectives{};
    int rank = -1;
    double crowding = 0.0;
};

/// a <= b everywhere and a < b somewhere.
bool dominates(std::span<const double> a, std::span<const double> b);

using Fronts = std::vector<std::vector<std::size_t>>;

/// Fronts of population indices, best first; each front ascending.
Fronts fast_nondominated_sort(std::span<const Objectives> objectives);

/// Crowding distance of each member of one front (given in front order).
std::vector<double> crowding_distance(std::span<const Objectives> front);

/// Sorts the population and writes rank and crowding into every member.
Fronts assign_rank_and_crowding(std::vector<Individual> &population);

/// True when a beats b under the crowded comparison. Identical candidates
/// go to the lower index.
bool crowded_less(const Individual &a, std::size_t index_a,
                  const Individual &b, std::size_t index_b);

/// Binary tournament over two uniform draws.
std::size_t tournament_select(std::span<const Individual> population, Rng &rng,
                              std::size_t tournament_size = 2);

/// Swaps the segment [first_cut, second_cut) between the parents.
std::pair<Chromosome, Chromosome> two_point_crossover(const Chromosome &a,
                                                      const Chromosome &b,
                                                      std::size_t first_cut,
                                                      std::size_t second_cut);

/// With the given probability, two-point crossover at two distinct cut
/// points in [1, L); otherwise copies of the parents.
std::pair<Chromosome, Chromosome> crossover(const Chromosome &a,
                                            const Chromosome &b,
                                            double probability, Rng &rng);

/// With the given probability, flips each bit independently with
/// probability 1/L.
void mutate(Chromosome &child, double probability, Rng &rng);

struct GaConfig {
    std::size_t population = 100;
    std::size_t generations = 100;
    double crossover_probability = 0.2;
    double mutation_probability = 0.2;
    std::size_t tournament_size = 2;
    std::uint64_t seed = 0;
    std::size_t restarts = 1;
    /// Stop once the best accuracy reaches this value.
    std::optional<double> early_stop_accuracy;

    void validate() const;
};

/// Population-wide minimum of each objective after a generation.
struct GenerationStats {
    std::size_t generation = 0;
    Objectives best{};
};

struct EvolutionResult {
    std::vector<Individual> population;
    Fronts fronts;
    std::vector<GenerationStats> history;
};

using Evaluator = std::function<Objectives(const Chromosome &)>;

class EvaluationError : public std::runtime_error {
  public:
    EvaluationError(std::string chromosome, const std::string &cause)
        : std::runtime_error("evaluation failed for chromosome " + chromosome +
                             ": " + cause),
          chromosome_(std::move(chromosome)) {}
    [[nodiscard]] const std::string &chromosome() const { return chromosome_; }

  private:
    std::string chromosome_;
};

/**
 * One NSGA-II run: random initial population, then per generation
 * tournament selection, crossover, mutation, evaluation of the offspring,
 * merge with the parents, non-dominated sort and crowding truncation back
 * to the population size. Offspring are evaluated in index order.
 */
EvolutionResult evolve(const GaConfig &config, std::size_t n_features,
                       std::size_t n_qubits, const Evaluator &evaluator);

/**
 * config.restarts independent runs with derived seeds. Final populations
 * are concatenated and re-sorted; history holds the runs back to back.
 */
EvolutionResult evolve_with_restarts(const GaConfig &config,
                                     std::size_t n_features,
                                     std::size_t n_qubits,
                                     const Evaluator &evaluator);

} // namespace qsvmf
