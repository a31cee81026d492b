#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dqcevo/circuit.hpp"
#include "dqcevo/fitness.hpp"

namespace dqcevo {

struct EAParams {
  int population_size = 200;
  int generations = 3000;
  double crossover_rate = 0.85;
  double mutation_rate = 0.4;
  double child_rate = 0.3;
  double replace_rate = 0.1;
  std::uint64_t seed = 1;

  // floor(child_rate * population_size), 60 at defaults.
  int children_per_generation() const;
  // floor(replace_rate * population_size), 20 at defaults.
  int replacements_per_generation() const;
  // Rates must be in [0,1] and children >= replacements >= 1.
  void validate() const;
};

struct Individual {
  CircuitGenome genome{1};
  double fitness = 0.0;
  CircuitMetrics metrics;
};

using Population = std::vector<Individual>;

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double best_fidelity = 0.0;
  long best_depth = 0;
  long best_cx = 0;
  long best_comm = 0;
};

// Fresh random gate: uniform kind (CX only when n >= 2), uniform distinct
// qubits, RZ angle uniform in [0, 2pi).
Gate random_gate(int n_qubits, std::mt19937_64& rng);

// Cut k uniform in [0, min(len a, len b)]; child = a[0..k) ++ b[k..len b).
// The child's length always equals len(b); callers randomize parent roles.
CircuitGenome single_point_crossover(const CircuitGenome& a, const CircuitGenome& b,
                                     std::mt19937_64& rng);

// Child length is len(a) or len(b) with equal probability; shared positions
// are coin-flipped per gene, tail positions come from the longer parent.
CircuitGenome uniform_crossover(const CircuitGenome& a, const CircuitGenome& b,
                                std::mt19937_64& rng);

enum class MutationOp { GateFlip, DeleteGate, SwapGate, Shuffle, AddGate, RemoveCx };

// Applies one operator. Operators needing a gene are no-ops on an empty
// genome; RemoveCx is a no-op when no CX gene exists.
CircuitGenome mutate_with(const CircuitGenome& circuit, MutationOp op, std::mt19937_64& rng);

// One uniformly chosen operator, applied once.
CircuitGenome mutate(const CircuitGenome& circuit, std::mt19937_64& rng);

Individual evaluate_individual(CircuitGenome genome, const FitnessSpec& spec,
                               std::uint64_t seed);

// population_size independent copies of the original, fitness evaluated.
Population init_population(const CircuitGenome& original, const EAParams& params,
                           const FitnessSpec& spec);

// One generation: children by tournament-selected crossover (or fresh copies
// of the original), probabilistic mutation, then the best children replace
// the worst population members. Returns stats of the updated population.
GenerationStats step(Population& population, const CircuitGenome& original,
                     const EAParams& params, const FitnessSpec& spec, std::mt19937_64& rng,
                     int generation_index);

struct EvolveResult {
  Individual best;
  std::vector<GenerationStats> history;
};

// init_population plus params.generations steps; deterministic given
// params.seed. Returns the highest-fitness individual ever seen.
EvolveResult evolve(const CircuitGenome& original, const EAParams& params,
                    const FitnessSpec& spec);

}  // namespace dqcevo
