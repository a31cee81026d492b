#include "dqcevo/ea.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "dqcevo/rng.hpp"

namespace dqcevo {

namespace {

const Individual& tournament(const Population& population, std::mt19937_64& rng) {
  const std::size_t i = uniform_index(rng, population.size());
  const std::size_t j = uniform_index(rng, population.size());
  // Ties keep the first draw.
  return population[j].fitness > population[i].fitness ? population[j] : population[i];
}

std::size_t best_index(const Population& population) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    if (population[i].fitness > population[best].fitness) best = i;
  }
  return best;
}

}  // namespace

int EAParams::children_per_generation() const {
  return static_cast<int>(std::floor(child_rate * population_size));
}

int EAParams::replacements_per_generation() const {
  return static_cast<int>(std::floor(replace_rate * population_size));
}

void EAParams::validate() const {
  if (population_size < 1) throw std::invalid_argument("population size must be positive");
  if (generations < 0) throw std::invalid_argument("generation count must be non-negative");
  for (double rate : {crossover_rate, mutation_rate, child_rate, replace_rate}) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("rates must lie in [0, 1]");
  }
  if (replacements_per_generation() < 1) {
    throw std::invalid_argument("replace_rate * population_size must round to at least 1");
  }
  if (children_per_generation() < replacements_per_generation()) {
    throw std::invalid_argument("child_rate must produce at least as many children as replacements");
  }
}

Gate random_gate(int n_qubits, std::mt19937_64& rng) {
  if (n_qubits < 1) throw std::invalid_argument("qubit count must be positive");
  const std::uint64_t kinds = n_qubits >= 2 ? 4 : 3;
  switch (uniform_index(rng, kinds)) {
    case 0:
      return Gate::x(static_cast<int>(uniform_index(rng, n_qubits)));
    case 1:
      return Gate::sx(static_cast<int>(uniform_index(rng, n_qubits)));
    case 2: {
      const int q = static_cast<int>(uniform_index(rng, n_qubits));
      return Gate::rz(q, uniform_real(rng, 0.0, 2.0 * std::numbers::pi));
    }
    default: {
      const int control = static_cast<int>(uniform_index(rng, n_qubits));
      int target = static_cast<int>(uniform_index(rng, n_qubits - 1));
      if (target >= control) ++target;
      return Gate::cx(control, target);
    }
  }
}

CircuitGenome single_point_crossover(const CircuitGenome& a, const CircuitGenome& b,
                                     std::mt19937_64& rng) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("crossover parents must share the qubit count");
  }
  const auto& ga = a.genes();
  const auto& gb = b.genes();
  const std::size_t k = uniform_index(rng, std::min(ga.size(), gb.size()) + 1);
  std::vector<Gate> genes;
  genes.reserve(gb.size());
  genes.insert(genes.end(), ga.begin(), ga.begin() + static_cast<std::ptrdiff_t>(k));
  genes.insert(genes.end(), gb.begin() + static_cast<std::ptrdiff_t>(k), gb.end());
  return CircuitGenome(a.n_qubits(), std::move(genes));
}

CircuitGenome uniform_crossover(const CircuitGenome& a, const CircuitGenome& b,
                                std::mt19937_64& rng) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("crossover parents must share the qubit count");
  }
  const auto& ga = a.genes();
  const auto& gb = b.genes();
  const std::size_t shared = std::min(ga.size(), gb.size());
  const std::size_t length = uniform_index(rng, 2) == 0 ? ga.size() : gb.size();
  const auto& longer = ga.size() >= gb.size() ? ga : gb;
  std::vector<Gate> genes;
  genes.reserve(length);
  for (std::size_t i = 0; i < std::min(length, shared); ++i) {
    genes.push_back(uniform_index(rng, 2) == 0 ? ga[i] : gb[i]);
  }
  for (std::size_t i = shared; i < length; ++i) genes.push_back(longer[i]);
  return CircuitGenome(a.n_qubits(), std::move(genes));
}

CircuitGenome mutate_with(const CircuitGenome& circuit, MutationOp op, std::mt19937_64& rng) {
  std::vector<Gate> genes = circuit.genes();
  const std::size_t len = genes.size();
  switch (op) {
    case MutationOp::GateFlip:
      if (len == 0) break;
      genes[uniform_index(rng, len)] = random_gate(circuit.n_qubits(), rng);
      break;
    case MutationOp::DeleteGate:
      if (len == 0) break;
      genes.erase(genes.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, len)));
      break;
    case MutationOp::SwapGate: {
      if (len == 0) break;
      const std::size_t i = uniform_index(rng, len);
      const std::size_t j = uniform_index(rng, len);
      std::swap(genes[i], genes[j]);
      break;
    }
    case MutationOp::Shuffle: {
      if (len == 0) break;
      std::size_t lo = uniform_index(rng, len + 1);
      std::size_t hi = uniform_index(rng, len + 1);
      if (lo > hi) std::swap(lo, hi);
      // Fisher-Yates on [lo, hi); std::shuffle is implementation-defined.
      for (std::size_t i = hi - lo; i > 1; --i) {
        const std::size_t j = uniform_index(rng, i);
        std::swap(genes[lo + i - 1], genes[lo + j]);
      }
      break;
    }
    case MutationOp::AddGate: {
      const std::size_t pos = uniform_index(rng, len + 1);
      genes.insert(genes.begin() + static_cast<std::ptrdiff_t>(pos),
                   random_gate(circuit.n_qubits(), rng));
      break;
    }
    case MutationOp::RemoveCx: {
      std::vector<std::size_t> cx_at;
      for (std::size_t i = 0; i < len; ++i) {
        if (genes[i].kind == GateKind::CX) cx_at.push_back(i);
      }
      if (cx_at.empty()) break;
      const std::size_t victim = cx_at[uniform_index(rng, cx_at.size())];
      genes.erase(genes.begin() + static_cast<std::ptrdiff_t>(victim));
      break;
    }
  }
  return CircuitGenome(circuit.n_qubits(), std::move(genes));
}

CircuitGenome mutate(const CircuitGenome& circuit, std::mt19937_64& rng) {
  const auto op = static_cast<MutationOp>(uniform_index(rng, 6));
  return mutate_with(circuit, op, rng);
}

Individual evaluate_individual(CircuitGenome genome, const FitnessSpec& spec,
                               std::uint64_t seed) {
  Individual individual{std::move(genome), 0.0, {}};
  individual.metrics = measure_circuit(individual.genome, spec, seed);
  individual.fitness = fitness_from_metrics(individual.metrics, spec);
  return individual;
}

Population init_population(const CircuitGenome& original, const EAParams& params,
                           const FitnessSpec& spec) {
  params.validate();
  const Individual prototype = evaluate_individual(original, spec, params.seed);
  return Population(static_cast<std::size_t>(params.population_size), prototype);
}

GenerationStats step(Population& population, const CircuitGenome& original,
                     const EAParams& params, const FitnessSpec& spec, std::mt19937_64& rng,
                     int generation_index) {
  const int n_children = params.children_per_generation();
  const int n_replace = params.replacements_per_generation();

  std::vector<Individual> children;
  children.reserve(static_cast<std::size_t>(n_children));
  for (int c = 0; c < n_children; ++c) {
    CircuitGenome child(original.n_qubits());
    if (uniform_unit(rng) < params.crossover_rate) {
      const Individual& first = tournament(population, rng);
      const Individual& second = tournament(population, rng);
      const bool swapped = uniform_index(rng, 2) == 1;
      const CircuitGenome& pa = swapped ? second.genome : first.genome;
      const CircuitGenome& pb = swapped ? first.genome : second.genome;
      child = uniform_index(rng, 2) == 0 ? single_point_crossover(pa, pb, rng)
                                         : uniform_crossover(pa, pb, rng);
    } else {
      // Parentless child: a fresh random circuit. New individuals start
      // short (up to a few gates per qubit) regardless of the incumbent
      // circuit's size; crossover supplies the longer material.
      const std::size_t cap = 4 * static_cast<std::size_t>(original.n_qubits());
      const std::size_t length = 1 + uniform_index(rng, cap);
      for (std::size_t g = 0; g < length; ++g) child.append(random_gate(original.n_qubits(), rng));
    }
    if (uniform_unit(rng) < params.mutation_rate) child = mutate(child, rng);
    children.push_back(evaluate_individual(std::move(child), spec, params.seed));
  }

  // Best children by fitness, creation order on ties.
  std::stable_sort(children.begin(), children.end(),
                   [](const Individual& x, const Individual& y) { return x.fitness > y.fitness; });
  children.resize(static_cast<std::size_t>(n_replace));

  // Worst members by fitness, insertion order on ties; they give up their
  // slots, so survivor ordering is stable across generations.
  std::vector<std::size_t> by_fitness(population.size());
  std::iota(by_fitness.begin(), by_fitness.end(), std::size_t{0});
  std::stable_sort(by_fitness.begin(), by_fitness.end(), [&](std::size_t x, std::size_t y) {
    return population[x].fitness < population[y].fitness;
  });
  for (int k = 0; k < n_replace; ++k) {
    population[by_fitness[static_cast<std::size_t>(k)]] =
        std::move(children[static_cast<std::size_t>(k)]);
  }

  GenerationStats stats;
  stats.generation = generation_index;
  double total = 0.0;
  for (const Individual& individual : population) total += individual.fitness;
  const Individual& best = population[best_index(population)];
  stats.best_fitness = best.fitness;
  stats.mean_fitness = total / static_cast<double>(population.size());
  stats.best_fidelity = best.metrics.fidelity;
  stats.best_depth = best.metrics.depth;
  stats.best_cx = best.metrics.cx_count;
  stats.best_comm = best.metrics.comm_cost;
  return stats;
}

EvolveResult evolve(const CircuitGenome& original, const EAParams& params,
                    const FitnessSpec& spec) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  Population population = init_population(original, params, spec);

  EvolveResult result;
  result.best = population[best_index(population)];
  result.history.reserve(static_cast<std::size_t>(params.generations));
  for (int g = 1; g <= params.generations; ++g) {
    result.history.push_back(step(population, original, params, spec, rng, g));
    const Individual& current = population[best_index(population)];
    if (current.fitness > result.best.fitness) result.best = current;
  }
  return result;
}

}  // namespace dqcevo
