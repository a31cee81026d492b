#include "dqcevo/ea.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "dqcevo/circuit_io.hpp"
#include "dqcevo/grover.hpp"
#include "dqcevo/rng.hpp"
#include "test_util.hpp"

namespace dqcevo {
namespace {

using testutil::genome_invariants_ok;
using testutil::random_genome;

TEST(EAParams, TableDefaults) {
  const EAParams params;
  EXPECT_EQ(params.population_size, 200);
  EXPECT_EQ(params.generations, 3000);
  EXPECT_DOUBLE_EQ(params.crossover_rate, 0.85);
  EXPECT_DOUBLE_EQ(params.mutation_rate, 0.4);
  EXPECT_DOUBLE_EQ(params.child_rate, 0.3);
  EXPECT_DOUBLE_EQ(params.replace_rate, 0.1);
  EXPECT_EQ(params.children_per_generation(), 60);
  EXPECT_EQ(params.replacements_per_generation(), 20);
  EXPECT_NO_THROW(params.validate());
}

TEST(EAParams, ValidationCatchesBadShapes) {
  EAParams params;
  params.population_size = 0;
  EXPECT_THROW(params.validate(), std::invalid_argument);

  params = EAParams{};
  params.replace_rate = 0.0;
  EXPECT_THROW(params.validate(), std::invalid_argument);

  params = EAParams{};
  params.child_rate = 0.05;
  params.replace_rate = 0.1;
  EXPECT_THROW(params.validate(), std::invalid_argument);

  params = EAParams{};
  params.mutation_rate = 1.5;
  EXPECT_THROW(params.validate(), std::invalid_argument);

  params = EAParams{};
  params.generations = -1;
  EXPECT_THROW(params.validate(), std::invalid_argument);
}

TEST(RandomGate, RespectsWidthAndRanges) {
  std::mt19937_64 rng(1);
  std::map<GateKind, int> seen;
  for (int i = 0; i < 400; ++i) {
    const Gate gate = random_gate(1, rng);
    ++seen[gate.kind];
    EXPECT_NE(gate.kind, GateKind::CX);
    EXPECT_EQ(gate.qubit0, 0);
    if (gate.kind == GateKind::RZ) {
      EXPECT_GE(gate.angle, 0.0);
      EXPECT_LT(gate.angle, 2 * std::numbers::pi);
    }
  }
  EXPECT_EQ(seen.size(), 3u);

  for (int i = 0; i < 400; ++i) {
    const Gate gate = random_gate(4, rng);
    EXPECT_GE(gate.qubit0, 0);
    EXPECT_LT(gate.qubit0, 4);
    if (gate.kind == GateKind::CX) {
      EXPECT_GE(gate.qubit1, 0);
      EXPECT_LT(gate.qubit1, 4);
      EXPECT_NE(gate.qubit0, gate.qubit1);
    }
  }
}

TEST(SinglePointCrossover, ChildTakesSecondParentLength) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const CircuitGenome a = random_genome(3, uniform_index(rng, 20), rng);
    const CircuitGenome b = random_genome(3, uniform_index(rng, 20), rng);
    const CircuitGenome child = single_point_crossover(a, b, rng);
    EXPECT_EQ(child.size(), b.size());

    // The child must be a prefix of a joined to a suffix of b at one cut.
    bool splits = false;
    for (std::size_t k = 0; k <= std::min(a.size(), b.size()); ++k) {
      bool match = true;
      for (std::size_t i = 0; i < k && match; ++i) match = child.genes()[i] == a.genes()[i];
      for (std::size_t i = k; i < b.size() && match; ++i) match = child.genes()[i] == b.genes()[i];
      if (match) {
        splits = true;
        break;
      }
    }
    EXPECT_TRUE(splits);
  }
}

TEST(SinglePointCrossover, DegenerateCases) {
  std::mt19937_64 rng(4);
  const CircuitGenome a(2, {Gate::x(0), Gate::x(1)});
  const CircuitGenome empty(2);
  EXPECT_EQ(single_point_crossover(a, empty, rng).size(), 0u);

  const CircuitGenome from_empty = single_point_crossover(empty, a, rng);
  EXPECT_EQ(from_empty.size(), a.size());

  const CircuitGenome same = single_point_crossover(a, a, rng);
  ASSERT_EQ(same.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(same.genes()[i], a.genes()[i]);
}

TEST(UniformCrossover, GenePositionsComeFromParents) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const CircuitGenome a = random_genome(3, uniform_index(rng, 20), rng);
    const CircuitGenome b = random_genome(3, uniform_index(rng, 20), rng);
    const CircuitGenome child = uniform_crossover(a, b, rng);
    EXPECT_TRUE(child.size() == a.size() || child.size() == b.size());

    const auto& longer = a.size() >= b.size() ? a : b;
    const std::size_t shared = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < child.size(); ++i) {
      if (i < shared) {
        EXPECT_TRUE(child.genes()[i] == a.genes()[i] || child.genes()[i] == b.genes()[i]);
      } else {
        EXPECT_EQ(child.genes()[i], longer.genes()[i]);
      }
    }
  }
}

TEST(UniformCrossover, IdenticalParentsGiveClone) {
  std::mt19937_64 rng(6);
  const CircuitGenome a = random_genome(4, 12, rng);
  const CircuitGenome child = uniform_crossover(a, a, rng);
  ASSERT_EQ(child.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(child.genes()[i], a.genes()[i]);
}

TEST(Crossover, RejectsQubitMismatch) {
  std::mt19937_64 rng(7);
  const CircuitGenome a(2);
  const CircuitGenome b(3);
  EXPECT_THROW(single_point_crossover(a, b, rng), std::invalid_argument);
  EXPECT_THROW(uniform_crossover(a, b, rng), std::invalid_argument);
}

std::vector<std::string> sorted_gate_lines(const CircuitGenome& genome) {
  std::vector<std::string> lines;
  for (const Gate& gate : genome.genes()) {
    lines.push_back(serialize_circuit(CircuitGenome(genome.n_qubits(), {gate})));
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

TEST(MutateWith, OperatorContracts) {
  std::mt19937_64 rng(8);
  const CircuitGenome genome = random_genome(4, 15, rng);

  const CircuitGenome flipped = mutate_with(genome, MutationOp::GateFlip, rng);
  EXPECT_EQ(flipped.size(), genome.size());
  std::size_t diffs = 0;
  for (std::size_t i = 0; i < genome.size(); ++i) {
    if (!(flipped.genes()[i] == genome.genes()[i])) ++diffs;
  }
  EXPECT_LE(diffs, 1u);

  EXPECT_EQ(mutate_with(genome, MutationOp::DeleteGate, rng).size(), genome.size() - 1);

  const CircuitGenome swapped = mutate_with(genome, MutationOp::SwapGate, rng);
  EXPECT_EQ(swapped.size(), genome.size());
  EXPECT_EQ(sorted_gate_lines(swapped), sorted_gate_lines(genome));

  const CircuitGenome shuffled = mutate_with(genome, MutationOp::Shuffle, rng);
  EXPECT_EQ(shuffled.size(), genome.size());
  EXPECT_EQ(sorted_gate_lines(shuffled), sorted_gate_lines(genome));

  const CircuitGenome grown = mutate_with(genome, MutationOp::AddGate, rng);
  EXPECT_EQ(grown.size(), genome.size() + 1);

  const long before_cx = cx_count(genome);
  const CircuitGenome trimmed = mutate_with(genome, MutationOp::RemoveCx, rng);
  if (before_cx > 0) {
    EXPECT_EQ(trimmed.size(), genome.size() - 1);
    EXPECT_EQ(cx_count(trimmed), before_cx - 1);
  } else {
    EXPECT_EQ(trimmed.size(), genome.size());
  }
}

TEST(MutateWith, NoOpRules) {
  std::mt19937_64 rng(9);
  const CircuitGenome empty(3);
  for (MutationOp op : {MutationOp::GateFlip, MutationOp::DeleteGate, MutationOp::SwapGate,
                        MutationOp::Shuffle, MutationOp::RemoveCx}) {
    EXPECT_EQ(mutate_with(empty, op, rng).size(), 0u);
  }
  EXPECT_EQ(mutate_with(empty, MutationOp::AddGate, rng).size(), 1u);

  const CircuitGenome one_cx(2, {Gate::cx(0, 1)});
  const CircuitGenome removed = mutate_with(one_cx, MutationOp::RemoveCx, rng);
  EXPECT_EQ(removed.size(), 0u);

  const CircuitGenome no_cx(2, {Gate::x(0), Gate::sx(1)});
  EXPECT_EQ(mutate_with(no_cx, MutationOp::RemoveCx, rng).size(), no_cx.size());
}

TEST(Mutate, FuzzKeepsInvariants) {
  std::mt19937_64 rng(10);
  CircuitGenome genome = random_genome(4, 20, rng);
  for (int i = 0; i < 20000; ++i) {
    genome = mutate(genome, rng);
    ASSERT_TRUE(genome_invariants_ok(genome, 4));
  }
}

FitnessSpec small_spec(const CircuitGenome& original, std::uint64_t seed) {
  return make_fitness_spec(original, Objective::MinCx, 1.0, std::nullopt, seed);
}

TEST(InitPopulation, CopiesOfTheOriginal) {
  const CircuitGenome original = build_grover(3, "101");
  EAParams params;
  params.population_size = 30;
  params.seed = 2;
  const FitnessSpec spec = small_spec(original, 2);
  const Population population = init_population(original, params, spec);
  ASSERT_EQ(population.size(), 30u);
  for (const Individual& individual : population) {
    EXPECT_NEAR(individual.fitness, 0.0, 1e-12);
    EXPECT_EQ(individual.genome.size(), original.size());
  }
}

TEST(Step, KeepsSizeAndNeverRegresses) {
  const CircuitGenome original = build_grover(3, "011");
  EAParams params;
  params.population_size = 20;
  params.generations = 15;
  params.seed = 3;
  const FitnessSpec spec = small_spec(original, 3);
  Population population = init_population(original, params, spec);
  std::mt19937_64 rng(params.seed);

  double best = -1e9;
  for (int g = 1; g <= params.generations; ++g) {
    const GenerationStats stats = step(population, original, params, spec, rng, g);
    EXPECT_EQ(stats.generation, g);
    EXPECT_EQ(population.size(), 20u);
    EXPECT_GE(stats.best_fitness + 1e-15, best);
    best = std::max(best, stats.best_fitness);
    for (const Individual& individual : population) {
      ASSERT_TRUE(genome_invariants_ok(individual.genome, 3));
    }
  }
}

TEST(Step, CloneOnlyStepKeepsFitnessMultiset) {
  const CircuitGenome original = build_grover(3, "110");
  EAParams params;
  params.population_size = 20;
  params.crossover_rate = 1.0;
  params.mutation_rate = 0.0;
  params.seed = 4;
  const FitnessSpec spec = small_spec(original, 4);
  Population population = init_population(original, params, spec);
  std::mt19937_64 rng(params.seed);
  step(population, original, params, spec, rng, 1);
  ASSERT_EQ(population.size(), 20u);
  for (const Individual& individual : population) {
    EXPECT_NEAR(individual.fitness, 0.0, 1e-12);
  }
}

TEST(Step, ParentlessChildrenAreFreshRandomCircuits) {
  const CircuitGenome original = build_grover(3, "001");
  EAParams params;
  params.population_size = 20;
  params.crossover_rate = 0.0;  // every child is created without parents
  params.mutation_rate = 0.0;
  params.seed = 9;
  const FitnessSpec spec = small_spec(original, 9);
  Population population = init_population(original, params, spec);
  std::mt19937_64 rng(params.seed);
  step(population, original, params, spec, rng, 1);

  // The replacement slots now hold short random circuits, not copies of the
  // original: at most four gates per qubit. Everyone else is untouched.
  int fresh = 0;
  for (const Individual& individual : population) {
    ASSERT_TRUE(genome_invariants_ok(individual.genome, 3));
    if (serialize_circuit(individual.genome) == serialize_circuit(original)) continue;
    ++fresh;
    EXPECT_GE(individual.genome.size(), 1u);
    EXPECT_LE(individual.genome.size(), 12u);
  }
  EXPECT_EQ(fresh, params.replacements_per_generation());
}

TEST(Evolve, ZeroGenerationsReturnsOriginal) {
  const CircuitGenome original = build_grover(3, "100");
  EAParams params;
  params.population_size = 10;
  params.generations = 0;
  params.seed = 5;
  const FitnessSpec spec = small_spec(original, 5);
  const EvolveResult result = evolve(original, params, spec);
  EXPECT_TRUE(result.history.empty());
  EXPECT_NEAR(result.best.fitness, 0.0, 1e-12);
  EXPECT_EQ(serialize_circuit(result.best.genome), serialize_circuit(original));
}

TEST(Evolve, DeterministicReplay) {
  const CircuitGenome original = build_grover(3, "010");
  EAParams params;
  params.population_size = 24;
  params.generations = 25;
  params.seed = 6;
  const FitnessSpec spec = small_spec(original, 6);

  const EvolveResult first = evolve(original, params, spec);
  const EvolveResult second = evolve(original, params, spec);
  ASSERT_EQ(first.history.size(), second.history.size());
  for (std::size_t g = 0; g < first.history.size(); ++g) {
    EXPECT_DOUBLE_EQ(first.history[g].best_fitness, second.history[g].best_fitness);
    EXPECT_DOUBLE_EQ(first.history[g].mean_fitness, second.history[g].mean_fitness);
    EXPECT_EQ(first.history[g].best_depth, second.history[g].best_depth);
    EXPECT_EQ(first.history[g].best_cx, second.history[g].best_cx);
  }
  EXPECT_EQ(serialize_circuit(first.best.genome), serialize_circuit(second.best.genome));
  EXPECT_DOUBLE_EQ(first.best.fitness, second.best.fitness);
}

TEST(Evolve, BestFitnessHistoryIsMonotone) {
  const CircuitGenome original = build_grover(3, "111");
  EAParams params;
  params.generations = 400;
  params.seed = 7;
  const FitnessSpec spec = small_spec(original, 7);
  const EvolveResult result = evolve(original, params, spec);
  ASSERT_EQ(result.history.size(), 400u);
  for (std::size_t g = 1; g < result.history.size(); ++g) {
    EXPECT_GE(result.history[g].best_fitness + 1e-15, result.history[g - 1].best_fitness);
  }
  // The best-ever individual can never fall below the original's score of
  // alpha - 1 = 0 (modulo floating-point noise in the fidelity product).
  EXPECT_GE(result.best.fitness, -1e-12);
  // At this scale the run finds genuine CX savings, not just noise.
  EXPECT_GT(result.best.fitness, 0.01);
  EXPECT_LT(result.best.metrics.cx_count, cx_count(original));
}

}  // namespace
}  // namespace dqcevo
