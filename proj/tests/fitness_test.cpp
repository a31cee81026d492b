#include "dqcevo/fitness.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dqcevo/ea.hpp"
#include "dqcevo/grover.hpp"
#include "dqcevo/statevector.hpp"

namespace dqcevo {
namespace {

TEST(ObjectiveNames, RoundTrip) {
  EXPECT_EQ(objective_from_name("global_gates"), Objective::MinGlobalGates);
  EXPECT_EQ(objective_from_name("cx"), Objective::MinCx);
  EXPECT_EQ(objective_from_name("depth"), Objective::MinDepth);
  EXPECT_EQ(objective_from_name("distance"), Objective::MinDistance);
  for (Objective objective : {Objective::MinGlobalGates, Objective::MinCx, Objective::MinDepth,
                              Objective::MinDistance}) {
    EXPECT_EQ(objective_from_name(objective_name(objective)), objective);
  }
  EXPECT_THROW(objective_from_name("fidelity"), std::invalid_argument);
}

TEST(Rescale, PinnedExamples) {
  EXPECT_DOUBLE_EQ(rescale(50, 50), 1.0);
  EXPECT_DOUBLE_EQ(rescale(0, 50), 0.0);
  EXPECT_DOUBLE_EQ(rescale(7, 0), 7.0);
  EXPECT_THROW(rescale(-1, 5), std::invalid_argument);
  EXPECT_THROW(rescale(5, -1), std::invalid_argument);
}

std::optional<PartitionSpec> partition_for(Objective objective, int n_qubits) {
  if (objective == Objective::MinGlobalGates) return PartitionSpec{DynamicKl{}};
  if (objective == Objective::MinDistance) {
    NetworkTopology topology = complete_topology(3, 2);
    Assignment assignment = naive_assignment(n_qubits, topology);
    return PartitionSpec{FixedPartition{std::move(topology), std::move(assignment)}};
  }
  return std::nullopt;
}

TEST(Evaluate, OriginalScoresAlphaMinusOne) {
  const CircuitGenome original = build_grover(4, "0110");
  for (Objective objective : {Objective::MinGlobalGates, Objective::MinCx, Objective::MinDepth,
                              Objective::MinDistance}) {
    for (double alpha : {1.0, 1.7}) {
      for (std::uint64_t seed : {1ull, 42ull}) {
        const FitnessSpec spec =
            make_fitness_spec(original, objective, alpha, partition_for(objective, 4), seed);
        EXPECT_NEAR(evaluate(original, spec, seed), alpha - 1.0, 1e-12)
            << objective_name(objective) << " alpha=" << alpha << " seed=" << seed;
      }
    }
  }
}

TEST(Evaluate, PerfectReplacementReachesAlpha) {
  // A circuit that prepares the target exactly with metric 0 scores alpha.
  // With a CX-free original the baseline guard makes rescale(0, 0) = 0, so
  // the score is the upper bound alpha rather than alpha - 1.
  const CircuitGenome original(2, {Gate::x(0), Gate::x(1)});
  const FitnessSpec spec = make_fitness_spec(original, Objective::MinCx, 1.0, std::nullopt, 1);
  EXPECT_EQ(spec.baseline.cx0, 0);
  EXPECT_NEAR(evaluate(original, spec, 1), 1.0, 1e-12);
}

TEST(Evaluate, EmptyGenomeAgainstGroverTarget) {
  // MinDepth, alpha 1: fitness of the empty genome is the probability the
  // Grover output state leaves in |0...0>, with no depth penalty. For a
  // 4-qubit instance with a nonzero target that is (1 - p_success) / 15.
  const CircuitGenome original = build_grover(4, "0110");
  const FitnessSpec spec = make_fitness_spec(original, Objective::MinDepth, 1.0, std::nullopt, 1);
  const double value = evaluate(CircuitGenome(4), spec, 1);
  const double expected = (1.0 - grover_success_probability(4, 3)) / 15.0;
  EXPECT_NEAR(value, expected, 1e-9);
  // sin(7 asin(1/4)) = 251/256 exactly, so the off-target probability is
  // (1 - (251/256)^2) / 15 = 169/65536.
  EXPECT_NEAR(value, 169.0 / 65536.0, 1e-9);
}

TEST(Evaluate, NeverExceedsAlpha) {
  const CircuitGenome original = build_grover(3, "101");
  const double alpha = 1.3;
  const FitnessSpec spec = make_fitness_spec(original, Objective::MinCx, alpha, std::nullopt, 2);
  std::mt19937_64 rng(6);
  CircuitGenome candidate = original;
  for (int i = 0; i < 50; ++i) {
    candidate = mutate(candidate, rng);
    EXPECT_LE(evaluate(candidate, spec, 2), alpha + 1e-12);
  }
}

TEST(Evaluate, RemovingIdleCxPairImprovesMinCx) {
  const CircuitGenome original = build_grover(3, "110");
  std::vector<Gate> padded_genes = original.genes();
  padded_genes.push_back(Gate::cx(0, 1));
  padded_genes.push_back(Gate::cx(0, 1));
  const CircuitGenome padded(3, padded_genes);

  const FitnessSpec spec = make_fitness_spec(padded, Objective::MinCx, 1.0, std::nullopt, 1);
  // Dropping the self-cancelling CX pair keeps the prepared state identical
  // and lowers the rescaled CX metric, so fitness strictly improves.
  EXPECT_GT(evaluate(original, spec, 1), evaluate(padded, spec, 1));
}

TEST(Evaluate, DeterministicForDynamicKl) {
  const CircuitGenome original = build_grover(4, "1001");
  const FitnessSpec spec = make_fitness_spec(original, Objective::MinGlobalGates, 1.0,
                                             PartitionSpec{DynamicKl{}}, 7);
  std::mt19937_64 rng(3);
  const CircuitGenome candidate = mutate(mutate(original, rng), rng);
  EXPECT_DOUBLE_EQ(evaluate(candidate, spec, 7), evaluate(candidate, spec, 7));
}

TEST(MeasureCircuit, ReportsStructuralMetrics) {
  const CircuitGenome original = build_grover(3, "011");
  const FitnessSpec spec = make_fitness_spec(original, Objective::MinCx, 1.0, std::nullopt, 1);
  const CircuitMetrics metrics = measure_circuit(original, spec, 1);
  EXPECT_EQ(metrics.depth, depth(original));
  EXPECT_EQ(metrics.cx_count, cx_count(original));
  EXPECT_EQ(metrics.comm_cost, 0);
  EXPECT_NEAR(metrics.fidelity, 1.0, 1e-12);
}

TEST(MeasureCircuit, CommCostFollowsPartitionSpec) {
  const CircuitGenome original = build_grover(4, "0101");
  const FitnessSpec spec = make_fitness_spec(original, Objective::MinGlobalGates, 1.0,
                                             PartitionSpec{DynamicKl{}}, 5);
  const CircuitMetrics metrics = measure_circuit(original, spec, 5);
  EXPECT_EQ(metrics.comm_cost, global_gate_cost(original, *spec.partition_spec, 5));
  EXPECT_EQ(spec.baseline.gg0, metrics.comm_cost);
}

TEST(FitnessSpecConstruction, Validates) {
  const CircuitGenome original = build_grover(3, "010");
  EXPECT_THROW(make_fitness_spec(original, Objective::MinCx, 0.0, std::nullopt, 1),
               std::invalid_argument);
  EXPECT_THROW(make_fitness_spec(original, Objective::MinCx, -1.0, std::nullopt, 1),
               std::invalid_argument);
  EXPECT_THROW(make_fitness_spec(original, Objective::MinGlobalGates, 1.0, std::nullopt, 1),
               std::invalid_argument);
  EXPECT_THROW(make_fitness_spec(original, Objective::MinDistance, 2.0, std::nullopt, 1),
               std::invalid_argument);
  // Distance needs a fixed placement; dynamic KL is not enough.
  EXPECT_THROW(
      make_fitness_spec(original, Objective::MinDistance, 2.0, PartitionSpec{DynamicKl{}}, 1),
      std::invalid_argument);
}

TEST(FitnessSpecConstruction, CapturesTargetAndBaselines) {
  const CircuitGenome original = build_grover(3, "111");
  const FitnessSpec spec = make_fitness_spec(original, Objective::MinDepth, 1.0, std::nullopt, 1);
  const Statevector target = run(original);
  ASSERT_EQ(spec.target_state.size(), target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    EXPECT_NEAR(std::abs(spec.target_state[i] - target[i]), 0.0, 1e-15);
  }
  EXPECT_EQ(spec.baseline.depth0, depth(original));
  EXPECT_EQ(spec.baseline.cx0, cx_count(original));
}

TEST(Evaluate, RejectsQubitMismatch) {
  const CircuitGenome original = build_grover(3, "010");
  const FitnessSpec spec = make_fitness_spec(original, Objective::MinCx, 1.0, std::nullopt, 1);
  EXPECT_THROW(evaluate(CircuitGenome(4), spec, 1), std::invalid_argument);
}

}  // namespace
}  // namespace dqcevo
