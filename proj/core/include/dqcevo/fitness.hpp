#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "dqcevo/circuit.hpp"
#include "dqcevo/partition.hpp"
#include "dqcevo/statevector.hpp"

namespace dqcevo {

enum class Objective { MinGlobalGates, MinCx, MinDepth, MinDistance };

// Config-facing names: global_gates, cx, depth, distance.
Objective objective_from_name(std::string_view name);
std::string_view objective_name(Objective objective);

// Metrics of the unmodified original circuit; gg0 is the communication
// baseline (KL cut or hop cost, matching the run's partition spec).
struct MetricBaseline {
  long depth0 = 0;
  long cx0 = 0;
  long gg0 = 0;
};

struct FitnessSpec {
  Objective objective = Objective::MinCx;
  double alpha = 1.0;
  MetricBaseline baseline;
  Statevector target_state;
  std::optional<PartitionSpec> partition_spec;  // required for MinGlobalGates/MinDistance
};

// metric / max(baseline, 1); the original circuit rescales to exactly 1.
double rescale(long metric, long baseline);

struct CircuitMetrics {
  double fidelity = 0.0;
  long depth = 0;
  long cx_count = 0;
  long comm_cost = 0;
};

// Fidelity against the target plus the structural metrics. comm_cost is 0
// when no partition spec is configured.
CircuitMetrics measure_circuit(const CircuitGenome& circuit, const FitnessSpec& spec,
                               std::uint64_t seed);

// alpha * fidelity - rescale(objective metric, its baseline).
double fitness_from_metrics(const CircuitMetrics& metrics, const FitnessSpec& spec);

double evaluate(const CircuitGenome& circuit, const FitnessSpec& spec, std::uint64_t seed);

// Builds the FitnessSpec for a run: target_state = run(original), baselines
// measured on the original with the same seed discipline as evaluate, so
// evaluate(original, spec, seed) = alpha - 1.
FitnessSpec make_fitness_spec(const CircuitGenome& original, Objective objective, double alpha,
                              std::optional<PartitionSpec> partition_spec, std::uint64_t seed);

}  // namespace dqcevo
