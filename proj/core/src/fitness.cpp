#include "dqcevo/fitness.hpp"

#include <stdexcept>
#include <string>

namespace dqcevo {

namespace {

bool needs_partition(Objective objective) {
  return objective == Objective::MinGlobalGates || objective == Objective::MinDistance;
}

void check_spec(const CircuitGenome& circuit, const FitnessSpec& spec) {
  if (spec.target_state.size() != (std::size_t{1} << circuit.n_qubits())) {
    throw std::invalid_argument("target state does not match the circuit's qubit count");
  }
  if (needs_partition(spec.objective) && !spec.partition_spec) {
    throw std::invalid_argument(std::string(objective_name(spec.objective)) +
                                " requires a partition spec");
  }
  if (spec.objective == Objective::MinDistance &&
      !std::holds_alternative<FixedPartition>(*spec.partition_spec)) {
    throw std::invalid_argument("distance objective requires a fixed topology assignment");
  }
}

}  // namespace

Objective objective_from_name(std::string_view name) {
  if (name == "global_gates") return Objective::MinGlobalGates;
  if (name == "cx") return Objective::MinCx;
  if (name == "depth") return Objective::MinDepth;
  if (name == "distance") return Objective::MinDistance;
  throw std::invalid_argument("unknown objective '" + std::string(name) +
                              "' (expected global_gates, cx, depth, or distance)");
}

std::string_view objective_name(Objective objective) {
  switch (objective) {
    case Objective::MinGlobalGates:
      return "global_gates";
    case Objective::MinCx:
      return "cx";
    case Objective::MinDepth:
      return "depth";
    case Objective::MinDistance:
      return "distance";
  }
  throw std::invalid_argument("invalid objective value");
}

double rescale(long metric, long baseline) {
  if (metric < 0 || baseline < 0) throw std::invalid_argument("metrics are non-negative");
  return static_cast<double>(metric) / static_cast<double>(baseline > 1 ? baseline : 1);
}

CircuitMetrics measure_circuit(const CircuitGenome& circuit, const FitnessSpec& spec,
                               std::uint64_t seed) {
  check_spec(circuit, spec);
  CircuitMetrics metrics;
  metrics.fidelity = fidelity(spec.target_state, circuit);
  metrics.depth = depth(circuit);
  metrics.cx_count = cx_count(circuit);
  metrics.comm_cost =
      spec.partition_spec ? global_gate_cost(circuit, *spec.partition_spec, seed) : 0;
  return metrics;
}

double fitness_from_metrics(const CircuitMetrics& metrics, const FitnessSpec& spec) {
  long metric = 0;
  long baseline = 0;
  switch (spec.objective) {
    case Objective::MinGlobalGates:
    case Objective::MinDistance:
      metric = metrics.comm_cost;
      baseline = spec.baseline.gg0;
      break;
    case Objective::MinCx:
      metric = metrics.cx_count;
      baseline = spec.baseline.cx0;
      break;
    case Objective::MinDepth:
      metric = metrics.depth;
      baseline = spec.baseline.depth0;
      break;
  }
  return spec.alpha * metrics.fidelity - rescale(metric, baseline);
}

double evaluate(const CircuitGenome& circuit, const FitnessSpec& spec, std::uint64_t seed) {
  return fitness_from_metrics(measure_circuit(circuit, spec, seed), spec);
}

FitnessSpec make_fitness_spec(const CircuitGenome& original, Objective objective, double alpha,
                              std::optional<PartitionSpec> partition_spec, std::uint64_t seed) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (needs_partition(objective) && !partition_spec) {
    throw std::invalid_argument(std::string(objective_name(objective)) +
                                " requires a partition spec");
  }
  if (objective == Objective::MinDistance &&
      !std::holds_alternative<FixedPartition>(*partition_spec)) {
    throw std::invalid_argument("distance objective requires a fixed topology assignment");
  }
  FitnessSpec spec;
  spec.objective = objective;
  spec.alpha = alpha;
  spec.partition_spec = std::move(partition_spec);
  spec.target_state = run(original);
  spec.baseline.depth0 = depth(original);
  spec.baseline.cx0 = cx_count(original);
  spec.baseline.gg0 =
      spec.partition_spec ? global_gate_cost(original, *spec.partition_spec, seed) : 0;
  return spec;
}

}  // namespace dqcevo
