#pragma once

#include <string>
#include <vector>

#include "dqcevo/config.hpp"
#include "dqcevo/ea.hpp"

namespace dqcevo {

struct SeedOutcome {
  std::uint64_t seed = 0;
  std::string expected_solution;  // argmax bitstring of the original's output state
  MetricBaseline baseline;
  CircuitMetrics optimized;
  double best_fitness = 0.0;
  bool solution_correct = false;
  CircuitGenome best_genome{1};
  std::vector<GenerationStats> history;
};

// Means over seeds; reduction% = 100 * (baseline - optimized) / baseline,
// taken as 0 when the baseline is 0.
struct AggregateStats {
  double mean_depth_reduction_pct = 0.0;
  double mean_cx_reduction_pct = 0.0;
  double mean_comm_reduction_pct = 0.0;
  double mean_fidelity = 0.0;
  bool all_solutions_correct = true;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<SeedOutcome> seeds;
  AggregateStats aggregate;
};

double reduction_pct(long baseline, long optimized);

// Runs the configured EA once per seed, sequentially in config order.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes result.json, history.csv, and best_seed<k>.circ into out_dir
// (created if missing). Files are written atomically via a temp + rename.
void write_results(const ExperimentResult& result, const std::string& out_dir);

}  // namespace dqcevo
