#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dqcevo/circuit_io.hpp"
#include "dqcevo/config.hpp"
#include "dqcevo/experiment.hpp"
#include "dqcevo/grover.hpp"
#include "dqcevo/partition.hpp"
#include "dqcevo/statevector.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void apply_objective_override(dqcevo::ExperimentConfig& config, const std::string& name) {
  config.objective = dqcevo::objective_from_name(name);
  if (config.objective == dqcevo::Objective::MinGlobalGates && !config.partition.dynamic_kl &&
      !config.partition.topology) {
    config.partition.dynamic_kl = true;
  }
  if (config.objective == dqcevo::Objective::MinDistance && !config.partition.topology) {
    throw std::runtime_error(
        "objective override 'distance' needs a [partition] topology in the config");
  }
}

int do_run(const std::string& config_path, const std::vector<std::uint64_t>& seed_override,
           const std::string& objective_override, std::string out_dir) {
  dqcevo::ExperimentConfig config = dqcevo::load_experiment_config(config_path);
  if (!seed_override.empty()) config.seeds = seed_override;
  if (!objective_override.empty()) apply_objective_override(config, objective_override);
  if (out_dir.empty()) {
    out_dir = std::filesystem::path(config_path).stem().string() + "_results";
  }

  const dqcevo::ExperimentResult result = dqcevo::run_experiment(config);
  dqcevo::write_results(result, out_dir);

  for (const dqcevo::SeedOutcome& outcome : result.seeds) {
    std::printf(
        "seed %llu: depth %ld -> %ld (%.2f%%), cx %ld -> %ld (%.2f%%), comm %ld -> %ld "
        "(%.2f%%), fidelity %.6f, solution %s\n",
        static_cast<unsigned long long>(outcome.seed), outcome.baseline.depth0,
        outcome.optimized.depth,
        dqcevo::reduction_pct(outcome.baseline.depth0, outcome.optimized.depth),
        outcome.baseline.cx0, outcome.optimized.cx_count,
        dqcevo::reduction_pct(outcome.baseline.cx0, outcome.optimized.cx_count),
        outcome.baseline.gg0, outcome.optimized.comm_cost,
        dqcevo::reduction_pct(outcome.baseline.gg0, outcome.optimized.comm_cost),
        outcome.optimized.fidelity, outcome.solution_correct ? "correct" : "WRONG");
  }
  const dqcevo::AggregateStats& aggregate = result.aggregate;
  std::printf(
      "mean over %zu seeds: depth %.2f%%, cx %.2f%%, comm %.2f%%, fidelity %.6f, solutions "
      "%s\n",
      result.seeds.size(), aggregate.mean_depth_reduction_pct, aggregate.mean_cx_reduction_pct,
      aggregate.mean_comm_reduction_pct, aggregate.mean_fidelity,
      aggregate.all_solutions_correct ? "all correct" : "NOT all correct");
  std::printf("results written to %s\n", out_dir.c_str());
  return 0;
}

int do_metrics(const std::string& circuit_path, const std::string& topology_path,
               std::uint64_t kl_seed) {
  const dqcevo::CircuitGenome circuit = dqcevo::parse_circuit(read_file(circuit_path));
  std::printf("qubits: %d\n", circuit.n_qubits());
  std::printf("gates: %zu\n", circuit.size());
  std::printf("depth: %ld\n", dqcevo::depth(circuit));
  std::printf("cx_count: %ld\n", dqcevo::cx_count(circuit));
  std::printf("kl_cut: %ld\n",
              dqcevo::global_gate_cost(circuit, dqcevo::DynamicKl{}, kl_seed));
  if (!topology_path.empty()) {
    const dqcevo::RawConfig raw = dqcevo::parse_raw_config(read_file(topology_path));
    const auto topology_config = dqcevo::topology_from_raw(raw);
    if (!topology_config) {
      throw std::runtime_error("no topology found in " + topology_path +
                               " (need at least 'qpus' and 'capacity')");
    }
    dqcevo::NetworkTopology topology(topology_config->qpus, topology_config->capacity,
                                     topology_config->links);
    const dqcevo::Assignment assignment =
        topology_config->assignment ? *topology_config->assignment
                                    : dqcevo::naive_assignment(circuit.n_qubits(), topology);
    std::printf("hop_cost: %ld\n",
                dqcevo::hop_cost(assignment, dqcevo::cx_pairs(circuit), topology));
  }
  return 0;
}

int do_grover(int n, const std::string& target_option, std::uint64_t seed) {
  std::string target = target_option;
  if (target.empty()) {
    std::mt19937_64 rng(seed);
    target = dqcevo::random_target(n, rng);
  }
  const dqcevo::CircuitGenome circuit = dqcevo::build_grover(n, target);
  std::fputs(dqcevo::serialize_circuit(circuit).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary optimizer for circuits on networked QPUs"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a config file");
  std::string config_path;
  std::vector<std::uint64_t> seed_override;
  std::string objective_override;
  std::string out_dir;
  run_cmd->add_option("config", config_path, "Experiment config file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (default: <config stem>_results)");
  run_cmd->add_option("--seed", seed_override, "Override the config's seed list");
  run_cmd->add_option("--objective", objective_override,
                      "Override the objective (global_gates, cx, depth, distance)");

  auto* metrics_cmd = app.add_subcommand("metrics", "Print metrics of a circuit file");
  std::string circuit_path;
  std::string topology_path;
  std::uint64_t kl_seed = 0;
  metrics_cmd->add_option("circuit", circuit_path, "Circuit text file")->required();
  metrics_cmd->add_option("--topology", topology_path,
                          "Config file with a topology (qpus/capacity/links/assignment)");
  metrics_cmd->add_option("--seed", kl_seed, "Seed for the KL cut (default 0)");

  auto* grover_cmd = app.add_subcommand("grover", "Print a Grover circuit as text");
  int grover_n = 0;
  std::string grover_target;
  std::uint64_t grover_seed = 1;
  grover_cmd->add_option("--n", grover_n, "Number of qubits (2 to 8)")->required();
  grover_cmd->add_option("--target", grover_target, "Target bitstring, qubit 0 first");
  grover_cmd->add_option("--seed", grover_seed,
                         "Seed for the random target when --target is omitted (default 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return do_run(config_path, seed_override, objective_override, out_dir);
    }
    if (metrics_cmd->parsed()) return do_metrics(circuit_path, topology_path, kl_seed);
    if (grover_cmd->parsed()) return do_grover(grover_n, grover_target, grover_seed);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
