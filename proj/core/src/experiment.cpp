#include "dqcevo/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "dqcevo/circuit_io.hpp"
#include "dqcevo/grover.hpp"
#include "dqcevo/statevector.hpp"

namespace dqcevo {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

CircuitGenome build_original(const ExperimentConfig& config, std::uint64_t seed) {
  if (const auto* grover = std::get_if<GroverSource>(&config.source)) {
    std::string target;
    if (grover->target) {
      target = *grover->target;
    } else {
      std::mt19937_64 rng(seed);
      target = random_target(grover->n_qubits, rng);
    }
    return build_grover(grover->n_qubits, target, grover->iterations);
  }
  const auto& file = std::get<FileSource>(config.source);
  fs::path path(file.path);
  if (path.is_relative()) path = fs::path(config.base_dir) / path;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open circuit file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_circuit(buffer.str());
}

void append_double(std::string& out, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  out += buffer;
}

std::string history_csv(const ExperimentResult& result) {
  std::string out =
      "generation,seed,best_fitness,mean_fitness,best_fidelity,best_depth,best_cx,best_comm\n";
  for (const SeedOutcome& outcome : result.seeds) {
    for (const GenerationStats& row : outcome.history) {
      out += std::to_string(row.generation);
      out += ',';
      out += std::to_string(outcome.seed);
      out += ',';
      append_double(out, row.best_fitness);
      out += ',';
      append_double(out, row.mean_fitness);
      out += ',';
      append_double(out, row.best_fidelity);
      out += ',';
      out += std::to_string(row.best_depth);
      out += ',';
      out += std::to_string(row.best_cx);
      out += ',';
      out += std::to_string(row.best_comm);
      out += '\n';
    }
  }
  return out;
}

ordered_json config_json(const ExperimentConfig& config) {
  ordered_json j;
  if (const auto* grover = std::get_if<GroverSource>(&config.source)) {
    j["circuit"] = "grover";
    j["n"] = grover->n_qubits;
    if (grover->target) j["target"] = *grover->target;
    if (grover->iterations >= 1) j["iterations"] = grover->iterations;
  } else {
    j["circuit"] = std::get<FileSource>(config.source).path;
  }
  j["objective"] = std::string(objective_name(config.objective));
  j["alpha"] = config.resolved_alpha();
  j["population_size"] = config.params.population_size;
  j["generations"] = config.params.generations;
  j["crossover_rate"] = config.params.crossover_rate;
  j["mutation_rate"] = config.params.mutation_rate;
  j["child_rate"] = config.params.child_rate;
  j["replace_rate"] = config.params.replace_rate;
  j["seeds"] = config.seeds;
  if (config.partition.dynamic_kl) {
    j["partition"] = ordered_json{{"mode", "dynamic_kl"}};
  } else if (config.partition.topology) {
    const TopologyConfig& topology = *config.partition.topology;
    ordered_json p;
    p["mode"] = "fixed";
    p["qpus"] = topology.qpus;
    p["capacity"] = topology.capacity;
    ordered_json links = ordered_json::array();
    for (const auto& [a, b] : topology.links) links.push_back({a, b});
    p["links"] = std::move(links);
    if (topology.assignment) {
      p["assignment"] = *topology.assignment;
    } else {
      p["assignment"] = "naive";
    }
    j["partition"] = std::move(p);
  }
  return j;
}

ordered_json result_json(const ExperimentResult& result) {
  ordered_json j;
  j["config"] = config_json(result.config);
  ordered_json seeds = ordered_json::array();
  for (const SeedOutcome& outcome : result.seeds) {
    ordered_json s;
    s["seed"] = outcome.seed;
    s["expected_solution"] = outcome.expected_solution;
    s["baseline"] = ordered_json{{"depth", outcome.baseline.depth0},
                                 {"cx", outcome.baseline.cx0},
                                 {"comm", outcome.baseline.gg0}};
    s["optimized"] = ordered_json{{"depth", outcome.optimized.depth},
                                  {"cx", outcome.optimized.cx_count},
                                  {"comm", outcome.optimized.comm_cost},
                                  {"fidelity", outcome.optimized.fidelity}};
    s["reduction_pct"] =
        ordered_json{{"depth", reduction_pct(outcome.baseline.depth0, outcome.optimized.depth)},
                     {"cx", reduction_pct(outcome.baseline.cx0, outcome.optimized.cx_count)},
                     {"comm", reduction_pct(outcome.baseline.gg0, outcome.optimized.comm_cost)}};
    s["best_fitness"] = outcome.best_fitness;
    s["solution_correct"] = outcome.solution_correct;
    s["best_circuit"] = serialize_circuit(outcome.best_genome);
    seeds.push_back(std::move(s));
  }
  j["seeds"] = std::move(seeds);
  j["aggregate"] =
      ordered_json{{"mean_depth_reduction_pct", result.aggregate.mean_depth_reduction_pct},
                   {"mean_cx_reduction_pct", result.aggregate.mean_cx_reduction_pct},
                   {"mean_comm_reduction_pct", result.aggregate.mean_comm_reduction_pct},
                   {"mean_fidelity", result.aggregate.mean_fidelity},
                   {"all_solutions_correct", result.aggregate.all_solutions_correct}};
  return j;
}

void atomic_write(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

double reduction_pct(long baseline, long optimized) {
  if (baseline == 0) return 0.0;
  return 100.0 * static_cast<double>(baseline - optimized) / static_cast<double>(baseline);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  result.config = config;
  result.seeds.reserve(config.seeds.size());

  for (std::uint64_t seed : config.seeds) {
    const CircuitGenome original = build_original(config, seed);
    EAParams params = config.params;
    params.seed = seed;
    const FitnessSpec spec =
        make_fitness_spec(original, config.objective, config.resolved_alpha(),
                          resolve_partition_spec(config, original.n_qubits()), seed);
    EvolveResult evolved = evolve(original, params, spec);

    SeedOutcome outcome;
    outcome.seed = seed;
    outcome.expected_solution = extract_solution(spec.target_state);
    outcome.baseline = spec.baseline;
    outcome.optimized = evolved.best.metrics;
    outcome.best_fitness = evolved.best.fitness;
    outcome.solution_correct =
        extract_solution(run(evolved.best.genome)) == outcome.expected_solution;
    outcome.best_genome = std::move(evolved.best.genome);
    outcome.history = std::move(evolved.history);
    result.seeds.push_back(std::move(outcome));
  }

  AggregateStats& aggregate = result.aggregate;
  const double count = static_cast<double>(result.seeds.size());
  for (const SeedOutcome& outcome : result.seeds) {
    aggregate.mean_depth_reduction_pct +=
        reduction_pct(outcome.baseline.depth0, outcome.optimized.depth) / count;
    aggregate.mean_cx_reduction_pct +=
        reduction_pct(outcome.baseline.cx0, outcome.optimized.cx_count) / count;
    aggregate.mean_comm_reduction_pct +=
        reduction_pct(outcome.baseline.gg0, outcome.optimized.comm_cost) / count;
    aggregate.mean_fidelity += outcome.optimized.fidelity / count;
    aggregate.all_solutions_correct =
        aggregate.all_solutions_correct && outcome.solution_correct;
  }
  return result;
}

void write_results(const ExperimentResult& result, const std::string& out_dir) {
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  atomic_write(dir / "result.json", result_json(result).dump(2) + "\n");
  atomic_write(dir / "history.csv", history_csv(result));
  for (const SeedOutcome& outcome : result.seeds) {
    atomic_write(dir / ("best_seed" + std::to_string(outcome.seed) + ".circ"),
                 serialize_circuit(outcome.best_genome));
  }
}

}  // namespace dqcevo
