#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dqcevo/ea.hpp"
#include "dqcevo/fitness.hpp"
#include "dqcevo/partition.hpp"

namespace dqcevo {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Generic config document: `key = value` lines with [section] headers,
// `#` comments, values being strings, ints, floats, bools, or single-line
// (possibly nested) arrays. A deliberate small subset of TOML.
struct RawValue {
  enum class Type { Int, Float, String, Bool, Array };
  Type type = Type::Int;
  long long int_value = 0;
  double float_value = 0.0;
  std::string string_value;
  bool bool_value = false;
  std::vector<RawValue> array;
  int line = 0;
};

using RawTable = std::map<std::string, RawValue>;

struct RawConfig {
  RawTable root;
  std::map<std::string, RawTable> sections;
};

RawConfig parse_raw_config(const std::string& text);

// Circuit under optimization: a Grover instance or a circuit text file.
struct GroverSource {
  int n_qubits = 0;
  std::optional<std::string> target;  // absent: drawn per seed from the run RNG
  int iterations = -1;                // < 0: default count
};
struct FileSource {
  std::string path;  // relative paths resolve against the config file's directory
};
using CircuitSource = std::variant<GroverSource, FileSource>;

struct TopologyConfig {
  int qpus = 0;
  int capacity = 0;
  std::vector<std::pair<int, int>> links;
  std::optional<Assignment> assignment;  // absent: naive
};

struct PartitionConfig {
  bool dynamic_kl = false;
  std::optional<TopologyConfig> topology;
};

struct ExperimentConfig {
  CircuitSource source;
  Objective objective = Objective::MinCx;
  std::optional<double> alpha;  // absent: defaulting rule below
  EAParams params;              // seed field is overwritten per run
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  PartitionConfig partition;
  std::string base_dir = ".";

  // 1 unless the objective is distance, where 3-node networks default to 2
  // and 4-node networks to 3.
  double resolved_alpha() const;
};

ExperimentConfig experiment_config_from(const RawConfig& raw);
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

// Builds the run-time partition spec; "naive" assignments need the qubit
// count, hence the second argument. Returns nullopt when the config sets
// neither dynamic KL nor a topology.
std::optional<PartitionSpec> resolve_partition_spec(const ExperimentConfig& config,
                                                    int n_qubits);

// Topology block reader shared with the `metrics` CLI command: accepts the
// keys either at top level or inside a [partition] section.
std::optional<TopologyConfig> topology_from_raw(const RawConfig& raw);

}  // namespace dqcevo
