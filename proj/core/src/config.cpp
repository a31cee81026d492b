#include "dqcevo/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dqcevo {

namespace {

bool is_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Drops a trailing comment, honoring quoted strings.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
};

RawValue parse_value(Cursor& cursor);

RawValue parse_array(Cursor& cursor) {
  RawValue value;
  value.type = RawValue::Type::Array;
  value.line = cursor.line;
  ++cursor.pos;  // consume '['
  cursor.skip_ws();
  if (!cursor.done() && cursor.peek() == ']') {
    ++cursor.pos;
    return value;
  }
  while (true) {
    value.array.push_back(parse_value(cursor));
    cursor.skip_ws();
    if (cursor.done()) throw ConfigError(cursor.line, "unterminated array");
    const char c = cursor.peek();
    ++cursor.pos;
    if (c == ']') return value;
    if (c != ',') throw ConfigError(cursor.line, "expected ',' or ']' in array");
    cursor.skip_ws();
  }
}

RawValue parse_value(Cursor& cursor) {
  cursor.skip_ws();
  if (cursor.done()) throw ConfigError(cursor.line, "missing value");
  RawValue value;
  value.line = cursor.line;
  const char first = cursor.peek();

  if (first == '"') {
    const std::size_t close = cursor.text.find('"', cursor.pos + 1);
    if (close == std::string_view::npos) {
      throw ConfigError(cursor.line, "unterminated string");
    }
    value.type = RawValue::Type::String;
    value.string_value = std::string(cursor.text.substr(cursor.pos + 1, close - cursor.pos - 1));
    cursor.pos = close + 1;
    return value;
  }
  if (first == '[') return parse_array(cursor);

  std::size_t end = cursor.pos;
  while (end < cursor.text.size() && cursor.text[end] != ',' && cursor.text[end] != ']' &&
         cursor.text[end] != ' ' && cursor.text[end] != '\t') {
    ++end;
  }
  const std::string token(cursor.text.substr(cursor.pos, end - cursor.pos));
  cursor.pos = end;

  if (token == "true" || token == "false") {
    value.type = RawValue::Type::Bool;
    value.bool_value = token == "true";
    return value;
  }
  {
    long long parsed = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), parsed);
    if (ec == std::errc{} && ptr == token.data() + token.size()) {
      value.type = RawValue::Type::Int;
      value.int_value = parsed;
      return value;
    }
  }
  {
    char* end_ptr = nullptr;
    const double parsed = std::strtod(token.c_str(), &end_ptr);
    if (!token.empty() && end_ptr == token.c_str() + token.size()) {
      value.type = RawValue::Type::Float;
      value.float_value = parsed;
      return value;
    }
  }
  throw ConfigError(cursor.line, "cannot parse value '" + token + "'");
}

const RawValue* find_key(const RawTable& table, const std::string& key) {
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

long long as_int(const RawValue& value, const std::string& what) {
  if (value.type != RawValue::Type::Int) {
    throw ConfigError(value.line, "expected an integer for '" + what + "'");
  }
  return value.int_value;
}

double as_float(const RawValue& value, const std::string& what) {
  if (value.type == RawValue::Type::Int) return static_cast<double>(value.int_value);
  if (value.type != RawValue::Type::Float) {
    throw ConfigError(value.line, "expected a number for '" + what + "'");
  }
  return value.float_value;
}

std::string as_string(const RawValue& value, const std::string& what) {
  if (value.type != RawValue::Type::String) {
    throw ConfigError(value.line, "expected a string for '" + what + "'");
  }
  return value.string_value;
}

std::vector<long long> as_int_array(const RawValue& value, const std::string& what) {
  if (value.type != RawValue::Type::Array) {
    throw ConfigError(value.line, "expected an array for '" + what + "'");
  }
  std::vector<long long> out;
  out.reserve(value.array.size());
  for (const RawValue& element : value.array) out.push_back(as_int(element, what));
  return out;
}

std::vector<std::pair<int, int>> as_pair_array(const RawValue& value, const std::string& what) {
  if (value.type != RawValue::Type::Array) {
    throw ConfigError(value.line, "expected an array of pairs for '" + what + "'");
  }
  std::vector<std::pair<int, int>> out;
  out.reserve(value.array.size());
  for (const RawValue& element : value.array) {
    if (element.type != RawValue::Type::Array || element.array.size() != 2) {
      throw ConfigError(element.line, "'" + what + "' entries must be [a, b] pairs");
    }
    out.emplace_back(static_cast<int>(as_int(element.array[0], what)),
                     static_cast<int>(as_int(element.array[1], what)));
  }
  return out;
}

void reject_unknown_keys(const RawTable& table, std::initializer_list<std::string_view> known,
                         const std::string& where) {
  for (const auto& [key, value] : table) {
    bool ok = false;
    for (std::string_view candidate : known) {
      if (key == candidate) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError(value.line, "unknown key '" + key + "' in " + where);
  }
}

TopologyConfig topology_from_table(const RawTable& table) {
  TopologyConfig topology;
  const RawValue* qpus = find_key(table, "qpus");
  if (!qpus) throw ConfigError(0, "fixed partition needs 'qpus'");
  topology.qpus = static_cast<int>(as_int(*qpus, "qpus"));

  const RawValue* capacity = find_key(table, "capacity");
  if (!capacity) throw ConfigError(qpus->line, "fixed partition needs 'capacity'");
  topology.capacity = static_cast<int>(as_int(*capacity, "capacity"));

  if (const RawValue* links = find_key(table, "links")) {
    topology.links = as_pair_array(*links, "links");
  }
  if (const RawValue* assignment = find_key(table, "assignment")) {
    if (assignment->type == RawValue::Type::String) {
      if (assignment->string_value != "naive") {
        throw ConfigError(assignment->line,
                          "assignment must be \"naive\" or an explicit QPU list");
      }
    } else {
      Assignment explicit_assignment;
      for (long long qpu : as_int_array(*assignment, "assignment")) {
        explicit_assignment.push_back(static_cast<int>(qpu));
      }
      topology.assignment = std::move(explicit_assignment);
    }
  }
  return topology;
}

PartitionConfig partition_from_table(const RawTable& table) {
  reject_unknown_keys(table, {"mode", "qpus", "capacity", "links", "assignment"},
                      "[partition]");
  PartitionConfig partition;
  std::string mode;
  if (const RawValue* mode_value = find_key(table, "mode")) {
    mode = as_string(*mode_value, "mode");
    if (mode != "dynamic_kl" && mode != "fixed") {
      throw ConfigError(mode_value->line, "mode must be \"dynamic_kl\" or \"fixed\"");
    }
  } else {
    mode = find_key(table, "qpus") ? "fixed" : "dynamic_kl";
  }
  if (mode == "dynamic_kl") {
    reject_unknown_keys(table, {"mode"}, "[partition] with dynamic_kl mode");
    partition.dynamic_kl = true;
  } else {
    partition.topology = topology_from_table(table);
  }
  return partition;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + message
                                  : "config: " + message),
      line_(line) {}

RawConfig parse_raw_config(const std::string& text) {
  RawConfig config;
  RawTable* current = &config.root;
  int line_no = 0;
  std::istringstream stream(text);
  std::string raw_line;
  while (std::getline(stream, raw_line)) {
    ++line_no;
    const std::string_view line = trim(strip_comment(raw_line));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.size() < 3 || line.back() != ']') {
        throw ConfigError(line_no, "malformed section header");
      }
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty()) throw ConfigError(line_no, "empty section name");
      current = &config.sections[name];
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(line_no, "missing key before '='");
    for (char c : key) {
      if (!is_key_char(c)) {
        throw ConfigError(line_no, "invalid character in key '" + key + "'");
      }
    }
    if (current->contains(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");

    Cursor cursor{line.substr(eq + 1), 0, line_no};
    RawValue value = parse_value(cursor);
    cursor.skip_ws();
    if (!cursor.done()) {
      throw ConfigError(line_no, "unexpected trailing content after value");
    }
    current->emplace(key, std::move(value));
  }
  return config;
}

double ExperimentConfig::resolved_alpha() const {
  if (alpha) return *alpha;
  if (objective == Objective::MinDistance && partition.topology) {
    if (partition.topology->qpus == 3) return 2.0;
    if (partition.topology->qpus == 4) return 3.0;
  }
  return 1.0;
}

ExperimentConfig experiment_config_from(const RawConfig& raw) {
  reject_unknown_keys(raw.root,
                      {"circuit", "n", "target", "iterations", "objective", "alpha",
                       "population_size", "generations", "crossover_rate", "mutation_rate",
                       "child_rate", "replace_rate", "seeds"},
                      "config");
  for (const auto& [name, table] : raw.sections) {
    if (name != "partition") {
      throw ConfigError(0, "unknown section [" + name + "]");
    }
    (void)table;
  }

  ExperimentConfig config;

  std::string circuit = "grover";
  if (const RawValue* value = find_key(raw.root, "circuit")) {
    circuit = as_string(*value, "circuit");
  }
  if (circuit == "grover") {
    GroverSource source;
    const RawValue* n = find_key(raw.root, "n");
    if (!n) throw ConfigError(0, "grover circuits need 'n'");
    source.n_qubits = static_cast<int>(as_int(*n, "n"));
    if (source.n_qubits < 2 || source.n_qubits > 8) {
      throw ConfigError(n->line, "'n' must be between 2 and 8");
    }
    if (const RawValue* target = find_key(raw.root, "target")) {
      source.target = as_string(*target, "target");
      if (static_cast<int>(source.target->size()) != source.n_qubits) {
        throw ConfigError(target->line, "'target' length must equal 'n'");
      }
      for (char bit : *source.target) {
        if (bit != '0' && bit != '1') {
          throw ConfigError(target->line, "'target' must contain only 0 and 1");
        }
      }
    }
    if (const RawValue* iterations = find_key(raw.root, "iterations")) {
      source.iterations = static_cast<int>(as_int(*iterations, "iterations"));
      if (source.iterations < 1) {
        throw ConfigError(iterations->line, "'iterations' must be positive");
      }
    }
    config.source = std::move(source);
  } else {
    for (const char* key : {"n", "target", "iterations"}) {
      if (const RawValue* value = find_key(raw.root, key)) {
        throw ConfigError(value->line,
                          std::string("'") + key + "' is only valid for the grover source");
      }
    }
    config.source = FileSource{circuit};
  }

  const RawValue* objective = find_key(raw.root, "objective");
  if (!objective) throw ConfigError(0, "missing 'objective'");
  try {
    config.objective = objective_from_name(as_string(*objective, "objective"));
  } catch (const std::invalid_argument& error) {
    throw ConfigError(objective->line, error.what());
  }

  if (const RawValue* alpha = find_key(raw.root, "alpha")) {
    config.alpha = as_float(*alpha, "alpha");
    if (!(*config.alpha > 0.0)) throw ConfigError(alpha->line, "'alpha' must be positive");
  }

  if (const RawValue* value = find_key(raw.root, "population_size")) {
    config.params.population_size = static_cast<int>(as_int(*value, "population_size"));
  }
  if (const RawValue* value = find_key(raw.root, "generations")) {
    config.params.generations = static_cast<int>(as_int(*value, "generations"));
  }
  if (const RawValue* value = find_key(raw.root, "crossover_rate")) {
    config.params.crossover_rate = as_float(*value, "crossover_rate");
  }
  if (const RawValue* value = find_key(raw.root, "mutation_rate")) {
    config.params.mutation_rate = as_float(*value, "mutation_rate");
  }
  if (const RawValue* value = find_key(raw.root, "child_rate")) {
    config.params.child_rate = as_float(*value, "child_rate");
  }
  if (const RawValue* value = find_key(raw.root, "replace_rate")) {
    config.params.replace_rate = as_float(*value, "replace_rate");
  }
  try {
    config.params.validate();
  } catch (const std::invalid_argument& error) {
    throw ConfigError(0, error.what());
  }

  if (const RawValue* seeds = find_key(raw.root, "seeds")) {
    config.seeds.clear();
    for (long long seed : as_int_array(*seeds, "seeds")) {
      if (seed < 0) throw ConfigError(seeds->line, "seeds must be non-negative");
      config.seeds.push_back(static_cast<std::uint64_t>(seed));
    }
    if (config.seeds.empty()) throw ConfigError(seeds->line, "'seeds' must not be empty");
  }

  if (auto it = raw.sections.find("partition"); it != raw.sections.end()) {
    config.partition = partition_from_table(it->second);
  } else if (config.objective == Objective::MinGlobalGates) {
    config.partition.dynamic_kl = true;
  }

  if (config.objective == Objective::MinDistance && !config.partition.topology) {
    throw ConfigError(0, "distance objective needs a [partition] section with a topology");
  }
  if (config.objective == Objective::MinGlobalGates && !config.partition.dynamic_kl &&
      !config.partition.topology) {
    throw ConfigError(0, "global_gates objective needs a partition spec");
  }
  return config;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  return experiment_config_from(parse_raw_config(text));
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  ExperimentConfig config = parse_experiment_config(buffer.str());
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  config.base_dir = parent.empty() ? "." : parent.string();
  return config;
}

std::optional<PartitionSpec> resolve_partition_spec(const ExperimentConfig& config,
                                                    int n_qubits) {
  if (config.partition.dynamic_kl) return PartitionSpec{DynamicKl{}};
  if (!config.partition.topology) return std::nullopt;
  const TopologyConfig& raw = *config.partition.topology;
  NetworkTopology topology(raw.qpus, raw.capacity, raw.links);
  Assignment assignment =
      raw.assignment ? *raw.assignment : naive_assignment(n_qubits, topology);
  validate_assignment(assignment, n_qubits, topology);
  return PartitionSpec{FixedPartition{std::move(topology), std::move(assignment)}};
}

std::optional<TopologyConfig> topology_from_raw(const RawConfig& raw) {
  const RawTable* table = &raw.root;
  if (auto it = raw.sections.find("partition"); it != raw.sections.end()) {
    table = &it->second;
  }
  if (!find_key(*table, "qpus")) return std::nullopt;
  return topology_from_table(*table);
}

}  // namespace dqcevo
