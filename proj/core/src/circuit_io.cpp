#include "dqcevo/circuit_io.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <vector>

namespace dqcevo {

namespace {

using Kind = CircuitParseError::Kind;

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

std::optional<int> parse_int(std::string_view token) {
  int value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::optional<double> parse_double(std::string_view token) {
  // from_chars for doubles is unreliable on older libstdc++, strtod is fine here
  std::string buffer(token);
  char* end = nullptr;
  double value = std::strtod(buffer.c_str(), &end);
  if (end != buffer.c_str() + buffer.size() || buffer.empty()) return std::nullopt;
  return value;
}

int required_qubit(std::string_view token, int n_qubits, int line) {
  auto value = parse_int(token);
  if (!value) {
    throw CircuitParseError(Kind::MalformedLine, line,
                            "expected qubit index, got '" + std::string(token) + "'");
  }
  if (*value < 0 || *value >= n_qubits) {
    throw CircuitParseError(Kind::QubitOutOfRange, line,
                            "qubit " + std::to_string(*value) + " outside register of size " +
                                std::to_string(n_qubits));
  }
  return *value;
}

void require_token_count(const std::vector<std::string_view>& tokens, std::size_t count,
                         int line) {
  if (tokens.size() != count) {
    throw CircuitParseError(Kind::MalformedLine, line,
                            "expected " + std::to_string(count - 1) + " argument(s) for '" +
                                std::string(tokens[0]) + "'");
  }
}

}  // namespace

CircuitParseError::CircuitParseError(Kind kind, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      kind_(kind),
      line_(line) {}

CircuitGenome parse_circuit(std::string_view text) {
  std::optional<CircuitGenome> circuit;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;

    if (!circuit) {
      if (tokens[0] != "qubits") {
        throw CircuitParseError(Kind::MissingHeader, line_no,
                                "expected 'qubits <n>' before any gate");
      }
      require_token_count(tokens, 2, line_no);
      auto n = parse_int(tokens[1]);
      if (!n || *n < 1) {
        throw CircuitParseError(Kind::MalformedLine, line_no,
                                "qubit count must be a positive integer");
      }
      circuit.emplace(*n);
      continue;
    }

    const int n = circuit->n_qubits();
    if (tokens[0] == "x" || tokens[0] == "sx") {
      require_token_count(tokens, 2, line_no);
      int q = required_qubit(tokens[1], n, line_no);
      circuit->append(tokens[0] == "x" ? Gate::x(q) : Gate::sx(q));
    } else if (tokens[0] == "rz") {
      require_token_count(tokens, 3, line_no);
      int q = required_qubit(tokens[1], n, line_no);
      auto angle = parse_double(tokens[2]);
      if (!angle) {
        throw CircuitParseError(Kind::MalformedLine, line_no,
                                "expected angle, got '" + std::string(tokens[2]) + "'");
      }
      circuit->append(Gate::rz(q, *angle));
    } else if (tokens[0] == "cx") {
      require_token_count(tokens, 3, line_no);
      int control = required_qubit(tokens[1], n, line_no);
      int target = required_qubit(tokens[2], n, line_no);
      if (control == target) {
        throw CircuitParseError(Kind::DuplicateQubit, line_no,
                                "cx control and target must be distinct");
      }
      circuit->append(Gate::cx(control, target));
    } else {
      throw CircuitParseError(Kind::UnknownGate, line_no,
                              "unknown gate '" + std::string(tokens[0]) + "'");
    }
  }
  if (!circuit) {
    throw CircuitParseError(Kind::MissingHeader, line_no, "missing 'qubits <n>' header");
  }
  return std::move(*circuit);
}

std::string serialize_circuit(const CircuitGenome& circuit) {
  std::string out = "qubits " + std::to_string(circuit.n_qubits()) + "\n";
  char buffer[64];
  for (const Gate& gate : circuit.genes()) {
    out += to_string(gate.kind);
    out += ' ';
    out += std::to_string(gate.qubit0);
    switch (gate.kind) {
      case GateKind::RZ:
        std::snprintf(buffer, sizeof(buffer), "%.17g", gate.angle);
        out += ' ';
        out += buffer;
        break;
      case GateKind::CX:
        out += ' ';
        out += std::to_string(gate.qubit1);
        break;
      default:
        break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace dqcevo
