#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dqcevo/circuit.hpp"

namespace dqcevo {

/// Parse failure with the 1-based line it occurred on.
class CircuitParseError : public std::runtime_error {
 public:
  enum class Kind {
    MissingHeader,
    MalformedLine,
    UnknownGate,
    QubitOutOfRange,
    DuplicateQubit,
  };

  CircuitParseError(Kind kind, int line, const std::string& message);

  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

/// Reads the line-oriented circuit text format:
///
///   qubits <n>
///   x <q>
///   sx <q>
///   rz <q> <angle>
///   cx <control> <target>
///
/// Lines whose first non-blank character is '#' are comments. Angles are in
/// radians and are wrapped into [0, 2*pi) on construction.
CircuitGenome parse_circuit(std::string_view text);

/// Inverse of parse_circuit on its output. Angles are printed with 17
/// significant digits so that serialize/parse round-trips bit-exactly.
std::string serialize_circuit(const CircuitGenome& circuit);

}  // namespace dqcevo
