#pragma once

#include <utility>
#include <vector>

#include "dqcevo/gate.hpp"

namespace dqcevo {

/// A circuit in linear genome form: an ordered gate list over a fixed qubit
/// count. The empty genome is the identity circuit. All gates are validated
/// against the qubit count on construction and on append, so a genome handed
/// out by this class always satisfies the representation invariants.
class CircuitGenome {
 public:
  explicit CircuitGenome(int n_qubits, std::vector<Gate> genes = {});

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& genes() const { return genes_; }
  std::size_t size() const { return genes_.size(); }
  bool empty() const { return genes_.empty(); }

  void append(const Gate& gate);

  friend bool operator==(const CircuitGenome&, const CircuitGenome&) = default;

 private:
  int n_qubits_;
  std::vector<Gate> genes_;
};

/// Number of layers when gates are packed greedily left to right, each gate
/// entering the earliest layer after the last layer touching any of its
/// qubits. The empty genome has depth 0.
long depth(const CircuitGenome& circuit);

/// The (control, target) pair of every CX gene, in gene order.
std::vector<std::pair<int, int>> cx_pairs(const CircuitGenome& circuit);

long cx_count(const CircuitGenome& circuit);

}  // namespace dqcevo
