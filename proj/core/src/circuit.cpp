#include "dqcevo/circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dqcevo {

namespace {

void check_gate(const Gate& gate, int n_qubits) {
  if (gate.qubit0 < 0 || gate.qubit0 >= n_qubits) {
    throw std::invalid_argument("gate qubit " + std::to_string(gate.qubit0) +
                                " outside register of size " + std::to_string(n_qubits));
  }
  if (gate.kind == GateKind::CX) {
    if (gate.qubit1 < 0 || gate.qubit1 >= n_qubits) {
      throw std::invalid_argument("gate qubit " + std::to_string(gate.qubit1) +
                                  " outside register of size " + std::to_string(n_qubits));
    }
    if (gate.qubit0 == gate.qubit1) {
      throw std::invalid_argument("cx control and target must be distinct");
    }
  }
}

}  // namespace

CircuitGenome::CircuitGenome(int n_qubits, std::vector<Gate> genes)
    : n_qubits_(n_qubits), genes_(std::move(genes)) {
  if (n_qubits_ < 1) {
    throw std::invalid_argument("circuit needs at least one qubit");
  }
  if (n_qubits_ > 16384) {
    throw std::invalid_argument("qubit count too large: " + std::to_string(n_qubits_));
  }
  for (const Gate& gate : genes_) {
    check_gate(gate, n_qubits_);
  }
}

void CircuitGenome::append(const Gate& gate) {
  check_gate(gate, n_qubits_);
  genes_.push_back(gate);
}

long depth(const CircuitGenome& circuit) {
  std::vector<long> last_layer(circuit.n_qubits(), 0);
  long max_layer = 0;
  for (const Gate& gate : circuit.genes()) {
    long layer = last_layer[gate.qubit0] + 1;
    if (gate.is_two_qubit()) {
      layer = std::max(layer, last_layer[gate.qubit1] + 1);
      last_layer[gate.qubit1] = layer;
    }
    last_layer[gate.qubit0] = layer;
    max_layer = std::max(max_layer, layer);
  }
  return max_layer;
}

std::vector<std::pair<int, int>> cx_pairs(const CircuitGenome& circuit) {
  std::vector<std::pair<int, int>> pairs;
  for (const Gate& gate : circuit.genes()) {
    if (gate.kind == GateKind::CX) {
      pairs.emplace_back(gate.control(), gate.target());
    }
  }
  return pairs;
}

long cx_count(const CircuitGenome& circuit) {
  long count = 0;
  for (const Gate& gate : circuit.genes()) {
    if (gate.kind == GateKind::CX) {
      ++count;
    }
  }
  return count;
}

}  // namespace dqcevo
