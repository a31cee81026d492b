#include "dqcevo/grover.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dqcevo/rng.hpp"

namespace dqcevo {

namespace {

void append_h(CircuitGenome& circuit, int qubit) {
  // H = e^{i pi/4} RZ(pi/2) SX RZ(pi/2); global phase is irrelevant here.
  constexpr double half_pi = std::numbers::pi / 2.0;
  circuit.append(Gate::rz(qubit, half_pi));
  circuit.append(Gate::sx(qubit));
  circuit.append(Gate::rz(qubit, half_pi));
}

// Applies phase e^{i theta * parity(S)} for every nonempty S of qs, signed
// (-1)^{|S|+1}, via the Gray-code parity walk on the last qubit. With
// theta = pi / 2^{m-1} the net effect is a phase flip on |1...1>, i.e. a
// multi-controlled Z, using 2^m - 1 RZ and 2^m - 2 CX gates.
void emit_phase_network(CircuitGenome& circuit, const std::vector<int>& qs, double theta) {
  const int m = static_cast<int>(qs.size());
  if (m == 1) {
    circuit.append(Gate::rz(qs[0], theta));
    return;
  }
  const int acc = qs[static_cast<std::size_t>(m) - 1];
  const unsigned k = static_cast<unsigned>(m) - 1;
  circuit.append(Gate::rz(acc, theta));
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
    const int flipped = std::countr_zero(i);
    circuit.append(Gate::cx(qs[static_cast<std::size_t>(flipped)], acc));
    const std::uint64_t gray = i ^ (i >> 1);
    const double sign = (std::popcount(gray) % 2 == 0) ? 1.0 : -1.0;
    circuit.append(Gate::rz(acc, sign * theta));
  }
  // Gray code ends at the top bit alone, one CX restores the accumulator.
  circuit.append(Gate::cx(qs[k - 1], acc));

  std::vector<int> rest(qs.begin(), qs.end() - 1);
  emit_phase_network(circuit, rest, theta);
}

void append_mcz(CircuitGenome& circuit, int n_qubits) {
  std::vector<int> qs(static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) qs[static_cast<std::size_t>(q)] = q;
  const double theta = std::numbers::pi / static_cast<double>(std::uint64_t{1} << (n_qubits - 1));
  emit_phase_network(circuit, qs, theta);
}

void append_oracle(CircuitGenome& circuit, const std::string& target) {
  const int n = circuit.n_qubits();
  for (int q = 0; q < n; ++q) {
    if (target[static_cast<std::size_t>(q)] == '0') circuit.append(Gate::x(q));
  }
  append_mcz(circuit, n);
  for (int q = 0; q < n; ++q) {
    if (target[static_cast<std::size_t>(q)] == '0') circuit.append(Gate::x(q));
  }
}

void append_diffusion(CircuitGenome& circuit) {
  const int n = circuit.n_qubits();
  for (int q = 0; q < n; ++q) append_h(circuit, q);
  for (int q = 0; q < n; ++q) circuit.append(Gate::x(q));
  append_mcz(circuit, n);
  for (int q = 0; q < n; ++q) circuit.append(Gate::x(q));
  for (int q = 0; q < n; ++q) append_h(circuit, q);
}

}  // namespace

int default_grover_iterations(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("qubit count must be positive");
  const double amplitudes = std::pow(2.0, n_qubits);
  return static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(amplitudes)));
}

std::string random_target(int n_qubits, std::mt19937_64& rng) {
  if (n_qubits < 1) throw std::invalid_argument("qubit count must be positive");
  std::string bits(static_cast<std::size_t>(n_qubits), '0');
  for (char& bit : bits) {
    if (uniform_index(rng, 2) == 1) bit = '1';
  }
  return bits;
}

double grover_success_probability(int n_qubits, int iterations) {
  const double theta = std::asin(std::pow(2.0, -n_qubits / 2.0));
  const double arg = (2.0 * iterations + 1.0) * theta;
  const double s = std::sin(arg);
  return s * s;
}

CircuitGenome build_grover(const GroverSpec& spec) {
  return build_grover(spec.n_qubits, spec.target, spec.iterations);
}

CircuitGenome build_grover(int n_qubits, const std::string& target, int iterations) {
  if (n_qubits < 2 || n_qubits > 8) {
    throw std::invalid_argument("supported Grover sizes are 2 to 8 qubits");
  }
  if (static_cast<int>(target.size()) != n_qubits) {
    throw std::invalid_argument("target length does not match qubit count");
  }
  for (char bit : target) {
    if (bit != '0' && bit != '1') throw std::invalid_argument("target must be a bitstring");
  }
  if (iterations < 0) iterations = default_grover_iterations(n_qubits);
  if (iterations < 1) throw std::invalid_argument("iteration count must be positive");

  CircuitGenome circuit(n_qubits);
  for (int q = 0; q < n_qubits; ++q) append_h(circuit, q);
  for (int round = 0; round < iterations; ++round) {
    append_oracle(circuit, target);
    append_diffusion(circuit);
  }
  return circuit;
}

}  // namespace dqcevo
