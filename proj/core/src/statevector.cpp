#include "dqcevo/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dqcevo {

namespace {

int qubit_count_for(const Statevector& state) {
  std::size_t size = state.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("statevector size must be a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  return n;
}

// Enumerates pairs (i0, i0 | bit) where i0 has a zero at `qubit`.
// hi/lo masks split the index around the target bit.
template <typename Fn>
void for_each_pair(std::size_t size, int qubit, Fn&& fn) {
  const std::size_t bit = std::size_t{1} << qubit;
  const std::size_t lo = bit - 1;
  const std::size_t hi = ~lo;
  const std::size_t half = size >> 1;
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t i0 = ((i & hi) << 1) | (i & lo);
    fn(i0, i0 | bit);
  }
}

void apply_x(Statevector& state, int qubit) {
  for_each_pair(state.size(), qubit, [&](std::size_t i0, std::size_t i1) {
    std::swap(state[i0], state[i1]);
  });
}

void apply_sx(Statevector& state, int qubit) {
  // sqrt(X) = 1/2 [[1+i, 1-i], [1-i, 1+i]]
  constexpr Amplitude p{0.5, 0.5};
  constexpr Amplitude m{0.5, -0.5};
  for_each_pair(state.size(), qubit, [&](std::size_t i0, std::size_t i1) {
    const Amplitude a = state[i0];
    const Amplitude b = state[i1];
    state[i0] = p * a + m * b;
    state[i1] = m * a + p * b;
  });
}

void apply_rz(Statevector& state, int qubit, double angle) {
  // diag(e^{-i theta/2}, e^{+i theta/2})
  const Amplitude e0 = std::polar(1.0, -angle / 2.0);
  const Amplitude e1 = std::polar(1.0, angle / 2.0);
  for_each_pair(state.size(), qubit, [&](std::size_t i0, std::size_t i1) {
    state[i0] *= e0;
    state[i1] *= e1;
  });
}

void apply_cx(Statevector& state, int control, int target) {
  const std::size_t cbit = std::size_t{1} << control;
  for_each_pair(state.size(), target, [&](std::size_t i0, std::size_t i1) {
    if (i0 & cbit) std::swap(state[i0], state[i1]);
  });
}

}  // namespace

Statevector zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 20) {
    throw std::invalid_argument("qubit count out of range for dense simulation");
  }
  Statevector state(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  state[0] = Amplitude{1.0, 0.0};
  return state;
}

void apply_gate(Statevector& state, const Gate& gate) {
  const int n = qubit_count_for(state);
  if (gate.max_qubit() >= n) {
    throw std::invalid_argument("gate qubit outside statevector register");
  }
  switch (gate.kind) {
    case GateKind::X:
      apply_x(state, gate.qubit0);
      break;
    case GateKind::SX:
      apply_sx(state, gate.qubit0);
      break;
    case GateKind::RZ:
      apply_rz(state, gate.qubit0, gate.angle);
      break;
    case GateKind::CX:
      apply_cx(state, gate.qubit0, gate.qubit1);
      break;
  }
}

Statevector run(const CircuitGenome& circuit) {
  Statevector state = zero_state(circuit.n_qubits());
  for (const Gate& gate : circuit.genes()) apply_gate(state, gate);
  return state;
}

double fidelity(const Statevector& a, const Statevector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("fidelity requires states of equal size");
  }
  Amplitude overlap{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::norm(overlap);
}

double fidelity(const Statevector& target, const CircuitGenome& circuit) {
  if (target.size() != (std::size_t{1} << circuit.n_qubits())) {
    throw std::invalid_argument("target state does not match the circuit's qubit count");
  }
  return fidelity(target, run(circuit));
}

std::vector<double> probabilities(const Statevector& state) {
  std::vector<double> probs(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) probs[i] = std::norm(state[i]);
  return probs;
}

double norm_squared(const Statevector& state) {
  double total = 0.0;
  for (const Amplitude& amp : state) total += std::norm(amp);
  return total;
}

std::size_t argmax_probability(const Statevector& state) {
  if (state.empty()) throw std::invalid_argument("empty statevector");
  std::size_t best = 0;
  double best_prob = std::norm(state[0]);
  for (std::size_t i = 1; i < state.size(); ++i) {
    const double prob = std::norm(state[i]);
    if (prob > best_prob) {
      best_prob = prob;
      best = i;
    }
  }
  return best;
}

std::string extract_solution(const Statevector& state) {
  const int n_qubits = qubit_count_for(state);
  const std::size_t index = argmax_probability(state);
  std::string bits(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (index & (std::size_t{1} << q)) bits[static_cast<std::size_t>(q)] = '1';
  }
  return bits;
}

}  // namespace dqcevo
