#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dqcevo/circuit.hpp"

namespace dqcevo {

using Amplitude = std::complex<double>;

// Dense amplitude array of length 2^n. Basis index b has qubit 0 as its
// least significant bit throughout the codebase.
using Statevector = std::vector<Amplitude>;

// All-zeros computational basis state. 1 <= n_qubits <= 20 (resource guard).
Statevector zero_state(int n_qubits);

// Applies one gate in place. The state size must be a power of two large
// enough for the gate's qubits.
void apply_gate(Statevector& state, const Gate& gate);

// Runs the whole circuit on |0...0> and returns the final state.
Statevector run(const CircuitGenome& circuit);

// |<a|b>|^2. Sizes must match. Immune to global phase on either state.
double fidelity(const Statevector& a, const Statevector& b);

// |<target|U|0>|^2 where U is the circuit.
double fidelity(const Statevector& target, const CircuitGenome& circuit);

// Elementwise |amplitude|^2.
std::vector<double> probabilities(const Statevector& state);

// Sum of |amplitude|^2, stays at 1 under unitary evolution.
double norm_squared(const Statevector& state);

// Index of the most probable basis state; ties resolve to the smallest index.
std::size_t argmax_probability(const Statevector& state);

// Most probable outcome as a bitstring, qubit 0 first.
std::string extract_solution(const Statevector& state);

}  // namespace dqcevo
