#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "dqcevo/circuit.hpp"

namespace dqcevo {

// floor(pi/4 * sqrt(2^n)), the standard single-solution iteration count.
int default_grover_iterations(int n_qubits);

// Uniform random n-bit target, qubit 0 first.
std::string random_target(int n_qubits, std::mt19937_64& rng);

// Success probability after k rounds on a single marked item:
// sin^2((2k+1) * asin(2^{-n/2})).
double grover_success_probability(int n_qubits, int iterations);

struct GroverSpec {
  int n_qubits = 0;          // in [2, 8]
  std::string target;        // marked bitstring, qubit 0 first
  int iterations = -1;       // < 0 selects the default count
};

// Builds the Grover circuit over {X, SX, RZ, CX}.
CircuitGenome build_grover(const GroverSpec& spec);
CircuitGenome build_grover(int n_qubits, const std::string& target, int iterations = -1);

}  // namespace dqcevo
