#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "dqcevo/circuit.hpp"

namespace dqcevo {

// Symmetric weighted graph over qubits; weight(a, b) counts the CX gates
// touching the pair, direction ignored. No self-edges.
class InteractionGraph {
 public:
  explicit InteractionGraph(int n_vertices);

  int size() const { return n_; }
  long weight(int a, int b) const;
  void add_weight(int a, int b, long w);
  long total_weight() const;

 private:
  int n_;
  std::vector<long> w_;
};

InteractionGraph interaction_graph(const CircuitGenome& circuit);

// Qubit -> QPU map.
using Assignment = std::vector<int>;

// QPU interconnect. Pairwise hop distances are precomputed by BFS; the
// constructor rejects disconnected link sets.
class NetworkTopology {
 public:
  NetworkTopology(int n_qpus, int capacity, std::vector<std::pair<int, int>> links);

  int n_qpus() const { return n_qpus_; }
  int capacity() const { return capacity_; }
  int distance(int a, int b) const;
  const std::vector<std::pair<int, int>>& links() const { return links_; }

 private:
  int n_qpus_;
  int capacity_;
  std::vector<std::pair<int, int>> links_;
  std::vector<int> dist_;
};

NetworkTopology complete_topology(int n_qpus, int capacity);
// Row-major grid with 4-neighbor links.
NetworkTopology grid_topology(int rows, int cols, int capacity);

// Qubit q lives on QPU q / capacity.
Assignment naive_assignment(int n_qubits, const NetworkTopology& topology);
// Throws if sizes, QPU indices, or per-QPU loads are inconsistent.
void validate_assignment(const Assignment& assignment, int n_qubits,
                         const NetworkTopology& topology);

// Kernighan-Lin bisection into parts of size ceil(n/2) / floor(n/2), labels
// 0/1 per vertex. Odd orders are padded with a zero-weight dummy vertex that
// is dropped from the result. The output is locally optimal under single
// pair swaps. The RNG (taken by value, so calls are pure) only breaks the
// initial split and gain ties. Requires at least 2 vertices.
Assignment kl_bisect(const InteractionGraph& graph, std::mt19937_64 rng);

// Number of CX pairs whose endpoints map to different QPUs.
long cut_cost(const Assignment& p, const std::vector<std::pair<int, int>>& cx);

// Sum of hop distances between the QPUs of each CX pair's endpoints.
// Validates capacities, so it throws on an overfull assignment.
long hop_cost(const Assignment& p, const std::vector<std::pair<int, int>>& cx,
              const NetworkTopology& topology);

// Total edge weight crossing the labeled split (test oracle helper).
long cut_weight(const InteractionGraph& graph, const Assignment& side);

// How the communication metric of a circuit is measured: a fresh KL
// bisection per evaluation, or a fixed placement on hardware.
struct DynamicKl {
  int n_parts = 2;
};
struct FixedPartition {
  NetworkTopology topology;
  Assignment assignment;
};
using PartitionSpec = std::variant<DynamicKl, FixedPartition>;

// DynamicKl: cut of a KL bisection of the circuit's interaction graph,
// re-run per call with a generator seeded from `seed`, so the value is a
// pure function of (circuit, seed). Fixed: hop cost under the placement.
long global_gate_cost(const CircuitGenome& circuit, const PartitionSpec& spec,
                      std::uint64_t seed);

}  // namespace dqcevo
