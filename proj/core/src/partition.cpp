#include "dqcevo/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "dqcevo/rng.hpp"

namespace dqcevo {

InteractionGraph::InteractionGraph(int n_vertices) : n_(n_vertices) {
  if (n_ < 1) throw std::invalid_argument("interaction graph needs at least one vertex");
  w_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
}

long InteractionGraph::weight(int a, int b) const {
  if (a < 0 || a >= n_ || b < 0 || b >= n_) throw std::out_of_range("vertex out of range");
  return w_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
            static_cast<std::size_t>(b)];
}

void InteractionGraph::add_weight(int a, int b, long w) {
  if (a < 0 || a >= n_ || b < 0 || b >= n_) throw std::out_of_range("vertex out of range");
  if (a == b) throw std::invalid_argument("self-loops are not allowed");
  w_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)] +=
      w;
  w_[static_cast<std::size_t>(b) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(a)] +=
      w;
}

long InteractionGraph::total_weight() const {
  long total = 0;
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) total += weight(a, b);
  }
  return total;
}

InteractionGraph interaction_graph(const CircuitGenome& circuit) {
  InteractionGraph graph(circuit.n_qubits());
  for (const auto& [control, target] : cx_pairs(circuit)) graph.add_weight(control, target, 1);
  return graph;
}

NetworkTopology::NetworkTopology(int n_qpus, int capacity, std::vector<std::pair<int, int>> links)
    : n_qpus_(n_qpus), capacity_(capacity), links_(std::move(links)) {
  if (n_qpus_ < 1) throw std::invalid_argument("topology needs at least one QPU");
  if (capacity_ < 1) throw std::invalid_argument("QPU capacity must be positive");

  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n_qpus_));
  for (const auto& [a, b] : links_) {
    if (a < 0 || a >= n_qpus_ || b < 0 || b >= n_qpus_) {
      throw std::invalid_argument("link endpoint out of range");
    }
    if (a == b) throw std::invalid_argument("link endpoints must differ");
    adjacency[static_cast<std::size_t>(a)].push_back(b);
    adjacency[static_cast<std::size_t>(b)].push_back(a);
  }

  const int unreached = -1;
  dist_.assign(static_cast<std::size_t>(n_qpus_) * static_cast<std::size_t>(n_qpus_), unreached);
  for (int start = 0; start < n_qpus_; ++start) {
    int* row = dist_.data() + static_cast<std::size_t>(start) * static_cast<std::size_t>(n_qpus_);
    std::queue<int> frontier;
    row[start] = 0;
    frontier.push(start);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int u : adjacency[static_cast<std::size_t>(v)]) {
        if (row[u] == unreached) {
          row[u] = row[v] + 1;
          frontier.push(u);
        }
      }
    }
    for (int other = 0; other < n_qpus_; ++other) {
      if (row[other] == unreached) {
        throw std::invalid_argument("network topology is not connected");
      }
    }
  }
}

int NetworkTopology::distance(int a, int b) const {
  if (a < 0 || a >= n_qpus_ || b < 0 || b >= n_qpus_) throw std::out_of_range("QPU out of range");
  return dist_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_qpus_) +
               static_cast<std::size_t>(b)];
}

NetworkTopology complete_topology(int n_qpus, int capacity) {
  std::vector<std::pair<int, int>> links;
  for (int a = 0; a < n_qpus; ++a) {
    for (int b = a + 1; b < n_qpus; ++b) links.emplace_back(a, b);
  }
  return NetworkTopology(n_qpus, capacity, std::move(links));
}

NetworkTopology grid_topology(int rows, int cols, int capacity) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
  std::vector<std::pair<int, int>> links;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) links.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) links.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return NetworkTopology(rows * cols, capacity, std::move(links));
}

Assignment naive_assignment(int n_qubits, const NetworkTopology& topology) {
  if (n_qubits < 1) throw std::invalid_argument("qubit count must be positive");
  const long slots = static_cast<long>(topology.n_qpus()) * topology.capacity();
  if (n_qubits > slots) {
    throw std::invalid_argument("topology has only " + std::to_string(slots) + " slots for " +
                                std::to_string(n_qubits) + " qubits");
  }
  Assignment assignment(static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) {
    assignment[static_cast<std::size_t>(q)] = q / topology.capacity();
  }
  return assignment;
}

void validate_assignment(const Assignment& assignment, int n_qubits,
                         const NetworkTopology& topology) {
  if (static_cast<int>(assignment.size()) != n_qubits) {
    throw std::invalid_argument("assignment size does not match qubit count");
  }
  std::vector<int> load(static_cast<std::size_t>(topology.n_qpus()), 0);
  for (int qpu : assignment) {
    if (qpu < 0 || qpu >= topology.n_qpus()) {
      throw std::invalid_argument("assignment references QPU out of range");
    }
    if (++load[static_cast<std::size_t>(qpu)] > topology.capacity()) {
      throw std::invalid_argument("assignment exceeds QPU capacity");
    }
  }
}

Assignment kl_bisect(const InteractionGraph& graph, std::mt19937_64 rng) {
  const int n = graph.size();
  if (n < 2) throw std::invalid_argument("bisection needs at least 2 vertices");
  // Odd orders get a zero-weight dummy vertex so both halves have size m/2.
  const int m = (n % 2 == 0) ? n : n + 1;
  const int half = m / 2;
  auto weight = [&](int a, int b) -> long {
    if (a >= n || b >= n) return 0;
    return graph.weight(a, b);
  };

  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  for (int i = m - 1; i > 0; --i) {
    const int j = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  std::vector<int> side(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    side[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i < half ? 0 : 1;
  }

  std::vector<long> d(static_cast<std::size_t>(m));
  std::vector<char> locked(static_cast<std::size_t>(m));
  std::vector<int> swap_a(static_cast<std::size_t>(half));
  std::vector<int> swap_b(static_cast<std::size_t>(half));
  std::vector<long> gains(static_cast<std::size_t>(half));
  std::vector<std::pair<int, int>> best_pairs;

  while (true) {
    // D[v] = external minus internal incident weight.
    for (int v = 0; v < m; ++v) {
      long diff = 0;
      for (int u = 0; u < m; ++u) {
        if (u == v) continue;
        const long w = weight(u, v);
        diff += side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)] ? -w : w;
      }
      d[static_cast<std::size_t>(v)] = diff;
    }
    std::fill(locked.begin(), locked.end(), 0);

    // One full pass: tentatively swap every vertex exactly once.
    for (int step = 0; step < half; ++step) {
      long best_gain = std::numeric_limits<long>::min();
      best_pairs.clear();
      for (int a = 0; a < m; ++a) {
        if (locked[static_cast<std::size_t>(a)] || side[static_cast<std::size_t>(a)] != 0) {
          continue;
        }
        for (int b = 0; b < m; ++b) {
          if (locked[static_cast<std::size_t>(b)] || side[static_cast<std::size_t>(b)] != 1) {
            continue;
          }
          const long gain =
              d[static_cast<std::size_t>(a)] + d[static_cast<std::size_t>(b)] - 2 * weight(a, b);
          if (gain > best_gain) {
            best_gain = gain;
            best_pairs.clear();
          }
          if (gain == best_gain) best_pairs.emplace_back(a, b);
        }
      }
      const auto [a, b] = best_pairs[uniform_index(rng, best_pairs.size())];
      swap_a[static_cast<std::size_t>(step)] = a;
      swap_b[static_cast<std::size_t>(step)] = b;
      gains[static_cast<std::size_t>(step)] = best_gain;
      locked[static_cast<std::size_t>(a)] = 1;
      locked[static_cast<std::size_t>(b)] = 1;
      for (int v = 0; v < m; ++v) {
        if (locked[static_cast<std::size_t>(v)]) continue;
        const long toward = 2 * weight(v, a) - 2 * weight(v, b);
        d[static_cast<std::size_t>(v)] +=
            side[static_cast<std::size_t>(v)] == 0 ? toward : -toward;
      }
    }

    // Commit the best prefix of the pass if it improves the cut.
    long best_total = 0;
    int best_len = 0;
    long running = 0;
    for (int step = 0; step < half; ++step) {
      running += gains[static_cast<std::size_t>(step)];
      if (running > best_total) {
        best_total = running;
        best_len = step + 1;
      }
    }
    if (best_total <= 0) break;
    for (int step = 0; step < best_len; ++step) {
      side[static_cast<std::size_t>(swap_a[static_cast<std::size_t>(step)])] = 1;
      side[static_cast<std::size_t>(swap_b[static_cast<std::size_t>(step)])] = 0;
    }
  }

  side.resize(static_cast<std::size_t>(n));
  return side;
}

long cut_cost(const Assignment& p, const std::vector<std::pair<int, int>>& cx) {
  long total = 0;
  for (const auto& [control, target] : cx) {
    if (control < 0 || control >= static_cast<int>(p.size()) || target < 0 ||
        target >= static_cast<int>(p.size())) {
      throw std::invalid_argument("CX endpoint has no QPU assignment");
    }
    if (p[static_cast<std::size_t>(control)] != p[static_cast<std::size_t>(target)]) ++total;
  }
  return total;
}

long hop_cost(const Assignment& p, const std::vector<std::pair<int, int>>& cx,
              const NetworkTopology& topology) {
  validate_assignment(p, static_cast<int>(p.size()), topology);
  long total = 0;
  for (const auto& [control, target] : cx) {
    if (control < 0 || control >= static_cast<int>(p.size()) || target < 0 ||
        target >= static_cast<int>(p.size())) {
      throw std::invalid_argument("CX endpoint has no QPU assignment");
    }
    total += topology.distance(p[static_cast<std::size_t>(control)],
                               p[static_cast<std::size_t>(target)]);
  }
  return total;
}

long cut_weight(const InteractionGraph& graph, const Assignment& side) {
  if (static_cast<int>(side.size()) != graph.size()) {
    throw std::invalid_argument("side labels do not match graph order");
  }
  long total = 0;
  for (int a = 0; a < graph.size(); ++a) {
    for (int b = a + 1; b < graph.size(); ++b) {
      if (side[static_cast<std::size_t>(a)] != side[static_cast<std::size_t>(b)]) {
        total += graph.weight(a, b);
      }
    }
  }
  return total;
}

long global_gate_cost(const CircuitGenome& circuit, const PartitionSpec& spec,
                      std::uint64_t seed) {
  if (const auto* dynamic = std::get_if<DynamicKl>(&spec)) {
    if (dynamic->n_parts != 2) {
      throw std::invalid_argument("dynamic partitioning supports exactly 2 parts");
    }
    const auto cx = cx_pairs(circuit);
    if (cx.empty()) return 0;
    const Assignment p = kl_bisect(interaction_graph(circuit), std::mt19937_64(seed));
    return cut_cost(p, cx);
  }
  const auto& fixed = std::get<FixedPartition>(spec);
  if (static_cast<int>(fixed.assignment.size()) != circuit.n_qubits()) {
    throw std::invalid_argument("fixed assignment does not cover the circuit's qubits");
  }
  return hop_cost(fixed.assignment, cx_pairs(circuit), fixed.topology);
}

}  // namespace dqcevo
