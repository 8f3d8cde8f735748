#pragma once

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "bcond/builders.hpp"
#include "bcond/generator.hpp"
#include "bcond/network.hpp"
#include "bcond/oracle.hpp"

namespace bcond::testing {

inline bool near(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol;
}

// Chain A -> B with p(B=s0 | A=s0) = 1, p(B=s0 | A=s1) = 0.
inline BeliefNetwork make_deterministic_chain(double p_root_s0) {
  std::vector<Variable> vars{{"A", {"s0", "s1"}}, {"B", {"s0", "s1"}}};
  std::vector<ConditionalTable> tables(2);
  tables[0] = {0, {}, {{p_root_s0, 1.0 - p_root_s0}}};
  tables[1] = {1, {0}, {{1.0, 0.0}, {0.0, 1.0}}};
  return BeliefNetwork(std::move(vars), std::move(tables));
}

inline BeliefNetwork make_single(const std::vector<double>& prior) {
  std::vector<Variable> vars{{"R", {}}};
  for (std::size_t s = 0; s < prior.size(); ++s) {
    vars[0].states.push_back("s" + std::to_string(s));
  }
  std::vector<ConditionalTable> tables{{0, {}, {prior}}};
  return BeliefNetwork(std::move(vars), std::move(tables));
}

// Independent checker for is_singly_connected: union-find over the
// undirected skeleton, true iff no union ever joins an existing set.
inline bool union_find_forest(const BeliefNetwork& net) {
  std::vector<int> parent(net.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int v = 0; v < net.size(); ++v) {
    for (int p : net.table(v).parents) {
      const int a = find(v), b = find(p);
      if (a == b) return false;
      parent[a] = b;
    }
  }
  return true;
}

// Independent loop counter: cyclomatic number of the skeleton.
inline int cyclomatic_number(const BeliefNetwork& net) {
  std::vector<int> parent(net.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int merges = 0;
  int edges = 0;
  for (int v = 0; v < net.size(); ++v) {
    for (int p : net.table(v).parents) {
      ++edges;
      const int a = find(v), b = find(p);
      if (a != b) {
        parent[a] = b;
        ++merges;
      }
    }
  }
  return edges - merges;
}

inline GeneratorParams sweep_params(std::uint64_t seed, int max_nodes = 12,
                                    int loops = 2) {
  GeneratorParams p;
  std::mt19937_64 rng(seed * 1000003 + 17);
  p.node_count = 6 + static_cast<int>(rng() % (max_nodes - 5));
  p.max_parents = 3;
  p.max_states = 2 + static_cast<int>(rng() % 2);
  p.loop_target = 1 + static_cast<int>(rng() % loops);
  p.seed = seed;
  return p;
}

inline Evidence random_evidence(const BeliefNetwork& net, std::uint64_t seed,
                                int count = 2) {
  std::mt19937_64 rng(seed * 7919 + 3);
  Evidence ev;
  for (int k = 0; k < count; ++k) {
    const int v = static_cast<int>(rng() % net.size());
    const int s = static_cast<int>(rng() % net.cardinality(v));
    ev.assignments[v] = s;
  }
  return ev;
}

}  // namespace bcond::testing
