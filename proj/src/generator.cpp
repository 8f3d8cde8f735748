#include "bcond/generator.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace bcond {

namespace {

// Thin wrapper so draws are a fixed function of the seed, independent of
// standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform_int(int lo, int hi) {  // inclusive bounds
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 gen_;
};

bool reaches(const std::vector<std::vector<int>>& children, int from, int to) {
  if (from == to) return true;
  std::vector<int> stack{from};
  std::vector<char> seen(children.size(), 0);
  seen[from] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int c : children[v]) {
      if (c == to) return true;
      if (!seen[c]) {
        seen[c] = 1;
        stack.push_back(c);
      }
    }
  }
  return false;
}

}  // namespace

BeliefNetwork generate_random(const GeneratorParams& params) {
  if (params.node_count < 1) throw Error("generator: node_count must be >= 1");
  if (params.max_parents < 0) throw Error("generator: max_parents must be >= 0");
  if (params.max_states < 2) throw Error("generator: max_states must be >= 2");
  if (params.loop_target < 0) throw Error("generator: loop_target must be >= 0");
  if (params.loop_target > 0 &&
      (params.max_parents < 2 || params.node_count < 3)) {
    throw Error("generator: infeasible constraints: loops need >= 3 nodes "
                "and max_parents >= 2");
  }
  if (params.asymmetry &&
      !(*params.asymmetry > 0.0 && *params.asymmetry < 1.0)) {
    throw Error("generator: asymmetry must lie in (0,1)");
  }

  Rng rng(params.seed);
  const int n = params.node_count;

  int width = 1;
  for (int x = n - 1; x >= 10; x /= 10) ++width;
  width = std::max(width, 2);

  std::vector<Variable> vars(n);
  for (int v = 0; v < n; ++v) {
    std::ostringstream name;
    name << 'n';
    std::string digits = std::to_string(v);
    name << std::string(width - digits.size(), '0') << digits;
    vars[v].name = name.str();
    const int card = rng.uniform_int(2, params.max_states);
    for (int s = 0; s < card; ++s) {
      vars[v].states.push_back("s" + std::to_string(s));
    }
  }

  std::vector<std::vector<int>> parents(n), children(n);
  auto add_arc = [&](int parent, int child) {
    parents[child].push_back(parent);
    children[parent].push_back(child);
  };

  // Spanning tree over the skeleton, each edge oriented by a coin flip so
  // multi-parent junctions occur even in polytrees.
  if (params.max_parents >= 1) {
    for (int v = 1; v < n; ++v) {
      const int other = rng.uniform_int(0, v - 1);
      const bool can_reverse =
          static_cast<int>(parents[other].size()) < params.max_parents;
      if (can_reverse && rng.uniform_int(0, 1) == 1) {
        add_arc(v, other);
      } else {
        add_arc(other, v);
      }
    }
  } else if (params.loop_target == 0 && n > 1) {
    // max_parents == 0: isolated roots only.
  }

  // Each extra arc closes exactly one undirected loop.
  for (int added = 0; added < params.loop_target; ++added) {
    std::vector<std::pair<int, int>> eligible;
    for (int child = 0; child < n; ++child) {
      if (static_cast<int>(parents[child].size()) >= params.max_parents) {
        continue;
      }
      for (int parent = 0; parent < n; ++parent) {
        if (parent == child) continue;
        if (std::find(parents[child].begin(), parents[child].end(), parent) !=
            parents[child].end()) {
          continue;
        }
        if (reaches(children, child, parent)) continue;  // would close a cycle
        eligible.emplace_back(parent, child);
      }
    }
    if (eligible.empty()) {
      throw Error("generator: infeasible constraints: no room for requested "
                  "loops");
    }
    const auto& pick =
        eligible[rng.uniform_int(0, static_cast<int>(eligible.size()) - 1)];
    add_arc(pick.first, pick.second);
  }

  std::vector<ConditionalTable> tables(n);
  for (int v = 0; v < n; ++v) {
    ConditionalTable t;
    t.child = v;
    t.parents = parents[v];
    std::sort(t.parents.begin(), t.parents.end());
    std::size_t row_count = 1;
    for (int p : t.parents) row_count *= vars[p].states.size();
    const std::size_t card = vars[v].states.size();
    for (std::size_t r = 0; r < row_count; ++r) {
      std::vector<double> row(card);
      if (params.asymmetry) {
        row[0] = *params.asymmetry;
        const double rest = (1.0 - *params.asymmetry) / (card - 1);
        for (std::size_t s = 1; s < card; ++s) row[s] = rest;
      } else {
        double sum = 0.0;
        for (std::size_t s = 0; s < card; ++s) {
          row[s] = 0.05 + rng.uniform01();
          sum += row[s];
        }
        for (std::size_t s = 0; s < card; ++s) row[s] /= sum;
      }
      t.rows.push_back(std::move(row));
    }
    tables[v] = std::move(t);
  }

  return BeliefNetwork(std::move(vars), std::move(tables));
}

}  // namespace bcond
