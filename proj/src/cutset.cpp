#include "bcond/cutset.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace bcond {

namespace {

struct Arc {
  int parent;
  int child;
};

std::vector<Arc> all_arcs(const BeliefNetwork& net) {
  std::vector<Arc> arcs;
  for (int v = 0; v < net.size(); ++v) {
    for (int p : net.table(v).parents) arcs.push_back({p, v});
  }
  return arcs;
}

// Peels degree<=1 nodes; returns per-arc liveness of the cyclic core.
std::vector<char> peel_to_core(const BeliefNetwork& net,
                               const std::vector<Arc>& arcs,
                               const std::vector<char>& alive) {
  std::vector<char> live = alive;
  std::vector<int> degree(net.size(), 0);
  std::vector<std::vector<int>> incident(net.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (!live[a]) continue;
    degree[arcs[a].parent]++;
    degree[arcs[a].child]++;
    incident[arcs[a].parent].push_back(static_cast<int>(a));
    incident[arcs[a].child].push_back(static_cast<int>(a));
  }
  std::deque<int> fringe;
  for (int v = 0; v < net.size(); ++v) {
    if (degree[v] <= 1) fringe.push_back(v);
  }
  std::vector<char> removed(net.size(), 0);
  while (!fringe.empty()) {
    const int v = fringe.front();
    fringe.pop_front();
    if (removed[v]) continue;
    removed[v] = 1;
    for (int a : incident[v]) {
      if (!live[a]) continue;
      live[a] = 0;
      const int other = arcs[a].parent == v ? arcs[a].child : arcs[a].parent;
      if (--degree[other] <= 1 && !removed[other]) fringe.push_back(other);
    }
  }
  return live;
}

}  // namespace

namespace {

Cutset greedy_cutset(const BeliefNetwork& net, bool reverse_ties) {
  const auto arcs = all_arcs(net);
  std::vector<char> alive(arcs.size(), 1);
  Cutset cs;

  for (;;) {
    const auto core = peel_to_core(net, arcs, alive);
    std::vector<int> degree(net.size(), 0), indegree(net.size(), 0);
    bool any = false;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (!core[a]) continue;
      any = true;
      degree[arcs[a].parent]++;
      degree[arcs[a].child]++;
      indegree[arcs[a].child]++;
    }
    if (!any) break;

    int best = -1;
    for (int v = 0; v < net.size(); ++v) {
      if (degree[v] < 2 || indegree[v] > 1) continue;
      bool wins = best < 0 || degree[v] > degree[best];
      if (!wins && degree[v] == degree[best]) {
        const auto& a = net.variable(v).name;
        const auto& b = net.variable(best).name;
        wins = reverse_ties ? a > b : a < b;
      }
      if (wins) best = v;
    }
    if (best < 0) {
      throw Error("loop-cutset search found a core without a valid pick");
    }
    cs.members.push_back(best);
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (arcs[a].parent == best) alive[a] = 0;
    }
  }
  return cs;
}

}  // namespace

Cutset find_loop_cutset(const BeliefNetwork& net) {
  return greedy_cutset(net, false);
}

Cutset find_loop_cutset_alternate(const BeliefNetwork& net) {
  const Cutset primary = greedy_cutset(net, false);
  Cutset alt = greedy_cutset(net, true);
  if (alt.members != primary.members) return alt;
  // Extend by the first non-member; a superset still cuts every loop.
  std::set<int> members(primary.members.begin(), primary.members.end());
  for (int v = 0; v < net.size(); ++v) {
    if (!members.count(v)) {
      alt.members.push_back(v);
      return alt;
    }
  }
  return alt;  // every node already a member
}

bool verify_cutset(const BeliefNetwork& net, const Cutset& cs) {
  std::set<int> seen;
  for (int m : cs.members) {
    if (m < 0 || m >= net.size() || !seen.insert(m).second) return false;
  }
  try {
    CutsetInstance first;
    first.assignment.assign(cs.members.size(), 0);
    split_network(net, cs, first);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::uint64_t instance_count(const BeliefNetwork& net, const Cutset& cs) {
  std::uint64_t count = 1;
  for (int m : cs.members) {
    const std::uint64_t card = net.cardinality(m);
    if (count > UINT64_MAX / card) {
      throw Error("cutset instance count overflows");
    }
    count *= card;
  }
  return count;
}

CutsetInstance instance_at(const BeliefNetwork& net, const Cutset& cs,
                           std::uint64_t index) {
  CutsetInstance inst;
  inst.index = index;
  inst.assignment.assign(cs.members.size(), 0);
  std::uint64_t rest = index;
  for (int k = static_cast<int>(cs.members.size()) - 1; k >= 0; --k) {
    const std::uint64_t card = net.cardinality(cs.members[k]);
    inst.assignment[k] = static_cast<int>(rest % card);
    rest /= card;
  }
  if (rest != 0) throw Error("instance index out of range");
  return inst;
}

std::vector<CutsetInstance> enumerate_instances(const BeliefNetwork& net,
                                                const Cutset& cs) {
  const std::uint64_t count = instance_count(net, cs);
  std::vector<CutsetInstance> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(instance_at(net, cs, i));
  }
  return out;
}

SplitResult split_network(const BeliefNetwork& net, const Cutset& cs,
                          const CutsetInstance& instance) {
  if (instance.assignment.size() != cs.members.size()) {
    throw Error("instance assignment does not match the cutset");
  }
  std::vector<int> clamp(net.size(), -1);
  for (std::size_t k = 0; k < cs.members.size(); ++k) {
    const int m = cs.members[k];
    const int s = instance.assignment[k];
    if (m < 0 || m >= net.size() || s < 0 || s >= net.cardinality(m)) {
      throw Error("instance assignment out of range");
    }
    clamp[m] = s;
  }

  std::vector<Variable> vars;
  vars.reserve(net.size());
  for (int v = 0; v < net.size(); ++v) vars.push_back(net.variable(v));

  std::vector<ConditionalTable> tables(net.size());
  for (int v = 0; v < net.size(); ++v) {
    const auto& t = net.table(v);
    ConditionalTable nt;
    nt.child = v;
    std::vector<int> kept_pos;
    for (std::size_t k = 0; k < t.parents.size(); ++k) {
      if (clamp[t.parents[k]] < 0) {
        nt.parents.push_back(t.parents[k]);
        kept_pos.push_back(static_cast<int>(k));
      }
    }
    if (nt.parents.size() == t.parents.size()) {
      nt.rows = t.rows;
    } else {
      // Select the rows consistent with the clamped parents.
      std::size_t new_rows = 1;
      for (int p : nt.parents) new_rows *= net.cardinality(p);
      nt.rows.reserve(new_rows);
      std::vector<int> digits(t.parents.size(), 0);
      for (std::size_t k = 0; k < t.parents.size(); ++k) {
        if (clamp[t.parents[k]] >= 0) digits[k] = clamp[t.parents[k]];
      }
      for (std::size_t r = 0; r < new_rows; ++r) {
        std::size_t rest = r;
        for (int k = static_cast<int>(kept_pos.size()) - 1; k >= 0; --k) {
          const int card = net.cardinality(nt.parents[k]);
          digits[kept_pos[k]] = static_cast<int>(rest % card);
          rest /= card;
        }
        nt.rows.push_back(t.rows[net.row_index(v, digits)]);
      }
    }
    tables[v] = std::move(nt);
  }

  SplitResult result{BeliefNetwork(std::move(vars), std::move(tables)), {}};
  for (std::size_t k = 0; k < cs.members.size(); ++k) {
    result.clamps.assignments[cs.members[k]] = instance.assignment[k];
  }
  if (!is_singly_connected(result.network)) {
    throw Error("cutset does not render the network singly connected");
  }
  return result;
}

}  // namespace bcond
