#include "bcond/polytree.hpp"

#include <algorithm>
#include <cmath>

namespace bcond {

namespace {

// Iterates parent-state digits of a table row, last parent fastest.
struct Odometer {
  explicit Odometer(const BeliefNetwork& net, const ConditionalTable& t)
      : digits(t.parents.size(), 0) {
    for (int p : t.parents) cards.push_back(net.cardinality(p));
  }
  bool advance() {
    for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
      if (++digits[k] < cards[k]) return true;
      digits[k] = 0;
    }
    return false;
  }
  std::vector<int> digits;
  std::vector<int> cards;
};

}  // namespace

PropagationState::PropagationState(BeliefNetwork net) : net_(std::move(net)) {
  if (!is_singly_connected(net_)) {
    throw Error("polytree propagation requires a singly connected network");
  }
  const int n = net_.size();
  observed_.assign(n, -1);
  child_arcs_.assign(n, {});
  pi_from_parent_.assign(n, {});
  lambda_to_parent_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    const auto& t = net_.table(v);
    pi_from_parent_[v].resize(t.parents.size());
    lambda_to_parent_[v].resize(t.parents.size());
    for (std::size_t k = 0; k < t.parents.size(); ++k) {
      child_arcs_[t.parents[k]].emplace_back(v, static_cast<int>(k));
    }
  }
  for (auto& arcs : child_arcs_) std::sort(arcs.begin(), arcs.end());
  beliefs_.assign(n, {});
  sweep();
}

std::vector<double> PropagationState::lambda_times_obs(int v,
                                                       int skip_child) const {
  const int card = net_.cardinality(v);
  std::vector<double> out(card, 1.0);
  if (observed_[v] >= 0) {
    for (int x = 0; x < card; ++x) {
      if (x != observed_[v]) out[x] = 0.0;
    }
  }
  for (std::size_t a = 0; a < child_arcs_[v].size(); ++a) {
    if (static_cast<int>(a) == skip_child) continue;
    const auto& [c, pos] = child_arcs_[v][a];
    const auto& msg = lambda_to_parent_[c][pos];
    for (int x = 0; x < card; ++x) out[x] *= msg[x];
  }
  return out;
}

std::vector<double> PropagationState::pi_self(int v) const {
  const auto& t = net_.table(v);
  const int card = net_.cardinality(v);
  std::vector<double> out(card, 0.0);
  Odometer odo(net_, t);
  std::size_t r = 0;
  do {
    double w = 1.0;
    for (std::size_t k = 0; k < t.parents.size(); ++k) {
      w *= pi_from_parent_[v][k][odo.digits[k]];
    }
    const auto& row = t.rows[r++];
    for (int x = 0; x < card; ++x) out[x] += w * row[x];
  } while (odo.advance());
  return out;
}

void PropagationState::send_message(int v, int arc_child, int arc_pos,
                                    bool v_is_parent) {
  if (v_is_parent) {
    // pi message from v down to arc_child.
    int skip = -1;
    for (std::size_t a = 0; a < child_arcs_[v].size(); ++a) {
      if (child_arcs_[v][a] == std::make_pair(arc_child, arc_pos)) {
        skip = static_cast<int>(a);
        break;
      }
    }
    auto msg = lambda_times_obs(v, skip);
    const auto ps = pi_self(v);
    for (std::size_t x = 0; x < msg.size(); ++x) msg[x] *= ps[x];
    pi_from_parent_[arc_child][arc_pos] = std::move(msg);
    return;
  }

  // lambda message from v = arc_child up to its parent at arc_pos.
  const auto& t = net_.table(v);
  const int parent = t.parents[arc_pos];
  const auto lam = lambda_times_obs(v, -1);
  std::vector<double> msg(net_.cardinality(parent), 0.0);
  Odometer odo(net_, t);
  std::size_t r = 0;
  do {
    double w = 1.0;
    for (std::size_t k = 0; k < t.parents.size(); ++k) {
      if (static_cast<int>(k) == arc_pos) continue;
      w *= pi_from_parent_[v][k][odo.digits[k]];
    }
    const auto& row = t.rows[r++];
    double s = 0.0;
    for (std::size_t x = 0; x < row.size(); ++x) s += row[x] * lam[x];
    msg[odo.digits[arc_pos]] += w * s;
  } while (odo.advance());
  lambda_to_parent_[v][arc_pos] = std::move(msg);
}

void PropagationState::sweep() {
  const int n = net_.size();
  struct Link {
    int node = -1;       // tree parent in the traversal
    int arc_child = -1;  // arc identity: (child table, parent position)
    int arc_pos = -1;
    bool up_is_parent = false;  // true when the tree parent is the arc parent
  };

  std::vector<char> visited(n, 0);
  std::vector<Link> link(n);
  std::vector<std::vector<double>> fresh(n);
  double total_prob = 1.0;

  for (int pivot = 0; pivot < n; ++pivot) {
    if (visited[pivot]) continue;
    // BFS order: parents-before-children in the traversal tree.
    std::vector<int> order{pivot};
    visited[pivot] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const int v = order[head];
      const auto& t = net_.table(v);
      for (std::size_t k = 0; k < t.parents.size(); ++k) {
        const int w = t.parents[k];
        if (visited[w]) continue;
        visited[w] = 1;
        link[w] = {v, v, static_cast<int>(k), false};
        order.push_back(w);
      }
      for (const auto& [c, pos] : child_arcs_[v]) {
        if (visited[c]) continue;
        visited[c] = 1;
        link[c] = {v, c, pos, true};
        order.push_back(c);
      }
    }

    // Collect toward the pivot, then distribute away from it.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int v = *it;
      if (v == pivot) continue;
      const Link& up = link[v];
      send_message(v, up.arc_child, up.arc_pos, !up.up_is_parent);
    }
    for (int w : order) {
      if (w == pivot) continue;
      const Link& up = link[w];
      send_message(up.node, up.arc_child, up.arc_pos, up.up_is_parent);
    }

    // Beliefs and the component's evidence mass.
    double component_prob = 0.0;
    for (int v : order) {
      auto unnorm = lambda_times_obs(v, -1);
      const auto ps = pi_self(v);
      double z = 0.0;
      for (std::size_t x = 0; x < unnorm.size(); ++x) {
        unnorm[x] *= ps[x];
        z += unnorm[x];
      }
      if (v == pivot) component_prob = z;
      if (z <= 0.0) {
        component_prob = 0.0;
        break;
      }
      for (auto& x : unnorm) x /= z;
      fresh[v] = std::move(unnorm);
    }
    if (component_prob <= 0.0) {
      usable_ = false;
      evidence_prob_ = 0.0;
      return;  // beliefs_ keeps its pre-evidence values
    }
    total_prob *= component_prob;
  }

  for (int v = 0; v < n; ++v) beliefs_[v] = std::move(fresh[v]);
  evidence_prob_ = std::min(total_prob, 1.0);
}

double PropagationState::absorb(const Evidence& ev) {
  for (const auto& [v, s] : ev.assignments) {
    if (v < 0 || v >= net_.size()) throw Error("evidence variable out of range");
    if (s < 0 || s >= net_.cardinality(v)) {
      throw Error("evidence state out of range for '" + net_.variable(v).name +
                  "'");
    }
  }
  if (!usable_) return 0.0;

  for (const auto& [v, s] : ev.assignments) {
    if (observed_[v] >= 0 && observed_[v] != s) {
      // Contradictory re-observation: a legal call whose context dies.
      usable_ = false;
      evidence_prob_ = 0.0;
      return 0.0;
    }
  }

  const double before = evidence_prob_;
  for (const auto& [v, s] : ev.assignments) observed_[v] = s;
  sweep();
  if (!usable_) return 0.0;
  return evidence_prob_ / before;
}

const std::vector<double>& PropagationState::belief(int v) const {
  if (v < 0 || v >= net_.size()) throw Error("unknown variable index");
  return beliefs_[v];
}

}  // namespace bcond
