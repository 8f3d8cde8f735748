#include "bcond/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace bcond {

BeliefNetwork::BeliefNetwork(std::vector<Variable> variables,
                             std::vector<ConditionalTable> tables)
    : vars_(std::move(variables)), tables_(std::move(tables)) {
  children_.assign(vars_.size(), {});
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    name_index_.emplace(vars_[i].name, static_cast<int>(i));
  }
  for (const auto& t : tables_) {
    if (t.child < 0 || t.child >= size()) {
      throw Error("table child index out of range");
    }
    for (int p : t.parents) {
      if (p < 0 || p >= size()) {
        throw Error("table parent index out of range");
      }
      children_[p].push_back(t.child);
    }
  }
  for (auto& c : children_) {
    std::sort(c.begin(), c.end());
  }
}

std::optional<int> BeliefNetwork::index_of(const std::string& name) const {
  auto it = name_index_.find(name);
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

int BeliefNetwork::require_index(const std::string& name) const {
  auto idx = index_of(name);
  if (!idx) throw Error("unknown variable '" + name + "'");
  return *idx;
}

int BeliefNetwork::require_state(int v, const std::string& label) const {
  const auto& states = vars_[v].states;
  auto it = std::find(states.begin(), states.end(), label);
  if (it == states.end()) {
    throw Error("variable '" + vars_[v].name + "' has no state '" + label +
                "'");
  }
  return static_cast<int>(it - states.begin());
}

std::size_t BeliefNetwork::row_index(int v,
                                     const std::vector<int>& parent_states)
    const {
  const auto& t = tables_[v];
  std::size_t idx = 0;
  for (std::size_t k = 0; k < t.parents.size(); ++k) {
    idx = idx * cardinality(t.parents[k]) + parent_states[k];
  }
  return idx;
}

bool BeliefNetwork::operator==(const BeliefNetwork& other) const {
  if (size() != other.size()) return false;
  for (int v = 0; v < size(); ++v) {
    if (vars_[v].name != other.vars_[v].name) return false;
    if (vars_[v].states != other.vars_[v].states) return false;
    const auto& a = tables_[v];
    const auto& b = other.tables_[v];
    if (a.child != b.child || a.parents != b.parents || a.rows != b.rows) {
      return false;
    }
  }
  return true;
}

Evidence Evidence::merged(const Evidence& a, const Evidence& b) {
  Evidence out = a;
  for (const auto& [v, s] : b.assignments) {
    auto it = out.assignments.find(v);
    if (it != out.assignments.end() && it->second != s) {
      throw Error("conflicting evidence assignments for one variable");
    }
    out.assignments[v] = s;
  }
  return out;
}

namespace {

// Reports one directed cycle as a node-name sequence.
std::string describe_cycle(const BeliefNetwork& net,
                           const std::vector<int>& stack, int repeat) {
  std::ostringstream os;
  os << "cycle:";
  bool in_cycle = false;
  for (int v : stack) {
    if (v == repeat) in_cycle = true;
    if (in_cycle) os << ' ' << net.variable(v).name;
  }
  os << ' ' << net.variable(repeat).name;
  return os.str();
}

bool find_cycle(const BeliefNetwork& net, int v, std::vector<int>& color,
                std::vector<int>& stack, std::string& report) {
  color[v] = 1;
  stack.push_back(v);
  for (int c : net.children(v)) {
    if (color[c] == 1) {
      report = describe_cycle(net, stack, c);
      return true;
    }
    if (color[c] == 0 && find_cycle(net, c, color, stack, report)) {
      return true;
    }
  }
  stack.pop_back();
  color[v] = 2;
  return false;
}

}  // namespace

std::vector<std::string> validate(const BeliefNetwork& net) {
  std::vector<std::string> problems;
  std::set<std::string> seen_names;
  for (int v = 0; v < net.size(); ++v) {
    const auto& var = net.variable(v);
    if (!seen_names.insert(var.name).second) {
      problems.push_back("duplicate variable name '" + var.name + "'");
    }
    if (var.states.size() < 2) {
      problems.push_back("variable '" + var.name + "' needs >= 2 states");
    }
    std::set<std::string> labels(var.states.begin(), var.states.end());
    if (labels.size() != var.states.size()) {
      problems.push_back("variable '" + var.name +
                         "' has duplicate state labels");
    }
  }

  for (int v = 0; v < net.size(); ++v) {
    const auto& t = net.table(v);
    const auto& name = net.variable(v).name;
    if (t.child != v) {
      problems.push_back("table for '" + name + "' bound to wrong child");
      continue;
    }
    std::set<int> pset(t.parents.begin(), t.parents.end());
    if (pset.size() != t.parents.size() || pset.count(v) > 0) {
      problems.push_back("table for '" + name + "' has repeated or self parent");
    }
    std::size_t expected_rows = 1;
    for (int p : t.parents) expected_rows *= net.cardinality(p);
    if (t.rows.size() != expected_rows) {
      problems.push_back("table for '" + name + "' has " +
                         std::to_string(t.rows.size()) + " rows, expected " +
                         std::to_string(expected_rows));
      continue;
    }
    const std::size_t arity = net.variable(v).states.size();
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const auto& row = t.rows[r];
      if (row.size() != arity) {
        problems.push_back("table for '" + name + "' row " +
                           std::to_string(r) + " has length " +
                           std::to_string(row.size()) + ", expected " +
                           std::to_string(arity));
        continue;
      }
      double sum = 0.0;
      bool in_range = true;
      for (double x : row) {
        if (!(x >= 0.0 && x <= 1.0) || !std::isfinite(x)) in_range = false;
        sum += x;
      }
      if (!in_range) {
        problems.push_back("table for '" + name + "' row " +
                           std::to_string(r) + " has entries outside [0,1]");
      }
      if (std::abs(sum - 1.0) > kProbTolerance) {
        std::ostringstream os;
        os << "table for '" << name << "' row " << r << " sum " << sum;
        problems.push_back(os.str());
      }
    }
  }

  // Acyclicity last so the cycle report names real variables.
  std::vector<int> color(net.size(), 0);
  std::vector<int> stack;
  std::string report;
  for (int v = 0; v < net.size(); ++v) {
    if (color[v] == 0 && find_cycle(net, v, color, stack, report)) {
      problems.push_back(report);
      break;
    }
  }
  return problems;
}

bool is_singly_connected(const BeliefNetwork& net) {
  // A forest has exactly nodes - components undirected edges.
  std::size_t edges = 0;
  for (int v = 0; v < net.size(); ++v) {
    edges += net.table(v).parents.size();
  }
  std::vector<int> seen(net.size(), 0);
  int components = 0;
  std::deque<int> queue;
  for (int start = 0; start < net.size(); ++start) {
    if (seen[start]) continue;
    ++components;
    seen[start] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int p : net.table(v).parents) {
        if (!seen[p]) {
          seen[p] = 1;
          queue.push_back(p);
        }
      }
      for (int c : net.children(v)) {
        if (!seen[c]) {
          seen[c] = 1;
          queue.push_back(c);
        }
      }
    }
  }
  return edges == static_cast<std::size_t>(net.size() - components);
}

}  // namespace bcond
