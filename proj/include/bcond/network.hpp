#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace bcond {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or semantically invalid input file.
struct ParseError : Error {
  using Error::Error;
};

// Evidence with probability zero under the model.
struct ImpossibleEvidenceError : Error {
  using Error::Error;
};

constexpr double kProbTolerance = 1e-9;

struct Variable {
  std::string name;
  std::vector<std::string> states;  // >= 2, labels unique
};

// Probability table p(child | parents). One row per joint parent
// configuration, row-major with the last-listed parent varying fastest.
struct ConditionalTable {
  int child = -1;
  std::vector<int> parents;
  std::vector<std::vector<double>> rows;
};

class BeliefNetwork {
 public:
  BeliefNetwork() = default;
  BeliefNetwork(std::vector<Variable> variables,
                std::vector<ConditionalTable> tables);

  int size() const { return static_cast<int>(vars_.size()); }
  const Variable& variable(int v) const { return vars_[v]; }
  const ConditionalTable& table(int v) const { return tables_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  int cardinality(int v) const {
    return static_cast<int>(vars_[v].states.size());
  }

  std::optional<int> index_of(const std::string& name) const;
  // Throwing variants for call sites where absence is a caller bug.
  int require_index(const std::string& name) const;
  int require_state(int v, const std::string& label) const;

  // Row index for a full parent-state assignment of variable v.
  std::size_t row_index(int v, const std::vector<int>& parent_states) const;

  bool operator==(const BeliefNetwork& other) const;

 private:
  std::vector<Variable> vars_;
  std::vector<ConditionalTable> tables_;
  std::vector<std::vector<int>> children_;
  std::unordered_map<std::string, int> name_index_;
};

// Observed states, keyed by variable index. Ordered so iteration (and
// therefore every downstream computation) is deterministic.
struct Evidence {
  std::map<int, int> assignments;

  bool empty() const { return assignments.empty(); }
  // Union of two evidence sets; conflicting re-observation throws.
  static Evidence merged(const Evidence& a, const Evidence& b);
};

struct TimedEvidence {
  Evidence evidence;
  std::int64_t arrival_step = 0;  // work units after initialization
};

struct EvidenceStream {
  std::vector<TimedEvidence> items;  // arrival_step non-decreasing
};

// Structural and numeric checks; one message per problem, empty == valid.
std::vector<std::string> validate(const BeliefNetwork& net);

// True iff the undirected skeleton of the DAG is acyclic.
bool is_singly_connected(const BeliefNetwork& net);

}  // namespace bcond
