#include "bcond/oracle.hpp"

#include <cmath>

namespace bcond {
namespace oracle {

namespace {

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

constexpr std::uint64_t kChunk = std::uint64_t{1} << 14;

}  // namespace

AllPosteriors all_posteriors(const BeliefNetwork& net, const Evidence& ev,
                             std::uint64_t state_cap, ExecPolicy policy) {
  const int n = net.size();
  std::uint64_t joint = 1;
  for (int v = 0; v < n; ++v) {
    joint *= net.cardinality(v);
    if (joint > state_cap) {
      throw Error("oracle: joint state space exceeds the cap");
    }
  }

  std::vector<int> fixed(n, -1);
  for (const auto& [v, s] : ev.assignments) {
    if (v < 0 || v >= n) throw Error("oracle: evidence variable out of range");
    if (s < 0 || s >= net.cardinality(v)) {
      throw Error("oracle: evidence state out of range");
    }
    fixed[v] = s;
  }
  std::vector<int> free_vars;
  std::uint64_t free_space = 1;
  for (int v = 0; v < n; ++v) {
    if (fixed[v] < 0) {
      free_vars.push_back(v);
      free_space *= net.cardinality(v);
    }
  }

  // Flattened accumulator layout: one slot per variable-state, then the
  // total mass.
  std::vector<std::size_t> offset(n + 1, 0);
  for (int v = 0; v < n; ++v) offset[v + 1] = offset[v] + net.cardinality(v);
  const std::size_t slots = offset[n] + 1;

  const std::uint64_t chunks = (free_space + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> partial(chunks);

  parallel_for(chunks, policy, [&](std::size_t chunk) {
    const std::uint64_t begin = chunk * kChunk;
    const std::uint64_t end = std::min(free_space, begin + kChunk);
    std::vector<Kahan> acc(slots);

    std::vector<int> assignment(n, 0);
    for (int v = 0; v < n; ++v) {
      if (fixed[v] >= 0) assignment[v] = fixed[v];
    }
    // Decode the chunk's first assignment; first free variable slowest.
    std::uint64_t rest = begin;
    for (int k = static_cast<int>(free_vars.size()) - 1; k >= 0; --k) {
      const int v = free_vars[k];
      assignment[v] = static_cast<int>(rest % net.cardinality(v));
      rest /= net.cardinality(v);
    }

    std::vector<int> parent_states;
    for (std::uint64_t i = begin; i < end; ++i) {
      double q = 1.0;
      for (int v = 0; v < n; ++v) {
        const auto& t = net.table(v);
        std::size_t row = 0;
        for (int p : t.parents) {
          row = row * net.cardinality(p) + assignment[p];
        }
        q *= t.rows[row][assignment[v]];
        if (q == 0.0) break;
      }
      if (q != 0.0) {
        for (int v = 0; v < n; ++v) {
          acc[offset[v] + assignment[v]].add(q);
        }
        acc[slots - 1].add(q);
      }
      // Advance the free-variable odometer, last variable fastest.
      for (int k = static_cast<int>(free_vars.size()) - 1; k >= 0; --k) {
        const int v = free_vars[k];
        if (++assignment[v] < net.cardinality(v)) break;
        assignment[v] = 0;
      }
    }

    std::vector<double> out(slots);
    for (std::size_t s = 0; s < slots; ++s) out[s] = acc[s].sum;
    partial[chunk] = std::move(out);
  });

  std::vector<Kahan> merged(slots);
  for (const auto& chunk : partial) {
    for (std::size_t s = 0; s < slots; ++s) merged[s].add(chunk[s]);
  }

  const double total = merged[slots - 1].sum;
  if (!(total > 0.0)) {
    throw ImpossibleEvidenceError("oracle: evidence has probability zero");
  }

  AllPosteriors result;
  result.evidence_probability = std::min(total, 1.0);
  result.per_variable.resize(n);
  for (int v = 0; v < n; ++v) {
    auto& vec = result.per_variable[v];
    vec.resize(net.cardinality(v));
    for (int x = 0; x < net.cardinality(v); ++x) {
      vec[x] = merged[offset[v] + x].sum / total;
    }
  }
  return result;
}

std::vector<double> exact_posterior_enumeration(const BeliefNetwork& net,
                                                const JointQuery& query,
                                                std::uint64_t state_cap,
                                                ExecPolicy policy) {
  if (query.target < 0 || query.target >= net.size()) {
    throw Error("oracle: unknown target variable");
  }
  auto all = all_posteriors(net, query.evidence, state_cap, policy);
  return all.per_variable[query.target];
}

}  // namespace oracle
}  // namespace bcond
