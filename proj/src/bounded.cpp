#include "bcond/bounded.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bcond {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double x) { return std::min(std::max(x, 0.0), 1.0); }

// Sort key for the pending queue: the Eq.-3 numerator cap. The current
// stale upper bounds are this cap divided by one shared normalizer, so
// ordering by the cap orders by the current upper weight while staying
// stable when nothing is solved yet.
bool pending_before(const InstanceEntry& a, std::uint64_t ia,
                    const InstanceEntry& b, std::uint64_t ib,
                    bool ascending) {
  if (a.prev_upper != b.prev_upper) {
    return ascending ? a.prev_upper < b.prev_upper
                     : a.prev_upper > b.prev_upper;
  }
  return ia < ib;
}

}  // namespace

void weight_bounds(InstanceLedger& ledger) {
  if (ledger.exact_weights) {
    for (auto& e : ledger.entries) {
      switch (e.status) {
        case InstanceStatus::SolvedCurrent:
          e.w_lower = e.prev_lower;
          e.w_upper = e.prev_upper;
          e.w_upper_raw = e.prev_upper;
          break;
        case InstanceStatus::SolvedStale:
          e.w_lower = 0.0;
          e.w_upper = e.prev_upper;
          e.w_upper_raw = e.prev_upper;
          break;
        case InstanceStatus::Frozen:
          throw Error("exact-weight ledger cannot hold frozen instances");
      }
    }
    return;
  }

  double num_lower_sum = 0.0, num_upper_sum = 0.0;
  double stale_cap_sum = 0.0, frozen_sum = 0.0;
  for (const auto& e : ledger.entries) {
    switch (e.status) {
      case InstanceStatus::SolvedCurrent:
        num_lower_sum += e.num_lower;
        num_upper_sum += e.num_upper;
        break;
      case InstanceStatus::SolvedStale:
        stale_cap_sum += e.prev_upper;
        break;
      case InstanceStatus::Frozen:
        frozen_sum += e.w_upper;
        break;
    }
  }

  for (auto& e : ledger.entries) {
    if (e.status == InstanceStatus::Frozen) continue;  // fixed at observe
    if (e.status == InstanceStatus::SolvedStale) {
      e.w_lower = 0.0;
      if (e.prev_upper == 0.0) {
        e.w_upper_raw = 0.0;
      } else {
        e.w_upper_raw =
            num_lower_sum > 0.0 ? e.prev_upper / num_lower_sum : kInf;
      }
      e.w_upper = std::min(e.w_upper_raw, 1.0);
      continue;
    }

    // SolvedCurrent.
    double denom_lower;
    if (ledger.tightened_normalization) {
      denom_lower = e.num_lower + (num_upper_sum - e.num_upper) +
                    stale_cap_sum + frozen_sum;
    } else {
      denom_lower = num_upper_sum + stale_cap_sum + frozen_sum;
    }
    e.w_lower = denom_lower > 0.0 ? e.num_lower / denom_lower : 0.0;

    if (e.num_upper == 0.0) {
      e.w_upper_raw = 0.0;  // the numerator is exactly zero mass
    } else if (ledger.tightened_normalization) {
      e.w_upper_raw = e.num_upper / (e.num_upper +
                                     (num_lower_sum - e.num_lower));
    } else {
      e.w_upper_raw =
          num_lower_sum > 0.0 ? e.num_upper / num_lower_sum : kInf;
    }
    e.w_upper = std::min(e.w_upper_raw, 1.0);
  }
}

std::vector<WeightInterval> posterior_bounds(const InstanceLedger& ledger,
                                             int variable) {
  if (variable < 0 ||
      variable >= static_cast<int>(ledger.cardinalities.size())) {
    throw Error("posterior_bounds: unknown variable");
  }
  const int card = ledger.cardinalities[variable];
  std::vector<WeightInterval> out(card);
  double unsolved_upper_mass = 0.0;
  for (const auto& e : ledger.entries) {
    if (e.status == InstanceStatus::SolvedCurrent) continue;
    unsolved_upper_mass += e.w_upper;
  }
  for (int x = 0; x < card; ++x) {
    double lo = 0.0, hi = unsolved_upper_mass;
    for (const auto& e : ledger.entries) {
      if (e.status != InstanceStatus::SolvedCurrent) continue;
      if (e.w_lower == 0.0 && e.w_upper == 0.0) continue;
      const double b = e.beliefs[variable][x];
      lo += b * e.w_lower;
      hi += b * e.w_upper;
    }
    out[x].lower = clamp01(lo);
    out[x].upper = clamp01(hi);
  }
  return out;
}

std::int64_t Session::work_since_init() const {
  return work_units_ - init_units_;
}

bool Session::complete() const {
  return ledger_.solved_current == ledger_.total();
}

std::vector<int> Session::tracked_variables() const {
  std::set<int> observed;
  for (const auto& item : items_) {
    for (const auto& [v, s] : item.assignments) {
      (void)s;
      observed.insert(v);
    }
  }
  std::vector<int> out;
  if (options_.tracked.empty()) {
    for (int v = 0; v < net_.size(); ++v) {
      if (!observed.count(v)) out.push_back(v);
    }
  } else {
    for (int v : options_.tracked) {
      if (v < 0 || v >= net_.size()) throw Error("tracked variable out of range");
      if (!observed.count(v)) out.push_back(v);
    }
  }
  return out;
}

BoundSnapshot Session::make_snapshot() const {
  BoundSnapshot snap;
  snap.step = work_units_;
  snap.variables = tracked_variables();
  snap.bounds.reserve(snap.variables.size());
  double width = 0.0;
  for (int v : snap.variables) {
    auto intervals = posterior_bounds(ledger_, v);
    for (const auto& iv : intervals) {
      width = std::max(width, iv.upper - iv.lower);
    }
    snap.bounds.push_back(std::move(intervals));
  }
  snap.width = width;
  return snap;
}

BoundSnapshot Session::current_bounds() const { return make_snapshot(); }

std::vector<WeightInterval> Session::posterior(int variable) const {
  return posterior_bounds(ledger_, variable);
}

void Session::record_marker() {
  StepRecord rec;
  rec.step = work_units_;
  rec.epoch = epoch_;
  rec.instance = -1;
  rec.snapshot = make_snapshot();
  trace_.push_back(std::move(rec));
}

Session::Session(BeliefNetwork net, Cutset cs, SessionOptions options)
    : net_(std::move(net)), cutset_(std::move(cs)), options_(options) {
  if (!verify_cutset(net_, cutset_)) {
    throw Error("cutset does not cut every loop of the network");
  }
  const std::uint64_t count = instance_count(net_, cutset_);
  if (count > options_.max_instances) {
    throw Error("instance count " + std::to_string(count) +
                " exceeds the session limit");
  }
  instances_ = enumerate_instances(net_, cutset_);

  ledger_.exact_weights = true;
  ledger_.tightened_normalization = options_.tightened_normalization;
  for (int v = 0; v < net_.size(); ++v) {
    ledger_.cardinalities.push_back(net_.cardinality(v));
  }

  // One batch pass computes every prior subproblem; the ledger then
  // integrates them heaviest-first, one trace step per instance.
  auto solutions = solve_all_instances(net_, cutset_, {}, options_.policy);
  ledger_.entries.resize(solutions.size());
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    auto& e = ledger_.entries[i];
    e.status = InstanceStatus::SolvedStale;
    e.prev_lower = solutions[i].weight;
    e.prev_upper = solutions[i].weight;
  }
  ledger_.solved_previous = ledger_.total();
  weight_bounds(ledger_);
  record_marker();

  std::vector<std::uint64_t> order(solutions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    return pending_before(ledger_.entries[a], a, ledger_.entries[b], b,
                          options_.sort_ascending);
  });
  for (std::uint64_t idx : order) {
    integrate_solution(idx, std::move(solutions[idx]));
  }
  init_units_ = work_units_;
}

StepRecord Session::integrate_solution(std::uint64_t index,
                                       InstanceSolution solution) {
  auto& e = ledger_.entries[index];
  e.status = InstanceStatus::SolvedCurrent;
  ledger_.solved_current++;
  e.likelihood =
      solution.item_likelihoods.empty() ? 1.0 : solution.item_likelihoods.back();
  e.num_lower = e.likelihood * e.prev_lower;
  e.num_upper = e.likelihood * e.prev_upper;
  e.beliefs = std::move(solution.beliefs);
  e.beliefs_usable = solution.usable;
  weight_bounds(ledger_);
  ++work_units_;

  if (complete()) {
    // Every instance is solved-current here, so the numerators cover the
    // whole evidence mass.
    double num_upper_sum = 0.0;
    for (const auto& entry : ledger_.entries) num_upper_sum += entry.num_upper;
    if (num_upper_sum <= 0.0) impossible_ = true;
  }

  StepRecord rec;
  rec.step = work_units_;
  rec.epoch = epoch_;
  rec.instance = static_cast<std::int64_t>(index);
  rec.instance_weight_upper = e.w_upper;
  if (options_.record_trace) rec.snapshot = make_snapshot();
  trace_.push_back(rec);
  return rec;
}

void Session::observe(const Evidence& ev) {
  for (const auto& [v, s] : ev.assignments) {
    if (v < 0 || v >= net_.size()) throw Error("evidence variable out of range");
    if (s < 0 || s >= net_.cardinality(v)) {
      throw Error("evidence state out of range");
    }
  }

  weight_bounds(ledger_);

  // Residual-mass denominator from the just-solved set; the bracket uses
  // raw uppers and may go negative, in which case the frozen bounds fall
  // back to the vacuous 1.
  double sum_lower = 0.0, sum_upper_raw = 0.0;
  for (const auto& e : ledger_.entries) {
    if (e.status != InstanceStatus::SolvedCurrent) continue;
    sum_lower += e.w_lower;
    sum_upper_raw += e.w_upper_raw;
  }
  const double denom = sum_lower + (1.0 - sum_upper_raw);

  for (auto& e : ledger_.entries) {
    switch (e.status) {
      case InstanceStatus::SolvedCurrent:
        e.prev_lower = e.w_lower;
        e.prev_upper = e.w_upper;
        e.status = InstanceStatus::SolvedStale;
        break;
      case InstanceStatus::SolvedStale:
      case InstanceStatus::Frozen: {
        e.prev_lower = 0.0;
        e.prev_upper = e.w_upper;
        e.status = InstanceStatus::Frozen;
        if (e.prev_upper == 0.0) {
          e.w_upper_raw = 0.0;
        } else {
          e.w_upper_raw = denom > 0.0 ? e.prev_upper / denom : kInf;
        }
        e.w_upper = std::min(e.w_upper_raw, 1.0);
        e.w_lower = 0.0;
        break;
      }
    }
  }
  ledger_.solved_previous = ledger_.solved_current;
  ledger_.solved_current = 0;
  ledger_.exact_weights = false;

  items_.push_back(ev);
  ++epoch_;
  weight_bounds(ledger_);
  record_marker();
}

std::vector<std::uint64_t> Session::order_pending() const {
  std::vector<std::uint64_t> pending;
  for (std::size_t i = 0; i < ledger_.entries.size(); ++i) {
    if (ledger_.entries[i].status == InstanceStatus::SolvedStale) {
      pending.push_back(i);
    }
  }
  std::sort(pending.begin(), pending.end(),
            [&](std::uint64_t a, std::uint64_t b) {
              return pending_before(ledger_.entries[a], a, ledger_.entries[b],
                                    b, options_.sort_ascending);
            });
  return pending;
}

bool Session::has_pending() const {
  for (const auto& e : ledger_.entries) {
    if (e.status == InstanceStatus::SolvedStale) return true;
  }
  return false;
}

StepRecord Session::solve_next() {
  const auto pending = order_pending();
  if (pending.empty()) {
    throw Error("nothing pending: session is as converged as possible");
  }
  const std::uint64_t head = pending.front();
  auto solution = solve_instance(net_, cutset_, instances_[head], items_);
  return integrate_solution(head, std::move(solution));
}

void Session::run_until(const StopCriteria& stop) {
  std::int64_t taken = 0;
  for (;;) {
    if (stop.epsilon && current_bounds().width <= *stop.epsilon) return;
    if (stop.budget && taken >= *stop.budget) return;
    if (!has_pending()) return;
    solve_next();
    ++taken;
  }
}

Session run_with_stream(BeliefNetwork net, Cutset cs,
                        const EvidenceStream& stream, const StopCriteria& stop,
                        SessionOptions options) {
  Session session(std::move(net), std::move(cs), options);
  std::int64_t taken = 0;
  for (const auto& item : stream.items) {
    while (session.work_since_init() < item.arrival_step) {
      if (stop.epsilon && session.current_bounds().width <= *stop.epsilon) {
        break;
      }
      if (stop.budget && taken >= *stop.budget) break;
      if (!session.has_pending()) break;
      session.solve_next();
      ++taken;
    }
    session.observe(item.evidence);
  }
  StopCriteria rest = stop;
  if (stop.budget) rest.budget = std::max<std::int64_t>(0, *stop.budget - taken);
  session.run_until(rest);
  return session;
}

}  // namespace bcond
