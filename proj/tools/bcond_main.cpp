// Command-line harness: validate and generate networks, inspect cutsets,
// run exact/bounded/concurrent/oracle inference, fit decay constants.
//
// Exit codes: 0 success, 1 validation problems, 2 file or parse errors,
// 3 impossible evidence, 4 usage errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcond/bounded.hpp"
#include "bcond/concurrent.hpp"
#include "bcond/conditioning.hpp"
#include "bcond/convergence.hpp"
#include "bcond/cutset.hpp"
#include "bcond/generator.hpp"
#include "bcond/network_io.hpp"
#include "bcond/oracle.hpp"
#include "bcond/trace.hpp"

namespace {

using namespace bcond;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFile = 2;
constexpr int kExitImpossible = 3;
constexpr int kExitUsage = 4;

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string cutset_line(const BeliefNetwork& net, const Cutset& cs) {
  std::ostringstream os;
  os << "cutset: [";
  for (std::size_t i = 0; i < cs.members.size(); ++i) {
    if (i) os << ',';
    os << net.variable(cs.members[i]).name;
  }
  os << "] instances: " << instance_count(net, cs);
  return os.str();
}

void print_vector(const std::string& label, const BeliefNetwork& net, int v,
                  const std::vector<double>& probs) {
  std::cout << label << ' ' << net.variable(v).name << ':';
  for (std::size_t x = 0; x < probs.size(); ++x) {
    std::cout << ' ' << net.variable(v).states[x] << '='
              << format_g12(probs[x]);
  }
  std::cout << '\n';
}

void print_bounds(const BeliefNetwork& net, int v,
                  const std::vector<WeightInterval>& intervals) {
  std::cout << "bounds " << net.variable(v).name << ':';
  for (std::size_t x = 0; x < intervals.size(); ++x) {
    std::cout << ' ' << net.variable(v).states[x] << "=["
              << format_g12(intervals[x].lower) << ','
              << format_g12(intervals[x].upper) << ']';
  }
  std::cout << '\n';
}

struct RunArgs {
  std::string network_path;
  std::string evidence_path;
  std::string mode = "bounded";
  std::optional<double> epsilon;
  std::optional<std::int64_t> steps;
  std::string targets_csv;
  std::string cutset_csv;
  std::uint64_t seed = 0;
  std::string trace_path;
  bool fit = false;
  bool serial = false;
  bool ascending = false;
  bool tightened = false;
};

Cutset resolve_cutset(const BeliefNetwork& net, const std::string& csv) {
  if (csv.empty()) return find_loop_cutset(net);
  Cutset cs;
  for (const auto& name : split_names(csv)) {
    cs.members.push_back(net.require_index(name));
  }
  if (!verify_cutset(net, cs)) {
    throw Error("cutset override does not cut every loop");
  }
  return cs;
}

std::vector<int> resolve_targets(const BeliefNetwork& net,
                                 const std::string& csv) {
  std::vector<int> out;
  for (const auto& name : split_names(csv)) {
    out.push_back(net.require_index(name));
  }
  return out;
}

Evidence merge_stream(const EvidenceStream& stream) {
  Evidence all;
  for (const auto& item : stream.items) {
    all = Evidence::merged(all, item.evidence);
  }
  return all;
}

std::vector<std::pair<double, double>> fit_points(
    const std::vector<TracePoint>& points, std::optional<int> epoch) {
  std::vector<std::pair<double, double>> pairs;
  std::optional<std::int64_t> base;
  for (const auto& p : points) {
    if (epoch && p.epoch != *epoch) continue;
    if (!base) base = p.work;
    pairs.emplace_back(static_cast<double>(p.work - *base), p.width);
  }
  return pairs;
}

int cmd_run(const RunArgs& args) {
  BeliefNetwork net = load_network_file(args.network_path);
  EvidenceStream stream;
  if (!args.evidence_path.empty()) {
    stream = load_evidence_file(args.evidence_path, net);
  }

  SessionOptions options;
  options.policy = args.serial ? ExecPolicy::Serial : default_policy();
  options.sort_ascending = args.ascending;
  options.tightened_normalization = args.tightened;
  options.tracked = resolve_targets(net, args.targets_csv);

  std::cout << "mode: " << args.mode << " seed: " << args.seed << '\n';

  if (args.mode == "oracle") {
    Evidence all;
    try {
      all = merge_stream(stream);
    } catch (const Error&) {
      std::cout << "impossible evidence: contradictory observations\n";
      return kExitImpossible;
    }
    auto result = oracle::all_posteriors(net, all, oracle::kDefaultStateCap,
                                         options.policy);
    std::cout << "p(evidence): " << format_g12(result.evidence_probability)
              << '\n';
    const auto targets = options.tracked;
    for (int v = 0; v < net.size(); ++v) {
      if (!targets.empty() &&
          std::find(targets.begin(), targets.end(), v) == targets.end()) {
        continue;
      }
      if (all.assignments.count(v)) continue;
      print_vector("posterior", net, v, result.per_variable[v]);
    }
    return kExitOk;
  }

  Cutset cs = resolve_cutset(net, args.cutset_csv);

  if (args.mode == "exact") {
    std::vector<Evidence> items;
    for (const auto& it : stream.items) items.push_back(it.evidence);
    auto run = exact_infer(net, cs, items, options.policy);
    std::cout << cutset_line(net, cs) << '\n';
    for (std::size_t k = 0; k < run.item_evidence_probs.size(); ++k) {
      std::cout << "p(item " << k << " | history): "
                << format_g12(run.item_evidence_probs[k]) << '\n';
    }
    Evidence all = merge_stream(stream);
    const auto targets = options.tracked;
    for (int v = 0; v < net.size(); ++v) {
      if (!targets.empty() &&
          std::find(targets.begin(), targets.end(), v) == targets.end()) {
        continue;
      }
      if (all.assignments.count(v)) continue;
      print_vector("posterior", net, v, exact_posterior(run.solutions,
                                                        run.weights, v));
    }
    return kExitOk;
  }

  StopCriteria stop{args.epsilon, args.steps};

  if (args.mode == "bounded") {
    Session session = run_with_stream(std::move(net), std::move(cs), stream,
                                      stop, options);
    const auto& rnet = session.network();
    std::cout << cutset_line(rnet, session.cutset()) << '\n';
    std::cout << "work units: " << session.work_units()
              << " (initialization " << session.work_units() -
                                            session.work_since_init()
              << ")\n";
    std::cout << "epochs: " << session.epoch() << '\n';
    auto snap = session.current_bounds();
    std::cout << "final width: " << format_g12(snap.width) << '\n';
    for (std::size_t vi = 0; vi < snap.variables.size(); ++vi) {
      print_bounds(rnet, snap.variables[vi], snap.bounds[vi]);
    }
    if (!args.trace_path.empty()) {
      std::ostringstream os;
      write_trace_csv(os, session);
      write_text_file(args.trace_path, os.str());
      std::cout << "trace: " << args.trace_path << '\n';
    }
    if (args.fit) {
      std::ostringstream os;
      write_trace_csv(os, session);
      auto pairs = fit_points(read_trace_points(os.str()), std::nullopt);
      auto fit = fit_decay(pairs);
      std::cout << "fit: k=" << format_g12(fit.k)
                << " residual=" << format_g12(fit.residual)
                << " points=" << fit.used << '\n';
    }
    if (session.impossible_evidence()) {
      std::cout << "impossible evidence\n";
      return kExitImpossible;
    }
    return kExitOk;
  }

  if (args.mode == "concurrent") {
    std::vector<Cutset> cutsets{cs, find_loop_cutset_alternate(net)};
    const std::int64_t budget =
        args.steps ? *args.steps : std::numeric_limits<std::int64_t>::max();
    auto run = run_concurrent(net, cutsets, stream, budget,
                              ConcurrentSchedule::RoundRobin, options);
    for (std::size_t a = 0; a < cutsets.size(); ++a) {
      std::cout << "analysis " << a << ' ' << cutset_line(net, cutsets[a])
                << " solves: " << run.solves_per_analysis[a] << '\n';
    }
    const auto& combined = run.steps.back().combined;
    std::cout << "final combined width: " << format_g12(combined.width)
              << '\n';
    for (std::size_t vi = 0; vi < combined.variables.size(); ++vi) {
      print_bounds(net, combined.variables[vi], combined.bounds[vi]);
    }
    if (!args.trace_path.empty()) {
      std::ostringstream os;
      write_concurrent_trace_csv(os, run);
      write_text_file(args.trace_path, os.str());
      std::cout << "trace: " << args.trace_path << '\n';
    }
    return kExitOk;
  }

  throw Error("unknown mode '" + args.mode + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anytime inference for belief networks by bounded refinement "
               "of loop-cutset conditioning"};
  app.require_subcommand(1);

  std::string net_path, out_path, trace_path;
  std::optional<int> fit_epoch;

  auto* v = app.add_subcommand("validate", "check a network file");
  v->add_option("network", net_path)->required();

  auto* c = app.add_subcommand("cutset", "print the loop cutset");
  c->add_option("network", net_path)->required();

  GeneratorParams gen;
  double asymmetry = -1.0;
  auto* g = app.add_subcommand("generate", "write a random network");
  g->add_option("--nodes", gen.node_count)->required();
  g->add_option("--max-parents", gen.max_parents)->required();
  g->add_option("--max-states", gen.max_states)->required();
  g->add_option("--loops", gen.loop_target)->default_val(0);
  g->add_option("--seed", gen.seed)->default_val(0);
  g->add_option("--asymmetry", asymmetry,
                "first-state mass for every CPT row");
  g->add_option("--output,-o", out_path)->required();

  RunArgs run_args;
  auto* r = app.add_subcommand("run", "run inference");
  r->add_option("--network", run_args.network_path)->required();
  r->add_option("--evidence", run_args.evidence_path);
  r->add_option("--mode", run_args.mode)
      ->check(CLI::IsMember({"bounded", "exact", "oracle", "concurrent"}));
  double epsilon = -1.0;
  std::int64_t steps = -1;
  r->add_option("--epsilon", epsilon, "stop when width <= epsilon");
  r->add_option("--steps", steps, "post-initialization step budget");
  r->add_option("--targets", run_args.targets_csv, "comma-separated names");
  r->add_option("--cutset", run_args.cutset_csv, "comma-separated override");
  r->add_option("--seed", run_args.seed)->default_val(0);
  r->add_option("--trace", run_args.trace_path, "trace CSV output path");
  r->add_flag("--fit", run_args.fit, "fit a decay constant to the trace");
  r->add_flag("--serial", run_args.serial, "disable the OpenMP lane");
  r->add_flag("--ascending", run_args.ascending,
              "solve lightest instances first");
  r->add_flag("--tightened", run_args.tightened,
              "per-instance ratio normalization");

  auto* f = app.add_subcommand("fit", "fit a decay constant to a trace CSV");
  f->add_option("--trace", trace_path)->required();
  int epoch_opt = -1;
  f->add_option("--epoch", epoch_opt, "restrict to one evidence epoch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (v->parsed()) {
      BeliefNetwork net = parse_network_lenient(read_text_file(net_path));
      const auto problems = validate(net);
      if (problems.empty()) {
        std::cout << "valid: " << net.size() << " variables\n";
        return kExitOk;
      }
      for (const auto& p : problems) std::cout << p << '\n';
      return kExitInvalid;
    }
    if (c->parsed()) {
      BeliefNetwork net = load_network_file(net_path);
      std::cout << cutset_line(net, find_loop_cutset(net)) << '\n';
      return kExitOk;
    }
    if (g->parsed()) {
      if (asymmetry >= 0.0) gen.asymmetry = asymmetry;
      BeliefNetwork net = generate_random(gen);
      write_text_file(out_path, serialize_network(net));
      std::cout << "wrote " << out_path << " (" << net.size()
                << " variables)\n";
      return kExitOk;
    }
    if (r->parsed()) {
      if (epsilon >= 0.0) run_args.epsilon = epsilon;
      if (steps >= 0) run_args.steps = steps;
      return cmd_run(run_args);
    }
    if (f->parsed()) {
      auto points = read_trace_points(read_text_file(trace_path));
      std::optional<int> epoch;
      if (epoch_opt >= 0) epoch = epoch_opt;
      auto fit = fit_decay(fit_points(points, epoch));
      std::cout << "k=" << format_g12(fit.k)
                << " residual=" << format_g12(fit.residual)
                << " points=" << fit.used << " excluded=" << fit.excluded
                << '\n';
      return kExitOk;
    }
  } catch (const ImpossibleEvidenceError& e) {
    std::cout << "impossible evidence: " << e.what() << '\n';
    return kExitImpossible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFile;
  }
  return kExitUsage;
}
