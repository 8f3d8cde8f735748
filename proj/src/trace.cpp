#include "bcond/trace.hpp"

#include <cstdio>
#include <sstream>

namespace bcond {

namespace {

constexpr const char* kHeader =
    "step,instance_index,instance_w_upper,evidence_epoch,variable,state,"
    "lower,upper,width,cumulative_work_units";

void write_snapshot_rows(std::ostream& os, const BeliefNetwork& net,
                         const StepRecord& rec) {
  const auto& snap = rec.snapshot;
  for (std::size_t vi = 0; vi < snap.variables.size(); ++vi) {
    const int v = snap.variables[vi];
    for (std::size_t x = 0; x < snap.bounds[vi].size(); ++x) {
      os << rec.step << ',' << rec.instance << ',';
      if (rec.instance >= 0) os << format_g12(rec.instance_weight_upper);
      os << ',' << rec.epoch << ',' << net.variable(v).name << ','
         << net.variable(v).states[x] << ','
         << format_g12(snap.bounds[vi][x].lower) << ','
         << format_g12(snap.bounds[vi][x].upper) << ','
         << format_g12(snap.width) << ',' << rec.step << '\n';
    }
  }
}

}  // namespace

std::string format_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_trace_csv(std::ostream& os, const Session& session) {
  os << kHeader << '\n';
  for (const auto& rec : session.trace()) {
    write_snapshot_rows(os, session.network(), rec);
  }
}

void write_concurrent_trace_csv(std::ostream& os, const ConcurrentRun& run) {
  os << kHeader << ",analysis_id,combined_lower,combined_upper" << '\n';
  if (run.sessions.empty()) return;
  const auto& net = run.sessions.front().network();
  for (const auto& step : run.steps) {
    // Rows carry the combined bounds; per-analysis bounds come from the
    // solved analysis' own snapshot columns.
    const auto& combined = step.combined;
    for (std::size_t vi = 0; vi < combined.variables.size(); ++vi) {
      const int v = combined.variables[vi];
      for (std::size_t x = 0; x < combined.bounds[vi].size(); ++x) {
        // Per-analysis lower/upper for the analysis that just solved; the
        // marker rows repeat the combined interval.
        double lower = combined.bounds[vi][x].lower;
        double upper = combined.bounds[vi][x].upper;
        double width = combined.width;
        std::int64_t instance = -1;
        double instance_w = 0.0;
        int epoch = 0;
        if (step.analysis >= 0 &&
            step.record.snapshot.variables == combined.variables) {
          const auto& snap = step.record.snapshot;
          lower = snap.bounds[vi][x].lower;
          upper = snap.bounds[vi][x].upper;
          width = snap.width;
          instance = step.record.instance;
          instance_w = step.record.instance_weight_upper;
          epoch = step.record.epoch;
        }
        os << step.work << ',' << instance << ',';
        if (instance >= 0) os << format_g12(instance_w);
        os << ',' << epoch << ',' << net.variable(v).name << ','
           << net.variable(v).states[x] << ',' << format_g12(lower) << ','
           << format_g12(upper) << ',' << format_g12(width) << ',' << step.work
           << ',' << step.analysis << ','
           << format_g12(combined.bounds[vi][x].lower) << ','
           << format_g12(combined.bounds[vi][x].upper) << '\n';
      }
    }
  }
}

std::vector<TracePoint> read_trace_points(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw Error("trace: empty file");

  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string col;
    while (std::getline(hs, col, ',')) header.push_back(col);
  }
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    throw Error("trace: missing column '" + name + "'");
  };
  const int c_step = column("step");
  const int c_instance = column("instance_index");
  const int c_epoch = column("evidence_epoch");
  const int c_width = column("width");
  const int c_work = column("cumulative_work_units");

  std::vector<TracePoint> points;
  std::string last_key;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() < header.size()) cells.resize(header.size());
    const std::string key =
        cells[c_step] + '|' + cells[c_instance] + '|' + cells[c_epoch];
    if (key == last_key) continue;
    last_key = key;
    TracePoint p;
    p.work = std::stoll(cells[c_work]);
    p.epoch = std::stoi(cells[c_epoch]);
    p.width = std::stod(cells[c_width]);
    points.push_back(p);
  }
  return points;
}

}  // namespace bcond
