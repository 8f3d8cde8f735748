#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "bcond/bounded.hpp"
#include "bcond/concurrent.hpp"

namespace bcond {

// One row per tracked variable-state per step, numbers rendered with 12
// significant digits. Marker rows (session start, evidence arrival) carry
// instance_index -1 and an empty instance_w_upper.
//
// Header:
//   step,instance_index,instance_w_upper,evidence_epoch,variable,state,
//   lower,upper,width,cumulative_work_units
// Concurrent traces append analysis_id,combined_lower,combined_upper.

std::string format_g12(double x);

void write_trace_csv(std::ostream& os, const Session& session);
void write_concurrent_trace_csv(std::ostream& os, const ConcurrentRun& run);

struct TracePoint {
  std::int64_t work = 0;
  int epoch = 0;
  double width = 0.0;
};

// One point per step group (rows sharing step/epoch/instance).
std::vector<TracePoint> read_trace_points(const std::string& csv_text);

}  // namespace bcond
