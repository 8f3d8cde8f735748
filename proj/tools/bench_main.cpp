// Compares the serial reference lane against the OpenMP lane for the two
// batch kernels (instance solving, joint enumeration) and checks that
// both produce identical bytes.

#include <chrono>
#include <cstring>
#include <iostream>

#include "bcond/builders.hpp"
#include "bcond/conditioning.hpp"
#include "bcond/cutset.hpp"
#include "bcond/generator.hpp"
#include "bcond/oracle.hpp"

using namespace bcond;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

bool same_bits(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

int main() {
  std::cout << "kernel,instances_or_states,serial_s,parallel_s,speedup,"
               "bit_identical\n";

  {
    // 13 binary-root diamonds: 8192 instance subproblems over 52 nodes.
    auto net = make_diamond_grid(std::vector<int>(13, 2), 99);
    auto cs = find_loop_cutset(net);

    auto t0 = std::chrono::steady_clock::now();
    auto serial = solve_all_instances(net, cs, {}, ExecPolicy::Serial);
    const double serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = solve_all_instances(net, cs, {}, ExecPolicy::Parallel);
    const double parallel_s = seconds_since(t0);

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i) {
      identical = same_bits(serial[i].weight, parallel[i].weight);
      for (std::size_t v = 0; identical && v < serial[i].beliefs.size(); ++v) {
        for (std::size_t x = 0; identical && x < serial[i].beliefs[v].size();
             ++x) {
          identical =
              same_bits(serial[i].beliefs[v][x], parallel[i].beliefs[v][x]);
        }
      }
    }
    std::cout << "instance_solves," << serial.size() << ',' << serial_s << ','
              << parallel_s << ',' << serial_s / parallel_s << ','
              << (identical ? "yes" : "NO") << '\n';
  }

  {
    GeneratorParams params;
    params.node_count = 21;
    params.max_parents = 3;
    params.max_states = 2;
    params.loop_target = 3;
    params.seed = 11;
    auto net = generate_random(params);

    auto t0 = std::chrono::steady_clock::now();
    auto serial = oracle::all_posteriors(net, {}, oracle::kDefaultStateCap,
                                         ExecPolicy::Serial);
    const double serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = oracle::all_posteriors(net, {}, oracle::kDefaultStateCap,
                                           ExecPolicy::Parallel);
    const double parallel_s = seconds_since(t0);

    bool identical = true;
    for (std::size_t v = 0; identical && v < serial.per_variable.size(); ++v) {
      for (std::size_t x = 0; identical && x < serial.per_variable[v].size();
           ++x) {
        identical =
            same_bits(serial.per_variable[v][x], parallel.per_variable[v][x]);
      }
    }
    std::cout << "joint_enumeration," << (std::uint64_t{1} << 21) << ','
              << serial_s << ',' << parallel_s << ','
              << serial_s / parallel_s << ',' << (identical ? "yes" : "NO")
              << '\n';
  }
  return 0;
}
