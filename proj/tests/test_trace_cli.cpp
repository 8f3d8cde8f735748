#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bcond/bounded.hpp"
#include "bcond/network_io.hpp"
#include "bcond/trace.hpp"
#include "fixtures.hpp"

using namespace bcond;
using namespace bcond::testing;

namespace {

// The CLI binary path arrives through the environment (set by ctest).
const char* cli_path() { return std::getenv("BCOND_CLI"); }

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_file =
      "/tmp/bcond_cli_out_" + std::to_string(counter++) + ".txt";
  const std::string command =
      std::string(cli_path()) + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WEXITSTATUS(status);
  result.output = read_text_file(out_file);
  return result;
}

void write_diamond_file(const std::string& path) {
  write_text_file(path, serialize_network(make_diamond({0.3, 0.7})));
}

}  // namespace

TEST_CASE("format_g12 renders 12 significant digits") {
  CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_g12(0.0) == "0");
  CHECK(format_g12(1.0) == "1");
}

TEST_CASE("trace CSV: header, shape, round trip through the reader") {
  auto net = make_diamond({0.3, 0.7});
  Session session(net, find_loop_cutset(net));
  Evidence ev;
  ev.assignments[net.require_index("D")] = 0;
  session.observe(ev);
  session.run_until({.epsilon = 0.0, .budget = std::nullopt});

  std::ostringstream os;
  write_trace_csv(os, session);
  const std::string text = os.str();
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "step,instance_index,instance_w_upper,evidence_epoch,variable,state,"
        "lower,upper,width,cumulative_work_units");

  auto points = read_trace_points(text);
  // Markers: session start + one observe; solves: 2 init + 2 epoch.
  CHECK(points.size() == 6);
  CHECK(points.front().width == 1.0);
  CHECK(points.back().width <= 1e-9);
  CHECK(points.back().epoch == 1);
}

TEST_CASE("cli: validate exit codes") {
  REQUIRE(cli_path() != nullptr);
  write_diamond_file("/tmp/bcond_diamond.json");
  CHECK(run_cli("validate /tmp/bcond_diamond.json").exit_code == 0);

  write_text_file("/tmp/bcond_cycle.json", R"({
    "variables": [{"name":"A","states":["t","f"]},
                  {"name":"B","states":["t","f"]}],
    "tables": [
      {"child":"A","parents":["B"],"rows":[[0.5,0.5],[0.5,0.5]]},
      {"child":"B","parents":["A"],"rows":[[0.5,0.5],[0.5,0.5]]}
    ]})");
  auto cyclic = run_cli("validate /tmp/bcond_cycle.json");
  CHECK(cyclic.exit_code == 1);
  CHECK(cyclic.output.find("cycle") != std::string::npos);

  CHECK(run_cli("validate /tmp/bcond_missing_file.json").exit_code == 2);
}

TEST_CASE("cli: cutset output format") {
  REQUIRE(cli_path() != nullptr);
  write_diamond_file("/tmp/bcond_diamond.json");
  auto r = run_cli("cutset /tmp/bcond_diamond.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "cutset: [A] instances: 2\n");

  auto chain = make_deterministic_chain(0.3);
  write_text_file("/tmp/bcond_chain.json", serialize_network(chain));
  auto r2 = run_cli("cutset /tmp/bcond_chain.json");
  CHECK(r2.output == "cutset: [] instances: 1\n");
}

TEST_CASE("cli: generate produces a valid, reproducible network") {
  REQUIRE(cli_path() != nullptr);
  const std::string args =
      "generate --nodes 12 --max-parents 3 --max-states 3 --loops 2 "
      "--seed 9 -o ";
  CHECK(run_cli(args + "/tmp/bcond_gen_a.json").exit_code == 0);
  CHECK(run_cli(args + "/tmp/bcond_gen_b.json").exit_code == 0);
  CHECK(read_text_file("/tmp/bcond_gen_a.json") ==
        read_text_file("/tmp/bcond_gen_b.json"));
  CHECK(run_cli("validate /tmp/bcond_gen_a.json").exit_code == 0);

  CHECK(run_cli("generate --nodes 2 --max-parents 1 --max-states 2 "
                "--loops 3 --seed 1 -o /tmp/bcond_gen_bad.json")
            .exit_code == 2);
}

TEST_CASE("cli: bounded runs are byte-deterministic") {
  REQUIRE(cli_path() != nullptr);
  write_diamond_file("/tmp/bcond_diamond.json");
  write_text_file("/tmp/bcond_ev.json",
                  R"({"observations":[{"at_step":0,"set":{"D":"s0"}}]})");
  const std::string args =
      "run --network /tmp/bcond_diamond.json --evidence /tmp/bcond_ev.json "
      "--mode bounded --epsilon 0 --trace ";
  auto a = run_cli(args + "/tmp/bcond_trace_a.csv");
  auto b = run_cli(args + "/tmp/bcond_trace_b.csv");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(read_text_file("/tmp/bcond_trace_a.csv") ==
        read_text_file("/tmp/bcond_trace_b.csv"));
  CHECK(a.output.find("final width: 0") != std::string::npos);
}

TEST_CASE("cli: oracle and exact agree through the run command") {
  REQUIRE(cli_path() != nullptr);
  write_diamond_file("/tmp/bcond_diamond.json");
  write_text_file("/tmp/bcond_ev.json",
                  R"({"observations":[{"at_step":0,"set":{"D":"s0"}}]})");
  auto oracle_run = run_cli(
      "run --network /tmp/bcond_diamond.json --evidence /tmp/bcond_ev.json "
      "--mode oracle --targets B");
  auto exact_run = run_cli(
      "run --network /tmp/bcond_diamond.json --evidence /tmp/bcond_ev.json "
      "--mode exact --targets B");
  CHECK(oracle_run.exit_code == 0);
  CHECK(exact_run.exit_code == 0);
  const auto line = [](const std::string& text) {
    const auto pos = text.find("posterior B:");
    REQUIRE(pos != std::string::npos);
    return text.substr(pos, text.find('\n', pos) - pos);
  };
  CHECK(line(oracle_run.output) == line(exact_run.output));
}

TEST_CASE("cli: fit recovers a decay constant from a trace") {
  REQUIRE(cli_path() != nullptr);
  auto net = make_diamond_grid({2, 2, 3, 3, 3}, 42);
  write_text_file("/tmp/bcond_icu.json", serialize_network(net));
  write_text_file("/tmp/bcond_icu_ev.json",
                  R"({"observations":[{"at_step":0,"set":{"d00d":"s0"}}]})");
  auto run = run_cli(
      "run --network /tmp/bcond_icu.json --evidence /tmp/bcond_icu_ev.json "
      "--mode bounded --epsilon 0 --trace /tmp/bcond_icu_trace.csv");
  CHECK(run.exit_code == 0);
  auto fit = run_cli("fit --trace /tmp/bcond_icu_trace.csv --epoch 1");
  CHECK(fit.exit_code == 0);
  CHECK(fit.output.find("k=") != std::string::npos);
}

TEST_CASE("cli: impossible evidence exits distinctly") {
  REQUIRE(cli_path() != nullptr);
  // Deterministic link A -> B plus an unobserved child C.
  std::vector<Variable> vars{
      {"A", {"s0", "s1"}}, {"B", {"s0", "s1"}}, {"C", {"s0", "s1"}}};
  std::vector<ConditionalTable> tables(3);
  tables[0] = {0, {}, {{0.3, 0.7}}};
  tables[1] = {1, {0}, {{1.0, 0.0}, {0.0, 1.0}}};
  tables[2] = {2, {1}, {{0.5, 0.5}, {0.5, 0.5}}};
  BeliefNetwork chain(std::move(vars), std::move(tables));
  write_text_file("/tmp/bcond_det.json", serialize_network(chain));
  write_text_file(
      "/tmp/bcond_bad_ev.json",
      R"({"observations":[{"at_step":0,"set":{"A":"s0","B":"s1"}}]})");
  auto r = run_cli(
      "run --network /tmp/bcond_det.json --evidence /tmp/bcond_bad_ev.json "
      "--mode exact");
  CHECK(r.exit_code == 3);
  auto r2 = run_cli(
      "run --network /tmp/bcond_det.json --evidence /tmp/bcond_bad_ev.json "
      "--mode bounded --epsilon 0");
  CHECK(r2.exit_code == 3);
}
