#include "tsim/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tsim/analytic.hpp"
#include "tsim/engine.hpp"
#include "tsim/error.hpp"
#include "tsim/io.hpp"
#include "tsim/scenarios.hpp"
#include "tsim/timespace.hpp"

namespace tsim {

namespace {

class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write '" + path + "'");
  out << content;
  if (!out.flush()) throw FileError("cannot write '" + path + "'");
}

struct Outputs {
  std::string trace;
  std::string svg;
  std::string scenario;
  bool metrics = false;
};

void add_output_flags(CLI::App* cmd, Outputs& o) {
  cmd->add_option("--out-trace", o.trace, "Write the trace as CSV");
  cmd->add_option("--out-svg", o.svg, "Write the temporal dependence diagram as SVG");
  cmd->add_option("--out-scenario", o.scenario, "Write the scenario as JSON");
  cmd->add_flag("--metrics", o.metrics, "Print metrics as `key = value`");
}

void emit(const Scenario& scenario, const Outputs& o, std::ostream& out) {
  if (!o.scenario.empty()) write_file(o.scenario, serialize_scenario(scenario));
  const SimulationResult result = simulate(scenario);
  if (!o.trace.empty()) write_file(o.trace, write_trace_csv(result));
  if (!o.svg.empty()) write_file(o.svg, write_svg_diagram(result));
  if (o.metrics) {
    for (const auto& [key, value] : result.metrics) out << key << " = " << format_fixed9(value) << '\n';
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic time-space simulator", "tsim"};
  app.require_subcommand(1);
  std::function<void()> action;

  Outputs outputs;

  std::string scenario_path;
  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario document");
  run_cmd->add_option("file", scenario_path, "Scenario JSON file")->required();
  add_output_flags(run_cmd, outputs);
  run_cmd->callback([&] {
    action = [&] { emit(parse_scenario(read_file(scenario_path)), outputs, out); };
  });

  double obs_tp = 1.0;
  double obs_distance = 1.0;
  std::vector<double> obs_speeds{1.0};
  auto* observer = app.add_subcommand("observer", "Source and observers at one distance");
  observer->add_option("--tp", obs_tp, "Processing time")->capture_default_str();
  observer->add_option("--distance", obs_distance, "Observer distance")->capture_default_str();
  observer->add_option("--speeds", obs_speeds, "Speed factor per observer")->delimiter(',')->capture_default_str();
  add_output_flags(observer, outputs);
  observer->callback([&] {
    action = [&] { emit(build_observer_chain(obs_tp, obs_distance, obs_speeds), outputs, out); };
  });

  std::vector<double> xor2{1.0, 0.0};
  int bit_a = 1;
  int bit_b = 0;
  int bit_cin = 1;
  auto* adder = app.add_subcommand("adder", "One-bit full adder");
  adder->add_option("--xor2", xor2, "XOR2 position x,y")->delimiter(',')->expected(2)->capture_default_str();
  adder->add_option("--a", bit_a, "Input a")->check(CLI::Range(0, 1))->capture_default_str();
  adder->add_option("--b", bit_b, "Input b")->check(CLI::Range(0, 1))->capture_default_str();
  adder->add_option("--cin", bit_cin, "Carry in")->check(CLI::Range(0, 1))->capture_default_str();
  add_output_flags(adder, outputs);
  adder->callback([&] {
    action = [&] {
      emit(build_one_bit_adder({xor2.at(0), xor2.at(1)}, AdderInputs{bit_a == 1, bit_b == 1, bit_cin == 1}), outputs,
           out);
    };
  });

  std::size_t bus_n = 2;
  double bus_tmsg = 0.1;
  double bus_spacing = 1.0;
  auto* bus = app.add_subcommand("bus", "Senders sharing one bus");
  bus->add_option("--n", bus_n, "Number of senders")->capture_default_str();
  bus->add_option("--tmsg", bus_tmsg, "Message time")->capture_default_str();
  bus->add_option("--spacing", bus_spacing, "Sender spacing")->capture_default_str();
  add_output_flags(bus, outputs);
  bus->callback([&] { action = [&] { emit(build_bus_scenario(bus_n, bus_tmsg, bus_spacing), outputs, out); }; });

  double cache_y = 0.5;
  double cache_tp = 1.0;
  auto* cache = app.add_subcommand("cache", "Two cores sharing one cache");
  cache->add_option("--y", cache_y, "Cache distance from the core axis")->capture_default_str();
  cache->add_option("--tp", cache_tp, "Cache processing time")->capture_default_str();
  add_output_flags(cache, outputs);
  cache->callback([&] { action = [&] { emit(build_cache_scenario(cache_y, cache_tp), outputs, out); }; });

  std::size_t dist_n = 2;
  double dist_td = 0.1;
  double dist_tw = 1.0;
  double dist_tr = 0.1;
  double dist_spacing = 1.0;
  auto* distributed = app.add_subcommand("distributed", "Coordinator dispatching to workers");
  distributed->add_option("--n", dist_n, "Number of workers")->capture_default_str();
  distributed->add_option("--tdispatch", dist_td, "Dispatch time per worker")->capture_default_str();
  distributed->add_option("--twork", dist_tw, "Work time")->capture_default_str();
  distributed->add_option("--trecv", dist_tr, "Receive time per result")->capture_default_str();
  distributed->add_option("--spacing", dist_spacing, "Worker spacing")->capture_default_str();
  add_output_flags(distributed, outputs);
  distributed->callback([&] {
    action = [&] {
      emit(build_distributed_scenario(dist_n, dist_td, dist_tw, dist_tr, dist_spacing), outputs, out);
    };
  });

  std::size_t ann_n = 3;
  double ann_tp = 1.0;
  double ann_tmsg = 0.1;
  bool ann_dedicated = false;
  bool ann_shared = false;
  auto* ann = app.add_subcommand("ann", "Neuron layer reporting to a collector");
  ann->add_option("--n", ann_n, "Number of neurons")->capture_default_str();
  ann->add_option("--tp", ann_tp, "Neuron processing time")->capture_default_str();
  ann->add_option("--tmsg", ann_tmsg, "Message time")->capture_default_str();
  auto* dedicated_flag = ann->add_flag("--dedicated", ann_dedicated, "Point-to-point links");
  auto* shared_flag = ann->add_flag("--shared", ann_shared, "One shared bus (default)");
  dedicated_flag->excludes(shared_flag);
  shared_flag->excludes(dedicated_flag);
  add_output_flags(ann, outputs);
  ann->callback([&] {
    action = [&] { emit(build_ann_layer_scenario(ann_n, ann_tp, ann_tmsg, ann_dedicated), outputs, out); };
  });

  std::vector<double> sweep_n;
  std::vector<double> sweep_x;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Efficiency surface over n and 1 - alpha");
  sweep->add_option("--n", sweep_n, "Processor counts")->delimiter(',')->required();
  sweep->add_option("--one-minus-alpha", sweep_x, "Non-payload fractions")->delimiter(',')->required();
  sweep->add_option("--out", sweep_out, "CSV output (stdout when omitted)");
  sweep->callback([&] {
    action = [&] {
      const std::string csv = write_surface_csv(efficiency_surface(sweep_n, sweep_x));
      if (sweep_out.empty()) {
        out << csv;
      } else {
        write_file(sweep_out, csv);
      }
    };
  });

  std::vector<double> ratio_r;
  auto* ratio = app.add_subcommand("ratio", "Apparent-time ratio for r = t_t / t_p");
  ratio->add_option("--r", ratio_r, "Ratios")->delimiter(',')->required();
  ratio->callback([&] {
    action = [&] {
      for (double r : ratio_r) {
        if (!(r >= 0.0)) throw DomainError("r must be >= 0");
      }
      for (double r : ratio_r) out << "ratio[" << r << "] = " << format_fixed9(apparent_time_ratio(r)) << '\n';
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (action) action();
    return 0;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ScenarioError& e) {
    err << "scenario error: " << e.what() << '\n';
    return 2;
  } catch (const SimulationError& e) {
    err << "simulation error: " << e.what() << '\n';
    return 2;
  } catch (const FileError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace tsim
