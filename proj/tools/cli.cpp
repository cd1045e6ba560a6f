#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "psched/flow.hpp"
#include "psched/generator.hpp"
#include "psched/io.hpp"
#include "psched/parallel_machine.hpp"
#include "psched/single_machine.hpp"

namespace psched::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

Instance load(const std::string& path) {
  if (path.empty()) throw UsageError("--input is required");
  return parse_instance(read_file(path));
}

VerifyMode parse_mode(const std::string& mode) { return mode == "single" ? VerifyMode::kSingle : VerifyMode::kParallel; }

const CLI::Validator kRationalInUnit(
    [](std::string& text) -> std::string {
      try {
        const Rational r = Rational::parse(text);
        if (r.sign() < 0 || r > Rational(1)) return "must lie in [0, 1]";
      } catch (const std::exception&) {
        return "expected a rational such as 1/2";
      }
      return {};
    },
    "RATIONAL in [0,1]");

std::string first_event_dot(const Instance& inst) {
  const JobSet all = all_jobs(inst);
  if (all.empty()) throw UsageError("--emit-dot: instance has no jobs");
  const ParallelRateDetail detail = parallel_rate_detail(inst, all);
  if (detail.network) return to_dot(*detail.network, detail.breakpoint->lambda, *detail.flow);
  // No price is computed at t = 0 (at most m available jobs, or zero total
  // weight). Dump the network at λ = 1 with the zero flow.
  const FlowNetwork net = build_network(inst, all);
  const Flow zero{std::vector<Rational>(net.arcs().size()), Rational()};
  return "// no price computed at t = 0; capacities shown at lambda = 1\n" + to_dot(net, Rational(1), zero);
}

std::string rates_json(const Instance& inst, const std::string& mode) {
  nlohmann::ordered_json doc;
  const JobSet all = all_jobs(inst);
  if (all.empty()) throw UsageError("rates: instance has no jobs");
  RateVector rates;
  if (mode == "single") {
    rates = rates_single(inst, all);
  } else {
    const ParallelRateDetail detail = parallel_rate_detail(inst, all);
    rates = detail.rates;
    if (detail.breakpoint) {
      doc["price"] = detail.breakpoint->price.str();
      doc["lambda"] = detail.breakpoint->lambda.str();
      auto& it = doc["newton_iterates"] = nlohmann::ordered_json::array();
      for (const auto& x : detail.breakpoint->iterates) it.push_back(x.str());
    }
  }
  auto& list = doc["rates"] = nlohmann::ordered_json::array();
  for (const auto& e : rates.rates) list.push_back({{"job", e.job}, {"rate", e.rate.str()}});
  return doc.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Solvers& solvers) {
  CLI::App app{"Precedence-constrained scheduling to minimize total weighted completion time"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string input;
  std::string output;
  std::string mode = "single";
  std::size_t machines = 1;
  std::size_t cap = kDefaultOracleCap;
  const auto modes = CLI::IsMember({"single", "parallel"});

  GenConfig gen_config;
  std::string density_text = "3/10";
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--jobs", gen_config.jobs, "Number of jobs")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  gen->add_option("--density", density_text, "Edge probability per job pair")->check(kRationalInUnit);
  gen->add_option("--seed", gen_config.seed, "64-bit seed");
  gen->add_option("--max-p", gen_config.max_p, "Largest processing time")->check(CLI::NonNegativeNumber);
  gen->add_option("--max-w", gen_config.max_w, "Largest weight")->check(CLI::PositiveNumber);
  gen->add_option("--machines", gen_config.machines, "Machine count")->check(CLI::PositiveNumber);
  gen->add_option("--output", output, "Output path (default stdout)");

  std::string virtual_path;
  std::string dot_path;
  std::string gantt_path;
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--input", input, "Instance JSON")->required();
  solve->add_option("--mode", mode, "single or parallel")->check(modes);
  solve->add_option("--output", output, "Schedule JSON path (default stdout)");
  solve->add_option("--emit-virtual", virtual_path, "Also write the virtual schedule JSON here");
  solve->add_option("--emit-dot", dot_path, "Also write the first-event flow network (DOT) here");
  solve->add_option("--gantt", gantt_path, "Also write a Gantt CSV here");

  auto* rates = app.add_subcommand("rates", "Show the rates at time 0");
  rates->add_option("--input", input, "Instance JSON")->required();
  rates->add_option("--mode", mode, "single or parallel")->check(modes);
  rates->add_option("--output", output, "Output path (default stdout)");

  SweepConfig sweep;
  std::optional<std::size_t> count;
  auto* verify_cmd = app.add_subcommand("verify", "Check the approximation inequalities against the oracle");
  verify_cmd->add_option("--input", input, "Instance JSON");
  verify_cmd->add_option("--mode", mode, "single or parallel")->check(modes);
  verify_cmd->add_option("--output", output, "Report path (default stdout)");
  verify_cmd->add_option("--count", count, "Sweep this many generated instances")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", sweep.seed, "Sweep seed");
  verify_cmd->add_option("--max-jobs", sweep.max_jobs, "Sweep: jobs per instance at most")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--machines", machines, "Sweep: machine count")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--oracle-cap", cap, "Largest instance the oracle enumerates");
  verify_cmd->add_option("--max-p", sweep.max_p, "Sweep: largest processing time")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--max-w", sweep.max_w, "Sweep: largest weight")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      gen_config.density = Rational::parse(density_text);
      emit(output, serialize_instance(generate_instance(gen_config)), out);
      return kExitOk;
    }

    if (rates->parsed()) {
      const Instance inst = load(input);
      if (mode == "single" && inst.machines() != 1) throw UsageError("--mode single requires machines = 1");
      emit(output, rates_json(inst, mode), out);
      return kExitOk;
    }

    if (solve->parsed()) {
      const Instance inst = load(input);
      MachineSchedule schedule;
      VirtualSchedule virt;
      if (mode == "single") {
        if (inst.machines() != 1) throw UsageError("--mode single requires machines = 1");
        SingleMachineResult res = solve_single(inst);
        schedule = std::move(res.schedule);
        virt = std::move(res.virtual_schedule);
      } else {
        ParallelResult res = solve_parallel(inst);
        schedule = std::move(res.schedule);
        virt = std::move(res.virtual_schedule);
      }
      emit(output, serialize_schedule(schedule), out);
      if (!virtual_path.empty()) emit(virtual_path, serialize_virtual(virt), out);
      if (!gantt_path.empty()) emit(gantt_path, gantt_csv(schedule), out);
      if (!dot_path.empty()) emit(dot_path, first_event_dot(inst), out);
      return kExitOk;
    }

    const VerifyMode verify_mode = parse_mode(mode);
    if (count) {
      if (!input.empty()) throw UsageError("verify: use either --input or --count, not both");
      sweep.count = *count;
      sweep.machines = machines;
      if (verify_mode == VerifyMode::kSingle && machines != 1) {
        throw UsageError("--mode single requires --machines 1");
      }
      if (sweep.max_jobs > cap) throw OracleCapError(sweep.max_jobs, cap);
      const SweepResult result = verify_sweep(sweep, verify_mode, cap, true, solvers);
      emit(output, sweep_to_json(sweep, verify_mode, result), out);
      return result.violations == 0 ? kExitOk : kExitViolation;
    }
    const Instance inst = load(input);
    if (verify_mode == VerifyMode::kSingle && inst.machines() != 1) {
      throw UsageError("--mode single requires machines = 1");
    }
    const VerificationReport report = verify(inst, verify_mode, cap, solvers);
    emit(output, report_to_json(report), out);
    return report.all_hold() ? kExitOk : kExitViolation;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const OracleCapError& e) {
    err << "refused: " << e.what() << "\n";
  } catch (const InstanceError& e) {
    err << "invalid instance: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}

}  // namespace psched::cli
