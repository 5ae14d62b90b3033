// evmarket: command-line front end for the charging-market library.

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "evmarket/config.hpp"
#include "evmarket/errors.hpp"
#include "evmarket/io.hpp"
#include "evmarket/model.hpp"
#include "evmarket/oracle.hpp"
#include "evmarket/scenario.hpp"

namespace {

using namespace evmarket;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string preset;
  std::string config;
  std::string instance;
  std::string offer;
  double gamma = 0, alpha = 0, epsilon = 0, time_limit = 0;
  std::uint64_t seed = 0;
  int seeds = 0, users = 0, slots = 0, threads = 0, jobs = 0;
  std::string rates, bid_range, out, format;
  bool extended = false;
};

void add_scenario_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--preset", f.preset, "Built-in preset name");
  cmd->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--gamma", f.gamma, "Share of assigned slots priced at the bid")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--alpha", f.alpha, "Price cap as a multiple of cost");
  cmd->add_option("--epsilon", f.epsilon, "Minimum margin over cost");
  cmd->add_option("--seed", f.seed, "Scenario seed (first seed of a sweep)");
  cmd->add_option("--users", f.users, "Number of users");
  cmd->add_option("--slots", f.slots, "Number of 15-minute slots");
  cmd->add_option("--rates", f.rates, "Rate groups in kW, e.g. 22,50;100");
  cmd->add_option("--bid-range", f.bid_range, "Bid range(s), e.g. 2,4 or 1,3;2,4");
  cmd->add_option("--time-limit", f.time_limit, "Solver time limit per model, seconds");
  cmd->add_option("--threads", f.threads, "Solver threads per model");
}

void add_output_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--format", f.format, "csv, json or csv,json");
}

ConfigOverrides overrides_from(const CLI::App& cmd, const Flags& f) {
  ConfigOverrides o;
  const auto given = [&](const char* name) { return cmd.get_option_no_throw(name) && cmd.count(name) > 0; };
  if (given("--preset")) o.preset = f.preset;
  if (given("--gamma")) o.gamma = f.gamma;
  if (given("--alpha")) o.alpha = f.alpha;
  if (given("--epsilon")) o.epsilon = f.epsilon;
  if (given("--seed")) o.seed = f.seed;
  if (given("--seeds")) o.seeds = f.seeds;
  if (given("--users")) o.users = f.users;
  if (given("--slots")) o.slots = f.slots;
  if (given("--rates")) o.rates = parse_rate_groups(f.rates);
  if (given("--bid-range")) o.bid_ranges = parse_bid_ranges(f.bid_range);
  if (given("--out")) o.out = f.out;
  if (given("--format")) o.formats = parse_formats(f.format);
  if (given("--time-limit")) o.time_limit = f.time_limit;
  if (given("--threads")) o.threads = f.threads;
  if (given("--jobs")) o.jobs = f.jobs;
  return o;
}

RunConfig load_config(const CLI::App& cmd, const Flags& f) {
  std::optional<std::filesystem::path> path;
  if (!f.config.empty()) path = f.config;
  return parse_config(path, overrides_from(cmd, f));
}

// The stored instance when --instance is given, otherwise one generated from
// the configured scenario.
ProblemInstance load_instance(const CLI::App& cmd, const Flags& f, const RunConfig* config) {
  if (!f.instance.empty()) return instance_from_json(read_text_file(f.instance));
  if (config) return generate_instance(config->scenario);
  return generate_instance(load_config(cmd, f).scenario);
}

std::string optional_text(const std::optional<double>& v) {
  return v ? format_money(*v) : std::string("-");
}

int cmd_run(const CLI::App& cmd, const Flags& f) {
  const auto config = load_config(cmd, f);
  const auto instance = load_instance(cmd, f, &config);
  const auto prefs = sample_preferences(instance.num_users(), config.scenario.seed);
  ScenarioResult result;
  try {
    result = run_scenario(instance, prefs, config.options);
  } catch (const VerificationFailed& e) {
    std::cerr << e.what();
    return kExitFailure;
  } catch (const SolveIncomplete& e) {
    std::cerr << "run incomplete: " << e.what() << '\n';
    return kExitFailure;
  }
  const auto files = emit_results(result, instance, config.formats, config.output_dir);
  const auto& m = result.metrics;
  std::cout << "scenario " << config.scenario.name << " seed " << config.scenario.seed << ": profit "
            << format_money(m.operator_profit) << ", accepted " << m.accepted_users << '/' << m.user_count
            << ", mean price " << optional_text(m.mean_final_price) << ", mean markup "
            << optional_text(m.mean_markup) << ", solved in " << std::fixed << std::setprecision(2)
            << result.solve_seconds << " s (" << to_string(result.formulation) << " model)\n";
  for (const auto& file : files) std::cout << "wrote " << file.string() << '\n';
  return 0;
}

int cmd_sweep(const CLI::App& cmd, const Flags& f) {
  const auto config = load_config(cmd, f);
  const auto cells = run_sweep(config.sweep, config.options);
  const auto files = emit_results(cells, config.formats, config.output_dir);
  write_sweep_csv(std::cout, cells);
  bool complete = true;
  for (const auto& cell : cells) {
    if (cell.infeasible + cell.limit_reached + cell.failed == 0) continue;
    complete = false;
    std::cerr << "cell rate " << cell.rate_label() << " gamma " << cell.gamma << " bids [" << cell.bid_range.low
              << ", " << cell.bid_range.high << "]: " << cell.infeasible << " infeasible, " << cell.limit_reached
              << " limit-reached, " << cell.failed << " failed\n";
    for (const auto& e : cell.errors) std::cerr << "  " << e << '\n';
  }
  for (const auto& file : files) std::cout << "wrote " << file.string() << '\n';
  return complete ? 0 : kExitFailure;
}

int cmd_verify(const Flags& f) {
  const auto instance = instance_from_json(read_text_file(f.instance));
  const auto offer = offer_from_json(read_text_file(f.offer));
  const auto report = verify_offer(offer, instance);
  if (report.clean()) {
    std::cout << "offer verified: no violations\n";
    return 0;
  }
  std::cout << report.summary();
  return kExitFailure;
}

int cmd_oracle(const CLI::App& cmd, const Flags& f) {
  const auto instance = load_instance(cmd, f, nullptr);
  const auto offer = exhaustive_oracle(instance);
  const auto text = offer_to_json(offer);
  if (f.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(f.out);
    out << text;
    if (!out) throw Error("cannot write " + f.out);
  }
  std::cerr << "oracle objective " << format_money(offer.objective) << '\n';
  return 0;
}

int cmd_export_lp(const CLI::App& cmd, const Flags& f) {
  const auto instance = load_instance(cmd, f, nullptr);
  auto model = build_model(instance);
  if (f.extended) add_solver_extensions(model, instance);
  if (f.out.empty()) {
    write_lp(model, std::cout);
  } else {
    std::ofstream out(f.out);
    write_lp(model, out);
    if (!out) throw Error("cannot write " + f.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bid-based EV charging market: operator pricing, scheduling and user response"};
  app.require_subcommand(1);
  Flags f;

  auto* run = app.add_subcommand("run", "Solve one scenario and write its offer and metrics");
  add_scenario_flags(run, f);
  add_output_flags(run, f);
  run->add_option("--instance", f.instance, "Run a stored instance JSON instead of generating one")
      ->check(CLI::ExistingFile);

  auto* sweep = app.add_subcommand("sweep", "Run a gamma x rate x bid-range grid over seeds");
  add_scenario_flags(sweep, f);
  add_output_flags(sweep, f);
  sweep->add_option("--seeds", f.seeds, "Seeds per cell")->check(CLI::PositiveNumber);
  sweep->add_option("--jobs", f.jobs, "Scenarios solved concurrently")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Re-check a stored offer against a stored instance");
  verify->add_option("--instance", f.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--offer", f.offer, "Offer JSON")->required()->check(CLI::ExistingFile);

  auto* oracle = app.add_subcommand("oracle", "Solve a tiny instance by exhaustive enumeration");
  add_scenario_flags(oracle, f);
  oracle->add_option("--instance", f.instance, "Instance JSON")->check(CLI::ExistingFile);
  oracle->add_option("--out", f.out, "Offer JSON output file (default stdout)");

  auto* export_lp = app.add_subcommand("export-lp", "Write the operator model in LP format");
  add_scenario_flags(export_lp, f);
  export_lp->add_option("--instance", f.instance, "Instance JSON")->check(CLI::ExistingFile);
  export_lp->add_option("--out", f.out, "LP output file (default stdout)");
  export_lp->add_flag("--extended", f.extended, "Include the extra columns and rows added before solving");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(*run, f);
    if (*sweep) return cmd_sweep(*sweep, f);
    if (*verify) return cmd_verify(f);
    if (*oracle) return cmd_oracle(*oracle, f);
    if (*export_lp) return cmd_export_lp(*export_lp, f);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInstance& e) {
    std::cerr << "invalid instance: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
