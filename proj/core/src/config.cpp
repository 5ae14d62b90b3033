#include "evmarket/config.hpp"

#include <algorithm>

#include "evmarket/errors.hpp"
#include "json_util.hpp"

namespace evmarket {

using namespace json_util;

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<double> parse_numbers(std::string_view group, std::string_view what) {
  std::vector<double> values;
  for (auto item : split(group, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(std::string(what) + ": empty entry in '" + std::string(group) + "'");
    try {
      values.push_back(parse_money(item));
    } catch (const ConfigError&) {
      throw ConfigError(std::string(what) + ": not a number: '" + std::string(item) + "'");
    }
  }
  return values;
}

BidRange bid_range_from(const ordered_json& j, std::string_view where) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(std::string(where) + ": expected [low, high]");
  BidRange range{real(j[0], where), real(j[1], where)};
  if (range.low > range.high) throw ConfigError(std::string(where) + ": low > high");
  return range;
}

std::vector<RateLevel> rate_config_from(const ordered_json& j, int num_slots, std::string_view where) {
  std::vector<RateLevel> rates;
  for (const auto& entry : array(j, where)) {
    if (entry.is_number()) {
      rates.push_back(standard_rate(entry.get<double>(), num_slots));
    } else {
      rates.push_back(rate_from_json(entry, num_slots, where));
    }
  }
  if (rates.empty()) throw ConfigError(std::string(where) + ": empty rate list");
  return rates;
}

ScenarioSpec scenario_from(const ordered_json& j) {
  expect_keys(j, {"name", "user_count", "bid_range", "demand_bounds", "availability", "station", "policy", "seed"},
              "scenario");
  ScenarioSpec spec;
  spec.name = "custom";
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ConfigError("scenario.name: expected a string");
    spec.name = j["name"].get<std::string>();
  }
  if (j.contains("user_count")) spec.user_count = static_cast<int>(integer(j["user_count"], "scenario.user_count"));
  if (j.contains("bid_range")) spec.bid_range = bid_range_from(j["bid_range"], "bid_range");
  if (j.contains("demand_bounds")) {
    const auto& d = j["demand_bounds"];
    if (!d.is_array() || d.size() != 2) throw ConfigError("demand_bounds: expected [q_min, q_max]");
    spec.demand = {real(d[0], "demand_bounds"), real(d[1], "demand_bounds")};
  }
  if (j.contains("availability")) {
    const auto& a = j["availability"];
    expect_keys(a, {"pattern", "narrow_users", "window_slots"}, "availability");
    const auto pattern = a.value("pattern", std::string("full-horizon"));
    if (pattern == "full-horizon") {
      spec.availability.pattern = Availability::Pattern::FullHorizon;
    } else if (pattern == "split") {
      spec.availability.pattern = Availability::Pattern::Split;
      spec.availability.narrow_users = static_cast<int>(integer(field(a, "narrow_users", "availability"),
                                                                "availability.narrow_users"));
      spec.availability.window_slots = static_cast<int>(integer(field(a, "window_slots", "availability"),
                                                                "availability.window_slots"));
    } else {
      throw ConfigError("availability.pattern: expected 'full-horizon' or 'split', got '" + pattern + "'");
    }
  }
  const auto& st = field(j, "station", "scenario");
  expect_keys(st, {"num_slots", "slot_minutes", "slot_capacity", "rates"}, "scenario.station");
  spec.station.num_slots = static_cast<int>(integer(field(st, "num_slots", "scenario.station"), "station.num_slots"));
  if (st.contains("slot_minutes")) spec.station.slot_minutes = real(st["slot_minutes"], "station.slot_minutes");
  if (st.contains("slot_capacity")) {
    const auto& c = st["slot_capacity"];
    if (c.is_array()) {
      for (const auto& v : c) spec.station.slot_capacity.push_back(real(v, "station.slot_capacity"));
    } else {
      spec.station.slot_capacity.assign(static_cast<std::size_t>(std::max(spec.station.num_slots, 0)),
                                        real(c, "station.slot_capacity"));
    }
  }
  spec.station.rates = rate_config_from(field(st, "rates", "scenario.station"), spec.station.num_slots,
                                        "station.rates");
  spec.policy.price_big_m = 0.0;
  if (j.contains("policy")) spec.policy = policy_from_json(j["policy"], spec.policy, "scenario.policy");
  if (j.contains("seed")) spec.seed = static_cast<std::uint64_t>(integer(j["seed"], "scenario.seed"));
  return spec;
}

SweepSpec default_sweep(const ScenarioSpec& scenario) {
  SweepSpec sweep;
  sweep.base = scenario;
  sweep.gammas = {scenario.policy.gamma};
  sweep.rate_configs = {scenario.station.rates};
  sweep.bid_ranges = {scenario.bid_range};
  sweep.seeds = 50;
  return sweep;
}

void apply_sweep(const ordered_json& j, SweepSpec& sweep, int num_slots) {
  expect_keys(j, {"gammas", "rates", "bid_ranges", "seeds"}, "sweep");
  if (j.contains("gammas")) {
    sweep.gammas.clear();
    for (const auto& g : array(j["gammas"], "sweep.gammas")) sweep.gammas.push_back(real(g, "sweep.gammas"));
  }
  if (j.contains("rates")) {
    sweep.rate_configs.clear();
    for (const auto& config : array(j["rates"], "sweep.rates")) {
      sweep.rate_configs.push_back(rate_config_from(config, num_slots, "sweep.rates"));
    }
  }
  if (j.contains("bid_ranges")) {
    sweep.bid_ranges.clear();
    for (const auto& r : array(j["bid_ranges"], "sweep.bid_ranges")) {
      sweep.bid_ranges.push_back(bid_range_from(r, "bid_range"));
    }
  }
  if (j.contains("seeds")) sweep.seeds = static_cast<int>(integer(j["seeds"], "sweep.seeds"));
}

void apply_solver(const ordered_json& j, RunOptions& options) {
  expect_keys(j, {"backend", "time_limit", "threads", "feasibility_tolerance", "integrality_tolerance", "random_seed"},
              "solver");
  if (j.contains("backend")) {
    if (!j["backend"].is_string()) throw ConfigError("solver.backend: expected a string");
    options.backend = j["backend"].get<std::string>();
  }
  auto& s = options.solver;
  if (j.contains("time_limit")) s.time_limit_seconds = real(j["time_limit"], "solver.time_limit");
  if (j.contains("threads")) s.threads = static_cast<int>(integer(j["threads"], "solver.threads"));
  if (j.contains("feasibility_tolerance")) {
    s.feasibility_tolerance = real(j["feasibility_tolerance"], "solver.feasibility_tolerance");
  }
  if (j.contains("integrality_tolerance")) {
    s.integrality_tolerance = real(j["integrality_tolerance"], "solver.integrality_tolerance");
  }
  if (j.contains("random_seed")) s.random_seed = static_cast<int>(integer(j["random_seed"], "solver.random_seed"));
}

// Re-broadcasts constant per-slot vectors to a new horizon length.
void resize_constant(std::vector<double>& values, int num_slots, std::string_view what) {
  if (values.empty()) return;
  if (!std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    throw ConfigError("--slots: " + std::string(what) + " varies over slots and cannot be resized");
  }
  values.assign(static_cast<std::size_t>(num_slots), values.front());
}

void apply_slots(RunConfig& config, int num_slots) {
  if (num_slots < 1) throw ConfigError("--slots must be at least 1");
  auto& station = config.scenario.station;
  station.num_slots = num_slots;
  resize_constant(station.slot_capacity, num_slots, "slot capacity");
  for (auto& rate : station.rates) resize_constant(rate.cost_per_kwh, num_slots, "rate cost");
  for (auto& rates : config.sweep.rate_configs) {
    for (auto& rate : rates) resize_constant(rate.cost_per_kwh, num_slots, "rate cost");
  }
}

void apply_overrides(RunConfig& config, const ConfigOverrides& o) {
  auto& spec = config.scenario;
  auto& sweep = config.sweep;
  if (o.users) spec.user_count = *o.users;
  if (o.slots) apply_slots(config, *o.slots);
  if (o.rates) {
    if (o.rates->empty()) throw ConfigError("--rates: no rate given");
    sweep.rate_configs.clear();
    for (const auto& group : *o.rates) {
      std::vector<RateLevel> rates;
      for (double kw : group) rates.push_back(standard_rate(kw, spec.station.num_slots));
      sweep.rate_configs.push_back(std::move(rates));
    }
    spec.station.rates = sweep.rate_configs.front();
  }
  if (o.bid_ranges) {
    if (o.bid_ranges->empty()) throw ConfigError("--bid-range: no range given");
    sweep.bid_ranges = *o.bid_ranges;
    spec.bid_range = o.bid_ranges->front();
  }
  if (o.gamma) {
    spec.policy.gamma = *o.gamma;
    sweep.gammas = {*o.gamma};
  }
  if (o.alpha) spec.policy.alpha = *o.alpha;
  if (o.epsilon) spec.policy.epsilon = *o.epsilon;
  if (o.seed) spec.seed = *o.seed;
  if (o.seeds) sweep.seeds = *o.seeds;
  if (o.out) config.output_dir = *o.out;
  if (o.formats) config.formats = *o.formats;
  if (o.time_limit) config.options.solver.time_limit_seconds = *o.time_limit;
  if (o.threads) config.options.solver.threads = *o.threads;
  if (o.jobs) config.options.workers = *o.jobs;
}

void check_run_options(const RunConfig& config) {
  const auto& s = config.options.solver;
  if (!(s.time_limit_seconds > 0.0)) throw ConfigError("time limit must be positive");
  if (s.threads < 1) throw ConfigError("solver threads must be at least 1");
  if (config.options.workers < 1) throw ConfigError("jobs must be at least 1");
  if (!(s.feasibility_tolerance > 0.0) || !(s.integrality_tolerance > 0.0)) {
    throw ConfigError("solver tolerances must be positive");
  }
  if (config.formats.empty()) throw ConfigError("at least one output format required");
  if (!config.options.backend.empty()) make_backend(config.options.backend);
}

}  // namespace

std::vector<std::vector<double>> parse_rate_groups(std::string_view text) {
  std::vector<std::vector<double>> groups;
  for (auto group : split(text, ';')) groups.push_back(parse_numbers(trim(group), "--rates"));
  return groups;
}

std::vector<BidRange> parse_bid_ranges(std::string_view text) {
  std::vector<BidRange> ranges;
  for (auto group : split(text, ';')) {
    const auto values = parse_numbers(trim(group), "--bid-range");
    if (values.size() != 2) throw ConfigError("--bid-range: expected low,high");
    if (values[0] > values[1]) throw ConfigError("bid_range: low > high");
    ranges.push_back({values[0], values[1]});
  }
  return ranges;
}

RunConfig parse_config_text(std::string_view text, const ConfigOverrides& overrides) {
  ordered_json doc = ordered_json::object();
  if (!trim(text).empty()) doc = parse(text, "config");
  expect_keys(doc, {"schema_version", "preset", "scenario", "sweep", "solver", "jobs", "averaging", "output"},
              "config");
  if (doc.contains("schema_version")) check_schema(doc, "config");

  std::optional<std::string> preset;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigError("preset: expected a string");
    preset = doc["preset"].get<std::string>();
  }
  if (overrides.preset) preset = overrides.preset;
  if (preset && doc.contains("scenario")) {
    throw ConfigError("conflicting options: a preset and an inline scenario were both given");
  }

  RunConfig config;
  if (preset) {
    auto p = find_preset(*preset);
    config.preset = p.name;
    config.scenario = p.scenario;
    config.sweep = p.sweep;
  } else if (doc.contains("scenario")) {
    config.scenario = scenario_from(doc["scenario"]);
    config.sweep = default_sweep(config.scenario);
  } else {
    throw ConfigError("no scenario: give --preset or an inline scenario in the config file");
  }
  if (doc.contains("sweep")) apply_sweep(doc["sweep"], config.sweep, config.scenario.station.num_slots);
  if (doc.contains("solver")) apply_solver(doc["solver"], config.options);
  if (doc.contains("jobs")) config.options.workers = static_cast<int>(integer(doc["jobs"], "jobs"));
  if (doc.contains("averaging")) {
    const auto& a = doc["averaging"];
    if (a == "slots") {
      config.options.averaging = PriceAveraging::Slots;
    } else if (a == "users") {
      config.options.averaging = PriceAveraging::Users;
    } else {
      throw ConfigError("averaging: expected 'slots' or 'users'");
    }
  }
  if (doc.contains("output")) {
    const auto& out = doc["output"];
    expect_keys(out, {"directory", "formats"}, "output");
    if (out.contains("directory")) {
      if (!out["directory"].is_string()) throw ConfigError("output.directory: expected a string");
      config.output_dir = out["directory"].get<std::string>();
    }
    if (out.contains("formats")) {
      config.formats.clear();
      for (const auto& f : array(out["formats"], "output.formats")) {
        if (!f.is_string()) throw ConfigError("output.formats: expected strings");
        for (auto fmt : parse_formats(f.get<std::string>())) {
          if (std::find(config.formats.begin(), config.formats.end(), fmt) == config.formats.end()) {
            config.formats.push_back(fmt);
          }
        }
      }
    }
  }

  apply_overrides(config, overrides);
  config.sweep.base = config.scenario;
  validate_sweep(config.sweep);
  check_run_options(config);
  return config;
}

RunConfig parse_config(const std::optional<std::filesystem::path>& path, const ConfigOverrides& overrides) {
  return parse_config_text(path ? read_text_file(*path) : std::string(), overrides);
}

}  // namespace evmarket
