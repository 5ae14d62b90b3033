#include "evmarket/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "evmarket/errors.hpp"
#include "json_util.hpp"

namespace evmarket {

using nlohmann::ordered_json;

std::string format_money(double value) {
  if (!std::isfinite(value)) throw Error("cannot format non-finite amount");
  // Avoid printing "-0.000000" for tiny negative residues.
  if (std::fabs(value) < 5e-7) value = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

double parse_money(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty() || !std::isfinite(value)) {
    throw ConfigError("not a decimal amount: '" + std::string(text) + "'");
  }
  return value;
}

namespace json_util {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

ordered_json parse(std::string_view text, std::string_view what) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError("malformed " + std::string(what) + ": " + e.what());
  }
}

void expect_object(const ordered_json& j, std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
}

void expect_keys(const ordered_json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
  expect_object(j, where);
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

const ordered_json& field(const ordered_json& j, std::string_view key, std::string_view where) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw ConfigError(std::string(where) + ": missing '" + std::string(key) + "'");
  return *it;
}

double real(const ordered_json& j, std::string_view where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_money(j.get_ref<const std::string&>());
    } catch (const ConfigError&) {
      throw ConfigError(std::string(where) + ": not a number: " + j.dump());
    }
  }
  throw ConfigError(std::string(where) + ": expected a number, got " + j.dump());
}

std::int64_t integer(const ordered_json& j, std::string_view where) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v == std::floor(v) && std::fabs(v) < 9e15) return static_cast<std::int64_t>(v);
  }
  throw ConfigError(std::string(where) + ": expected an integer, got " + j.dump());
}

bool boolean(const ordered_json& j, std::string_view where) {
  if (!j.is_boolean()) throw ConfigError(std::string(where) + ": expected true or false");
  return j.get<bool>();
}

const ordered_json& array(const ordered_json& j, std::string_view where) {
  if (!j.is_array()) throw ConfigError(std::string(where) + ": expected an array");
  return j;
}

void check_schema(const ordered_json& j, std::string_view where) {
  const auto version = integer(field(j, "schema_version", where), std::string(where) + ".schema_version");
  if (version != kSchemaVersion) {
    throw ConfigError(std::string(where) + ": unsupported schema_version " + std::to_string(version));
  }
}

ordered_json rate_to_json(const RateLevel& rate) {
  ordered_json j;
  j["rate_kw"] = rate.rate_kw;
  const bool constant = !rate.cost_per_kwh.empty() &&
                        std::all_of(rate.cost_per_kwh.begin(), rate.cost_per_kwh.end(),
                                    [&](double c) { return c == rate.cost_per_kwh.front(); });
  if (constant) {
    j["cost_per_kwh"] = format_money(rate.cost_per_kwh.front());
  } else {
    auto costs = ordered_json::array();
    for (double c : rate.cost_per_kwh) costs.push_back(format_money(c));
    j["cost_per_kwh"] = costs;
  }
  j["max_markup"] = format_money(rate.max_markup);
  j["charger_count"] = rate.charger_count;
  return j;
}

RateLevel rate_from_json(const ordered_json& j, int num_slots, std::string_view where) {
  expect_keys(j, {"rate_kw", "cost_per_kwh", "max_markup", "charger_count"}, where);
  const std::string w(where);
  RateLevel rate;
  rate.rate_kw = real(field(j, "rate_kw", w), w + ".rate_kw");
  const auto& cost = field(j, "cost_per_kwh", w);
  if (cost.is_array()) {
    for (const auto& c : cost) rate.cost_per_kwh.push_back(real(c, w + ".cost_per_kwh"));
  } else {
    rate.cost_per_kwh.assign(static_cast<std::size_t>(std::max(num_slots, 0)), real(cost, w + ".cost_per_kwh"));
  }
  rate.max_markup = real(field(j, "max_markup", w), w + ".max_markup");
  rate.charger_count = static_cast<int>(integer(field(j, "charger_count", w), w + ".charger_count"));
  return rate;
}

ordered_json policy_to_json(const PricingPolicy& policy) {
  ordered_json j;
  j["gamma"] = policy.gamma;
  j["alpha"] = policy.alpha;
  j["epsilon"] = policy.epsilon;
  j["price_big_m"] = format_money(policy.price_big_m);
  return j;
}

PricingPolicy policy_from_json(const ordered_json& j, const PricingPolicy& defaults, std::string_view where) {
  expect_keys(j, {"gamma", "alpha", "epsilon", "price_big_m"}, where);
  const std::string w(where);
  PricingPolicy p = defaults;
  if (j.contains("gamma")) p.gamma = real(j["gamma"], w + ".gamma");
  if (j.contains("alpha")) p.alpha = real(j["alpha"], w + ".alpha");
  if (j.contains("epsilon")) p.epsilon = real(j["epsilon"], w + ".epsilon");
  if (j.contains("price_big_m")) p.price_big_m = real(j["price_big_m"], w + ".price_big_m");
  return p;
}

}  // namespace json_util

using namespace json_util;

std::string instance_to_json(const ProblemInstance& instance) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  ordered_json station;
  station["num_slots"] = instance.station.num_slots;
  station["slot_minutes"] = instance.station.slot_minutes;
  station["slot_capacity"] = instance.station.slot_capacity;
  station["rates"] = ordered_json::array();
  for (const auto& rate : instance.station.rates) station["rates"].push_back(rate_to_json(rate));
  doc["station"] = station;
  doc["policy"] = policy_to_json(instance.policy);
  doc["bids"] = ordered_json::array();
  for (const auto& bid : instance.bids) {
    ordered_json b;
    b["user_id"] = bid.user_id;
    b["bid_price"] = format_money(bid.bid_price);
    b["q_min"] = bid.q_min;
    b["q_max"] = bid.q_max;
    b["acceptable_slots"] = bid.acceptable_slots;
    doc["bids"].push_back(b);
  }
  return doc.dump(2) + "\n";
}

ProblemInstance instance_from_json(std::string_view text) {
  const auto doc = parse(text, "instance");
  expect_keys(doc, {"schema_version", "station", "policy", "bids"}, "instance");
  check_schema(doc, "instance");

  ProblemInstance instance;
  const auto& st = field(doc, "station", "instance");
  expect_keys(st, {"num_slots", "slot_minutes", "slot_capacity", "rates"}, "station");
  auto& station = instance.station;
  station.num_slots = static_cast<int>(integer(field(st, "num_slots", "station"), "station.num_slots"));
  station.slot_minutes = real(field(st, "slot_minutes", "station"), "station.slot_minutes");
  for (const auto& c : array(field(st, "slot_capacity", "station"), "station.slot_capacity")) {
    station.slot_capacity.push_back(real(c, "station.slot_capacity"));
  }
  for (const auto& r : array(field(st, "rates", "station"), "station.rates")) {
    station.rates.push_back(rate_from_json(r, station.num_slots, "station.rates[]"));
  }
  instance.policy = policy_from_json(field(doc, "policy", "instance"), PricingPolicy{}, "policy");
  if (!doc["policy"].contains("price_big_m")) throw ConfigError("policy: missing 'price_big_m'");

  for (const auto& b : array(field(doc, "bids", "instance"), "bids")) {
    expect_keys(b, {"user_id", "bid_price", "q_min", "q_max", "acceptable_slots"}, "bids[]");
    UserBid bid;
    bid.user_id = static_cast<int>(integer(field(b, "user_id", "bids[]"), "bids[].user_id"));
    const auto where = "bid of user " + std::to_string(bid.user_id);
    bid.bid_price = real(field(b, "bid_price", where), where + ".bid_price");
    bid.q_min = real(field(b, "q_min", where), where + ".q_min");
    bid.q_max = real(field(b, "q_max", where), where + ".q_max");
    for (const auto& t : array(field(b, "acceptable_slots", where), where + ".acceptable_slots")) {
      bid.acceptable_slots.push_back(static_cast<int>(integer(t, where + ".acceptable_slots")));
    }
    instance.bids.push_back(std::move(bid));
  }
  require_valid(instance);
  return instance;
}

std::string offer_to_json(const OperatorOffer& offer) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["objective"] = format_money(offer.objective);
  doc["num_rates"] = offer.num_rates;
  doc["reference_prices"] = ordered_json::array();
  for (double p : offer.reference_prices) doc["reference_prices"].push_back(format_money(p));
  doc["users"] = ordered_json::array();
  for (const auto& user : offer.users) {
    ordered_json u;
    u["user_id"] = user.user_id;
    u["accepted"] = user.accepted;
    u["rate_index"] = user.rate_index ? ordered_json(*user.rate_index) : ordered_json(nullptr);
    u["slots"] = ordered_json::array();
    for (const auto& s : user.slots) {
      ordered_json so;
      so["slot"] = s.slot;
      so["at_bid"] = s.at_bid;
      so["final_price"] = format_money(s.final_price);
      so["counter_price"] = format_money(s.counter_price);
      so["energy_kwh"] = s.energy_kwh;
      u["slots"].push_back(so);
    }
    doc["users"].push_back(u);
  }
  return doc.dump(2) + "\n";
}

OperatorOffer offer_from_json(std::string_view text) {
  const auto doc = parse(text, "offer");
  expect_keys(doc, {"schema_version", "objective", "num_rates", "reference_prices", "users"}, "offer");
  check_schema(doc, "offer");
  OperatorOffer offer;
  offer.objective = real(field(doc, "objective", "offer"), "offer.objective");
  offer.num_rates = static_cast<int>(integer(field(doc, "num_rates", "offer"), "offer.num_rates"));
  if (doc.contains("reference_prices")) {
    for (const auto& p : array(doc["reference_prices"], "offer.reference_prices")) {
      offer.reference_prices.push_back(real(p, "offer.reference_prices"));
    }
  }
  for (const auto& u : array(field(doc, "users", "offer"), "offer.users")) {
    expect_keys(u, {"user_id", "accepted", "rate_index", "slots"}, "offer.users[]");
    UserOffer user;
    user.user_id = static_cast<int>(integer(field(u, "user_id", "offer.users[]"), "offer.users[].user_id"));
    const auto where = "offer for user " + std::to_string(user.user_id);
    user.accepted = boolean(field(u, "accepted", where), where + ".accepted");
    if (u.contains("rate_index") && !u["rate_index"].is_null()) {
      user.rate_index = static_cast<int>(integer(u["rate_index"], where + ".rate_index"));
    }
    if (u.contains("slots")) {
      for (const auto& s : array(u["slots"], where + ".slots")) {
        expect_keys(s, {"slot", "at_bid", "final_price", "counter_price", "energy_kwh"}, where + ".slots[]");
        SlotOffer slot;
        slot.slot = static_cast<int>(integer(field(s, "slot", where), where + ".slot"));
        slot.at_bid = boolean(field(s, "at_bid", where), where + ".at_bid");
        slot.final_price = real(field(s, "final_price", where), where + ".final_price");
        if (s.contains("counter_price")) slot.counter_price = real(s["counter_price"], where + ".counter_price");
        slot.energy_kwh = real(field(s, "energy_kwh", where), where + ".energy_kwh");
        user.slots.push_back(slot);
      }
    }
    offer.users.push_back(std::move(user));
  }
  return offer;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<OutputFormat> parse_formats(std::string_view text) {
  std::vector<OutputFormat> formats;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto item = text.substr(pos, comma - pos);
    OutputFormat f;
    if (item == "csv") {
      f = OutputFormat::Csv;
    } else if (item == "json") {
      f = OutputFormat::Json;
    } else {
      throw ConfigError("unknown output format '" + std::string(item) + "' (expected csv or json)");
    }
    if (std::find(formats.begin(), formats.end(), f) == formats.end()) formats.push_back(f);
    pos = comma + 1;
  }
  return formats;
}

namespace {

std::string optional_money(const std::optional<Statistic>& s, double Statistic::*member) {
  return s ? format_money(s.value().*member) : std::string();
}

std::string optional_number(const std::optional<Statistic>& s, double Statistic::*member) {
  return s ? format_number(s.value().*member) : std::string();
}

ordered_json money_or_null(const std::optional<Statistic>& s, double Statistic::*member) {
  return s ? ordered_json(format_money(s.value().*member)) : ordered_json(nullptr);
}

ordered_json number_or_null(const std::optional<Statistic>& s, double Statistic::*member) {
  return s ? ordered_json(s.value().*member) : ordered_json(nullptr);
}

constexpr const char* kSweepColumns =
    "rate_kw,gamma,bid_low,bid_high,profit_mean,profit_std,acceptance_mean,acceptance_std,"
    "price_mean,price_std,markup_mean,markup_std,gini_mean,seeds";

constexpr const char* kDetailColumns =
    "user_id,bid_price,accepted,rate_kw,slot_start,slot_end,at_bid_slots,countered_slots,"
    "mean_final_price,utility,user_accepts";

struct DetailRow {
  int user_id = 0;
  double bid_price = 0.0;
  bool accepted = false;
  std::optional<double> rate_kw;
  std::optional<int> slot_start;
  std::optional<int> slot_end;
  int at_bid_slots = 0;
  int countered_slots = 0;
  std::optional<double> mean_final_price;
  std::optional<double> utility;
  std::optional<bool> user_accepts;
};

std::vector<DetailRow> detail_rows(const ScenarioResult& result, const ProblemInstance& instance) {
  std::map<int, const AcceptanceDecision*> decisions;
  for (const auto& d : result.decisions) decisions[d.user_id] = &d;
  std::vector<DetailRow> rows;
  for (std::size_t i = 0; i < result.offer.users.size(); ++i) {
    const auto& user = result.offer.users[i];
    DetailRow row;
    row.user_id = user.user_id;
    row.bid_price = instance.bids.at(i).bid_price;
    row.accepted = user.accepted;
    if (user.accepted && user.rate_index && !user.slots.empty()) {
      row.rate_kw = instance.station.rates.at(static_cast<std::size_t>(*user.rate_index)).rate_kw;
      row.slot_start = user.slots.front().slot;
      row.slot_end = user.slots.back().slot;
      row.at_bid_slots = user.at_bid_slots();
      row.countered_slots = user.countered_slots();
      double sum = 0.0;
      for (const auto& s : user.slots) sum += s.final_price;
      row.mean_final_price = sum / static_cast<double>(user.slots.size());
    }
    if (const auto it = decisions.find(user.user_id); it != decisions.end()) {
      row.utility = it->second->utility;
      row.user_accepts = it->second->accepted;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::vector<int>> allocation_grid(const OperatorOffer& offer, const ProblemInstance& instance) {
  std::vector<std::vector<int>> grid;
  for (const auto& user : offer.users) {
    std::vector<int> row(static_cast<std::size_t>(instance.num_slots()), 0);
    for (const auto& s : user.slots) {
      if (s.slot >= 0 && s.slot < instance.num_slots()) row[static_cast<std::size_t>(s.slot)] = s.at_bid ? 1 : 2;
    }
    grid.push_back(std::move(row));
  }
  return grid;
}

template <class T, class F>
std::string or_empty(const std::optional<T>& value, F&& format) {
  return value ? format(*value) : std::string();
}

ordered_json metrics_to_json(const ScenarioMetrics& m) {
  auto opt_money = [](const std::optional<double>& v) {
    return v ? ordered_json(format_money(*v)) : ordered_json(nullptr);
  };
  auto opt_number = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json j;
  j["user_count"] = m.user_count;
  j["accepted_users"] = m.accepted_users;
  j["operator_profit"] = format_money(m.operator_profit);
  j["acceptance_rate"] = m.acceptance_rate;
  j["mean_final_price"] = opt_money(m.mean_final_price);
  j["mean_markup"] = opt_money(m.mean_markup);
  j["gini"] = opt_number(m.gini);
  j["post_response_acceptance"] = opt_number(m.post_response_acceptance);
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw Error("failed writing " + path.string());
}

template <class Writer>
std::string render(Writer&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

void ensure_directory(const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec || !std::filesystem::is_directory(directory)) {
    throw Error("cannot create output directory " + directory.string() + ": " + ec.message());
  }
}

bool wants(std::span<const OutputFormat> formats, OutputFormat f) {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

}  // namespace

void write_sweep_csv(std::ostream& out, std::span<const SweepCell> cells) {
  out << kSweepColumns << '\n';
  for (const auto& cell : cells) {
    const auto& m = cell.metrics;
    out << cell.rate_label() << ',' << format_number(cell.gamma) << ',' << format_money(cell.bid_range.low) << ','
        << format_money(cell.bid_range.high) << ',' << optional_money(m.profit, &Statistic::mean) << ','
        << optional_money(m.profit, &Statistic::std) << ',' << optional_number(m.acceptance, &Statistic::mean)
        << ',' << optional_number(m.acceptance, &Statistic::std) << ','
        << optional_money(m.final_price, &Statistic::mean) << ',' << optional_money(m.final_price, &Statistic::std)
        << ',' << optional_money(m.markup, &Statistic::mean) << ',' << optional_money(m.markup, &Statistic::std)
        << ',' << optional_number(m.gini, &Statistic::mean) << ',' << m.seed_count << '\n';
  }
}

std::string sweep_to_json(std::span<const SweepCell> cells) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["cells"] = ordered_json::array();
  for (const auto& cell : cells) {
    const auto& m = cell.metrics;
    ordered_json c;
    c["rate_kw"] = cell.rate_label();
    c["gamma"] = cell.gamma;
    c["bid_low"] = format_money(cell.bid_range.low);
    c["bid_high"] = format_money(cell.bid_range.high);
    c["profit_mean"] = money_or_null(m.profit, &Statistic::mean);
    c["profit_std"] = money_or_null(m.profit, &Statistic::std);
    c["acceptance_mean"] = number_or_null(m.acceptance, &Statistic::mean);
    c["acceptance_std"] = number_or_null(m.acceptance, &Statistic::std);
    c["price_mean"] = money_or_null(m.final_price, &Statistic::mean);
    c["price_std"] = money_or_null(m.final_price, &Statistic::std);
    c["markup_mean"] = money_or_null(m.markup, &Statistic::mean);
    c["markup_std"] = money_or_null(m.markup, &Statistic::std);
    c["gini_mean"] = number_or_null(m.gini, &Statistic::mean);
    c["seeds"] = m.seed_count;
    c["post_response_acceptance_mean"] = number_or_null(m.post_response_acceptance, &Statistic::mean);
    c["infeasible"] = cell.infeasible;
    c["limit_reached"] = cell.limit_reached;
    c["failed"] = cell.failed;
    c["errors"] = cell.errors;
    doc["cells"].push_back(c);
  }
  return doc.dump(2) + "\n";
}

void write_detail_csv(std::ostream& out, const ScenarioResult& result, const ProblemInstance& instance) {
  const auto integer_text = [](int v) { return std::to_string(v); };
  const auto bool_text = [](bool v) { return std::string(v ? "true" : "false"); };
  out << kDetailColumns << '\n';
  for (const auto& row : detail_rows(result, instance)) {
    out << row.user_id << ',' << format_money(row.bid_price) << ',' << bool_text(row.accepted) << ','
        << or_empty(row.rate_kw, format_number) << ',' << or_empty(row.slot_start, integer_text) << ','
        << or_empty(row.slot_end, integer_text) << ',' << row.at_bid_slots << ',' << row.countered_slots << ','
        << or_empty(row.mean_final_price, format_money) << ',' << or_empty(row.utility, format_number) << ','
        << or_empty(row.user_accepts, bool_text) << '\n';
  }
}

std::string result_to_json(const ScenarioResult& result, const ProblemInstance& instance) {
  const auto null_or = [](const auto& v, auto&& make) { return v ? make(*v) : ordered_json(nullptr); };
  const auto plain = [](auto v) { return ordered_json(v); };
  const auto money = [](double v) { return ordered_json(format_money(v)); };

  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["metrics"] = metrics_to_json(result.metrics);
  doc["solve_seconds"] = result.solve_seconds;
  doc["formulation"] = std::string(to_string(result.formulation));
  doc["users"] = ordered_json::array();
  for (const auto& row : detail_rows(result, instance)) {
    ordered_json u;
    u["user_id"] = row.user_id;
    u["bid_price"] = format_money(row.bid_price);
    u["accepted"] = row.accepted;
    u["rate_kw"] = null_or(row.rate_kw, plain);
    u["slot_start"] = null_or(row.slot_start, plain);
    u["slot_end"] = null_or(row.slot_end, plain);
    u["at_bid_slots"] = row.at_bid_slots;
    u["countered_slots"] = row.countered_slots;
    u["mean_final_price"] = null_or(row.mean_final_price, money);
    u["utility"] = null_or(row.utility, plain);
    u["user_accepts"] = null_or(row.user_accepts, plain);
    doc["users"].push_back(u);
  }
  doc["allocation"] = allocation_grid(result.offer, instance);
  return doc.dump(2) + "\n";
}

void write_allocation_csv(std::ostream& out, const OperatorOffer& offer, const ProblemInstance& instance) {
  out << "user_id";
  for (int t = 0; t < instance.num_slots(); ++t) out << ',' << t;
  out << '\n';
  const auto grid = allocation_grid(offer, instance);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << offer.users[i].user_id;
    for (int v : grid[i]) out << ',' << v;
    out << '\n';
  }
}

std::vector<std::filesystem::path> emit_results(const ScenarioResult& result, const ProblemInstance& instance,
                                                std::span<const OutputFormat> formats,
                                                const std::filesystem::path& directory) {
  ensure_directory(directory);
  std::vector<std::filesystem::path> written;
  const auto put = [&](const char* name, const std::string& content) {
    write_file(directory / name, content);
    written.push_back(directory / name);
  };
  put("instance.json", instance_to_json(instance));
  put("offer.json", offer_to_json(result.offer));
  if (wants(formats, OutputFormat::Csv)) {
    put("detail.csv", render([&](std::ostream& out) { write_detail_csv(out, result, instance); }));
    put("allocation.csv", render([&](std::ostream& out) { write_allocation_csv(out, result.offer, instance); }));
  }
  if (wants(formats, OutputFormat::Json)) put("result.json", result_to_json(result, instance));
  return written;
}

std::vector<std::filesystem::path> emit_results(std::span<const SweepCell> cells,
                                                std::span<const OutputFormat> formats,
                                                const std::filesystem::path& directory) {
  ensure_directory(directory);
  std::vector<std::filesystem::path> written;
  if (wants(formats, OutputFormat::Csv)) {
    write_file(directory / "sweep.csv", render([&](std::ostream& out) { write_sweep_csv(out, cells); }));
    written.push_back(directory / "sweep.csv");
  }
  if (wants(formats, OutputFormat::Json)) {
    write_file(directory / "sweep.json", sweep_to_json(cells));
    written.push_back(directory / "sweep.json");
  }
  return written;
}

}  // namespace evmarket
