#include "rollmix/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rollmix/chain.hpp"
#include "rollmix/errors.hpp"
#include "rollmix/order_table.hpp"
#include "rollmix/predictor.hpp"

namespace rollmix {

using nlohmann::json;

namespace {

int lookup(const std::vector<std::string>& names, const std::string& name,
           ErrorKind kind, const char* what) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw Error(kind, std::string(what) + " '" + name + "'");
}

std::vector<std::string> string_array(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw Error(ErrorKind::ParseError,
                std::string("'") + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : doc[key]) {
    if (!item.is_string())
      throw Error(ErrorKind::ParseError,
                  std::string("'") + key + "' must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[i] == out[j])
        throw Error(ErrorKind::ParseError,
                    std::string("duplicate name '") + out[i] + "' in '" + key + "'");
  return out;
}

Rational payoff_value(const json& value, const std::string& terminal) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer())
    return Rational(static_cast<long>(value.get<std::int64_t>()));
  throw Error(ErrorKind::ParseError,
              "payoff for '" + terminal +
                  "' must be a rational string (floats lose exactness)");
}

Schema parse_schema(const json& doc, const Problem& problem) {
  if (!doc.is_object())
    throw Error(ErrorKind::ParseError, "schema must be an object");

  Schema schema;
  const bool has_action = doc.contains("action") && !doc["action"].is_null();
  const bool has_path = doc.contains("path") && !doc["path"].empty();
  std::string tail = "#";
  if (doc.contains("tail")) {
    if (!doc["tail"].is_string())
      throw Error(ErrorKind::ParseError, "schema 'tail' must be a string");
    tail = doc["tail"].get<std::string>();
  }

  if (!has_action) {
    if (has_path || tail != "#")
      throw Error(ErrorKind::ParseError,
                  "schema without an action must be the universal '#'");
    schema.universal = true;
    return schema;
  }

  schema.universal = false;
  schema.action = lookup(problem.action_names, doc["action"].get<std::string>(),
                         ErrorKind::UnknownAction, "action");
  if (doc.contains("path")) {
    if (!doc["path"].is_array())
      throw Error(ErrorKind::ParseError, "schema 'path' must be an array");
    for (const auto& item : doc["path"]) {
      if (!item.is_string())
        throw Error(ErrorKind::ParseError, "schema path entries must be strings");
      std::string name = item.get<std::string>();
      SchemaEntry entry;
      if (!name.empty() && name[0] == '*') {
        // "*X": the merged class containing cover set X.
        const int set_id = lookup(problem.set_names, name.substr(1),
                                  ErrorKind::UnknownSchemaSymbol, "cover set");
        entry.is_class = true;
        entry.id = expansion(problem.cover, problem.partition, set_id);
      } else {
        entry.is_class = false;
        entry.id = lookup(problem.set_names, name,
                          ErrorKind::UnknownSchemaSymbol, "cover set");
      }
      schema.path.push_back(entry);
    }
  }
  if (tail == "#") {
    schema.tail_wildcard = true;
  } else {
    schema.tail_wildcard = false;
    schema.tail_terminal = lookup(problem.terminal_names, tail,
                                  ErrorKind::UnknownSchemaSymbol, "terminal");
  }
  return schema;
}

}  // namespace

Document parse_document(const json& doc) {
  if (!doc.is_object())
    throw Error(ErrorKind::ParseError, "document must be a JSON object");

  Document out;
  Problem& problem = out.problem;
  problem.state_names = string_array(doc, "states");
  problem.action_names = string_array(doc, "actions");

  if (!doc.contains("terminals") || !doc["terminals"].is_object())
    throw Error(ErrorKind::ParseError, "'terminals' must be an object");
  for (const auto& [name, value] : doc["terminals"].items()) {
    problem.terminal_names.push_back(name);
    if (value.is_null())
      problem.payoffs.push_back(std::nullopt);
    else
      problem.payoffs.push_back(payoff_value(value, name));
  }

  if (!doc.contains("cover") || !doc["cover"].is_object())
    throw Error(ErrorKind::ParseError, "'cover' must be an object");
  std::vector<std::vector<int>> sets;
  for (const auto& [name, members] : doc["cover"].items()) {
    problem.set_names.push_back(name);
    if (!members.is_array())
      throw Error(ErrorKind::ParseError,
                  "cover set '" + name + "' must be an array of state names");
    std::vector<int> ids;
    for (const auto& member : members) {
      if (!member.is_string())
        throw Error(ErrorKind::ParseError,
                    "cover set '" + name + "' must be an array of state names");
      ids.push_back(lookup(problem.state_names, member.get<std::string>(),
                           ErrorKind::UnknownState, "state"));
    }
    sets.push_back(std::move(ids));
  }
  problem.cover = make_cover(static_cast<int>(problem.state_names.size()),
                             std::move(sets));
  problem.partition = build_partition(problem.cover);

  if (!doc.contains("population") || !doc["population"].is_array())
    throw Error(ErrorKind::ParseError, "'population' must be an array");
  for (const auto& entry : doc["population"]) {
    if (!entry.is_object() || !entry.contains("action") ||
        !entry.contains("states") || !entry.contains("terminal"))
      throw Error(ErrorKind::ParseError,
                  "population entries need 'action', 'states', 'terminal'");
    Rollout r;
    r.action = lookup(problem.action_names, entry["action"].get<std::string>(),
                      ErrorKind::UnknownAction, "action");
    for (const auto& s : entry["states"])
      r.states.push_back(lookup(problem.state_names, s.get<std::string>(),
                                ErrorKind::UnknownState, "state"));
    r.terminal = lookup(problem.terminal_names, entry["terminal"].get<std::string>(),
                        ErrorKind::UnknownTerminal, "terminal");
    problem.population.rollouts.push_back(std::move(r));
  }

  validate_problem(problem);

  if (doc.contains("schemata")) out.schemata = parse_schemata(doc["schemata"], problem);
  return out;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return parse_document(doc);
}

std::vector<NamedSchema> parse_schemata(const json& list, const Problem& problem) {
  if (!list.is_array())
    throw Error(ErrorKind::ParseError, "'schemata' must be an array");
  std::vector<NamedSchema> out;
  for (const auto& item : list) {
    NamedSchema named;
    if (item.is_object() && item.contains("name")) {
      if (!item["name"].is_string())
        throw Error(ErrorKind::ParseError, "schema 'name' must be a string");
      named.name = item["name"].get<std::string>();
    }
    named.schema = parse_schema(item, problem);
    out.push_back(std::move(named));
  }
  return out;
}

std::vector<NamedSchema> load_schema_file(const std::string& path,
                                          const Problem& problem) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("schemata"))
    return parse_schemata(doc["schemata"], problem);
  return parse_schemata(doc, problem);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

std::string fmt_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

void write_report_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "m,t,replica,schema,phi_hat,predicted,abs_error,seed\n";
  for (const auto& row : report.rows)
    out << row.m << ',' << row.t << ',' << row.replica << ',' << row.schema
        << ',' << fmt_double(row.phi_hat) << ',' << rational_string(row.predicted)
        << ',' << fmt_double(row.abs_error) << ',' << row.seed << '\n';
}

json report_to_json(const ConvergenceReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows)
    rows.push_back({{"m", row.m},
                    {"t", row.t},
                    {"replica", row.replica},
                    {"schema", row.schema},
                    {"phi_hat", row.phi_hat},
                    {"predicted",
                     {{"rational", rational_string(row.predicted)},
                      {"decimal", rational_double(row.predicted)}}},
                    {"abs_error", row.abs_error},
                    {"seed", row.seed}});
  json summary = json::array();
  for (const auto& s : report.summary)
    summary.push_back({{"m", s.m},
                       {"schema", s.schema},
                       {"mean", s.mean},
                       {"std_error", s.std_error},
                       {"replicas", s.replicas}});
  return json{{"mode", report.mode}, {"rows", rows}, {"summary", summary}};
}

void write_report_json(const ConvergenceReport& report, std::ostream& out) {
  out << report_to_json(report).dump(2) << '\n';
}

ConvergenceReport report_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("rows"))
    throw Error(ErrorKind::ParseError, "report must carry 'rows'");
  ConvergenceReport report;
  report.mode = doc.value("mode", std::string{});
  for (const auto& row : doc["rows"]) {
    ReportRow r;
    r.m = row.at("m").get<int>();
    r.t = row.at("t").get<std::int64_t>();
    r.replica = row.at("replica").get<int>();
    r.schema = row.at("schema").get<std::string>();
    r.phi_hat = row.at("phi_hat").get<double>();
    r.predicted = parse_rational(row.at("predicted").at("rational").get<std::string>());
    r.abs_error = row.at("abs_error").get<double>();
    r.seed = row.at("seed").get<std::uint64_t>();
    report.rows.push_back(std::move(r));
  }
  if (doc.contains("summary"))
    for (const auto& row : doc["summary"]) {
      SummaryRow s;
      s.m = row.at("m").get<int>();
      s.schema = row.at("schema").get<std::string>();
      s.mean = row.at("mean").get<double>();
      s.std_error = row.at("std_error").get<double>();
      s.replicas = row.at("replicas").get<int>();
      report.summary.push_back(std::move(s));
    }
  return report;
}

ConvergenceReport load_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return report_from_json(doc);
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

int default_height_cap(const Population& population) {
  int max_height = 1;
  for (const auto& r : population.rollouts)
    max_height = std::max(max_height, r.height());
  return 64 * max_height;
}

ConvergenceReport predict_report(const Problem& problem,
                                 const std::vector<NamedSchema>& schemata,
                                 const ExperimentConfig& config) {
  const OrderTable table = build_order_table(problem);
  ConvergenceReport report;
  report.mode = "predict";
  for (const auto& named : schemata) {
    const Rational freq =
        limiting_frequency(table, named.schema, problem);
    ReportRow row;
    row.m = 1;  // the prediction does not depend on the inflation level
    row.t = 0;
    row.replica = 0;
    row.schema = schema_string(named.schema, problem);
    row.predicted = freq;
    row.phi_hat = rational_double(freq);
    row.abs_error = 0.0;
    row.seed = config.seed;
    report.rows.push_back(std::move(row));
  }
  return report;
}

ConvergenceReport run_experiment(const Problem& problem,
                                 const std::vector<NamedSchema>& schemata,
                                 const ExperimentConfig& config) {
  if (config.steps < 1)
    throw Error(ErrorKind::ConfigError, "steps must be >= 1");
  if (config.replicas < 1)
    throw Error(ErrorKind::ConfigError, "replicas must be >= 1");
  if (config.inflation_levels.empty())
    throw Error(ErrorKind::ConfigError, "at least one inflation level");

  const OrderTable table = build_order_table(problem);
  std::vector<Rational> predicted;
  std::vector<Schema> bare;
  std::vector<std::string> labels;
  for (const auto& named : schemata) {
    predicted.push_back(
        limiting_frequency(table, named.schema, problem));
    bare.push_back(named.schema);
    labels.push_back(schema_string(named.schema, problem));
  }

  ConvergenceReport report;
  report.mode = "simulate";
  for (int m : config.inflation_levels) {
    // One chain per replica; rows below are emitted schema-major.
    std::vector<std::vector<FrequencyEstimate>> estimates;
    std::vector<std::uint64_t> seeds;
    for (int r = 0; r < config.replicas; ++r) {
      seeds.push_back(derive_seed(config.seed, static_cast<std::uint64_t>(r),
                                  static_cast<std::uint64_t>(m)));
      estimates.push_back(run_chain(problem, config.p_identity, config.steps,
                                    bare, seeds.back(), m));
    }
    for (size_t s = 0; s < bare.size(); ++s) {
      double sum = 0.0, sum_sq = 0.0;
      for (int r = 0; r < config.replicas; ++r) {
        const double phi = estimates[r][s].phi_hat;
        ReportRow row;
        row.m = m;
        row.t = config.steps;
        row.replica = r;
        row.schema = labels[s];
        row.phi_hat = phi;
        row.predicted = predicted[s];
        row.abs_error = std::abs(phi - rational_double(predicted[s]));
        row.seed = seeds[r];
        report.rows.push_back(std::move(row));
        sum += phi;
        sum_sq += phi * phi;
      }
      SummaryRow summary;
      summary.m = m;
      summary.schema = labels[s];
      summary.replicas = config.replicas;
      summary.mean = sum / config.replicas;
      if (config.replicas > 1) {
        const double var =
            (sum_sq - sum * sum / config.replicas) / (config.replicas - 1);
        summary.std_error = std::sqrt(std::max(0.0, var) / config.replicas);
      }
      report.summary.push_back(std::move(summary));
    }
  }
  return report;
}

}  // namespace rollmix
