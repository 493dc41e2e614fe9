// Command-line front end: validate inputs, print exact predictions, run the
// chain experiments, enumerate reachable classes, and estimate payoffs.
//
// Exit codes: 0 success, 1 validation/configuration/parse failure, 2 when a
// resource guard trips (class enumeration bound, all samples truncated).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rollmix/chain.hpp"
#include "rollmix/errors.hpp"
#include "rollmix/io.hpp"
#include "rollmix/order_table.hpp"
#include "rollmix/predictor.hpp"

namespace {

using namespace rollmix;

struct Options {
  std::string input;
  std::string schema_file;
  std::string output;
  std::string format;  // empty: per-mode default (csv for reports, json otherwise)
  std::string p_identity = "1/2";
  std::vector<int> inflation = {1};
  std::int64_t steps = 100'000;
  int replicas = 1;
  std::uint64_t seed = 0;
  int height_cap = 0;
  std::int64_t class_bound = 1'000'000;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--input", opt.input, "problem document (JSON)")->required();
  cmd->add_option("--schema-file", opt.schema_file,
                  "extra schemata (JSON file, appended to the document's)");
  cmd->add_option("--steps", opt.steps,
                  "populations per chain (simulate) / samples (payoff)");
  cmd->add_option("--inflation", opt.inflation,
                  "inflation levels m (repeatable)");
  cmd->add_option("--replicas", opt.replicas, "independent chains per level");
  cmd->add_option("--seed", opt.seed, "base seed; replica r at level m uses "
                  "a splitmix64-derived stream");
  cmd->add_option("--p-identity", opt.p_identity,
                  "probability of the identity move (rational or decimal)");
  cmd->add_option("--height-cap", opt.height_cap,
                  "sampled-rollout length guard (0: 64 x max height)");
  cmd->add_option("--class-bound", opt.class_bound,
                  "enumeration guard on reachable-class size");
  cmd->add_option("--output", opt.output, "write the report here (default stdout)");
  cmd->add_option("--format", opt.format,
                  "csv or json (default: csv for predict/simulate, json for "
                  "enumerate/payoff)")
      ->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig make_config(const Options& opt) {
  ExperimentConfig config;
  config.inflation_levels = opt.inflation;
  config.steps = opt.steps;
  config.replicas = opt.replicas;
  config.seed = opt.seed;
  config.p_identity = parse_rational(opt.p_identity);
  config.class_bound = opt.class_bound;
  config.height_cap = opt.height_cap;
  return config;
}

std::vector<NamedSchema> gather_schemata(const Document& doc, const Options& opt) {
  std::vector<NamedSchema> schemata = doc.schemata;
  if (!opt.schema_file.empty()) {
    auto extra = load_schema_file(opt.schema_file, doc.problem);
    schemata.insert(schemata.end(), extra.begin(), extra.end());
  }
  if (schemata.empty())
    throw Error(ErrorKind::ConfigError,
                "no schemata given (document 'schemata' or --schema-file)");
  return schemata;
}

void emit(const std::string& text, const Options& opt) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + opt.output + "'");
  out << text;
}

void emit_report(const ConvergenceReport& report, const Options& opt) {
  std::ostringstream buffer;
  if (opt.format == "json")
    write_report_json(report, buffer);
  else
    write_report_csv(report, buffer);
  emit(buffer.str(), opt);
}

int run_validate(const Options& opt) {
  const Document doc = load_document(opt.input);
  const Problem& p = doc.problem;
  std::cout << "states: " << p.cover.num_states << "\n"
            << "cover sets: " << p.cover.num_sets() << "\n"
            << "classes: " << p.partition.num_classes() << "\n"
            << "actions: " << p.num_actions() << "\n"
            << "terminals: " << p.num_terminals() << "\n"
            << "rollouts: " << p.population.size() << "\n"
            << "total states in population: " << total_states(p.population) << "\n"
            << "homologous: " << (is_homologous(p.population, p.cover) ? "yes" : "no")
            << "\n"
            << "schemata: " << doc.schemata.size() << "\n"
            << "ok\n";
  return 0;
}

int run_predict(const Options& opt) {
  const Document doc = load_document(opt.input);
  const auto schemata = gather_schemata(doc, opt);
  emit_report(predict_report(doc.problem, schemata, make_config(opt)), opt);
  return 0;
}

int run_simulate(const Options& opt) {
  const Document doc = load_document(opt.input);
  const auto schemata = gather_schemata(doc, opt);
  const auto report = run_experiment(doc.problem, schemata, make_config(opt));
  emit_report(report, opt);
  if (!opt.output.empty()) {
    for (const auto& s : report.summary)
      std::cout << "m=" << s.m << " schema=" << s.schema << " mean=" << s.mean
                << " std_error=" << s.std_error << " replicas=" << s.replicas
                << "\n";
  }
  return 0;
}

int run_enumerate(const Options& opt) {
  if (opt.format == "csv")
    throw Error(ErrorKind::ConfigError,
                "enumerate emits JSON only (--format json)");
  const Document doc = load_document(opt.input);
  Problem problem = doc.problem;
  for (int m : opt.inflation)
    if (m != 1) {
      if (opt.inflation.size() != 1)
        throw Error(ErrorKind::ConfigError,
                    "enumerate takes a single inflation level");
      problem = inflate(doc.problem, m);
    }
  const auto cls =
      enumerate_class(problem.population, problem.cover, opt.class_bound);
  nlohmann::json out{{"class_size", cls.members.size()},
                     {"rollouts", problem.population.size()},
                     {"inflation", problem.inflation}};
  emit(out.dump(2) + "\n", opt);
  return 0;
}

int run_payoff(const Options& opt) {
  if (opt.format == "csv")
    throw Error(ErrorKind::ConfigError, "payoff emits JSON only (--format json)");
  const Document doc = load_document(opt.input);
  const Problem& problem = doc.problem;
  const OrderTable table = build_order_table(problem);
  const ClassChain chain = build_class_chain(table);
  const int cap = opt.height_cap > 0 ? opt.height_cap
                                     : default_height_cap(problem.population);

  nlohmann::json actions = nlohmann::json::array();
  for (int a = 0; a < problem.num_actions(); ++a) {
    if (table.numb[a] == 0) continue;
    const Rational exact =
        expected_payoff_exact(chain, table, problem.payoffs, a);
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(a), 1));
    const PayoffEstimate mc = estimate_payoff_mc(
        chain, table, problem.payoffs, a, opt.steps, rng, cap);
    actions.push_back({{"action", problem.action_names[a]},
                       {"exact",
                        {{"rational", rational_string(exact)},
                         {"decimal", rational_double(exact)}}},
                       {"monte_carlo",
                        {{"mean", mc.mean},
                         {"std_error", mc.std_error},
                         {"samples_used", mc.used},
                         {"truncated", mc.truncated}}}});
  }
  emit(nlohmann::json{{"actions", actions}, {"samples", opt.steps},
                      {"seed", opt.seed}}
               .dump(2) +
           "\n",
       opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rollout-population recombination analysis"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* validate = app.add_subcommand("validate", "check a problem document");
  CLI::App* predict = app.add_subcommand("predict", "exact limiting frequencies");
  CLI::App* simulate = app.add_subcommand("simulate", "chain convergence sweep");
  CLI::App* enumerate = app.add_subcommand("enumerate", "reachable-class size");
  CLI::App* payoff = app.add_subcommand("payoff", "expected payoffs per action");
  for (CLI::App* cmd : {validate, predict, simulate, enumerate, payoff})
    add_common(cmd, opt);

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(validate)) return run_validate(opt);
    if (app.got_subcommand(predict)) return run_predict(opt);
    if (app.got_subcommand(simulate)) return run_simulate(opt);
    if (app.got_subcommand(enumerate)) return run_enumerate(opt);
    return run_payoff(opt);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const rollmix::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_resource_guard() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
