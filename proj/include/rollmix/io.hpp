#pragma once

// Problem documents (JSON in), convergence reports (CSV / JSON out), and the
// experiment orchestration the CLI drives.
//
// Input document shape:
//
//   {
//     "states":    ["1a", "1b", ...],
//     "cover":     {"1": ["1a","1b","1c"], ...},
//     "actions":   ["alpha", ...],
//     "terminals": {"f1": "1", "f2": null, ...},        // payoff optional
//     "population":[{"action":"alpha","states":[...],"terminal":"f1"}, ...],
//     "schemata":  [{"name":"h1","action":"beta",
//                    "path":["4","7","5"],"tail":"f2"},
//                   {"tail":"#"}]                        // universal
//   }
//
// A path entry "X" names a cover set; "*X" names the merged class containing
// cover set X.  A schema with no action, empty path and "#" tail is the
// universal schema.  Payoffs are rational strings ("1", "3/4", "0.25").
//
// Report rows follow the fixed CSV header
//   m,t,replica,schema,phi_hat,predicted,abs_error,seed
// with `predicted` carrying the exact rational as "p/q" and the decimal
// columns printed with %.17g.  Per-(m, schema) summaries (mean over
// replicas, standard error) appear in the JSON report and on stdout; the
// CSV holds exactly the data rows.  Writers are byte-deterministic.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rollmix/population.hpp"
#include "rollmix/rational.hpp"
#include "rollmix/schema.hpp"

namespace rollmix {

struct NamedSchema {
  std::string name;  // optional; display string is used in reports
  Schema schema;
};

struct Document {
  Problem problem;
  std::vector<NamedSchema> schemata;
};

// Parse + validate.  Errors carry the offending name/key in the message.
Document parse_document(const nlohmann::json& doc);
Document load_document(const std::string& path);

// Schemata loaded from a standalone file ({"schemata":[...]} or a bare
// array), resolved against an already loaded problem.
std::vector<NamedSchema> parse_schemata(const nlohmann::json& list,
                                        const Problem& problem);
std::vector<NamedSchema> load_schema_file(const std::string& path,
                                          const Problem& problem);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct ReportRow {
  int m = 1;
  std::int64_t t = 0;
  int replica = 0;
  std::string schema;      // canonical display string
  double phi_hat = 0.0;
  Rational predicted;
  double abs_error = 0.0;
  std::uint64_t seed = 0;
};

struct SummaryRow {
  int m = 1;
  std::string schema;
  double mean = 0.0;
  double std_error = 0.0;  // sd over replicas / sqrt(replicas)
  int replicas = 0;
};

struct ConvergenceReport {
  std::string mode;  // "simulate" or "predict"
  std::vector<ReportRow> rows;
  std::vector<SummaryRow> summary;
};

void write_report_csv(const ConvergenceReport& report, std::ostream& out);
void write_report_json(const ConvergenceReport& report, std::ostream& out);
nlohmann::json report_to_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const nlohmann::json& doc);
ConvergenceReport load_report_json(const std::string& path);

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::vector<int> inflation_levels = {1};
  std::int64_t steps = 100'000;
  int replicas = 1;
  std::uint64_t seed = 0;
  Rational p_identity = Rational(1, 2);
  std::int64_t class_bound = 1'000'000;
  int height_cap = 0;  // 0: use 64 x the population's maximum rollout height
};

int default_height_cap(const Population& population);

// Exact predictions only; rows carry t = 0, replica = 0, phi_hat equal to
// the predicted decimal, abs_error 0, and echo config.seed.
ConvergenceReport predict_report(const Problem& problem,
                                 const std::vector<NamedSchema>& schemata,
                                 const ExperimentConfig& config);

// Full sweep: for every inflation level m and replica r, one chain run of
// config.steps populations seeded with derive_seed(config.seed, r, m).
// Row order: m (as configured), then schema (input order), then replica.
ConvergenceReport run_experiment(const Problem& problem,
                                 const std::vector<NamedSchema>& schemata,
                                 const ExperimentConfig& config);

}  // namespace rollmix
