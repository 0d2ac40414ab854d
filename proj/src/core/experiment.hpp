#pragma once

#include "core/copula_family.hpp"
#include "core/metrics.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace factorcop {

enum class Estimator
{
  proposed,
  naive
};

std::string_view to_string(Estimator estimator);

enum class EvalDesign
{
  uniform,    // points drawn uniformly in [lo, 1 - lo]^K
  sample_rows // the replication's own rows with every coordinate in [lo, 1 - lo]
};

enum class Margins
{
  known, // estimators see the simulated uniforms
  kernel // estimators see kernel-CDF pseudo-observations
};

//! One simulation configuration (single n, d, k).
struct ExperimentConfig
{
  Family family = Family::gumbel;
  double theta = 1.4;
  int n = 500;
  int d = 20;
  int k = 5;
  int reps = 100;
  std::uint64_t seed0 = 1;
  std::vector<Estimator> estimators{ Estimator::proposed, Estimator::naive };

  int nodes_per_panel = 4;
  double panels_per_bandwidth = 8.0;
  double k0_cap = 200.0;
  double cdf_const = 1.587;
  double density_const = 1.25;
  double clip_lo = 0.001;
  double clip_hi = 0.999;
  bool auto_orient = false;
  Margins margins = Margins::known;

  EvalDesign eval_design = EvalDesign::uniform;
  int eval_points = 500;
  double eval_lo = 0.05;
  int truth_nodes = 50;

  unsigned threads = 0;

  bool has(Estimator e) const;
  CopulaFamily link() const { return { family, theta }; }
  void validate() const;
};

//! A config file expands to one ExperimentConfig per (n, d, k) combination.
struct StudyPlan
{
  std::vector<ExperimentConfig> configs;
  std::string output;
  std::string per_rep_output;
};

//! Flat JSON object; unknown keys and type errors raise ErrorCode::config.
StudyPlan parse_study_plan(const std::string& json_text);
StudyPlan load_study_plan(const std::string& path);

struct ReplicationResult
{
  int rep = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::optional<ReplicationErrors> proposed;
  std::optional<ReplicationErrors> naive;
  int points = 0;
};

//! Simulate with seed = seed0 + rep, fit, evaluate against the true density.
//! Throws on failure; run_study catches and records.
ReplicationResult run_replication(const ExperimentConfig& cfg, int rep);

struct McRow
{
  Estimator estimator;
  ErrorSummary summary;
};

struct McReport
{
  ExperimentConfig config;
  std::vector<ReplicationResult> replications; // index = rep, failures included
  std::vector<McRow> rows;

  std::size_t failed() const;
};

McReport run_study(const ExperimentConfig& cfg);

void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, const McReport& report);
void write_per_rep_header(std::ostream& out);
void write_per_rep_rows(std::ostream& out, const McReport& report);
void write_failure_rows(std::ostream& out, const McReport& report);

//! Runs every config of the plan, writes the summary CSV (and per-replication
//! CSV when requested) and, if any replication failed, `<output>.failures.csv`.
std::vector<McReport> run_plan(const StudyPlan& plan, std::ostream* log = nullptr);

} // namespace factorcop
