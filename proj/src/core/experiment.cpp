#include "core/experiment.hpp"

#include "core/errors.hpp"
#include "core/factor_density.hpp"
#include "core/one_factor_model.hpp"
#include "core/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace factorcop {

using nlohmann::json;

std::string_view
to_string(Estimator estimator)
{
  return estimator == Estimator::proposed ? "proposed" : "naive";
}

bool
ExperimentConfig::has(Estimator e) const
{
  return std::find(estimators.begin(), estimators.end(), e) != estimators.end();
}

void
ExperimentConfig::validate() const
{
  auto check = [](bool ok, const std::string& what) { require(ok, ErrorCode::config, what); };
  try {
    (void)link();
  } catch (const Error& e) {
    fail(ErrorCode::config, e.what());
  }
  check(n >= 10, "n must be at least 10");
  check(d >= 2, "d must be at least 2");
  check(k >= 1 && k <= d, "k must satisfy 1 <= k <= d");
  check(reps >= 1, "reps must be at least 1");
  check(!estimators.empty(), "estimators must not be empty");
  check(nodes_per_panel >= 1 && nodes_per_panel <= 64, "factor.quad_nodes must be in [1, 64]");
  check(panels_per_bandwidth > 0.0, "factor.panels_per_bandwidth must be positive");
  check(k0_cap > 0.0, "k0_cap must be positive");
  check(cdf_const > 0.0 && density_const > 0.0, "bandwidth constants must be positive");
  check(clip_lo > 0.0 && clip_lo < clip_hi && clip_hi < 1.0, "clip region must satisfy 0 < lo < hi < 1");
  check(eval_points >= 1, "eval.points must be at least 1");
  check(eval_lo >= 0.0 && eval_lo < 0.5, "eval.lo must be in [0, 0.5)");
  check(truth_nodes >= 2, "truth.quad_nodes must be at least 2");
}

namespace {

void
flatten(const json& node, const std::string& prefix, std::map<std::string, json>& out)
{
  for (auto it = node.begin(); it != node.end(); ++it) {
    std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object())
      flatten(*it, key, out);
    else
      out[key] = *it;
  }
}

std::vector<int>
int_list(const json& value)
{
  std::vector<int> out;
  if (value.is_array()) {
    for (const auto& v : value)
      out.push_back(v.get<int>());
  } else {
    out.push_back(value.get<int>());
  }
  return out;
}

void
require_integral(const std::string& key, const json& value)
{
  auto is_int = [](const json& v) { return v.is_number_integer(); };
  bool ok = value.is_array() ? std::all_of(value.begin(), value.end(), is_int) && !value.empty() : is_int(value);
  require(ok, ErrorCode::config, "'" + key + "' must be an integer or a non-empty array of integers");
}

} // namespace

StudyPlan
parse_study_plan(const std::string& json_text)
{
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::config, std::string("config is not valid JSON: ") + e.what());
  }
  require(root.is_object(), ErrorCode::config, "config must be a JSON object");

  std::map<std::string, json> keys;
  flatten(root, "", keys);

  static const std::set<std::string> known = {
    "family",        "theta",          "n",
    "d",             "k",              "reps",
    "seed0",         "estimators",     "quad_nodes",
    "factor.quad_nodes", "factor.panels_per_bandwidth", "k0_cap",
    "bandwidth.cdf_const", "bandwidth.density_const", "clip.lo",
    "clip.hi",       "eval.design",    "eval.points",
    "eval.lo",       "truth.quad_nodes", "margins",
    "proxy.auto_orient", "output",     "per_rep_output",
    "threads",
  };
  for (const auto& [key, value] : keys)
    require(known.count(key) > 0, ErrorCode::config, "unknown config key '" + key + "'");

  ExperimentConfig base;
  StudyPlan plan;
  std::vector<int> ns{ base.n }, ds{ base.d }, ks{ base.k };
  bool eval_lo_given = false;

  try {
    for (const auto& [key, value] : keys) {
      if (key == "family")
        base.family = parse_family(value.get<std::string>());
      else if (key == "theta")
        base.theta = value.get<double>();
      else if (key == "n" || key == "d" || key == "k") {
        require_integral(key, value);
        (key == "n" ? ns : key == "d" ? ds : ks) = int_list(value);
      } else if (key == "reps") {
        require_integral(key, value);
        base.reps = value.get<int>();
      } else if (key == "seed0") {
        require(value.is_number_unsigned(), ErrorCode::config, "'seed0' must be a non-negative integer");
        base.seed0 = value.get<std::uint64_t>();
      } else if (key == "estimators") {
        require(value.is_array(), ErrorCode::config, "'estimators' must be an array");
        base.estimators.clear();
        for (const auto& e : value) {
          auto name = e.get<std::string>();
          require(name == "proposed" || name == "naive", ErrorCode::config, "unknown estimator '" + name + "'");
          Estimator est = name == "proposed" ? Estimator::proposed : Estimator::naive;
          if (!base.has(est))
            base.estimators.push_back(est);
        }
      } else if (key == "quad_nodes" || key == "factor.quad_nodes") {
        require_integral(key, value);
        base.nodes_per_panel = value.get<int>();
      } else if (key == "factor.panels_per_bandwidth")
        base.panels_per_bandwidth = value.get<double>();
      else if (key == "k0_cap")
        base.k0_cap = value.get<double>();
      else if (key == "bandwidth.cdf_const")
        base.cdf_const = value.get<double>();
      else if (key == "bandwidth.density_const")
        base.density_const = value.get<double>();
      else if (key == "clip.lo")
        base.clip_lo = value.get<double>();
      else if (key == "clip.hi")
        base.clip_hi = value.get<double>();
      else if (key == "eval.design") {
        auto name = value.get<std::string>();
        require(name == "uniform" || name == "sample_rows", ErrorCode::config,
                "eval.design must be 'uniform' or 'sample_rows'");
        base.eval_design = name == "uniform" ? EvalDesign::uniform : EvalDesign::sample_rows;
      } else if (key == "eval.points") {
        require_integral(key, value);
        base.eval_points = value.get<int>();
      } else if (key == "eval.lo") {
        base.eval_lo = value.get<double>();
        eval_lo_given = true;
      } else if (key == "truth.quad_nodes") {
        require_integral(key, value);
        base.truth_nodes = value.get<int>();
      } else if (key == "margins") {
        auto name = value.get<std::string>();
        require(name == "known" || name == "kernel", ErrorCode::config, "margins must be 'known' or 'kernel'");
        base.margins = name == "known" ? Margins::known : Margins::kernel;
      } else if (key == "proxy.auto_orient")
        base.auto_orient = value.get<bool>();
      else if (key == "output")
        plan.output = value.get<std::string>();
      else if (key == "per_rep_output")
        plan.per_rep_output = value.get<std::string>();
      else if (key == "threads") {
        require_integral(key, value);
        int t = value.get<int>();
        require(t >= 0, ErrorCode::config, "threads must be >= 0");
        base.threads = static_cast<unsigned>(t);
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::config, std::string("config type error: ") + e.what());
  } catch (const Error& e) {
    fail(ErrorCode::config, e.what());
  }

  if (!eval_lo_given && base.eval_design == EvalDesign::sample_rows)
    base.eval_lo = 0.01;

  for (int n : ns)
    for (int d : ds)
      for (int k : ks) {
        ExperimentConfig cfg = base;
        cfg.n = n;
        cfg.d = d;
        cfg.k = k;
        cfg.validate();
        plan.configs.push_back(cfg);
      }
  return plan;
}

StudyPlan
load_study_plan(const std::string& path)
{
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::config, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_study_plan(buffer.str());
}

ReplicationResult
run_replication(const ExperimentConfig& cfg, int rep)
{
  ReplicationResult result;
  result.rep = rep;
  result.seed = cfg.seed0 + static_cast<std::uint64_t>(rep);

  Rng rng(result.seed);
  OneFactorModel model = OneFactorModel::homogeneous(cfg.link(), cfg.d);
  FactorSample sample = sample_one_factor(model, cfg.n, rng);
  UniformMatrix u = cfg.margins == Margins::known ? UniformMatrix(sample.u)
                                                  : pseudo_observations(sample.u, {}, cfg.cdf_const);

  const int k = cfg.k;
  const double lo = cfg.eval_lo;
  const double hi = 1.0 - cfg.eval_lo;
  std::vector<std::vector<double>> points;
  if (cfg.eval_design == EvalDesign::uniform) {
    points.assign(cfg.eval_points, std::vector<double>(k));
    for (auto& p : points)
      for (double& x : p)
        x = rng.uniform(lo, hi);
  } else {
    for (int i = 0; i < u.rows(); ++i) {
      std::vector<double> p(k);
      bool inside = true;
      for (int j = 0; j < k; ++j) {
        p[j] = u(i, j);
        inside = inside && p[j] >= lo && p[j] <= hi;
      }
      if (inside)
        points.push_back(std::move(p));
    }
    require(!points.empty(), ErrorCode::degenerate_data, "no sample row lies inside the evaluation region");
  }
  result.points = static_cast<int>(points.size());

  QuadratureRule truth_rule = oracle_rule(model, cfg.truth_nodes);
  std::vector<double> truth(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    truth[i] = true_factor_density(model, points[i], truth_rule);
    require(std::isfinite(truth[i]), ErrorCode::convergence, "true density is not finite");
  }

  std::vector<double> est(points.size());
  if (cfg.has(Estimator::proposed)) {
    FactorFitOptions options;
    options.pair.density_const = cfg.density_const;
    options.pair.k0_cap = cfg.k0_cap;
    options.pair.clip = { cfg.clip_lo, cfg.clip_hi };
    options.proxy.auto_orient = cfg.auto_orient;
    options.nodes_per_panel = cfg.nodes_per_panel;
    options.panels_per_bandwidth = cfg.panels_per_bandwidth;
    FactorCopulaFit fit = fit_factor(u, k, options);
    for (std::size_t i = 0; i < points.size(); ++i)
      est[i] = fit.density(points[i]);
    result.proposed = replication_errors(est, truth);
  }
  if (cfg.has(Estimator::naive)) {
    NaiveOptions options;
    options.clip = { cfg.clip_lo, cfg.clip_hi };
    NaiveKdeFit fit = fit_naive(u.values().leftCols(k), options);
    for (std::size_t i = 0; i < points.size(); ++i)
      est[i] = fit.density(points[i]);
    result.naive = replication_errors(est, truth);
  }
  result.ok = true;
  return result;
}

std::size_t
McReport::failed() const
{
  return static_cast<std::size_t>(
    std::count_if(replications.begin(), replications.end(), [](const auto& r) { return !r.ok; }));
}

McReport
run_study(const ExperimentConfig& cfg)
{
  cfg.validate();
  McReport report;
  report.config = cfg;
  report.replications.resize(cfg.reps);
  parallel_for(static_cast<std::size_t>(cfg.reps), cfg.threads, [&](std::size_t r) {
    int rep = static_cast<int>(r);
    try {
      report.replications[r] = run_replication(cfg, rep);
    } catch (const std::exception& e) {
      ReplicationResult failed;
      failed.rep = rep;
      failed.seed = cfg.seed0 + r;
      failed.error = e.what();
      report.replications[r] = std::move(failed);
    }
  });

  for (Estimator e : cfg.estimators) {
    std::vector<ReplicationErrors> errors;
    for (const auto& r : report.replications) {
      if (!r.ok)
        continue;
      const auto& slot = e == Estimator::proposed ? r.proposed : r.naive;
      if (slot)
        errors.push_back(*slot);
    }
    report.rows.push_back({ e, aggregate(errors) });
  }
  return report;
}

namespace {

std::ostream&
numeric(std::ostream& out)
{
  return out << std::setprecision(12);
}

} // namespace

void
write_csv_header(std::ostream& out)
{
  out << "estimator,n,d,k,family,theta,rmse,mae,sd,bias,reps,seed0\n";
}

void
write_csv_rows(std::ostream& out, const McReport& report)
{
  const auto& c = report.config;
  numeric(out);
  for (const auto& row : report.rows) {
    const auto& s = row.summary;
    out << to_string(row.estimator) << ',' << c.n << ',' << c.d << ',' << c.k << ',' << to_string(c.family) << ','
        << c.theta << ',' << s.rmse << ',' << s.mae << ',' << s.sd << ',' << s.bias << ',' << s.reps << ','
        << c.seed0 << '\n';
  }
}

void
write_per_rep_header(std::ostream& out)
{
  out << "estimator,n,d,k,family,theta,rep,seed,points,rmse,mae,mean_err\n";
}

void
write_per_rep_rows(std::ostream& out, const McReport& report)
{
  const auto& c = report.config;
  numeric(out);
  for (Estimator e : c.estimators)
    for (const auto& r : report.replications) {
      const auto& slot = e == Estimator::proposed ? r.proposed : r.naive;
      if (!r.ok || !slot)
        continue;
      out << to_string(e) << ',' << c.n << ',' << c.d << ',' << c.k << ',' << to_string(c.family) << ',' << c.theta
          << ',' << r.rep << ',' << r.seed << ',' << r.points << ',' << slot->rmse << ',' << slot->mae << ','
          << slot->mean_err << '\n';
    }
}

void
write_failure_rows(std::ostream& out, const McReport& report)
{
  const auto& c = report.config;
  for (const auto& r : report.replications) {
    if (r.ok)
      continue;
    std::string message = r.error;
    std::replace(message.begin(), message.end(), '"', '\'');
    out << c.n << ',' << c.d << ',' << c.k << ',' << to_string(c.family) << ',' << c.theta << ',' << r.rep << ','
        << r.seed << ",\"" << message << "\"\n";
  }
}

std::vector<McReport>
run_plan(const StudyPlan& plan, std::ostream* log)
{
  std::vector<McReport> reports;
  for (const auto& cfg : plan.configs) {
    reports.push_back(run_study(cfg));
    const auto& report = reports.back();
    if (log) {
      *log << to_string(cfg.family) << "(" << cfg.theta << ") n=" << cfg.n << " d=" << cfg.d << " k=" << cfg.k
           << ": " << cfg.reps - report.failed() << "/" << cfg.reps << " replications\n";
      for (const auto& r : report.replications)
        if (!r.ok)
          *log << "  replication " << r.rep << " (seed " << r.seed << ") failed: " << r.error << '\n';
      for (const auto& row : report.rows)
        if (row.summary.sd_undefined)
          *log << "  warning: " << to_string(row.estimator) << " has fewer than 2 replications, sd reported as 0\n";
    }
  }

  auto open = [](const std::string& path) {
    std::ofstream out(path);
    require(static_cast<bool>(out), ErrorCode::io, "cannot write '" + path + "'");
    return out;
  };

  if (!plan.output.empty()) {
    auto out = open(plan.output);
    write_csv_header(out);
    for (const auto& r : reports)
      write_csv_rows(out, r);
    require(static_cast<bool>(out), ErrorCode::io, "write to '" + plan.output + "' failed");
  }
  if (!plan.per_rep_output.empty()) {
    auto out = open(plan.per_rep_output);
    write_per_rep_header(out);
    for (const auto& r : reports)
      write_per_rep_rows(out, r);
  }
  bool any_failed = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.failed() > 0; });
  if (any_failed && !plan.output.empty()) {
    auto out = open(plan.output + ".failures.csv");
    out << "n,d,k,family,theta,rep,seed,error\n";
    for (const auto& r : reports)
      write_failure_rows(out, r);
  }
  return reports;
}

} // namespace factorcop
