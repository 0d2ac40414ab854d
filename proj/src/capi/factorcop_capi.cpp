#include "factorcop/factorcop.h"

#include "core/copula_family.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/factor_density.hpp"
#include "core/metrics.hpp"
#include "core/one_factor_model.hpp"

#include <iostream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

using namespace factorcop;

struct fcop_model
{
  OneFactorModel model;
};

struct fcop_pair_fit
{
  BivariateCopulaFit fit;
};

struct fcop_factor_fit
{
  FactorCopulaFit fit;
};

struct fcop_naive_fit
{
  NaiveKdeFit fit;
};

struct fcop_study
{
  StudyPlan plan;
  std::vector<McReport> reports;
  std::string summary;
};

namespace {

thread_local std::string last_error;

fcop_status
to_status(ErrorCode code)
{
  switch (code) {
    case ErrorCode::domain:
      return FCOP_ERR_DOMAIN;
    case ErrorCode::parameter:
      return FCOP_ERR_PARAMETER;
    case ErrorCode::convergence:
      return FCOP_ERR_CONVERGENCE;
    case ErrorCode::degenerate_data:
      return FCOP_ERR_DEGENERATE;
    case ErrorCode::dimension:
      return FCOP_ERR_DIMENSION;
    case ErrorCode::singular_matrix:
      return FCOP_ERR_SINGULAR;
    case ErrorCode::config:
      return FCOP_ERR_CONFIG;
    case ErrorCode::io:
      return FCOP_ERR_IO;
  }
  return FCOP_ERR_INTERNAL;
}

template<class F>
fcop_status
guarded(F&& body)
{
  try {
    body();
    last_error.clear();
    return FCOP_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FCOP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FCOP_ERR_INTERNAL;
  }
}

// Distinct status for NULL arguments, checked before entering guarded().
#define FCOP_REQUIRE_ARG(p)                                                                                            \
  do {                                                                                                                 \
    if (!(p)) {                                                                                                        \
      last_error = #p " is NULL";                                                                                      \
      return FCOP_ERR_NULL_ARG;                                                                                        \
    }                                                                                                                  \
  } while (0)

CopulaFamily
make_family(fcop_family family, double theta)
{
  switch (family) {
    case FCOP_INDEPENDENCE:
      return CopulaFamily::independence();
    case FCOP_GUMBEL:
      return CopulaFamily::gumbel(theta);
    case FCOP_CLAYTON:
      return CopulaFamily::clayton(theta);
  }
  fail(ErrorCode::parameter, "unknown family code");
}

Eigen::MatrixXd
from_row_major(const double* data, int n, int d)
{
  require(n >= 1 && d >= 1, ErrorCode::dimension, "matrix dimensions must be positive");
  Eigen::MatrixXd m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j)
      m(i, j) = data[static_cast<std::size_t>(i) * d + j];
  return m;
}

void
to_row_major(const Eigen::MatrixXd& m, double* out)
{
  const auto d = m.cols();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      out[i * d + j] = m(i, j);
}

FactorFitOptions
factor_options(const fcop_estimator_options* o)
{
  fcop_estimator_options local;
  fcop_estimator_options_init(&local);
  if (o)
    local = *o;
  FactorFitOptions options;
  options.pair.density_const = local.density_const;
  options.pair.k0_cap = local.k0_cap;
  options.pair.clip = { local.clip_lo, local.clip_hi };
  options.nodes_per_panel = local.nodes_per_panel;
  options.panels_per_bandwidth = local.panels_per_bandwidth;
  options.proxy.auto_orient = local.auto_orient != 0;
  return options;
}

} // namespace

extern "C" {

const char*
fcop_last_error(void)
{
  return last_error.c_str();
}

const char*
fcop_status_name(fcop_status status)
{
  switch (status) {
    case FCOP_OK:
      return "ok";
    case FCOP_ERR_DOMAIN:
      return "domain error";
    case FCOP_ERR_PARAMETER:
      return "parameter error";
    case FCOP_ERR_CONVERGENCE:
      return "convergence error";
    case FCOP_ERR_DEGENERATE:
      return "degenerate data";
    case FCOP_ERR_DIMENSION:
      return "dimension mismatch";
    case FCOP_ERR_SINGULAR:
      return "singular matrix";
    case FCOP_ERR_CONFIG:
      return "config error";
    case FCOP_ERR_IO:
      return "I/O error";
    case FCOP_ERR_NULL_ARG:
      return "null argument";
    case FCOP_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char*
fcop_version(void)
{
  return "1.0.0";
}

fcop_status
fcop_family_parse(const char* name, fcop_family* out)
{
  FCOP_REQUIRE_ARG(name);
  FCOP_REQUIRE_ARG(out);
  return guarded([&] {
    switch (parse_family(name)) {
      case Family::independence:
        *out = FCOP_INDEPENDENCE;
        break;
      case Family::gumbel:
        *out = FCOP_GUMBEL;
        break;
      case Family::clayton:
        *out = FCOP_CLAYTON;
        break;
    }
  });
}

fcop_status
fcop_copula_cdf(fcop_family family, double theta, double u, double v, double* out)
{
  FCOP_REQUIRE_ARG(out);
  return guarded([&] { *out = make_family(family, theta).cdf(u, v); });
}

fcop_status
fcop_copula_density(fcop_family family, double theta, double u, double v, double* out)
{
  FCOP_REQUIRE_ARG(out);
  return guarded([&] { *out = make_family(family, theta).density(u, v); });
}

fcop_status
fcop_copula_h(fcop_family family, double theta, double u, double v, double* out)
{
  FCOP_REQUIRE_ARG(out);
  return guarded([&] { *out = make_family(family, theta).h_function(u, v); });
}

fcop_status
fcop_copula_h_inverse(fcop_family family, double theta, double w, double v, double* out)
{
  FCOP_REQUIRE_ARG(out);
  return guarded([&] { *out = make_family(family, theta).h_inverse(w, v); });
}

fcop_status
fcop_kendall_tau(fcop_family family, double theta, double* out)
{
  FCOP_REQUIRE_ARG(out);
  return guarded([&] { *out = make_family(family, theta).kendall_tau(); });
}

fcop_status
fcop_model_create(fcop_family family, double theta, int d, fcop_model** out)
{
  FCOP_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    auto model = OneFactorModel::homogeneous(make_family(family, theta), d);
    *out = new fcop_model{ std::move(model) };
  });
}

void
fcop_model_destroy(fcop_model* model)
{
  delete model;
}

fcop_status
fcop_model_sample(const fcop_model* model, int n, uint64_t seed, double* u_out, double* latent_out)
{
  FCOP_REQUIRE_ARG(model);
  FCOP_REQUIRE_ARG(u_out);
  return guarded([&] {
    FactorSample s = sample_one_factor(model->model, n, seed);
    to_row_major(s.u, u_out);
    if (latent_out)
      for (int i = 0; i < n; ++i)
        latent_out[i] = s.latent(i);
  });
}

fcop_status
fcop_model_true_density(const fcop_model* model, const double* u, int k, int nodes, double* out)
{
  FCOP_REQUIRE_ARG(model);
  FCOP_REQUIRE_ARG(u);
  FCOP_REQUIRE_ARG(out);
  return guarded([&] {
    require(k >= 1, ErrorCode::dimension, "k must be positive");
    QuadratureRule rule = oracle_rule(model->model, nodes > 0 ? nodes : 50);
    *out = true_factor_density(model->model, std::span<const double>(u, static_cast<std::size_t>(k)), rule);
  });
}

fcop_status
fcop_pseudo_observations(const double* raw, int n, int d, double cdf_const, double* out)
{
  FCOP_REQUIRE_ARG(raw);
  FCOP_REQUIRE_ARG(out);
  return guarded([&] {
    UniformMatrix u = pseudo_observations(from_row_major(raw, n, d), {}, cdf_const > 0.0 ? cdf_const : kCdfBandwidthConst);
    to_row_major(u.values(), out);
  });
}

fcop_status
fcop_validate_uniform(const double* u, int n, int d, double* out)
{
  FCOP_REQUIRE_ARG(u);
  return guarded([&] {
    UniformMatrix m = UniformMatrix::validated(from_row_major(u, n, d));
    if (out)
      to_row_major(m.values(), out);
  });
}

fcop_status
fcop_proxy(const double* u, int n, int d, int auto_orient, double* z_bar, double* v_hat, double* w_hat, size_t* ties)
{
  FCOP_REQUIRE_ARG(u);
  return guarded([&] {
    ProxyOptions options;
    options.auto_orient = auto_orient != 0;
    ProxyResult p = compute_proxy(UniformMatrix(from_row_major(u, n, d)), options);
    for (int i = 0; i < n; ++i) {
      if (z_bar)
        z_bar[i] = p.z_bar[i];
      if (v_hat)
        v_hat[i] = p.v_hat[i];
      if (w_hat)
        w_hat[i] = p.w_hat[i];
    }
    if (ties)
      *ties = p.ties;
  });
}

void
fcop_estimator_options_init(fcop_estimator_options* options)
{
  if (!options)
    return;
  options->density_const = kDensityBandwidthConst;
  options->k0_cap = 200.0;
  options->clip_lo = 0.001;
  options->clip_hi = 0.999;
  options->nodes_per_panel = 4;
  options->panels_per_bandwidth = 8.0;
  options->auto_orient = 0;
}

fcop_status
fcop_pair_fit_create(const double* u_col, const double* v_col, int n, const fcop_estimator_options* options,
                     fcop_pair_fit** out)
{
  FCOP_REQUIRE_ARG(u_col);
  FCOP_REQUIRE_ARG(v_col);
  FCOP_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    require(n >= 0, ErrorCode::dimension, "n must be non-negative");
    auto size = static_cast<std::size_t>(n);
    BivariateCopulaFit fit({ u_col, size }, { v_col, size }, factor_options(options).pair);
    *out = new fcop_pair_fit{ std::move(fit) };
  });
}

void
fcop_pair_fit_destroy(fcop_pair_fit* fit)
{
  delete fit;
}

fcop_status
fcop_pair_fit_density(const fcop_pair_fit* fit, const double* u, const double* v, size_t m, double* out)
{
  FCOP_REQUIRE_ARG(fit);
  FCOP_REQUIRE_ARG(u);
  FCOP_REQUIRE_ARG(v);
  FCOP_REQUIRE_ARG(out);
  return guarded([&] {
    for (size_t i = 0; i < m; ++i)
      out[i] = fit->fit.density(u[i], v[i]);
  });
}

fcop_status
fcop_pair_fit_integrate(const fcop_pair_fit* fit, int nodes, double* out)
{
  FCOP_REQUIRE_ARG(fit);
  FCOP_REQUIRE_ARG(out);
  return guarded([&] { *out = fit->fit.integrate(gauss_legendre(nodes > 0 ? nodes : 50)); });
}

fcop_status
fcop_pair_fit_bandwidth(const fcop_pair_fit* fit, double* b1, double* b2, double* b3)
{
  FCOP_REQUIRE_ARG(fit);
  return guarded([&] {
    const auto& bw = fit->fit.bandwidth();
    if (b1)
      *b1 = bw.b1;
    if (b2)
      *b2 = bw.b2;
    if (b3)
      *b3 = bw.b3;
  });
}

fcop_status
fcop_factor_fit_create(const double* u, int n, int d, int k, const fcop_estimator_options* options,
                       fcop_factor_fit** out)
{
  FCOP_REQUIRE_ARG(u);
  FCOP_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    FactorCopulaFit fit = fit_factor(UniformMatrix(from_row_major(u, n, d)), k, factor_options(options));
    *out = new fcop_factor_fit{ std::move(fit) };
  });
}

void
fcop_factor_fit_destroy(fcop_factor_fit* fit)
{
  delete fit;
}

fcop_status
fcop_factor_fit_density(const fcop_factor_fit* fit, const double* points, size_t m, double* out)
{
  FCOP_REQUIRE_ARG(fit);
  FCOP_REQUIRE_ARG(points);
  FCOP_REQUIRE_ARG(out);
  return guarded([&] {
    auto k = static_cast<std::size_t>(fit->fit.k());
    for (size_t i = 0; i < m; ++i)
      out[i] = fit->fit.density({ points + i * k, k });
  });
}

fcop_status
fcop_naive_fit_create(const double* u, int n, int k, const fcop_estimator_options* options, fcop_naive_fit** out)
{
  FCOP_REQUIRE_ARG(u);
  FCOP_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    NaiveOptions naive;
    naive.clip = factor_options(options).pair.clip;
    NaiveKdeFit fit(UniformMatrix(from_row_major(u, n, k)).values(), naive);
    *out = new fcop_naive_fit{ std::move(fit) };
  });
}

void
fcop_naive_fit_destroy(fcop_naive_fit* fit)
{
  delete fit;
}

fcop_status
fcop_naive_fit_density(const fcop_naive_fit* fit, const double* points, size_t m, double* out)
{
  FCOP_REQUIRE_ARG(fit);
  FCOP_REQUIRE_ARG(points);
  FCOP_REQUIRE_ARG(out);
  return guarded([&] {
    auto k = static_cast<std::size_t>(fit->fit.k());
    for (size_t i = 0; i < m; ++i)
      out[i] = fit->fit.density({ points + i * k, k });
  });
}

fcop_status
fcop_rmsd(const double* est, const double* ref, size_t m, double* out)
{
  FCOP_REQUIRE_ARG(est);
  FCOP_REQUIRE_ARG(ref);
  FCOP_REQUIRE_ARG(out);
  return guarded([&] { *out = rmsd({ est, m }, { ref, m }); });
}

fcop_status
fcop_scree(const double* x, int n, int d, double* out)
{
  FCOP_REQUIRE_ARG(x);
  FCOP_REQUIRE_ARG(out);
  return guarded([&] {
    auto values = scree_eigenvalues(from_row_major(x, n, d));
    std::copy(values.begin(), values.end(), out);
  });
}

fcop_status
fcop_study_load(const char* path, fcop_study** out)
{
  FCOP_REQUIRE_ARG(path);
  FCOP_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] { *out = new fcop_study{ load_study_plan(path), {}, {} }; });
}

fcop_status
fcop_study_parse(const char* json_text, fcop_study** out)
{
  FCOP_REQUIRE_ARG(json_text);
  FCOP_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] { *out = new fcop_study{ parse_study_plan(json_text), {}, {} }; });
}

void
fcop_study_destroy(fcop_study* study)
{
  delete study;
}

fcop_status
fcop_study_set_output(fcop_study* study, const char* path)
{
  FCOP_REQUIRE_ARG(study);
  FCOP_REQUIRE_ARG(path);
  return guarded([&] { study->plan.output = path; });
}

size_t
fcop_study_config_count(const fcop_study* study)
{
  return study ? study->plan.configs.size() : 0;
}

fcop_status
fcop_study_run(fcop_study* study, int verbose)
{
  FCOP_REQUIRE_ARG(study);
  return guarded([&] {
    study->reports = run_plan(study->plan, verbose ? &std::cerr : nullptr);
    std::ostringstream csv;
    write_csv_header(csv);
    for (const auto& r : study->reports)
      write_csv_rows(csv, r);
    study->summary = csv.str();
  });
}

size_t
fcop_study_failed(const fcop_study* study)
{
  if (!study)
    return 0;
  size_t failed = 0;
  for (const auto& r : study->reports)
    failed += r.failed();
  return failed;
}

const char*
fcop_study_summary_csv(const fcop_study* study)
{
  return study ? study->summary.c_str() : "";
}

} // extern "C"
