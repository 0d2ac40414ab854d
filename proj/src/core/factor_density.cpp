#include "core/factor_density.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace factorcop {

QuadratureRule
latent_rule_for(std::span<const BivariateCopulaFit> links, const FactorFitOptions& options)
{
  require(!links.empty(), ErrorCode::dimension, "latent rule needs at least one link");
  require(options.nodes_per_panel >= 1, ErrorCode::parameter, "nodes per panel must be at least 1");
  require(options.panels_per_bandwidth > 0.0, ErrorCode::parameter, "panels per bandwidth must be positive");
  double width = std::numeric_limits<double>::infinity();
  for (const auto& link : links)
    width = std::min(width, link.bandwidth().b2);
  const ClipRegion& clip = links.front().clip();
  return latent_normal_rule(width / options.panels_per_bandwidth, options.nodes_per_panel, clip.lo, clip.hi);
}

FactorCopulaFit::FactorCopulaFit(std::vector<BivariateCopulaFit> links, QuadratureRule rule)
  : links_(std::move(links))
  , rule_(std::move(rule))
{
  require(!links_.empty(), ErrorCode::dimension, "factor fit needs at least one link");
  for (const auto& link : links_)
    require(link.size() == links_.front().size(), ErrorCode::dimension, "links were fitted on different sample sizes");
  grid_ = LatentGrid::from_points(rule_.points, links_.front().clip());
}

double
FactorCopulaFit::density(std::span<const double> u) const
{
  require(u.size() == links_.size(), ErrorCode::dimension, "evaluation point has wrong dimension");
  const std::size_t m = rule_.size();
  std::vector<std::vector<double>> profiles(links_.size(), std::vector<double>(m));
  for (std::size_t j = 0; j < links_.size(); ++j)
    links_[j].latent_profile(u[j], grid_, profiles[j]);
  // canonical multiplication order: permuting (link, argument) pairs is exact
  std::sort(profiles.begin(), profiles.end());
  std::vector<double> prod(rule_.weights);
  for (const auto& profile : profiles)
    for (std::size_t q = 0; q < m; ++q)
      prod[q] *= profile[q];
  double sum = 0.0;
  for (double p : prod)
    sum += p;
  return sum;
}

namespace {

FactorCopulaFit
link_columns(const UniformMatrix& u, std::span<const int> columns, std::span<const double> latent,
             const FactorFitOptions& options)
{
  std::vector<BivariateCopulaFit> links;
  links.reserve(columns.size());
  for (int j : columns) {
    require(j >= 0 && j < u.cols(), ErrorCode::dimension, "linked column index out of range");
    links.emplace_back(u.column(j), latent, options.pair);
  }
  QuadratureRule rule = latent_rule_for(links, options);
  return FactorCopulaFit(std::move(links), std::move(rule));
}

std::vector<int>
first_columns(const UniformMatrix& u, int k)
{
  require(k >= 1 && k <= u.cols(), ErrorCode::dimension, "k must satisfy 1 <= k <= d");
  std::vector<int> columns(k);
  for (int j = 0; j < k; ++j)
    columns[j] = j;
  return columns;
}

} // namespace

FactorCopulaFit
fit_factor(const UniformMatrix& u, std::span<const int> columns, const FactorFitOptions& options)
{
  require(!columns.empty() && static_cast<int>(columns.size()) <= u.cols(), ErrorCode::dimension,
          "k must satisfy 1 <= k <= d");
  ProxyResult proxy = compute_proxy(u, options.proxy);
  FactorCopulaFit fit = link_columns(u, columns, proxy.v_hat, options);
  fit.set_proxy(std::move(proxy));
  return fit;
}

FactorCopulaFit
fit_factor(const UniformMatrix& u, int k, const FactorFitOptions& options)
{
  auto columns = first_columns(u, k);
  return fit_factor(u, std::span<const int>(columns), options);
}

FactorCopulaFit
fit_factor_with_latent(const UniformMatrix& u, int k, std::span<const double> latent, const FactorFitOptions& options)
{
  require(static_cast<int>(latent.size()) == u.rows(), ErrorCode::dimension, "latent column has wrong length");
  auto columns = first_columns(u, k);
  return link_columns(u, columns, latent, options);
}

double
eval_factor(const FactorCopulaFit& fit, std::span<const double> u)
{
  return fit.density(u);
}

NaiveKdeFit::NaiveKdeFit(const Eigen::MatrixXd& u_sub, const NaiveOptions& options)
  : points_(u_sub.transpose())
  , options_(options)
{
  const auto n = u_sub.rows();
  const auto k = u_sub.cols();
  require(k >= 1, ErrorCode::dimension, "naive estimator needs at least one column");
  require(n >= k + 1, ErrorCode::dimension, "naive estimator needs n >= K + 1");

  if (options.bandwidths) {
    require(static_cast<Eigen::Index>(options.bandwidths->size()) == k, ErrorCode::dimension,
            "one bandwidth per column is required");
    bandwidths_ = *options.bandwidths;
    for (double b : bandwidths_)
      require(b > 0.0 && std::isfinite(b), ErrorCode::parameter, "naive bandwidths must be positive");
    return;
  }

  double kd = static_cast<double>(k);
  double factor = std::pow(4.0 / (kd + 2.0), 1.0 / (kd + 4.0)) * std::pow(static_cast<double>(n), -1.0 / (kd + 4.0));
  if (options.kernel_equivalent)
    factor *= gaussian_equivalent_factor(options.kernel);
  bandwidths_.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    std::span<const double> col(u_sub.col(j).data(), static_cast<std::size_t>(n));
    try {
      bandwidths_[j] = robust_scale(col) * factor;
    } catch (const Error& e) {
      fail(e.code(), "naive estimator column " + std::to_string(j + 1) + ": " + e.what());
    }
  }
}

double
NaiveKdeFit::density(std::span<const double> u) const
{
  const auto k = points_.rows();
  require(static_cast<Eigen::Index>(u.size()) == k, ErrorCode::dimension, "evaluation point has wrong dimension");
  std::vector<double> x(k);
  double norm = 1.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    x[j] = options_.clip.clamp(u[j]);
    norm *= bandwidths_[j];
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < points_.cols(); ++i) {
    double term = 1.0;
    for (Eigen::Index j = 0; j < k && term != 0.0; ++j)
      term *= kernel_eval(options_.kernel, (x[j] - points_(j, i)) / bandwidths_[j]);
    sum += term;
  }
  return sum / (norm * static_cast<double>(points_.cols()));
}

NaiveKdeFit
fit_naive(const Eigen::MatrixXd& u_sub, const NaiveOptions& options)
{
  return NaiveKdeFit(u_sub, options);
}

double
eval_naive(const NaiveKdeFit& fit, std::span<const double> u)
{
  return fit.density(u);
}

} // namespace factorcop
