#pragma once

#include "core/copula_kde.hpp"
#include "core/marginal.hpp"
#include "core/proxy.hpp"
#include "core/quadrature.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

namespace factorcop {

struct FactorFitOptions
{
  PairFitOptions pair;
  ProxyOptions proxy;
  //! Gauss-Legendre nodes in each panel of the latent rule.
  int nodes_per_panel = 4;
  //! Latent panels per (smallest) link bandwidth in normal-score units.
  double panels_per_bandwidth = 8.0;
};

//! Latent rule matched to the kernel width of `links`; see latent_normal_rule.
QuadratureRule latent_rule_for(std::span<const BivariateCopulaFit> links, const FactorFitOptions& options);

//! K-dimensional one-factor copula density estimate: the integral over the
//! latent variable of the product of fitted linking densities.
class FactorCopulaFit
{
public:
  FactorCopulaFit(std::vector<BivariateCopulaFit> links, QuadratureRule rule);

  double density(std::span<const double> u) const;

  int k() const { return static_cast<int>(links_.size()); }
  const BivariateCopulaFit& link(int j) const { return links_.at(j); }
  const QuadratureRule& rule() const { return rule_; }
  const LatentGrid& grid() const { return grid_; }

  //! Set when the fit was built from data through the proxy.
  const std::optional<ProxyResult>& proxy() const { return proxy_; }
  void set_proxy(ProxyResult proxy) { proxy_ = std::move(proxy); }

private:
  std::vector<BivariateCopulaFit> links_;
  QuadratureRule rule_;
  LatentGrid grid_;
  std::optional<ProxyResult> proxy_;
};

//! Proxy from all d columns of u, then link j = fit_pair(column j, v_hat)
//! for j = 1..k.
FactorCopulaFit fit_factor(const UniformMatrix& u, int k, const FactorFitOptions& options = {});

//! Same, linking the listed columns (0-based) in the given order.
FactorCopulaFit fit_factor(const UniformMatrix& u, std::span<const int> columns, const FactorFitOptions& options = {});

//! Links the first k columns against a supplied latent column instead of the
//! proxy (e.g. the true V0).
FactorCopulaFit fit_factor_with_latent(const UniformMatrix& u, int k, std::span<const double> latent,
                                       const FactorFitOptions& options = {});

double eval_factor(const FactorCopulaFit& fit, std::span<const double> u);

struct NaiveOptions
{
  KernelSpec kernel;
  ClipRegion clip;
  //! Convert the Gaussian-reference rule to the kernel in use.
  bool kernel_equivalent = true;
  //! Skips the bandwidth rule when set (one entry per column).
  std::optional<std::vector<double>> bandwidths;
};

//! Product-kernel density estimate directly on the copula scale.
class NaiveKdeFit
{
public:
  NaiveKdeFit(const Eigen::MatrixXd& u_sub, const NaiveOptions& options = {});

  double density(std::span<const double> u) const;

  int k() const { return static_cast<int>(points_.rows()); }
  const std::vector<double>& bandwidths() const { return bandwidths_; }

private:
  Eigen::MatrixXd points_; // K x n, one observation per column
  std::vector<double> bandwidths_;
  NaiveOptions options_;
};

NaiveKdeFit fit_naive(const Eigen::MatrixXd& u_sub, const NaiveOptions& options = {});

double eval_naive(const NaiveKdeFit& fit, std::span<const double> u);

} // namespace factorcop
