#pragma once

#include "core/kernel.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace factorcop {

constexpr double kUniformClampLo = 1e-6;
constexpr double kUniformClampHi = 1.0 - 1e-6;

//! n x d matrix of copula-scale observations, entries clamped into
//! [1e-6, 1 - 1e-6] so normal scores stay finite.
class UniformMatrix
{
public:
  UniformMatrix() = default;

  //! Clamps every entry; NaN entries are rejected.
  explicit UniformMatrix(Eigen::MatrixXd values);

  //! Rejects entries outside the open interval (0, 1), then clamps.
  static UniformMatrix validated(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  int rows() const { return static_cast<int>(values_.rows()); }
  int cols() const { return static_cast<int>(values_.cols()); }
  double operator()(int i, int j) const { return values_(i, j); }

  std::span<const double> column(int j) const
  {
    return { values_.col(j).data(), static_cast<std::size_t>(values_.rows()) };
  }

private:
  Eigen::MatrixXd values_;
};

//! Kernel-smoothed marginal CDF F(x) = (1/n) sum_i J((x - X_i) / b).
class MarginalFit
{
public:
  MarginalFit(std::span<const double> data, double bandwidth, KernelSpec kernel = {});

  double bandwidth() const { return bandwidth_; }
  const KernelSpec& kernel() const { return kernel_; }
  std::size_t size() const { return sorted_.size(); }

  double cdf(double x) const;

private:
  std::vector<double> sorted_;
  double bandwidth_;
  KernelSpec kernel_;
};

MarginalFit fit_marginal(std::span<const double> data, KernelSpec kernel = {}, double cdf_const = kCdfBandwidthConst);

double eval_cdf(const MarginalFit& fit, double x);

//! Column-wise F_j(X_ij).
UniformMatrix pseudo_observations(const Eigen::MatrixXd& raw, KernelSpec kernel = {},
                                  double cdf_const = kCdfBandwidthConst);

//! Entrywise Phi^-1.
Eigen::MatrixXd normal_scores(const UniformMatrix& u);

} // namespace factorcop
