#include "core/marginal.hpp"

#include "core/errors.hpp"
#include "core/normal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace factorcop {

UniformMatrix::UniformMatrix(Eigen::MatrixXd values)
  : values_(std::move(values))
{
  for (Eigen::Index j = 0; j < values_.cols(); ++j)
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      double& x = values_(i, j);
      require(!std::isnan(x), ErrorCode::domain, "uniform matrix contains NaN");
      x = std::clamp(x, kUniformClampLo, kUniformClampHi);
    }
}

UniformMatrix
UniformMatrix::validated(Eigen::MatrixXd values)
{
  for (Eigen::Index j = 0; j < values.cols(); ++j)
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      double x = values(i, j);
      if (!(x > 0.0 && x < 1.0)) {
        std::ostringstream msg;
        msg << "entry (" << i + 1 << ", " << j + 1 << ") = " << x << " is not inside (0, 1)";
        fail(ErrorCode::domain, msg.str());
      }
    }
  return UniformMatrix(std::move(values));
}

MarginalFit::MarginalFit(std::span<const double> data, double bandwidth, KernelSpec kernel)
  : sorted_(data.begin(), data.end())
  , bandwidth_(bandwidth)
  , kernel_(kernel)
{
  require(!sorted_.empty(), ErrorCode::degenerate_data, "marginal fit needs data");
  require(bandwidth > 0.0 && std::isfinite(bandwidth), ErrorCode::parameter, "bandwidth must be positive");
  std::sort(sorted_.begin(), sorted_.end());
}

double
MarginalFit::cdf(double x) const
{
  double reach = bandwidth_ * kernel_.support();
  // X_i <= x - reach contribute 1, X_i >= x + reach contribute 0
  auto first = std::upper_bound(sorted_.begin(), sorted_.end(), x - reach);
  auto last = std::lower_bound(first, sorted_.end(), x + reach);
  double sum = static_cast<double>(first - sorted_.begin());
  for (auto it = first; it != last; ++it)
    sum += integrated_kernel(kernel_, (x - *it) / bandwidth_);
  return std::clamp(sum / sorted_.size(), 0.0, 1.0);
}

MarginalFit
fit_marginal(std::span<const double> data, KernelSpec kernel, double cdf_const)
{
  return MarginalFit(data, bandwidth_cdf(data, cdf_const), kernel);
}

double
eval_cdf(const MarginalFit& fit, double x)
{
  return fit.cdf(x);
}

UniformMatrix
pseudo_observations(const Eigen::MatrixXd& raw, KernelSpec kernel, double cdf_const)
{
  const auto n = raw.rows();
  Eigen::MatrixXd out(n, raw.cols());
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    std::span<const double> col(raw.col(j).data(), static_cast<std::size_t>(n));
    MarginalFit fit = [&] {
      try {
        return fit_marginal(col, kernel, cdf_const);
      } catch (const Error& e) {
        fail(e.code(), "column " + std::to_string(j + 1) + ": " + e.what());
      }
    }();
    for (Eigen::Index i = 0; i < n; ++i)
      out(i, j) = fit.cdf(raw(i, j));
  }
  return UniformMatrix(std::move(out));
}

Eigen::MatrixXd
normal_scores(const UniformMatrix& u)
{
  return u.values().unaryExpr([](double p) { return normal_quantile(p); });
}

} // namespace factorcop
