#include "core/metrics.hpp"

#include "core/errors.hpp"
#include "core/ranks.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>

namespace factorcop {

ReplicationErrors
replication_errors(std::span<const double> est, std::span<const double> truth)
{
  require(est.size() == truth.size(), ErrorCode::dimension, "estimate and reference lengths differ");
  require(!est.empty(), ErrorCode::dimension, "error metrics need at least one point");
  double sq = 0.0, abs = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    double e = est[i] - truth[i];
    sq += e * e;
    abs += std::abs(e);
    sum += e;
  }
  double m = static_cast<double>(est.size());
  return { std::sqrt(sq / m), abs / m, sum / m };
}

ErrorSummary
aggregate(std::span<const ReplicationErrors> reps)
{
  ErrorSummary out;
  out.reps = static_cast<int>(reps.size());
  if (reps.empty())
    return out;
  for (const auto& r : reps) {
    out.rmse += r.rmse;
    out.mae += r.mae;
    out.bias += r.mean_err;
  }
  double count = static_cast<double>(reps.size());
  out.rmse /= count;
  out.mae /= count;
  out.bias /= count;
  if (reps.size() < 2) {
    out.sd_undefined = true;
    return out;
  }
  double ss = 0.0;
  for (const auto& r : reps)
    ss += (r.mean_err - out.bias) * (r.mean_err - out.bias);
  out.sd = std::sqrt(ss / (count - 1.0));
  return out;
}

double
rmsd(std::span<const double> est, std::span<const double> ref)
{
  return replication_errors(est, ref).rmse;
}

Eigen::MatrixXd
spearman_matrix(const Eigen::MatrixXd& x)
{
  const auto n = x.rows();
  const auto d = x.cols();
  require(n >= 2, ErrorCode::dimension, "rank correlation needs n >= 2");
  Eigen::MatrixXd r(n, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    auto rank = average_ranks(std::span<const double>(x.col(j).data(), static_cast<std::size_t>(n)));
    double mean = 0.5 * (n + 1.0);
    double ss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      r(i, j) = rank[i] - mean;
      ss += r(i, j) * r(i, j);
    }
    require(ss > 0.0, ErrorCode::degenerate_data, "column " + std::to_string(j + 1) + " is constant");
    r.col(j) /= std::sqrt(ss);
  }
  Eigen::MatrixXd corr = r.transpose() * r;
  corr.diagonal().setOnes();
  return corr;
}

std::vector<double>
scree_eigenvalues(const Eigen::MatrixXd& x)
{
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(spearman_matrix(x), Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorCode::convergence, "eigen-decomposition failed");
  std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

std::vector<double>
scree_eigenvalues(const UniformMatrix& u)
{
  return scree_eigenvalues(u.values());
}

} // namespace factorcop
