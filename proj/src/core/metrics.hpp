#pragma once

#include "core/marginal.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace factorcop {

struct ReplicationErrors
{
  double rmse = 0.0;
  double mae = 0.0;
  double mean_err = 0.0;
};

//! Errors e_i = est_i - true_i summarised as RMSE, MAE and mean.
ReplicationErrors replication_errors(std::span<const double> est, std::span<const double> truth);

struct ErrorSummary
{
  double rmse = 0.0; // mean of per-replication RMSE
  double mae = 0.0;  // mean of per-replication MAE
  double sd = 0.0;   // sample SD of per-replication mean error
  double bias = 0.0; // mean of per-replication mean error
  int reps = 0;
  //! Fewer than two replications: sd is reported as 0.
  bool sd_undefined = false;
};

ErrorSummary aggregate(std::span<const ReplicationErrors> reps);

double rmsd(std::span<const double> est, std::span<const double> ref);

//! Spearman correlation matrix (average ranks, then Pearson).
Eigen::MatrixXd spearman_matrix(const Eigen::MatrixXd& x);

//! Eigenvalues of the Spearman matrix, descending.
std::vector<double> scree_eigenvalues(const Eigen::MatrixXd& x);
std::vector<double> scree_eigenvalues(const UniformMatrix& u);

} // namespace factorcop
