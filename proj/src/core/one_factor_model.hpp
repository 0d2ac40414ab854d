#pragma once

#include "core/copula_family.hpp"
#include "core/quadrature.hpp"
#include "core/rng.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace factorcop {

//! Observed variables U_1..U_d, conditionally independent given a latent
//! uniform V0, with link j joining (U_j, V0).
class OneFactorModel
{
public:
  explicit OneFactorModel(std::vector<CopulaFamily> links);

  //! d identical links.
  static OneFactorModel homogeneous(const CopulaFamily& link, int d);

  int d() const { return static_cast<int>(links_.size()); }
  const CopulaFamily& link(int j) const { return links_.at(j); }
  const std::vector<CopulaFamily>& links() const { return links_; }

private:
  std::vector<CopulaFamily> links_;
};

struct FactorSample
{
  Eigen::MatrixXd u; // n x d
  Eigen::VectorXd latent;
};

//! Conditional inversion: V0 ~ U(0,1), then U_j = h^-1(W_j | V0) with
//! independent W_j. Row i consumes one draw for V0 then d draws for W.
FactorSample sample_one_factor(const OneFactorModel& model, int n, std::uint64_t seed);
FactorSample sample_one_factor(const OneFactorModel& model, int n, Rng& rng);

//! Integral over v of prod_j c_j(u_j, v) for the first u.size() links.
double true_factor_density(const OneFactorModel& model, std::span<const double> u, const QuadratureRule& quad);

//! n-node rule suited to the model's integrand: endpoint-graded when any link
//! has a density with logarithmic or fractional-power behaviour at v = 0 or 1
//! (Gumbel, Clayton with non-integer theta), plain Gauss-Legendre otherwise.
QuadratureRule oracle_rule(const OneFactorModel& model, int n);

} // namespace factorcop
