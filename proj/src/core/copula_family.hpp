#pragma once

#include <string>
#include <string_view>

namespace factorcop {

enum class Family
{
  independence,
  gumbel,
  clayton
};

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

//! Parametric bivariate copula used as a linking copula between an observed
//! variable (first argument) and the latent factor (second argument).
//!
//! All evaluations require arguments strictly inside (0, 1) and throw
//! ErrorCode::domain otherwise. The parameter is validated on construction:
//! Gumbel needs theta >= 1, Clayton theta > 0.
class CopulaFamily
{
public:
  CopulaFamily() = default;
  CopulaFamily(Family family, double theta);

  static CopulaFamily independence() { return {}; }
  static CopulaFamily gumbel(double theta) { return { Family::gumbel, theta }; }
  static CopulaFamily clayton(double theta) { return { Family::clayton, theta }; }

  Family family() const { return family_; }
  double theta() const { return theta_; }

  double cdf(double u, double v) const;
  double density(double u, double v) const;

  //! Conditional distribution h(u | v) = dC(u, v)/dv.
  double h_function(double u, double v) const;

  //! Solves h_function(u, v) = w for u. Clayton is closed form; Gumbel is
  //! bisected on [1e-12, 1 - 1e-12] to a residual of 1e-10.
  double h_inverse(double w, double v) const;

  double kendall_tau() const;

  //! True for families whose density is stochastically increasing in the
  //! latent argument (every supported family; independence trivially).
  bool stochastically_increasing() const { return true; }

  std::string describe() const;

private:
  Family family_ = Family::independence;
  double theta_ = 0.0;
};

} // namespace factorcop
