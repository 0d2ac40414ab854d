#include "core/one_factor_model.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>

namespace factorcop {

OneFactorModel::OneFactorModel(std::vector<CopulaFamily> links)
  : links_(std::move(links))
{
  require(links_.size() >= 2, ErrorCode::dimension, "a one-factor model needs d >= 2 observed variables");
  for (const auto& link : links_)
    require(link.stochastically_increasing(), ErrorCode::parameter,
            "link " + link.describe() + " is not stochastically increasing");
}

OneFactorModel
OneFactorModel::homogeneous(const CopulaFamily& link, int d)
{
  require(d >= 2, ErrorCode::dimension, "a one-factor model needs d >= 2 observed variables");
  return OneFactorModel(std::vector<CopulaFamily>(d, link));
}

FactorSample
sample_one_factor(const OneFactorModel& model, int n, Rng& rng)
{
  require(n >= 1, ErrorCode::parameter, "sample size must be at least 1");
  const int d = model.d();
  FactorSample out{ Eigen::MatrixXd(n, d), Eigen::VectorXd(n) };
  for (int i = 0; i < n; ++i) {
    double v0 = rng.uniform();
    out.latent(i) = v0;
    for (int j = 0; j < d; ++j)
      out.u(i, j) = model.link(j).h_inverse(rng.uniform(), v0);
  }
  return out;
}

FactorSample
sample_one_factor(const OneFactorModel& model, int n, std::uint64_t seed)
{
  Rng rng(seed);
  return sample_one_factor(model, n, rng);
}

double
true_factor_density(const OneFactorModel& model, std::span<const double> u, const QuadratureRule& quad)
{
  require(!u.empty() && static_cast<int>(u.size()) <= model.d(), ErrorCode::dimension,
          "evaluation point must have between 1 and d coordinates");
  for (double x : u)
    require(x > 0.0 && x < 1.0, ErrorCode::domain, "evaluation point outside (0, 1)");

  // Factors are multiplied in sorted order so that permuting (link, argument)
  // pairs leaves the result bit-identical.
  std::vector<double> factors(u.size());
  double sum = 0.0;
  for (std::size_t m = 0; m < quad.size(); ++m) {
    double v = quad.points[m];
    if (!(v > 0.0 && v < 1.0))
      continue; // graded nodes can round onto the boundary; their weight is ~0
    for (std::size_t j = 0; j < u.size(); ++j)
      factors[j] = model.link(static_cast<int>(j)).density(u[j], v);
    std::sort(factors.begin(), factors.end());
    double prod = quad.weights[m];
    for (double f : factors)
      prod *= f;
    sum += prod;
  }
  return sum;
}

QuadratureRule
oracle_rule(const OneFactorModel& model, int n)
{
  for (const auto& link : model.links()) {
    if (link.family() == Family::gumbel && link.theta() != 1.0)
      return graded_gauss_legendre(n);
    if (link.family() == Family::clayton && link.theta() != std::round(link.theta()))
      return graded_gauss_legendre(n);
  }
  return gauss_legendre(n);
}

} // namespace factorcop
