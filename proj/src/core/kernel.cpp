#include "core/kernel.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace factorcop {

double
kernel_eval(const KernelSpec&, double s)
{
  if (!(std::abs(s) < 1.0))
    return 0.0;
  double t = 1.0 - s * s;
  return 0.9375 * t * t;
}

double
integrated_kernel(const KernelSpec&, double x)
{
  if (x <= -1.0)
    return 0.0;
  if (x >= 1.0)
    return 1.0;
  double x2 = x * x;
  return 0.5 + 0.9375 * x * (1.0 - x2 * (2.0 / 3.0 - x2 / 5.0));
}

double
gaussian_equivalent_factor(const KernelSpec&)
{
  // delta_K = (R(K) / mu2(K)^2)^(1/5); quartic: R = 5/7, mu2 = 1/7
  double quartic = std::pow(35.0, 0.2);
  double gauss = std::pow(0.5 * std::numbers::inv_sqrtpi, 0.2);
  return quartic / gauss;
}

double
product_kernel_2d(const KernelSpec& spec, const BandwidthMatrix& bw, double s1, double s2)
{
  require(bw.positive_definite(), ErrorCode::singular_matrix, "bandwidth matrix is not positive definite");
  double t1 = s1 / bw.b1;
  double t2 = (s2 - bw.b3 * t1) / bw.b2;
  return kernel_eval(spec, t1) * kernel_eval(spec, t2) / bw.det();
}

namespace {

// Linear interpolation between order statistics (the common "type 7" rule).
double
quantile_sorted(const std::vector<double>& sorted, double p)
{
  double pos = p * (sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

} // namespace

double
robust_scale(std::span<const double> data)
{
  require(data.size() >= 2, ErrorCode::degenerate_data, "scale estimate needs at least two observations");
  // sums run over sorted values so the result ignores the input order
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  double mean = 0.0;
  for (double x : sorted)
    mean += x;
  mean /= sorted.size();
  double ss = 0.0;
  for (double x : sorted)
    ss += (x - mean) * (x - mean);
  double sd = std::sqrt(ss / (sorted.size() - 1));
  double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double scale = iqr > 0.0 ? std::min(sd, iqr / 1.349) : sd;
  require(scale > 0.0 && std::isfinite(scale), ErrorCode::degenerate_data, "data have zero spread");
  return scale;
}

double
bandwidth_cdf(std::span<const double> data, double c)
{
  require(c > 0.0, ErrorCode::parameter, "bandwidth constant must be positive");
  return c * robust_scale(data) * std::pow(static_cast<double>(data.size()), -1.0 / 3.0);
}

BandwidthMatrix
bandwidth_copula(std::span<const double> z1, std::span<const double> z2, double c)
{
  require(z1.size() == z2.size(), ErrorCode::dimension, "bandwidth_copula: column lengths differ");
  require(z1.size() >= 4, ErrorCode::degenerate_data, "bandwidth_copula needs n >= 4");
  require(c > 0.0, ErrorCode::parameter, "bandwidth constant must be positive");
  double sigma = 0.5 * (robust_scale(z1) + robust_scale(z2));
  return BandwidthMatrix::isotropic(c * sigma * std::pow(static_cast<double>(z1.size()), -1.0 / 6.0));
}

} // namespace factorcop
