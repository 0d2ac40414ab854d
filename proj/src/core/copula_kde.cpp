#include "core/copula_kde.hpp"

#include "core/errors.hpp"
#include "core/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace factorcop {

LatentGrid
LatentGrid::from_points(std::span<const double> v_points, const ClipRegion& clip)
{
  LatentGrid grid;
  grid.v.assign(v_points.begin(), v_points.end());
  grid.z.reserve(v_points.size());
  grid.pdf.reserve(v_points.size());
  for (double v : v_points) {
    double z = normal_quantile(clip.clamp(v));
    grid.z.push_back(z);
    grid.pdf.push_back(normal_pdf(z));
  }
  require(std::is_sorted(grid.z.begin(), grid.z.end()), ErrorCode::parameter, "latent grid must be ascending");
  return grid;
}

BivariateCopulaFit::BivariateCopulaFit(std::span<const double> u_col, std::span<const double> v_col,
                                       const PairFitOptions& options)
  : options_(options)
{
  require(u_col.size() == v_col.size(), ErrorCode::dimension, "pair fit: column lengths differ");
  require(u_col.size() >= 4, ErrorCode::degenerate_data, "pair fit needs n >= 4");
  require(options.k0_cap > 0.0, ErrorCode::parameter, "density cap must be positive");
  require(options.clip.lo > 0.0 && options.clip.lo < options.clip.hi && options.clip.hi < 1.0, ErrorCode::parameter,
          "clip region must satisfy 0 < lo < hi < 1");

  const std::size_t n = u_col.size();
  z1_.resize(n);
  z2_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(u_col[i] > 0.0 && u_col[i] < 1.0 && v_col[i] > 0.0 && v_col[i] < 1.0, ErrorCode::domain,
            "pair fit: data must lie inside (0, 1)");
    z1_[i] = normal_quantile(u_col[i]);
    z2_[i] = normal_quantile(v_col[i]);
  }
  bw_ = options.bandwidth ? *options.bandwidth : bandwidth_copula(z1_, z2_, options.density_const);
  require(bw_.positive_definite(), ErrorCode::singular_matrix, "bandwidth matrix is not positive definite");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{ 0 });
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z1_[a] < z1_[b]; });
  z1_sorted_.resize(n);
  z2_by_z1_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    z1_sorted_[r] = z1_[order[r]];
    z2_by_z1_[r] = z2_[order[r]];
  }
}

double
BivariateCopulaFit::score_density(double zu, double zv) const
{
  const KernelSpec& k = options_.kernel;
  double sum = 0.0;
  for (std::size_t i = 0; i < z1_.size(); ++i) {
    double t1 = (zu - z1_[i]) / bw_.b1;
    double k1 = kernel_eval(k, t1);
    if (k1 == 0.0)
      continue;
    double t2 = (zv - z2_[i] - bw_.b3 * t1) / bw_.b2;
    sum += k1 * kernel_eval(k, t2);
  }
  return sum / (bw_.det() * static_cast<double>(z1_.size()));
}

double
BivariateCopulaFit::density(double u, double v) const
{
  double zu = normal_quantile(options_.clip.clamp(u));
  double zv = normal_quantile(options_.clip.clamp(v));
  double c = score_density(zu, zv) / (normal_pdf(zu) * normal_pdf(zv));
  return std::min(c, options_.k0_cap);
}

void
BivariateCopulaFit::latent_profile(double u, const LatentGrid& grid, std::span<double> out) const
{
  require(out.size() == grid.z.size(), ErrorCode::dimension, "latent profile: output size mismatch");
  const KernelSpec& k = options_.kernel;
  const double reach = k.support();
  double zu = normal_quantile(options_.clip.clamp(u));
  std::fill(out.begin(), out.end(), 0.0);

  auto first = std::upper_bound(z1_sorted_.begin(), z1_sorted_.end(), zu - reach * bw_.b1);
  auto last = std::lower_bound(first, z1_sorted_.end(), zu + reach * bw_.b1);
  for (auto it = first; it != last; ++it) {
    std::size_t r = static_cast<std::size_t>(it - z1_sorted_.begin());
    double t1 = (zu - *it) / bw_.b1;
    double k1 = kernel_eval(k, t1);
    if (k1 == 0.0)
      continue;
    double centre = z2_by_z1_[r] + bw_.b3 * t1;
    auto lo = std::upper_bound(grid.z.begin(), grid.z.end(), centre - reach * bw_.b2);
    auto hi = std::lower_bound(lo, grid.z.end(), centre + reach * bw_.b2);
    for (auto node = lo; node != hi; ++node) {
      auto m = static_cast<std::size_t>(node - grid.z.begin());
      out[m] += k1 * kernel_eval(k, (*node - centre) / bw_.b2);
    }
  }

  double scale = 1.0 / (bw_.det() * static_cast<double>(z1_.size()) * normal_pdf(zu));
  for (std::size_t m = 0; m < out.size(); ++m)
    out[m] = std::min(out[m] * scale / grid.pdf[m], options_.k0_cap);
}

double
BivariateCopulaFit::integrate(const QuadratureRule& quad) const
{
  double a = normal_quantile(options_.clip.lo);
  double b = normal_quantile(options_.clip.hi);
  double len = b - a;
  double sum = 0.0;
  for (std::size_t p = 0; p < quad.size(); ++p) {
    double x = a + len * quad.points[p];
    double px = normal_pdf(x);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      double y = a + len * quad.points[q];
      double py = normal_pdf(y);
      double f = std::min(score_density(x, y), options_.k0_cap * px * py);
      sum += quad.weights[p] * quad.weights[q] * f;
    }
  }
  return sum * len * len;
}

BivariateCopulaFit
fit_pair(std::span<const double> u_col, std::span<const double> v_col, const PairFitOptions& options)
{
  return BivariateCopulaFit(u_col, v_col, options);
}

double
eval_density(const BivariateCopulaFit& fit, double u, double v)
{
  return fit.density(u, v);
}

double
integrate_density(const BivariateCopulaFit& fit, const QuadratureRule& quad)
{
  return fit.integrate(quad);
}

} // namespace factorcop
