#include "core/quadrature.hpp"

#include "core/errors.hpp"
#include "core/normal.hpp"

#include <cmath>
#include <numbers>

namespace factorcop {

void
legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w)
{
  require(n >= 1, ErrorCode::parameter, "quadrature needs at least one node");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16)
        break;
    }
    if (n == 1) {
      z = 0.0;
      dp = 1.0;
    }
    double wt = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = wt;
    w[n - 1 - i] = wt;
  }
}

QuadratureRule
gauss_legendre(int n)
{
  std::vector<double> x, w;
  legendre_nodes(n, x, w);
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_legendre;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = 0.5 * (x[i] + 1.0);
    rule.weights[i] = 0.5 * w[i];
  }
  return rule;
}

QuadratureRule
graded_gauss_legendre(int n)
{
  QuadratureRule rule = gauss_legendre(n);
  rule.kind = QuadratureKind::graded_gauss_legendre;
  for (int i = 0; i < n; ++i) {
    double t = rule.points[i];
    rule.points[i] = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    rule.weights[i] *= 30.0 * t * t * (1.0 - t) * (1.0 - t);
  }
  return rule;
}

QuadratureRule
latent_normal_rule(double panel_width, int nodes_per_panel, double lo, double hi)
{
  require(panel_width > 0.0 && std::isfinite(panel_width), ErrorCode::parameter, "panel width must be positive");
  require(lo > 0.0 && lo < hi && hi < 1.0, ErrorCode::parameter, "latent rule bounds must satisfy 0 < lo < hi < 1");

  std::vector<double> x, w;
  legendre_nodes(nodes_per_panel, x, w);
  double a = normal_quantile(lo);
  double b = normal_quantile(hi);
  auto panels = static_cast<int>(std::ceil((b - a) / panel_width));
  require(panels <= 1'000'000, ErrorCode::parameter, "latent rule would need more than 1e6 panels");
  double h = (b - a) / panels;

  QuadratureRule rule;
  rule.kind = QuadratureKind::latent_normal;
  rule.points.reserve(panels * nodes_per_panel + 2);
  rule.weights.reserve(panels * nodes_per_panel + 2);
  rule.points.push_back(lo);
  rule.weights.push_back(lo);
  for (int p = 0; p < panels; ++p) {
    double left = a + p * h;
    for (int i = 0; i < nodes_per_panel; ++i) {
      double z = left + 0.5 * h * (x[i] + 1.0);
      rule.points.push_back(normal_cdf(z));
      rule.weights.push_back(0.5 * h * w[i] * normal_pdf(z));
    }
  }
  rule.points.push_back(hi);
  rule.weights.push_back(1.0 - hi);
  return rule;
}

} // namespace factorcop
