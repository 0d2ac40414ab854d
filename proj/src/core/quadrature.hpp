#pragma once

#include <cstddef>
#include <vector>

namespace factorcop {

enum class QuadratureKind
{
  gauss_legendre,
  graded_gauss_legendre,
  latent_normal
};

//! Nodes and weights for integrals over v in [0, 1]. Weights are positive
//! and sum to 1 up to rounding.
struct QuadratureRule
{
  QuadratureKind kind = QuadratureKind::gauss_legendre;
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }

  template<typename F>
  double integrate(F&& f) const
  {
    double sum = 0.0;
    for (std::size_t m = 0; m < points.size(); ++m)
      sum += weights[m] * f(points[m]);
    return sum;
  }
};

//! n-point Gauss-Legendre rule mapped to [0, 1].
QuadratureRule gauss_legendre(int n);

//! Gauss-Legendre after the substitution v = t^3 (10 - 15 t + 6 t^2). The
//! Jacobian vanishes to second order at both ends, which restores fast
//! convergence for integrands with logarithmic endpoint behaviour.
QuadratureRule graded_gauss_legendre(int n);

//! Composite Gauss-Legendre in the normal-score variable w = Phi^-1(v) over
//! [Phi^-1(lo), Phi^-1(hi)], mapped back to v. Two extra nodes at v = lo and
//! v = hi carry the tail masses lo and 1 - hi, which is exact for integrands
//! that are constant beyond the clip bounds.
QuadratureRule latent_normal_rule(double panel_width, int nodes_per_panel, double lo, double hi);

//! Raw Gauss-Legendre nodes and weights on [-1, 1], ascending.
void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w);

} // namespace factorcop
