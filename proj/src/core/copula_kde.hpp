#pragma once

#include "core/kernel.hpp"
#include "core/quadrature.hpp"

#include <optional>
#include <span>
#include <vector>

namespace factorcop {

//! Square [lo, hi]^2 that evaluation arguments are clamped into.
struct ClipRegion
{
  double lo = 0.001;
  double hi = 0.999;

  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
};

struct PairFitOptions
{
  KernelSpec kernel;
  double density_const = kDensityBandwidthConst;
  double k0_cap = 200.0;
  ClipRegion clip;
  //! Skips the bandwidth rule when set.
  std::optional<BandwidthMatrix> bandwidth;
};

//! Latent-variable nodes prepared once for repeated profile evaluation.
//! z must be ascending.
struct LatentGrid
{
  std::vector<double> v;
  std::vector<double> z;
  std::vector<double> pdf;

  static LatentGrid from_points(std::span<const double> v_points, const ClipRegion& clip);
};

//! Transformation kernel estimator of a bivariate copula density: a product
//! kernel density estimate on the normal scores of (u, v), divided by the
//! normal densities and capped at K0.
class BivariateCopulaFit
{
public:
  BivariateCopulaFit(std::span<const double> u_col, std::span<const double> v_col, const PairFitOptions& options = {});

  double density(double u, double v) const;

  //! density(u, v_m) for every node of `grid`, written to `out`. Agrees with
  //! density() up to rounding but only visits kernel windows that overlap.
  void latent_profile(double u, const LatentGrid& grid, std::span<double> out) const;

  //! Integral of the density over the clip region, computed as the integral
  //! of the normal-score kernel estimate over the image of the clip square
  //! with `quad` on each axis. The K0 cap is applied pointwise.
  double integrate(const QuadratureRule& quad) const;

  std::size_t size() const { return z1_.size(); }
  const BandwidthMatrix& bandwidth() const { return bw_; }
  const ClipRegion& clip() const { return options_.clip; }
  double cap() const { return options_.k0_cap; }
  std::span<const double> z1() const { return z1_; }
  std::span<const double> z2() const { return z2_; }

private:
  double score_density(double zu, double zv) const;

  PairFitOptions options_;
  BandwidthMatrix bw_;
  std::vector<double> z1_;
  std::vector<double> z2_;
  // data points reordered by z1 for windowed profile evaluation
  std::vector<double> z1_sorted_;
  std::vector<double> z2_by_z1_;
};

BivariateCopulaFit fit_pair(std::span<const double> u_col, std::span<const double> v_col,
                            const PairFitOptions& options = {});

double eval_density(const BivariateCopulaFit& fit, double u, double v);

double integrate_density(const BivariateCopulaFit& fit, const QuadratureRule& quad);

} // namespace factorcop
