#pragma once

#include <span>

namespace factorcop {

enum class KernelKind
{
  quartic
};

struct KernelSpec
{
  KernelKind kind = KernelKind::quartic;

  double support() const { return 1.0; }
};

double kernel_eval(const KernelSpec& spec, double s);

//! J(x) = integral of K from -inf to x.
double integrated_kernel(const KernelSpec& spec, double x);

//! Canonical bandwidth of the kernel divided by that of the Gaussian kernel.
//! Multiplying a Gaussian-reference bandwidth by this factor gives the
//! equivalent amount of smoothing for `spec`.
double gaussian_equivalent_factor(const KernelSpec& spec);

//! Lower-triangular [[b1, 0], [b3, b2]].
struct BandwidthMatrix
{
  double b1 = 1.0;
  double b2 = 1.0;
  double b3 = 0.0;

  static BandwidthMatrix isotropic(double b) { return { b, b, 0.0 }; }

  double det() const { return b1 * b2; }
  bool positive_definite() const { return b1 > 0.0 && b2 > 0.0; }
};

//! K_B(s) = K(t1) K(t2) / det(B) with t = B^-1 s.
double product_kernel_2d(const KernelSpec& spec, const BandwidthMatrix& bw, double s1, double s2);

//! min(sample standard deviation, IQR / 1.349). If the IQR is zero but the
//! data are not constant the standard deviation is used.
double robust_scale(std::span<const double> data);

constexpr double kCdfBandwidthConst = 1.587;
constexpr double kDensityBandwidthConst = 1.25;

//! c * sigma * n^(-1/3) for kernel CDF smoothing.
double bandwidth_cdf(std::span<const double> data, double c = kCdfBandwidthConst);

//! b * I with b = c * mean(sigma_1, sigma_2) * n^(-1/6) for the normal-score
//! pair (z1, z2).
BandwidthMatrix bandwidth_copula(std::span<const double> z1, std::span<const double> z2,
                                 double c = kDensityBandwidthConst);

} // namespace factorcop
