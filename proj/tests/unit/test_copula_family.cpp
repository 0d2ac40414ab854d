#include "core/copula_family.hpp"
#include "core/errors.hpp"
#include "core/one_factor_model.hpp"
#include "core/quadrature.hpp"
#include "core/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace factorcop;

namespace {

// Closed-form CDFs written out independently of the library.
double
clayton_cdf(double u, double v, double t)
{
  return std::pow(std::pow(u, -t) + std::pow(v, -t) - 1.0, -1.0 / t);
}

double
gumbel_cdf(double u, double v, double t)
{
  return std::exp(-std::pow(std::pow(-std::log(u), t) + std::pow(-std::log(v), t), 1.0 / t));
}

template<class C>
double
fd_density(C cdf, double u, double v, double h = 1e-4)
{
  return (cdf(u + h, v + h) - cdf(u + h, v - h) - cdf(u - h, v + h) + cdf(u - h, v - h)) / (4 * h * h);
}

template<class C>
double
fd_h(C cdf, double u, double v, double h = 1e-4)
{
  return (cdf(u, v + h) - cdf(u, v - h)) / (2 * h);
}

double
kendall_tau_bruteforce(const Eigen::MatrixXd& u, int col, const Eigen::VectorXd& latent)
{
  const auto n = latent.size();
  long long concordant = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double s = (u(i, col) - u(j, col)) * (latent(i) - latent(j));
      concordant += s > 0 ? 1 : (s < 0 ? -1 : 0);
    }
  return 2.0 * concordant / (static_cast<double>(n) * (n - 1));
}

std::vector<CopulaFamily>
all_families()
{
  return { CopulaFamily::independence(), CopulaFamily::gumbel(1.4), CopulaFamily::gumbel(3.0),
           CopulaFamily::clayton(0.5), CopulaFamily::clayton(2.0), CopulaFamily::clayton(5.0) };
}

double
family_cdf(const CopulaFamily& f, double u, double v)
{
  switch (f.family()) {
    case Family::gumbel:
      return gumbel_cdf(u, v, f.theta());
    case Family::clayton:
      return clayton_cdf(u, v, f.theta());
    default:
      return u * v;
  }
}

} // namespace

TEST(CopulaFamily, GumbelThetaOneIsIndependence)
{
  EXPECT_DOUBLE_EQ(CopulaFamily::gumbel(1.0).density(0.5, 0.5), 1.0);
}

TEST(CopulaFamily, ClaytonDensityMatchesCdfSecondDifference)
{
  auto cdf = [](double u, double v) { return clayton_cdf(u, v, 2.0); };
  double value = CopulaFamily::clayton(2.0).density(0.5, 0.5);
  EXPECT_NEAR(value, fd_density(cdf, 0.5, 0.5), 1e-5);
  EXPECT_NEAR(value, 1.4810036493422781, 1e-12);
}

TEST(CopulaFamily, GumbelDensityMatchesCdfSecondDifference)
{
  auto cdf = [](double u, double v) { return gumbel_cdf(u, v, 1.4); };
  double value = CopulaFamily::gumbel(1.4).density(0.9, 0.9);
  EXPECT_NEAR(value, fd_density(cdf, 0.9, 0.9), 1e-5);
  EXPECT_NEAR(value, 2.3161970359790633, 1e-12);
}

TEST(CopulaFamily, HFunctionExamples)
{
  EXPECT_DOUBLE_EQ(CopulaFamily::independence().h_function(0.3, 0.7), 0.3);

  auto cdf = [](double u, double v) { return clayton_cdf(u, v, 2.0); };
  double value = CopulaFamily::clayton(2.0).h_function(0.5, 0.5);
  EXPECT_NEAR(value, fd_h(cdf, 0.5, 0.5), 1e-5);
  EXPECT_NEAR(value, 0.43195939772483112, 1e-12);

  for (const auto& f : all_families())
    for (double v : { 0.1, 0.5, 0.9 })
      EXPECT_NEAR(f.h_function(1.0 - 1e-12, v), 1.0, 1e-6) << f.describe();
}

TEST(CopulaFamily, HFunctionMatchesCdfDifferenceEverywhere)
{
  // Clayton(5) is left out: the step-1e-4 difference itself is off by ~2e-5
  // near v = 0.01 there.
  Rng rng(11);
  for (const auto& f : { CopulaFamily::independence(), CopulaFamily::gumbel(1.4), CopulaFamily::gumbel(3.0),
                         CopulaFamily::clayton(0.5), CopulaFamily::clayton(2.0) }) {
    auto cdf = [&](double u, double v) { return family_cdf(f, u, v); };
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double u = rng.uniform(0.01, 0.99);
      double v = rng.uniform(0.01, 0.99);
      worst = std::max(worst, std::abs(f.h_function(u, v) - fd_h(cdf, u, v)));
    }
    EXPECT_LT(worst, 1e-5) << f.describe();
  }
}

TEST(CopulaFamily, HFunctionIsNondecreasingInU)
{
  for (const auto& f : all_families())
    for (double v : { 0.02, 0.3, 0.7, 0.98 }) {
      double prev = 0.0;
      for (int i = 1; i < 1000; ++i) {
        double h = f.h_function(i / 1000.0, v);
        EXPECT_GE(h, prev) << f.describe();
        EXPECT_LE(h, 1.0);
        prev = h;
      }
    }
}

TEST(CopulaFamily, HInverse)
{
  EXPECT_DOUBLE_EQ(CopulaFamily::independence().h_inverse(0.42, 0.9), 0.42);

  // closed form against plain bisection on h
  auto clayton = CopulaFamily::clayton(2.0);
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (clayton.h_function(mid, 0.5) < 0.5 ? lo : hi) = mid;
  }
  double value = clayton.h_inverse(0.5, 0.5);
  EXPECT_NEAR(value, 0.5 * (lo + hi), 1e-12);
  EXPECT_NEAR(value, 0.54639064284288715, 1e-12);
}

TEST(CopulaFamily, HInverseRoundTrip)
{
  Rng rng(5);
  for (const auto& f : all_families()) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double w = rng.uniform();
      double v = rng.uniform();
      worst = std::max(worst, std::abs(f.h_function(f.h_inverse(w, v), v) - w));
    }
    EXPECT_LT(worst, 1e-9) << f.describe();
  }
}

TEST(CopulaFamily, DensityIntegratesToOne)
{
  QuadratureRule q = graded_gauss_legendre(50);
  for (const auto& f : { CopulaFamily::gumbel(1.4), CopulaFamily::clayton(2.0), CopulaFamily::independence() }) {
    double total = 0.0;
    for (std::size_t a = 0; a < q.size(); ++a)
      for (std::size_t b = 0; b < q.size(); ++b)
        total += q.weights[a] * q.weights[b] * f.density(q.points[a], q.points[b]);
    EXPECT_NEAR(total, 1.0, 1e-4) << f.describe();
  }
}

TEST(CopulaFamily, DensityNonNegative)
{
  Rng rng(3);
  for (const auto& f : all_families())
    for (int i = 0; i < 2000; ++i)
      EXPECT_GE(f.density(rng.uniform(), rng.uniform()), 0.0);
}

TEST(CopulaFamily, Errors)
{
  auto expect_code = [](auto&& call, ErrorCode code) {
    try {
      call();
      ADD_FAILURE() << "no exception";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code);
    }
  };
  expect_code([] { CopulaFamily::gumbel(0.9); }, ErrorCode::parameter);
  expect_code([] { CopulaFamily::clayton(0.0); }, ErrorCode::parameter);
  expect_code([] { CopulaFamily::clayton(2.0).density(0.0, 0.5); }, ErrorCode::domain);
  expect_code([] { CopulaFamily::gumbel(2.0).h_function(0.5, 1.0); }, ErrorCode::domain);
  expect_code([] { CopulaFamily::gumbel(2.0).h_inverse(1.5, 0.5); }, ErrorCode::domain);
  expect_code([] { parse_family("frank"); }, ErrorCode::parameter);
  EXPECT_EQ(parse_family("Gumbel"), Family::gumbel);
}

TEST(OneFactorModel, RejectsSingleVariable)
{
  EXPECT_THROW(OneFactorModel::homogeneous(CopulaFamily::gumbel(1.4), 1), Error);
}

TEST(Sampler, IndependenceLinksGiveIndependentUniforms)
{
  auto model = OneFactorModel::homogeneous(CopulaFamily::independence(), 3);
  auto s = sample_one_factor(model, 5000, 17);
  for (int j = 0; j < 3; ++j) {
    std::vector<double> col(s.u.col(j).data(), s.u.col(j).data() + 5000);
    std::sort(col.begin(), col.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < col.size(); ++i)
      ks = std::max({ ks, std::abs(col[i] - (i + 1.0) / col.size()), std::abs(col[i] - double(i) / col.size()) });
    EXPECT_LT(ks, 0.025); // ~1.36 / sqrt(n) at 5%
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      double r = (s.u.col(a).array() - 0.5).matrix().dot((s.u.col(b).array() - 0.5).matrix()) / 5000 * 12;
      EXPECT_LT(std::abs(r), 0.05);
    }
}

TEST(Sampler, KendallTauMatchesTheory)
{
  for (const auto& link : { CopulaFamily::gumbel(1.4), CopulaFamily::clayton(2.0) }) {
    auto model = OneFactorModel::homogeneous(link, 2);
    auto s = sample_one_factor(model, 20000, 2024);
    EXPECT_NEAR(kendall_tau_bruteforce(s.u, 0, s.latent), link.kendall_tau(), 0.02) << link.describe();
  }
  EXPECT_NEAR(CopulaFamily::gumbel(1.4).kendall_tau(), 0.2857142857, 1e-9);
  EXPECT_DOUBLE_EQ(CopulaFamily::clayton(2.0).kendall_tau(), 0.5);
}

TEST(Sampler, BitReproducible)
{
  auto model = OneFactorModel::homogeneous(CopulaFamily::gumbel(1.4), 4);
  auto a = sample_one_factor(model, 200, 99);
  auto b = sample_one_factor(model, 200, 99);
  auto c = sample_one_factor(model, 200, 100);
  EXPECT_TRUE((a.u.array() == b.u.array()).all());
  EXPECT_TRUE((a.latent.array() == b.latent.array()).all());
  EXPECT_FALSE((a.u.array() == c.u.array()).all());
}

TEST(TrueFactorDensity, IndependenceIsOne)
{
  auto model = OneFactorModel::homogeneous(CopulaFamily::independence(), 5);
  std::vector<double> u{ 0.1, 0.5, 0.7, 0.99, 0.3 };
  EXPECT_NEAR(true_factor_density(model, u, gauss_legendre(25)), 1.0, 1e-14);
}

TEST(TrueFactorDensity, PermutationInvariantExactly)
{
  auto model = OneFactorModel::homogeneous(CopulaFamily::gumbel(1.4), 6);
  auto rule = oracle_rule(model, 25);
  std::vector<double> u{ 0.13, 0.5, 0.77, 0.91, 0.32, 0.05 };
  double ref = true_factor_density(model, u, rule);
  std::sort(u.begin(), u.end());
  do {
    ASSERT_EQ(true_factor_density(model, u, rule), ref);
  } while (std::next_permutation(u.begin(), u.begin() + 4));
}

TEST(TrueFactorDensity, ClaytonAgainstRiemannSum)
{
  auto link = CopulaFamily::clayton(2.0);
  auto model = OneFactorModel::homogeneous(link, 2);
  std::vector<double> u{ 0.5, 0.5 };
  const int m = 100000;
  double riemann = 0.0;
  for (int i = 0; i < m; ++i) {
    double v = (i + 0.5) / m;
    double c = link.density(0.5, v);
    riemann += c * c;
  }
  riemann /= m;
  double value = true_factor_density(model, u, oracle_rule(model, 50));
  EXPECT_LT(std::abs(value - riemann) / riemann, 1e-6);
  EXPECT_NEAR(value, 1.1881496821171089, 1e-10);
}

TEST(TrueFactorDensity, NodeRefinement)
{
  Rng rng(8);
  for (const auto& link : { CopulaFamily::gumbel(1.4), CopulaFamily::clayton(2.0) }) {
    auto model = OneFactorModel::homogeneous(link, 5);
    auto coarse = oracle_rule(model, 25);
    auto fine = oracle_rule(model, 100);
    for (int i = 0; i < 20; ++i) {
      std::vector<double> u(5);
      for (double& x : u)
        x = rng.uniform(0.05, 0.95);
      double a = true_factor_density(model, u, coarse);
      double b = true_factor_density(model, u, fine);
      EXPECT_LT(std::abs(a - b) / b, 1e-6) << link.describe();
    }
  }
}
