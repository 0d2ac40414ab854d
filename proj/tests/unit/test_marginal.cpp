#include "core/errors.hpp"
#include "core/marginal.hpp"
#include "core/normal.hpp"
#include "core/one_factor_model.hpp"
#include "core/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace factorcop;

namespace {

std::vector<double>
uniforms(int n, std::uint64_t seed)
{
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x)
    v = rng.uniform();
  return x;
}

double
sup_error_uniform(const MarginalFit& fit)
{
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    double x = i / 200.0;
    worst = std::max(worst, std::abs(fit.cdf(x) - x));
  }
  return worst;
}

} // namespace

TEST(MarginalFit, SinglePoint)
{
  std::vector<double> data{ 0.0 };
  MarginalFit fit(data, 0.3);
  EXPECT_DOUBLE_EQ(fit.cdf(0.0), 0.5);
  EXPECT_DOUBLE_EQ(fit.cdf(0.3), 1.0);
  EXPECT_DOUBLE_EQ(fit.cdf(-0.3), 0.0);
}

TEST(MarginalFit, SupportBounds)
{
  auto x = uniforms(500, 3);
  auto fit = fit_marginal(x);
  double lo = *std::min_element(x.begin(), x.end());
  double hi = *std::max_element(x.begin(), x.end());
  EXPECT_EQ(fit.cdf(hi + fit.bandwidth()), 1.0);
  EXPECT_EQ(fit.cdf(lo - fit.bandwidth()), 0.0);
  EXPECT_EQ(fit.cdf(hi + 10), 1.0);
}

TEST(MarginalFit, BindsBandwidthAndIsSymmetricInData)
{
  auto x = uniforms(300, 4);
  auto fit = fit_marginal(x);
  EXPECT_EQ(fit.bandwidth(), bandwidth_cdf(x));
  std::vector<double> permuted(x.rbegin(), x.rend());
  auto other = fit_marginal(permuted);
  for (int i = 0; i <= 50; ++i)
    EXPECT_EQ(fit.cdf(i / 50.0), other.cdf(i / 50.0));
  EXPECT_EQ(eval_cdf(fit, 0.3), fit.cdf(0.3));
}

TEST(MarginalFit, UniformSampleConsistency)
{
  auto x = uniforms(100000, 5);
  EXPECT_LT(std::abs(fit_marginal(x).cdf(0.5) - 0.5), 0.01);
}

TEST(MarginalFit, Nondecreasing)
{
  auto x = uniforms(400, 6);
  auto fit = fit_marginal(x);
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    double a = rng.uniform(-0.2, 1.2);
    double b = rng.uniform(-0.2, 1.2);
    if (a > b)
      std::swap(a, b);
    EXPECT_LE(fit.cdf(a), fit.cdf(b));
  }
}

TEST(MarginalFit, ErrorShrinksWithSampleSize)
{
  int wins = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto small = uniforms(100, 1000 + trial);
    auto large = uniforms(10000, 2000 + trial);
    if (sup_error_uniform(fit_marginal(large)) < sup_error_uniform(fit_marginal(small)))
      ++wins;
  }
  EXPECT_GT(wins, 10);
}

TEST(PseudoObservations, PreservesColumnRanks)
{
  Rng rng(8);
  Eigen::MatrixXd raw(200, 3);
  for (int i = 0; i < 200; ++i) {
    double x = rng.uniform(-3, 3);
    raw(i, 0) = x;
    raw(i, 1) = std::exp(x);  // strictly increasing transform
    raw(i, 2) = rng.uniform();
  }
  auto u = pseudo_observations(raw);
  for (int a = 0; a < 200; ++a)
    for (int b = 0; b < 200; ++b)
      for (int j = 0; j < 3; ++j)
        if (raw(a, j) < raw(b, j))
          ASSERT_LE(u(a, j), u(b, j));
}

TEST(PseudoObservations, SmallBandwidthGivesEmpiricalCdf)
{
  Eigen::MatrixXd raw(3, 1);
  raw << 1.0, 2.0, 3.0;
  auto u = pseudo_observations(raw, {}, 1e-6);
  // each point sits at its own kernel centre: J(0) = 1/2
  EXPECT_NEAR(u(0, 0), 0.5 / 3, 1e-12);
  EXPECT_NEAR(u(1, 0), 1.5 / 3, 1e-12);
  EXPECT_NEAR(u(2, 0), 2.5 / 3, 1e-12);
}

TEST(PseudoObservations, RecoverSimulatedUniforms)
{
  auto model = OneFactorModel::homogeneous(CopulaFamily::gumbel(1.4), 4);
  auto s = sample_one_factor(model, 1000, 9);
  // margins are arbitrary monotone maps of the uniforms
  Eigen::MatrixXd raw = s.u.unaryExpr([](double p) { return std::log(p / (1 - p)) * 3.0 + 1.0; });
  auto u = pseudo_observations(raw);
  for (int j = 0; j < 4; ++j) {
    std::vector<double> col(u.column(j).begin(), u.column(j).end());
    std::sort(col.begin(), col.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < col.size(); ++i)
      ks = std::max({ ks, std::abs(col[i] - (i + 1.0) / col.size()), std::abs(col[i] - double(i) / col.size()) });
    EXPECT_LT(ks, 0.05);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
      worst = std::max(worst, std::abs(u(i, j) - s.u(i, j)));
    EXPECT_LT(worst, 0.1);
  }
}

TEST(PseudoObservations, DegenerateColumn)
{
  Eigen::MatrixXd raw = Eigen::MatrixXd::Ones(20, 2);
  raw.col(0).setLinSpaced(20, 0, 1);
  try {
    pseudo_observations(raw);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_data);
    EXPECT_NE(std::string(e.what()).find("column 2"), std::string::npos);
  }
}

TEST(UniformMatrix, ClampsAndValidates)
{
  Eigen::MatrixXd m(2, 2);
  m << 0.0, 0.5, 1.0, 1e-9;
  UniformMatrix u(m);
  EXPECT_EQ(u(0, 0), 1e-6);
  EXPECT_EQ(u(1, 0), 1.0 - 1e-6);
  EXPECT_EQ(u(1, 1), 1e-6);
  EXPECT_THROW(UniformMatrix::validated(m), Error);
  m(0, 0) = 0.2;
  m(1, 0) = 0.7;
  EXPECT_NO_THROW(UniformMatrix::validated(m));
}

TEST(NormalScores, Quantiles)
{
  EXPECT_EQ(normal_quantile(0.5), 0.0);

  // root of the erfc-based CDF by bisection
  double lo = 0.0, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / std::sqrt(2.0)) < 0.975 ? lo : hi) = mid;
  }
  EXPECT_NEAR(normal_quantile(0.975), 0.5 * (lo + hi), 1e-12);
  EXPECT_NEAR(normal_quantile(0.975), 1.959964, 1e-5);

  Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    double p = rng.uniform(0.001, 0.999);
    EXPECT_NEAR(0.5 * std::erfc(-normal_quantile(p) / std::sqrt(2.0)), p, 1e-12);
  }
  for (double p : { 1e-300, 1e-12, 1e-6, 0.02, 0.98, 1 - 1e-6, 1 - 1e-12 }) {
    double x = normal_quantile(p);
    double back = p < 0.5 ? normal_cdf(x) : 1.0 - 0.5 * std::erfc(x / std::sqrt(2.0));
    EXPECT_NEAR(back / p, 1.0, 1e-9) << p;
  }
  EXPECT_TRUE(std::isinf(normal_quantile(0.0)));
  EXPECT_TRUE(std::isnan(normal_quantile(1.5)));
}

TEST(NormalScores, EntrywiseAndFinite)
{
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.0, 1.0, 0.975;
  auto z = normal_scores(UniformMatrix(m));
  EXPECT_EQ(z(0, 0), 0.0);
  EXPECT_TRUE(z.allFinite());
  EXPECT_NEAR(z(1, 1), 1.959964, 1e-5);
  EXPECT_NEAR(z(0, 1), normal_quantile(1e-6), 0.0);
}
