#include "core/errors.hpp"
#include "core/metrics.hpp"
#include "core/one_factor_model.hpp"
#include "core/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

using namespace factorcop;

TEST(ReplicationErrors, Examples)
{
  std::vector<double> truth{ 1.0, 2.0, 3.0 };
  auto zero = replication_errors(truth, truth);
  EXPECT_EQ(zero.rmse, 0.0);
  EXPECT_EQ(zero.mae, 0.0);
  EXPECT_EQ(zero.mean_err, 0.0);

  std::vector<double> shifted{ 0.9, 1.9, 2.9 };
  auto off = replication_errors(shifted, truth);
  EXPECT_NEAR(off.rmse, 0.1, 1e-15);
  EXPECT_NEAR(off.mae, 0.1, 1e-15);
  EXPECT_NEAR(off.mean_err, -0.1, 1e-15);

  std::vector<double> est{ 3.0, -4.0 }, zeros{ 0.0, 0.0 };
  auto hand = replication_errors(est, zeros);
  EXPECT_NEAR(hand.rmse, 3.5355339059, 1e-10);
  EXPECT_EQ(hand.mae, 3.5);
  EXPECT_EQ(hand.mean_err, -0.5);

  EXPECT_THROW(replication_errors(est, truth), Error);
}

TEST(ReplicationErrors, Identities)
{
  Rng rng(1);
  std::vector<double> est(101), truth(101);
  for (int i = 0; i < 101; ++i) {
    est[i] = rng.uniform(0, 3);
    truth[i] = rng.uniform(0, 3);
  }
  auto r = replication_errors(est, truth);
  EXPECT_LE(r.mae, r.rmse);

  double mean = r.mean_err, var = 0.0;
  for (int i = 0; i < 101; ++i)
    var += (est[i] - truth[i] - mean) * (est[i] - truth[i] - mean);
  var /= 101;
  EXPECT_NEAR(r.rmse * r.rmse, mean * mean + var, 1e-12);

  std::vector<double> est2(est), truth2(truth);
  est2.insert(est2.end(), est.begin(), est.end());
  truth2.insert(truth2.end(), truth.begin(), truth.end());
  auto d = replication_errors(est2, truth2);
  EXPECT_NEAR(d.rmse, r.rmse, 1e-14);
  EXPECT_NEAR(d.mae, r.mae, 1e-14);
  EXPECT_NEAR(d.mean_err, r.mean_err, 1e-14);
}

TEST(Aggregate, Examples)
{
  std::vector<ReplicationErrors> same(5, { 0.3, 0.2, -0.1 });
  auto s = aggregate(same);
  EXPECT_NEAR(s.sd, 0.0, 1e-15);
  EXPECT_NEAR(s.rmse, 0.3, 1e-15);
  EXPECT_EQ(s.reps, 5);

  std::vector<ReplicationErrors> two{ { 0.2, 0.1, -0.1 }, { 0.4, 0.3, 0.1 } };
  auto t = aggregate(two);
  EXPECT_NEAR(t.bias, 0.0, 1e-15);
  EXPECT_NEAR(t.sd, 0.1414213562, 1e-10);
  EXPECT_NEAR(t.rmse, 0.3, 1e-15);
  EXPECT_NEAR(t.mae, 0.2, 1e-15);

  std::vector<ReplicationErrors> swapped{ two[1], two[0] };
  auto u = aggregate(swapped);
  EXPECT_NEAR(u.sd, t.sd, 1e-15);
  EXPECT_NEAR(u.rmse, t.rmse, 1e-15);

  std::vector<ReplicationErrors> one{ { 0.2, 0.1, -0.1 } };
  auto single = aggregate(one);
  EXPECT_TRUE(single.sd_undefined);
  EXPECT_EQ(single.sd, 0.0);
  EXPECT_EQ(single.rmse, 0.2);
}

TEST(Rmsd, Definition)
{
  std::vector<double> a{ 1.0, 2.0, 5.0 }, b{ 1.5, 2.5, 5.5 };
  EXPECT_EQ(rmsd(a, a), 0.0);
  EXPECT_NEAR(rmsd(a, b), 0.5, 1e-15);
  Rng rng(2);
  std::vector<double> x(50), y(50);
  for (int i = 0; i < 50; ++i) {
    x[i] = rng.uniform();
    y[i] = rng.uniform();
  }
  EXPECT_EQ(rmsd(x, y), replication_errors(x, y).rmse);
  EXPECT_THROW(rmsd(a, x), Error);
}

TEST(Scree, ComonotoneColumns)
{
  Rng rng(3);
  Eigen::MatrixXd x(200, 6);
  for (int i = 0; i < 200; ++i) {
    double v = rng.uniform();
    for (int j = 0; j < 6; ++j)
      x(i, j) = std::pow(v, j + 1);
  }
  auto ev = scree_eigenvalues(x);
  ASSERT_EQ(ev.size(), 6u);
  EXPECT_NEAR(ev[0], 6.0, 1e-10);
  for (int j = 1; j < 6; ++j)
    EXPECT_NEAR(ev[j], 0.0, 1e-10);
}

TEST(Scree, IndependentColumns)
{
  Rng rng(4);
  Eigen::MatrixXd x(5000, 8);
  for (int i = 0; i < 5000; ++i)
    for (int j = 0; j < 8; ++j)
      x(i, j) = rng.uniform();
  auto ev = scree_eigenvalues(x);
  for (double e : ev)
    EXPECT_NEAR(e, 1.0, 0.2);
  EXPECT_NEAR(std::accumulate(ev.begin(), ev.end(), 0.0), 8.0, 1e-8);
  EXPECT_TRUE(std::is_sorted(ev.rbegin(), ev.rend()));
}

TEST(Scree, MonotoneTransformInvariantAndTraceD)
{
  auto s = sample_one_factor(OneFactorModel::homogeneous(CopulaFamily::clayton(2.0), 15), 400, 5);
  Eigen::MatrixXd t = s.u.unaryExpr([](double p) { return std::log(p) * 7.0 - 2.0; });
  auto a = scree_eigenvalues(UniformMatrix(s.u));
  auto b = scree_eigenvalues(t);
  EXPECT_EQ(a, b);
  EXPECT_NEAR(std::accumulate(a.begin(), a.end(), 0.0), 15.0, 1e-8);
  EXPECT_GT(a[0], 3.0 * a[1]); // one dominant factor
}

TEST(Scree, TiedValuesUseAverageRanks)
{
  Eigen::MatrixXd x(4, 2);
  x << 1, 1, 1, 2, 2, 3, 3, 4;
  auto ev = scree_eigenvalues(x);
  // ranks (1.5,1.5,3,4) vs (1,2,3,4): rho = 0.9486832981
  EXPECT_NEAR(ev[0], 1.0 + 0.9486832981, 1e-9);
  Eigen::MatrixXd flat = Eigen::MatrixXd::Ones(4, 2);
  EXPECT_THROW(scree_eigenvalues(flat), Error);
}
