#include "core/ranks.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace factorcop {

namespace {

std::vector<std::size_t>
stable_order(std::span<const double> x)
{
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{ 0 });
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  return order;
}

} // namespace

std::vector<double>
ordinal_ranks(std::span<const double> x, std::size_t* ties)
{
  auto order = stable_order(x);
  std::vector<double> rank(x.size());
  std::size_t tied = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = static_cast<double>(r + 1);
    if (r > 0 && x[order[r]] == x[order[r - 1]])
      ++tied;
  }
  if (ties)
    *ties = tied;
  return rank;
}

std::vector<double>
average_ranks(std::span<const double> x)
{
  auto order = stable_order(x);
  std::vector<double> rank(x.size());
  std::size_t r = 0;
  while (r < order.size()) {
    std::size_t end = r + 1;
    while (end < order.size() && x[order[end]] == x[order[r]])
      ++end;
    double shared = 0.5 * static_cast<double>(r + 1 + end);
    for (std::size_t k = r; k < end; ++k)
      rank[order[k]] = shared;
    r = end;
  }
  return rank;
}

double
pearson(std::span<const double> x, std::span<const double> y)
{
  require(x.size() == y.size() && x.size() >= 2, ErrorCode::dimension, "correlation needs two equal-length samples");
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx;
    double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  require(sxx > 0.0 && syy > 0.0, ErrorCode::degenerate_data, "correlation of a constant sample");
  return sxy / std::sqrt(sxx * syy);
}

double
spearman(std::span<const double> x, std::span<const double> y)
{
  auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  return pearson(rx, ry);
}

} // namespace factorcop
