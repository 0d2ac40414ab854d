#pragma once

#include "core/marginal.hpp"

#include <cstddef>
#include <vector>

namespace factorcop {

struct ProxyResult
{
  std::vector<double> z_bar; // row means of normal scores
  std::vector<double> v_hat; // rank(z_bar) / (n + 1)
  std::vector<double> w_hat; // Phi^-1(v_hat)
  std::size_t ties = 0;      // duplicate z_bar values, broken by row order
  bool flipped = false;
};

struct ProxyOptions
{
  //! Reverse the proxy when its Spearman correlation with column 1 is negative.
  bool auto_orient = false;
};

ProxyResult compute_proxy(const UniformMatrix& u, const ProxyOptions& options = {});

} // namespace factorcop
