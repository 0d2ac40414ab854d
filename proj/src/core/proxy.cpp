#include "core/proxy.hpp"

#include "core/errors.hpp"
#include "core/normal.hpp"
#include "core/ranks.hpp"

#include <algorithm>

namespace factorcop {

ProxyResult
compute_proxy(const UniformMatrix& u, const ProxyOptions& options)
{
  const int n = u.rows();
  const int d = u.cols();
  require(n >= 2, ErrorCode::dimension, "proxy needs n >= 2 observations");
  require(d >= 2, ErrorCode::dimension, "proxy needs d >= 2 variables");

  ProxyResult out;
  // Each row is summed in sorted order so the mean does not depend on the
  // column order.
  out.z_bar.resize(n);
  std::vector<double> row(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j)
      row[j] = normal_quantile(u(i, j));
    std::sort(row.begin(), row.end());
    double sum = 0.0;
    for (double z : row)
      sum += z;
    out.z_bar[i] = sum / d;
  }

  auto rank = ordinal_ranks(out.z_bar, &out.ties);
  out.v_hat.resize(n);
  for (int i = 0; i < n; ++i)
    out.v_hat[i] = rank[i] / (n + 1.0);

  if (options.auto_orient && spearman(out.v_hat, u.column(0)) < 0.0) {
    for (int i = 0; i < n; ++i)
      out.v_hat[i] = (n + 1.0 - rank[i]) / (n + 1.0);
    out.flipped = true;
  }

  out.w_hat.resize(n);
  for (int i = 0; i < n; ++i)
    out.w_hat[i] = normal_quantile(out.v_hat[i]);
  return out;
}

} // namespace factorcop
