#pragma once

namespace factorcop {

double normal_pdf(double x);
double normal_cdf(double x);

//! Standard normal quantile; 0 and 1 map to -inf and +inf.
double normal_quantile(double p);

} // namespace factorcop
