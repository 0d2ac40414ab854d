#include "core/copula_family.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace factorcop {

namespace {

constexpr double kBracketLo = 1e-12;
constexpr double kBracketHi = 1.0 - 1e-12;
constexpr double kResidualTol = 1e-10;
constexpr int kMaxBisections = 200;

void
check_unit(double x, const char* name)
{
  if (!(x > 0.0 && x < 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << x << " is outside (0, 1)";
    fail(ErrorCode::domain, msg.str());
  }
}

// (x^t + y^t)^(1/t) without overflow for large t
double
gumbel_a(double x, double y, double theta)
{
  double hi = std::max(x, y);
  double lo = std::min(x, y);
  if (hi == 0.0)
    return 0.0;
  return hi * std::pow(1.0 + std::pow(lo / hi, theta), 1.0 / theta);
}

// u^-t + v^-t - 1, accurate when both are close to 1
double
clayton_s(double log_u, double log_v, double theta)
{
  return std::expm1(-theta * log_u) + std::exp(-theta * log_v);
}

} // namespace

std::string_view
to_string(Family family)
{
  switch (family) {
    case Family::independence:
      return "independence";
    case Family::gumbel:
      return "gumbel";
    case Family::clayton:
      return "clayton";
  }
  return "unknown";
}

Family
parse_family(std::string_view name)
{
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "independence" || lower == "indep")
    return Family::independence;
  if (lower == "gumbel")
    return Family::gumbel;
  if (lower == "clayton")
    return Family::clayton;
  fail(ErrorCode::parameter, "unknown copula family '" + std::string(name) + "'");
}

CopulaFamily::CopulaFamily(Family family, double theta)
  : family_(family)
  , theta_(theta)
{
  switch (family_) {
    case Family::independence:
      theta_ = 0.0;
      break;
    case Family::gumbel:
      require(std::isfinite(theta) && theta >= 1.0, ErrorCode::parameter,
              "Gumbel parameter must be a finite value >= 1");
      break;
    case Family::clayton:
      require(std::isfinite(theta) && theta > 0.0, ErrorCode::parameter,
              "Clayton parameter must be a finite value > 0");
      break;
  }
}

double
CopulaFamily::cdf(double u, double v) const
{
  check_unit(u, "u");
  check_unit(v, "v");
  switch (family_) {
    case Family::independence:
      return u * v;
    case Family::gumbel:
      return std::exp(-gumbel_a(-std::log(u), -std::log(v), theta_));
    case Family::clayton:
      return std::exp(-std::log(clayton_s(std::log(u), std::log(v), theta_)) / theta_);
  }
  return 0.0;
}

double
CopulaFamily::density(double u, double v) const
{
  check_unit(u, "u");
  check_unit(v, "v");
  switch (family_) {
    case Family::independence:
      return 1.0;
    case Family::gumbel: {
      double x = -std::log(u);
      double y = -std::log(v);
      double a = gumbel_a(x, y, theta_);
      double log_c = -a + x + y + (theta_ - 1.0) * (std::log(x) + std::log(y)) +
                     (1.0 - 2.0 * theta_) * std::log(a) + std::log(a + theta_ - 1.0);
      return std::exp(log_c);
    }
    case Family::clayton: {
      double lu = std::log(u);
      double lv = std::log(v);
      double log_c = std::log1p(theta_) - (theta_ + 1.0) * (lu + lv) -
                     (1.0 / theta_ + 2.0) * std::log(clayton_s(lu, lv, theta_));
      return std::exp(log_c);
    }
  }
  return 0.0;
}

double
CopulaFamily::h_function(double u, double v) const
{
  check_unit(u, "u");
  check_unit(v, "v");
  switch (family_) {
    case Family::independence:
      return u;
    case Family::gumbel: {
      double x = -std::log(u);
      double y = -std::log(v);
      double a = gumbel_a(x, y, theta_);
      double log_h = -a + (1.0 - theta_) * std::log(a) + (theta_ - 1.0) * std::log(y) + y;
      return std::min(1.0, std::exp(log_h));
    }
    case Family::clayton: {
      double lu = std::log(u);
      double lv = std::log(v);
      double log_h = -(theta_ + 1.0) * lv - (1.0 / theta_ + 1.0) * std::log(clayton_s(lu, lv, theta_));
      return std::min(1.0, std::exp(log_h));
    }
  }
  return 0.0;
}

double
CopulaFamily::h_inverse(double w, double v) const
{
  check_unit(w, "w");
  check_unit(v, "v");
  switch (family_) {
    case Family::independence:
      return w;
    case Family::clayton: {
      double t = theta_;
      double base = std::expm1(-t / (t + 1.0) * std::log(w)) * std::exp(-t * std::log(v)) + 1.0;
      return std::exp(-std::log(base) / t);
    }
    case Family::gumbel:
      break;
  }

  double lo = kBracketLo;
  double hi = kBracketHi;
  if (h_function(lo, v) >= w)
    return lo;
  if (h_function(hi, v) <= w)
    return hi;
  for (int it = 0; it < kMaxBisections; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      return mid; // bracket at machine resolution
    double r = h_function(mid, v) - w;
    if (std::abs(r) <= kResidualTol)
      return mid;
    (r < 0.0 ? lo : hi) = mid;
  }
  std::ostringstream msg;
  msg << "h_inverse did not converge for w=" << w << ", v=" << v << " (" << describe() << ")";
  fail(ErrorCode::convergence, msg.str());
}

double
CopulaFamily::kendall_tau() const
{
  switch (family_) {
    case Family::independence:
      return 0.0;
    case Family::gumbel:
      return 1.0 - 1.0 / theta_;
    case Family::clayton:
      return theta_ / (theta_ + 2.0);
  }
  return 0.0;
}

std::string
CopulaFamily::describe() const
{
  std::ostringstream out;
  out << to_string(family_);
  if (family_ != Family::independence)
    out << "(" << theta_ << ")";
  return out.str();
}

} // namespace factorcop
