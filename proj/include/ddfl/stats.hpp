#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddfl {

inline constexpr double kInvSqrt2 = 0.7071067811865475244;
inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;

inline double norm_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

// Phi and its complement via erfc; both accurate in their small tail.
inline double norm_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }
inline double norm_cdf_comp(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

namespace detail {

// Rational approximation of Phi^-1 (Acklam), |error| < 1.2e-9 over (0,1).
// Callers polish the result with one Newton step off the forward CDF, which
// lands within a few ulp except in the extreme sub-1e-300 tails.
inline double norm_quantile_raw(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  static constexpr double plow = 0.02425;

  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace detail

// Phi^-1 given both the probability and its complement. Passing the
// complement explicitly keeps full precision in the upper tail, where
// 1 - p would round to 1 in double; the truncated-normal sampler computes
// pc directly without cancellation.
inline double norm_quantile2(double p, double pc) {
  if (!(p > 0.0) || !(pc > 0.0)) throw std::domain_error("norm_quantile: p outside (0,1)");
  if (pc < 0.5) {
    // Work on the complement side: z solves norm_cdf_comp(z) = pc.
    double z = -detail::norm_quantile_raw(pc);
    z += (norm_cdf_comp(z) - pc) / norm_pdf(z);
    return z;
  }
  double z = detail::norm_quantile_raw(p);
  z -= (norm_cdf(z) - p) / norm_pdf(z);
  return z;
}

inline double norm_quantile(double p) { return norm_quantile2(p, 1.0 - p); }

// Inverse CDF of a normal(mu, sigma) truncated on the left at zero:
//   x(u) = mu + sigma * Phi^-1( Phi(-mu/sigma) + u * (1 - Phi(-mu/sigma)) ).
// Strictly increasing in u on (0,1), nonnegative, and x(u) -> 0 as u -> 0.
inline double truncnorm_inverse_cdf(double u, double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("truncnorm_inverse_cdf: sigma must be > 0");
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("truncnorm_inverse_cdf: u outside (0,1)");
  const double plo = norm_cdf(-mu / sigma);     // mass removed by truncation
  const double w = norm_cdf_comp(-mu / sigma);  // 1 - plo, no cancellation
  const double p = plo + u * w;
  const double pc = w * (1.0 - u);
  const double x = mu + sigma * norm_quantile2(p, pc);
  return std::max(x, 0.0);
}

// Forward CDF of the same distribution (0 for x < 0).
inline double truncnorm_cdf(double x, double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("truncnorm_cdf: sigma must be > 0");
  if (x < 0.0) return 0.0;
  const double plo = norm_cdf(-mu / sigma);
  const double w = norm_cdf_comp(-mu / sigma);
  return std::clamp((norm_cdf((x - mu) / sigma) - plo) / w, 0.0, 1.0);
}

}  // namespace ddfl
