#pragma once

#include <cstddef>
#include <span>

namespace dboot {

/// Sum with a fixed pairwise reduction order. The result depends only on the
/// order of the input values, never on thread count or chunking, so parallel
/// drivers that fill a slot per task and reduce afterwards get bit-identical
/// totals on every run.
double pairwise_sum(std::span<const double> v);

/// pairwise_sum(v) / v.size(). Empty input is the caller's bug.
double pairwise_mean(std::span<const double> v);

/// Central moment with divisor n about the pairwise mean.
double central_moment(std::span<const double> v, int order);

/// Sample variance with divisor n - 1, used for Monte Carlo standard errors.
double sample_variance(std::span<const double> v);

/// Inverse of the standard normal CDF (Wichura's PPND16 rational
/// approximation, accurate to ~1e-15 on (0, 1)).
double inverse_normal_cdf(double p);

/// Standard normal CDF via erfc.
double normal_cdf(double x);

} // namespace dboot
