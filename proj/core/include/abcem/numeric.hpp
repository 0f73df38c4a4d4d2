#pragma once

#include <cstddef>
#include <span>

namespace abcem {

/// Sum with a fixed pairwise association order. Used wherever a reduction
/// must be bit-identical between serial and (potential) parallel execution,
/// and it is also more accurate than a running sum.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile (inverse CDF), p in (0, 1). Rational
/// approximation refined with one Halley step; accurate to ~1e-15.
double normal_quantile(double p);

/// Overflow-safe logistic 1 / (1 + exp(-x)).
double logistic(double x);

/// Inverse-CDF sample of a normal truncated to [lo, hi]: maps a fixed
/// uniform u in [0,1) to the truncated draw. Continuous in `mu`, which is
/// what lets a fixed noise draw respond smoothly to a changing optimum
/// during root finding.
double truncated_normal(double mu, double sigma, double lo, double hi, double u);

} // namespace abcem
