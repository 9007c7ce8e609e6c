#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace girthlab {

struct MeanEstimate {
  double mean = 0;
  double se = 0;  // standard error of the mean
  std::uint64_t samples = 0;
};

MeanEstimate mean_estimate(std::span<const double> values);

struct Interval {
  double lo = 0;
  double hi = 0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Standard error of a Bernoulli proportion estimate.
double proportion_se(std::uint64_t successes, std::uint64_t trials);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double slope_se = 0;
  double rms_residual = 0;
  std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope * x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

/// Slope of a log-log relation fitted over a window of the abscissa.
struct ExponentFit {
  std::string name;        // beta, gamma, delta, ...
  double value = 0;        // fitted log-log slope
  double slope_se = 0;
  double window_lo = 0;
  double window_hi = 0;
  double residual = 0;     // RMS residual in log space
  double target = 0;       // mean-field slope
  std::size_t points = 0;
  bool accepted = false;
  std::string diagnostic;
};

/// Fits log(y) against log(x) over x in [window_lo, window_hi]. The fit is
/// rejected (accepted = false, with a diagnostic) when fewer than three
/// usable points remain, a point in the window has y <= 0, or the RMS
/// residual exceeds `residual_cutoff`.
ExponentFit fit_loglog(std::string name, std::span<const double> x, std::span<const double> y,
                       double window_lo, double window_hi, double target, double residual_cutoff);

}  // namespace girthlab
