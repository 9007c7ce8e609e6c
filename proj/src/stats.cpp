#include "girthlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace girthlab {

MeanEstimate mean_estimate(std::span<const double> values) {
  MeanEstimate est;
  est.samples = values.size();
  if (values.empty()) return est;
  long double sum = 0;
  for (double v : values) sum += v;
  const long double mean = sum / values.size();
  long double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  est.mean = static_cast<double>(mean);
  if (values.size() > 1) est.se = static_cast<double>(std::sqrt(ss / (values.size() - 1) / values.size()));
  return est;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0, 1};
  const double n = static_cast<double>(trials);
  const double phat = successes / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double centre = (phat + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double proportion_se(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return 0;
  const double p = static_cast<double>(successes) / trials;
  return std::sqrt(p * (1 - p) / trials);
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  LineFit fit;
  const std::size_t n = std::min(x.size(), y.size());
  fit.points = n;
  if (n < 2) return fit;
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) return fit;
  fit.slope = static_cast<double>(sxy / sxx);
  fit.intercept = static_cast<double>(my - fit.slope * mx);
  long double rss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.rms_residual = static_cast<double>(std::sqrt(rss / n));
  if (n > 2) fit.slope_se = static_cast<double>(std::sqrt(rss / (n - 2) / sxx));
  return fit;
}

ExponentFit fit_loglog(std::string name, std::span<const double> x, std::span<const double> y,
                       double window_lo, double window_hi, double target, double residual_cutoff) {
  ExponentFit out;
  out.name = std::move(name);
  out.window_lo = window_lo;
  out.window_hi = window_hi;
  out.target = target;

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] < window_lo || x[i] > window_hi) continue;
    if (!(x[i] > 0) || !(y[i] > 0) || !std::isfinite(y[i])) {
      out.diagnostic = "non-positive or non-finite value inside the fit window";
      return out;
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  out.points = lx.size();
  if (lx.size() < 3) {
    out.diagnostic = "fewer than three points inside the fit window";
    return out;
  }
  const LineFit fit = least_squares(lx, ly);
  out.value = fit.slope;
  out.slope_se = fit.slope_se;
  out.residual = fit.rms_residual;
  if (!std::isfinite(fit.slope) || !std::isfinite(fit.rms_residual)) {
    out.diagnostic = "non-finite fit";
    return out;
  }
  if (fit.rms_residual > residual_cutoff) {
    out.diagnostic = "residual " + std::to_string(fit.rms_residual) + " above cutoff " +
                     std::to_string(residual_cutoff) + "; not a power law on this window";
    return out;
  }
  out.accepted = true;
  return out;
}

}  // namespace girthlab
