#include "girthlab/tree_oracle.hpp"

#include "girthlab/counter_rng.hpp"
#include "girthlab/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace girthlab::gw {
namespace {

void require_degree(int degree) {
  if (degree < 2) throw std::invalid_argument("tree oracle needs degree >= 2");
}

// One step of the subtree map s -> 1 - (1 - p s)^(d-1).
double subtree_map(int degree, double p, double s) { return 1.0 - std::pow(1.0 - p * s, degree - 1); }

}  // namespace

double crossing_probability(int degree, double p, int generation) {
  require_degree(degree);
  if (generation <= 0) return 1.0;
  double s = 1.0;  // P(subtree below a child reaches k more generations)
  for (int k = 1; k < generation; ++k) s = subtree_map(degree, p, s);
  return 1.0 - std::pow(1.0 - p * s, degree);
}

double subtree_survival_iteration(int degree, double p, double tolerance) {
  require_degree(degree);
  double s = 1.0;
  // Convergence is geometric off criticality; the cap only matters at p_c.
  for (long it = 0; it < 50'000'000; ++it) {
    const double next = subtree_map(degree, p, s);
    if (std::abs(next - s) < tolerance) return next;
    s = next;
  }
  return s;
}

double subtree_survival_bisection(int degree, double p, double tolerance) {
  require_degree(degree);
  // f(s) = map(s) - s has f(1) <= 0; the nonzero root exists iff f > 0 near 0.
  const auto f = [&](double s) { return subtree_map(degree, p, s) - s; };
  if ((degree - 1) * p <= 1.0) return 0.0;
  double lo = 0.5;
  while (f(lo) <= 0 && lo > 1e-300) lo *= 0.5;
  if (f(lo) <= 0) return 0.0;
  double hi = 1.0;
  if (f(hi) >= 0) return 1.0;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double survival_probability(int degree, double p) {
  if ((degree - 1) * p <= 1.0) return 0.0;
  const double s = subtree_survival_iteration(degree, p);
  return 1.0 - std::pow(1.0 - p * s, degree);
}

double mean_cluster_size(int degree, double p) {
  require_degree(degree);
  const double m = (degree - 1) * p;
  if (m >= 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 + degree * p / (1.0 - m);
}

ProgenySamples sample_total_progeny(int degree, double p, std::uint64_t cap, std::uint64_t trials,
                                    std::uint64_t seed, int workers) {
  require_degree(degree);
  ProgenySamples out;
  out.cap = cap;
  out.sizes = map_trials(
      trials, workers, [] { return 0; },
      [&](int&, std::uint64_t trial) -> std::uint64_t {
        StreamRng rng(seed, trial);
        std::uint64_t total = 1;
        // Children of the root draw from d slots, everyone else from d-1.
        std::uint64_t slots = static_cast<std::uint64_t>(degree);
        while (slots > 0 && total < cap) {
          std::uint64_t born = 0;
          for (std::uint64_t i = 0; i < slots; ++i) born += rng.uniform() < p;
          total += born;
          slots = born * static_cast<std::uint64_t>(degree - 1);
        }
        return std::min(total, cap);
      });
  for (std::uint64_t s : out.sizes) out.censored += s >= cap;
  return out;
}

double triangle_truncated(int degree, double p, int radius) {
  require_degree(degree);
  // Sum over the tripod spanned by {0, x, y}: legs a (median to root), b and e
  // leave the median in distinct directions. A leg of length k >= 1 picks one
  // of the free directions, then d-1 choices per further step, and carries
  // weight p^{2k} because each leg is walked twice around the triangle.
  const double d = degree;
  const double t = p * p;
  std::vector<double> leg(radius + 1, 1.0);  // (d-1)^{k-1} t^k, leg[0] = 1
  for (int k = 1; k <= radius; ++k) leg[k] = k == 1 ? t : leg[k - 1] * (d - 1) * t;
  double sum = 0;
  for (int a = 0; a <= radius; ++a) {
    const double root_leg = a == 0 ? 1.0 : d * leg[a];
    const double dirs = a == 0 ? d : d - 1;
    for (int b = 0; a + b <= radius; ++b) {
      const double x_leg = b == 0 ? 1.0 : dirs * leg[b];
      const double y_dirs = b == 0 ? dirs : dirs - 1;
      for (int e = 0; a + e <= radius; ++e) {
        const double y_leg = e == 0 ? 1.0 : y_dirs * leg[e];
        sum += root_leg * x_leg * y_leg;
      }
    }
  }
  return sum;
}

double triangle_closed_form(int degree, double p) {
  require_degree(degree);
  const double d = degree;
  const double t = p * p;
  const double u = (d - 1) * t;
  if (u >= 1.0) return std::numeric_limits<double>::infinity();
  const double g = t / (1.0 - u);  // sum_{k>=1} (d-1)^{k-1} t^k
  const double root_median = 1.0 + 2 * d * g + d * (d - 1) * g * g;
  const double other_median = d * g * (1.0 + 2 * (d - 1) * g + (d - 1) * (d - 2) * g * g);
  return root_median + other_median;
}

}  // namespace girthlab::gw
