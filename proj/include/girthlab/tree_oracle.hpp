#pragma once

#include <cstdint>
#include <vector>

/// Exact and simulated bond percolation on the d-regular tree, computed as a
/// Galton-Watson process with Binomial(d-1, p) offspring below a root that has
/// d potential children. No graph is ever built, so these values are
/// independent of the ball-based estimators they check.
namespace girthlab::gw {

/// P(root cluster reaches generation R) on the d-regular tree.
double crossing_probability(int degree, double p, int generation);

/// Survival probability of the subtree below a non-root vertex, by fixed-point
/// iteration from 1 (converges down to the largest root).
double subtree_survival_iteration(int degree, double p, double tolerance = 1e-14);

/// Same fixed point found by bisection on (0, 1], independent of the iteration.
double subtree_survival_bisection(int degree, double p, double tolerance = 1e-14);

/// theta(p) = P(|C(0)| = infinity) on the d-regular tree.
double survival_probability(int degree, double p);

/// E_p |C(0)| = 1 + d p / (1 - (d-1) p) below 1/(d-1); +inf otherwise.
double mean_cluster_size(int degree, double p);

inline double critical_probability(int degree) { return 1.0 / (degree - 1); }

/// Total progeny of the root cluster, simulated generation by generation.
/// Sizes reaching `cap` are censored and reported as `cap`.
struct ProgenySamples {
  std::vector<std::uint64_t> sizes;
  std::uint64_t cap = 0;
  std::uint64_t censored = 0;
};

ProgenySamples sample_total_progeny(int degree, double p, std::uint64_t cap, std::uint64_t trials,
                                    std::uint64_t seed, int workers = 1);

/// Triangle sum sum_{x,y} tau(0,x) tau(x,y) tau(y,0) on the d-regular tree with
/// tau = p^dist, over x and y within distance `radius` of the root.
double triangle_truncated(int degree, double p, int radius);

/// Closed form of the untruncated triangle sum; finite iff (d-1) p^2 < 1.
double triangle_closed_form(int degree, double p);

}  // namespace girthlab::gw
