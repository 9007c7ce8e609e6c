#pragma once

#include "girthlab/ball.hpp"
#include "girthlab/counter_rng.hpp"
#include "girthlab/stats.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace girthlab {

/// Bond percolation parameters. Edge e of trial t is open iff
/// CounterRng(seed, t).uniform(e) < p, so the same (seed, t) couples every p.
struct PercRun {
  double p = 0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  int workers = 1;

  void validate() const;
};

inline bool edge_open(const CounterRng& rng, std::uint64_t edge, double p) { return rng.uniform(edge) < p; }

class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) { reset(n); }
  void reset(std::size_t n);
  std::uint32_t find(std::uint32_t v);
  bool unite(std::uint32_t a, std::uint32_t b);
  std::uint32_t size_of(std::uint32_t v) { return size_[find(v)]; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

/// Root-cluster outcome of one configuration on a ball.
struct TrialOutcome {
  std::uint64_t root_size = 1;
  int reach = 0;                  // largest distance reached by the root cluster
  bool touched_boundary = false;  // reach == R, the proxy for |C(0)| = infinity
  std::uint64_t open_edges = 0;   // only counted by sample_clusters
};

/// Samples every edge of the ball and runs union-find over the open ones.
TrialOutcome sample_clusters(const Ball& ball, double p, std::uint64_t seed, std::uint64_t trial, UnionFind& uf);

/// Explores only the root cluster, sampling edges lazily. Same configuration
/// and root cluster as sample_clusters for the same (seed, trial).
class RootExplorer {
 public:
  explicit RootExplorer(const Ball& ball);
  TrialOutcome explore(double p, std::uint64_t seed, std::uint64_t trial);
  /// Vertices of the last explored cluster, in BFS order.
  const std::vector<VertexId>& cluster() const { return queue_; }
  bool in_cluster(VertexId v) const { return mark_[v] == epoch_; }

 private:
  const Ball* ball_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  std::vector<VertexId> queue_;
};

struct ClusterStats {
  std::uint64_t trials = 0;
  std::vector<TrialOutcome> outcomes;                 // per trial, trial order
  std::map<std::uint64_t, std::uint64_t> histogram;   // finite (non-touching) sizes
  std::uint64_t touched = 0;                          // censored trials
  std::uint64_t crossings = 0;
  std::uint64_t open_edges = 0;
  MeanEstimate mean_size;                             // over all trials, censored sizes as observed
};

ClusterStats run_clusters(const Ball& ball, const PercRun& run);

struct CrossingEstimate {
  double p = 0;
  int radius = 0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double estimate = 0;
  Interval ci;
};

/// P_p(0 <-> S_r) for every r in `radii` (each <= ball radius) from a single
/// set of explorations.
std::vector<CrossingEstimate> crossing_curve(const Ball& ball, const PercRun& run, const std::vector<int>& radii);
CrossingEstimate crossing_probability(const Ball& ball, const PercRun& run);

// --- p_c ------------------------------------------------------------------

enum class PcMethod { InverseCrossing, Threshold };

struct PcOptions {
  PcMethod method = PcMethod::InverseCrossing;
  double theta_star = 0.5;
  double p_lo = 0.05;
  double p_hi = 0.95;
  double grid_step = 0.0025;
  double z = 2.0;  // significance in standard errors
};

struct PcScanPoint {
  double p = 0;
  double statistic = 0;  // 1/P(R1) - 2/P(R2) + 1/P(R3), or P(R) - theta*
  double se = 0;
};

struct PcEstimate {
  PcMethod method = PcMethod::InverseCrossing;
  double lo = 0;
  double hi = 1;
  std::vector<int> radii;
  std::vector<PcScanPoint> scan;
  /// Threshold method: the interval at a second, smaller radius.
  std::optional<std::pair<double, double>> coarse_interval;
  std::string warning;
};

/// Interval for p_c from a ball of radius R. The inverse-crossing method scans
/// p and brackets the sign change of the second difference of 1/P(0 <-> S_r)
/// over radii (R/3, 2R/3, R): at criticality the one-arm probability decays
/// like 1/r so 1/P is linear in r, convex below p_c and concave above. The
/// threshold method bisects P(0 <-> S_R) = theta* at R and R/2.
PcEstimate estimate_pc(const Ball& ball, const PercRun& run, const PcOptions& options);

// --- theta ----------------------------------------------------------------

struct ThetaEstimate {
  double p = 0;
  std::vector<CrossingEstimate> curve;
  double limit = 0;  // Aitken extrapolation of the last three radii when monotone, else the last value
  bool extrapolated = false;
};

ThetaEstimate theta(const Ball& ball, const PercRun& run, const std::vector<int>& radii);

// --- two-point function -----------------------------------------------------

struct TwoPoint {
  VertexId x = 0;
  int distance = 0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0;
  Interval ci;
  std::optional<double> exact_tree;   // p^dist when the ball is a tree
  std::optional<double> decay_bound;  // C [p (d-1) rho]^dist, summed over path lengths >= dist
};

/// sum_{n >= r} d [p (d-1) rho]^n / ((d-1)(1-rho)); empty unless p (d-1) rho < 1.
std::optional<double> connection_bound(int degree, double p, double rho_ub, int distance);

TwoPoint two_point(const Ball& ball, const PercRun& run, VertexId x, std::optional<double> rho_ub = {});

// --- triangle diagram -------------------------------------------------------

enum class DiagramMethod { ExactTree, MonteCarlo, Census };

std::string to_string(DiagramMethod m);

struct DiagramResult {
  DiagramMethod method = DiagramMethod::ExactTree;
  double value = 0;
  double se = 0;  // Monte Carlo only
  int truncation = 0;
  std::optional<double> tail_bound;  // certified remainder, empty when unavailable
  std::optional<double> chain_tail;  // geometric chain bound through rho_ub
  double tail_ratio = 0;             // p (d-1) rho_ub, or z (d-1) rho_ub for the bubble
  bool certified = false;
  double p = 0;
  std::optional<double> rho_ub;
  int degree = 0;
  std::string note;
};

/// d^3/((d-1)^3 (1-rho)^3) sum_{r1+r2+r3 > R} lambda^{r1+r2+r3}, lambda = p (d-1) rho.
std::optional<double> triangle_tail_bound(int degree, double p, double rho_ub, int truncation);

/// Exact tree triangle sum over x, y within distance R of the root, tau = p^dist.
DiagramResult triangle_diagram_tree(int degree, double p, int truncation, std::optional<double> rho_ub);

/// Monte Carlo tau on a ball of radius >= 2R, using tau(x,y) = tau(0, x^-1 y).
/// Standard errors of the factors are propagated in quadrature.
DiagramResult triangle_diagram_mc(const Ball& ball, const PercRun& run, int truncation,
                                  std::optional<double> rho_ub);

// --- non-uniqueness witness -------------------------------------------------

struct WitnessRow {
  int distance = 0;
  double two_point = 0;
  double two_point_se = 0;
  double margin = 0;     // theta^2 - P(0 <-> x)
  double margin_lo = 0;  // one-sided 95% lower confidence bound
};

struct WitnessResult {
  double p = 0;
  double theta = 0;  // crossing to the ball radius
  double theta_se = 0;
  std::vector<WitnessRow> rows;
  std::optional<int> r0;  // smallest distance with margin_lo > 0
  std::string note;
};

WitnessResult nonuniqueness_witness(const Ball& ball, const PercRun& run, int r_max);

// --- cluster-size tail, susceptibility, exponent fits -------------------------

struct TailPoint {
  std::uint64_t n = 0;
  double fraction = 0;  // P(|C(0)| >= n)
};

struct TailCurve {
  double p = 0;
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;
  std::vector<TailPoint> points;
  ExponentFit fit;  // slope of log P(|C| >= n) against log n, target -1/2
};

struct FitWindow {
  double lo = 0;
  double hi = 0;
  double residual_cutoff = 0.05;
};

/// Log-spaced integers 1..n_max, about `per_decade` per factor of ten.
std::vector<std::uint64_t> log_grid(std::uint64_t n_max, int per_decade = 12);

TailCurve tail_from_sizes(const std::vector<std::uint64_t>& sizes, std::uint64_t n_max, double p,
                          const FitWindow& window);

/// Tree mode: total progeny simulated as a branching process, no ball.
TailCurve cluster_size_tail_tree(int degree, const PercRun& run, std::uint64_t n_max, const FitWindow& window);
/// Ball mode: clusters touching the boundary count as >= n for every n.
TailCurve cluster_size_tail(const Ball& ball, const PercRun& run, std::uint64_t n_max, const FitWindow& window);

struct SusceptibilityPoint {
  double p = 0;
  MeanEstimate mean;
  std::uint64_t censored = 0;
  std::optional<double> exact;  // tree closed form
};

std::vector<SusceptibilityPoint> susceptibility_tree(int degree, const std::vector<double>& p_grid,
                                                     const PercRun& run, std::uint64_t cap);
std::vector<SusceptibilityPoint> susceptibility(const Ball& ball, const std::vector<double>& p_grid,
                                                const PercRun& run);

/// log E|C| against log(p_c - p), target -1. Rejected when a grid point is not
/// below the lower end of the p_c interval.
ExponentFit fit_gamma(const std::vector<SusceptibilityPoint>& points, double pc_lo, double pc_hi,
                      const FitWindow& window);

/// log theta against log(p - p_c), target 1. Rejected when a grid point is not
/// above the upper end of the p_c interval.
ExponentFit fit_beta(const std::vector<double>& p_grid, const std::vector<double>& theta_values, double pc_lo,
                     double pc_hi, const FitWindow& window);

}  // namespace girthlab
