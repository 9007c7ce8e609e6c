#pragma once

#include "girthlab/ball.hpp"
#include "girthlab/big_int.hpp"
#include "girthlab/percolation.hpp"
#include "girthlab/stats.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace girthlab {

/// Exact self-avoiding walk counts from the root.
///
/// Enumerated censuses carry per-endpoint counts c_n(x) over the ball
/// vertices [0, level_end(n)). On trees the census can instead be filled from
/// the formula c_n = d (d-1)^{n-1}, c_n(x) = [dist(x) = n], which reaches
/// lengths far beyond any ball; endpoint tables are then left empty.
struct SawCensus {
  GroupSpec spec;
  int degree = 0;
  int n_max = 0;
  std::vector<BigInt> counts;                          // c_0 .. c_{n_max}
  std::vector<std::vector<std::uint64_t>> endpoint;    // endpoint[n][v], enumerated mode only
  std::shared_ptr<const Ball> ball;                    // enumerated mode only
  bool tree_formula = false;

  bool has_endpoints() const { return !endpoint.empty(); }
  std::uint64_t at(int n, VertexId v) const { return v < endpoint[n].size() ? endpoint[n][v] : 0; }
};

/// Depth-first enumeration, split over the d first steps on `workers`
/// threads. Throws std::invalid_argument when n_max exceeds the ball radius.
SawCensus enumerate_saw(std::shared_ptr<const Ball> ball, int n_max, int workers = 1);

/// c_n = d (d-1)^{n-1}; throws unless the spec is a tree.
SawCensus tree_saw_census(const GroupSpec& spec, int n_max);

/// Number of non-backtracking words of length n, d (d-1)^{n-1} (1 for n = 0).
BigInt nonbacktracking_count(int degree, int n);

struct MuBounds {
  std::vector<double> sequence;  // c_n^{1/n} for n = 1..n_max
  double best = 0;               // min of the sequence, an upper bound on mu
  int best_n = 0;
  std::optional<double> tree_exact;

  /// Tree value when known, otherwise the best upper bound.
  double value() const { return tree_exact.value_or(best); }
};

MuBounds connective_constant(const SawCensus& census);

// --- endpoint law, decay and speed --------------------------------------------

struct EndpointLaw {
  int n = 0;
  BigInt c_n;
  std::uint64_t max_multiplicity = 0;
  VertexId argmax = 0;
  double sup = 0;  // max_x c_n(x) / c_n
  std::vector<std::pair<VertexId, std::uint64_t>> table;  // nonzero entries
};

EndpointLaw saw_endpoint_law(const SawCensus& census, int n);

struct DecayRow {
  int n = 0;
  double sup = 0;
  double bound = 0;  // d [(d-1) rho]^n / ((d-1)(1-rho) c_n), from the NBW path-count bound
  bool within = false;
};

struct DecayCheck {
  double mu_hat = 0;
  double epsilon = 0;
  double lambda = 0;           // (1/mu_hat + eps) (d-1) rho_ub
  double constant = 0;         // smallest C with sup_n <= C lambda^n over the range
  double fitted_rate = 0;      // exp(slope of log sup_n) over the upper half of the range
  std::vector<DecayRow> rows;
  bool condition = false;      // lambda < 1
  bool passed = false;         // condition, every row within, fitted rate < 1
};

/// Default epsilon: half of the gap 1/((d-1) rho) - 1/mu_hat.
double default_epsilon(int degree, double mu_hat, double rho_ub);

DecayCheck endpoint_decay(const SawCensus& census, double mu_hat, double rho_ub, std::optional<double> epsilon = {});

struct SpeedPoint {
  int n = 0;
  double exact = 0;    // E dist(0, SAW(n)) / n from the census
  double mass_below = 0;   // sum_{dist <= alpha n} c_n(x) / c_n
  double mass_bound = 0;   // d/(d-2) (d-1)^{alpha n} sup_x c_n(x) / c_n
};

struct SpeedCurve {
  double alpha = 0;
  double alpha_ratio = 0;  // (d-1)^alpha lambda, < 1 makes the mass bound vanish
  std::vector<SpeedPoint> points;
  ExponentFit nu;          // log E dist against log n
  bool mass_vanishes = false;
};

/// Exact speed for n = 1..n_max. alpha defaults to half of -log(lambda)/log(d-1).
SpeedCurve saw_speed_exact(const SawCensus& census, const DecayCheck& decay, std::optional<double> alpha = {});

// --- Rosenbluth -----------------------------------------------------------

struct RosenbluthLength {
  int n = 0;
  MeanEstimate weight;  // estimates c_n
  double speed = 0;     // weighted E dist / n
  std::uint64_t dead = 0;
};

struct RosenbluthResult {
  int n = 0;
  std::uint64_t trials = 0;
  std::vector<RosenbluthLength> lengths;  // index k = length k, 0..n
};

/// Grows T walks of length n on a ball of radius >= n, choosing uniformly
/// among unvisited neighbours; the weight is the product of the choice
/// counts (0 after a dead end), so E[weight_k] = c_k for every k <= n.
RosenbluthResult rosenbluth_sampler(const Ball& ball, int n, const PercRun& run);

// --- generating functions ---------------------------------------------------

struct GreenTable {
  double z = 0;
  int n_max = 0;
  int degree = 0;
  std::vector<double> vertex;         // G_z(x) truncated, enumerated mode
  double chi = 0;                     // truncated sum_n c_n z^n
  std::optional<double> chi_tail;     // submultiplicativity bound, needs c_m z^m < 1
  std::optional<double> vertex_tail;  // d/((d-1)(1-rho)) sum_{n>N} [z (d-1) rho]^n
  double tail_ratio = 0;              // z (d-1) rho_ub
  bool certified = false;             // both tails available
};

/// Truncated G_z and chi(z) with rigorous remainders. The chi remainder uses
/// c_{qm+r} <= c_m^q c_r with m = n_max.
GreenTable green_function(const SawCensus& census, double z, std::optional<double> rho_ub);

struct ChiPoint {
  double z = 0;
  double chi = 0;
  std::optional<double> tail;
  double ratio_lo = 0;  // chi (1/mu - z)
  double ratio_hi = 0;  // (chi + tail)(1/mu - z), +inf without a tail
};

struct ChiCurve {
  double mu = 0;
  std::vector<ChiPoint> points;
  double lower = 0;  // min ratio_lo
  double upper = 0;  // max ratio_hi
  bool bounded = false;
};

/// chi(z) (1/mu - z) over a grid in [0, 1/mu). Throws std::invalid_argument
/// for a grid point at or beyond 1/mu.
ChiCurve susceptibility_saw(const SawCensus& census, const std::vector<double>& z_grid, double mu);

/// (d/(d-1))^2 (1-rho)^{-2} sum_{n+m>N} [z (d-1) rho]^{n+m}.
std::optional<double> bubble_chain_tail(int degree, double z, double rho_ub, int truncation);

/// B(z) = sum_x G_z(x)^2 truncated at length N. On tree censuses the value is
/// the sphere sum and the certified tail is the exact remainder; the chain
/// bound is still reported. Otherwise the chain bound is the certified tail.
DiagramResult bubble_diagram(const SawCensus& census, double z, std::optional<double> rho_ub);

}  // namespace girthlab
