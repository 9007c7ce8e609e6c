#include "girthlab/percolation.hpp"

#include "girthlab/parallel.hpp"
#include "girthlab/tree_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace girthlab {

void PercRun::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("retention probability must lie in [0, 1]");
  if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
  if (workers < 1) throw std::invalid_argument("worker count must be at least 1");
}

// --- union-find -------------------------------------------------------------

void UnionFind::reset(std::size_t n) {
  parent_.resize(n);
  size_.assign(n, 1);
  std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
}

std::uint32_t UnionFind::find(std::uint32_t v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];  // path halving
    v = parent_[v];
  }
  return v;
}

bool UnionFind::unite(std::uint32_t a, std::uint32_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

TrialOutcome sample_clusters(const Ball& ball, double p, std::uint64_t seed, std::uint64_t trial, UnionFind& uf) {
  const CounterRng rng(seed, trial);
  const int d = ball.degree();
  uf.reset(ball.size());
  TrialOutcome out;
  for (VertexId v = 0; v < ball.size(); ++v) {
    for (int g = 0; g < d; ++g) {
      const VertexId w = ball.neighbor(v, g);
      if (w == kNoVertex || w < v) continue;
      if (edge_open(rng, ball.edge_id(v, g), p)) {
        ++out.open_edges;
        uf.unite(v, w);
      }
    }
  }
  const std::uint32_t root = uf.find(0);
  out.root_size = uf.size_of(0);
  for (VertexId v = 0; v < ball.size(); ++v)
    if (uf.find(v) == root) out.reach = std::max(out.reach, ball.distance(v));
  out.touched_boundary = out.reach == ball.radius();
  return out;
}

// --- root exploration -------------------------------------------------------

RootExplorer::RootExplorer(const Ball& ball) : ball_(&ball), mark_(ball.size(), 0) {}

TrialOutcome RootExplorer::explore(double p, std::uint64_t seed, std::uint64_t trial) {
  if (++epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    epoch_ = 1;
  }
  const CounterRng rng(seed, trial);
  const int d = ball_->degree();
  queue_.clear();
  queue_.push_back(0);
  mark_[0] = epoch_;
  TrialOutcome out;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const VertexId v = queue_[head];
    out.reach = std::max(out.reach, ball_->distance(v));
    for (int g = 0; g < d; ++g) {
      const VertexId w = ball_->neighbor(v, g);
      if (w == kNoVertex || mark_[w] == epoch_) continue;
      if (!edge_open(rng, ball_->edge_id(v, g), p)) continue;
      mark_[w] = epoch_;
      queue_.push_back(w);
    }
  }
  out.root_size = queue_.size();
  out.touched_boundary = out.reach == ball_->radius();
  return out;
}

namespace {

// Reach of the root cluster, capped at `stop`: a depth-first search that
// returns as soon as a vertex at distance `stop` is found. Far cheaper than a
// full exploration for supercritical p.
class ReachProbe {
 public:
  explicit ReachProbe(const Ball& ball) : ball_(&ball), mark_(ball.size(), 0) {}

  int reach(double p, std::uint64_t seed, std::uint64_t trial, int stop) {
    if (++epoch_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      epoch_ = 1;
    }
    const CounterRng rng(seed, trial);
    const int d = ball_->degree();
    stack_.assign(1, 0);
    mark_[0] = epoch_;
    int best = 0;
    while (!stack_.empty()) {
      const VertexId v = stack_.back();
      stack_.pop_back();
      best = std::max(best, ball_->distance(v));
      if (best >= stop) return stop;
      for (int g = 0; g < d; ++g) {
        const VertexId w = ball_->neighbor(v, g);
        if (w == kNoVertex || mark_[w] == epoch_) continue;
        if (!edge_open(rng, ball_->edge_id(v, g), p)) continue;
        mark_[w] = epoch_;
        stack_.push_back(w);
      }
    }
    return best;
  }

 private:
  const Ball* ball_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  std::vector<VertexId> stack_;
};

std::vector<int> sample_reaches(const Ball& ball, const PercRun& run, double p, int stop) {
  return map_trials(
      run.trials, run.workers, [&] { return ReachProbe(ball); },
      [&](ReachProbe& probe, std::uint64_t t) { return probe.reach(p, run.seed, t, stop); });
}

CrossingEstimate crossing_from_reaches(const std::vector<int>& reaches, double p, int radius) {
  CrossingEstimate est;
  est.p = p;
  est.radius = radius;
  est.trials = reaches.size();
  for (int r : reaches) est.successes += r >= radius;
  est.estimate = est.trials ? static_cast<double>(est.successes) / est.trials : 0.0;
  est.ci = wilson_interval(est.successes, est.trials);
  return est;
}

}  // namespace

ClusterStats run_clusters(const Ball& ball, const PercRun& run) {
  run.validate();
  ClusterStats stats;
  stats.trials = run.trials;
  stats.outcomes = map_trials(
      run.trials, run.workers, [&] { return UnionFind(ball.size()); },
      [&](UnionFind& uf, std::uint64_t t) { return sample_clusters(ball, run.p, run.seed, t, uf); });
  std::vector<double> sizes;
  sizes.reserve(run.trials);
  for (const TrialOutcome& o : stats.outcomes) {
    sizes.push_back(static_cast<double>(o.root_size));
    stats.open_edges += o.open_edges;
    if (o.touched_boundary) {
      ++stats.touched;
      ++stats.crossings;
    } else {
      ++stats.histogram[o.root_size];
    }
  }
  stats.mean_size = mean_estimate(sizes);
  return stats;
}

std::vector<CrossingEstimate> crossing_curve(const Ball& ball, const PercRun& run, const std::vector<int>& radii) {
  run.validate();
  int stop = 0;
  for (int r : radii) {
    if (r < 0 || r > ball.radius()) throw std::invalid_argument("crossing radius outside the ball");
    stop = std::max(stop, r);
  }
  const std::vector<int> reaches = sample_reaches(ball, run, run.p, stop);
  std::vector<CrossingEstimate> out;
  for (int r : radii) out.push_back(crossing_from_reaches(reaches, run.p, r));
  return out;
}

CrossingEstimate crossing_probability(const Ball& ball, const PercRun& run) {
  return crossing_curve(ball, run, {ball.radius()}).front();
}

// --- p_c ------------------------------------------------------------------

namespace {

PcScanPoint inverse_crossing_point(const Ball& ball, const PercRun& run, double p, const std::vector<int>& radii) {
  const std::vector<int> reaches = sample_reaches(ball, run, p, radii[2]);
  double P[3];
  for (int i = 0; i < 3; ++i) P[i] = crossing_from_reaches(reaches, p, radii[i]).estimate;
  PcScanPoint pt;
  pt.p = p;
  if (P[2] == 0.0) {
    // No trial crossed the outer radius: as subcritical as the data can say.
    pt.statistic = std::numeric_limits<double>::infinity();
    return pt;
  }
  pt.statistic = 1.0 / P[0] - 2.0 / P[1] + 1.0 / P[2];
  // Nested events {reach >= r}: Cov(P_i, P_j) = (P_j - P_i P_j) / T for r_i <= r_j.
  const double g[3] = {-1.0 / (P[0] * P[0]), 2.0 / (P[1] * P[1]), -1.0 / (P[2] * P[2])};
  double var = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) var += g[i] * g[j] * (P[std::max(i, j)] - P[i] * P[j]);
  pt.se = std::sqrt(std::max(0.0, var) / static_cast<double>(run.trials));
  return pt;
}

// Largest significantly subcritical p and smallest significantly supercritical
// p over a scan; NaN when absent.
std::pair<double, double> bracket(const std::vector<PcScanPoint>& scan, double z) {
  double lo = std::numeric_limits<double>::quiet_NaN();
  double hi = std::numeric_limits<double>::quiet_NaN();
  for (const PcScanPoint& pt : scan) {
    if (pt.statistic > z * pt.se && !(pt.p <= lo)) lo = pt.p;
    if (pt.statistic < -z * pt.se && !(pt.p >= hi)) hi = pt.p;
  }
  return {lo, hi};
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  const long n = std::max(1L, std::lround((hi - lo) / step));
  for (long i = 0; i <= n; ++i) out.push_back(lo + (hi - lo) * static_cast<double>(i) / n);
  return out;
}

PcEstimate pc_inverse_crossing(const Ball& ball, const PercRun& run, const PcOptions& opt) {
  const int k = ball.radius() / 3;
  if (k < 1) throw std::invalid_argument("inverse-crossing p_c needs a ball radius of at least 3");
  PcEstimate est;
  est.method = PcMethod::InverseCrossing;
  est.radii = {k, 2 * k, 3 * k};

  // Coarse pass over the whole range, then a fine pass over the bracket.
  std::vector<PcScanPoint> coarse;
  for (double p : grid(opt.p_lo, opt.p_hi, std::max(opt.grid_step, 0.02)))
    coarse.push_back(inverse_crossing_point(ball, run, p, est.radii));
  auto [lo, hi] = bracket(coarse, opt.z);
  const double fine_lo = std::isnan(lo) ? opt.p_lo : lo;
  const double fine_hi = std::isnan(hi) ? opt.p_hi : hi;
  for (double p : grid(fine_lo, fine_hi, opt.grid_step))
    est.scan.push_back(inverse_crossing_point(ball, run, p, est.radii));
  std::tie(lo, hi) = bracket(est.scan, opt.z);

  if (std::isnan(lo)) {
    lo = fine_lo;
    est.warning += "no significantly subcritical point; lower end is the scan edge. ";
  }
  if (std::isnan(hi)) {
    hi = fine_hi;
    est.warning += "no significantly supercritical point; upper end is the scan edge. ";
  }
  if (lo > hi) {
    std::swap(lo, hi);
    est.warning += "non-monotone Monte Carlo signal; interval widened to cover both signs. ";
  }
  est.lo = lo;
  est.hi = hi;
  est.warning += "finite-size surrogate from radii " + std::to_string(est.radii[0]) + "," +
                 std::to_string(est.radii[1]) + "," + std::to_string(est.radii[2]);
  return est;
}

// Bisection for the first p at which `pred` holds; pred must be monotone in p,
// which the shared per-edge uniforms guarantee for crossing estimates.
template <typename Pred>
double first_true(double lo, double hi, Pred pred, int iterations = 30) {
  if (pred(lo)) return lo;
  if (!pred(hi)) return hi;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::pair<double, double> threshold_interval(const Ball& ball, const PercRun& run, const PcOptions& opt, int radius) {
  auto ci = [&](double p) { return crossing_from_reaches(sample_reaches(ball, run, p, radius), p, radius).ci; };
  const double lo = first_true(opt.p_lo, opt.p_hi, [&](double p) { return ci(p).hi > opt.theta_star; });
  const double hi = first_true(opt.p_lo, opt.p_hi, [&](double p) { return ci(p).lo >= opt.theta_star; });
  return {std::min(lo, hi), std::max(lo, hi)};
}

PcEstimate pc_threshold(const Ball& ball, const PercRun& run, const PcOptions& opt) {
  if (!(opt.theta_star > 0 && opt.theta_star < 1)) throw std::invalid_argument("theta* must lie in (0, 1)");
  const int R = ball.radius();
  const int R_half = std::max(1, R / 2);
  PcEstimate est;
  est.method = PcMethod::Threshold;
  est.radii = {R_half, R};
  std::tie(est.lo, est.hi) = threshold_interval(ball, run, opt, R);
  est.coarse_interval = threshold_interval(ball, run, opt, R_half);
  const double drift = 0.5 * (est.lo + est.hi) - 0.5 * (est.coarse_interval->first + est.coarse_interval->second);
  est.warning = "finite-size surrogate: P(0 <-> S_R) = theta* converges to theta^{-1}(theta*), not to p_c; drift "
                "from R/2 to R = " + std::to_string(drift);
  return est;
}

}  // namespace

PcEstimate estimate_pc(const Ball& ball, const PercRun& run, const PcOptions& options) {
  run.validate();
  if (!(options.p_lo < options.p_hi) || options.p_lo < 0 || options.p_hi > 1 || !(options.grid_step > 0))
    throw std::invalid_argument("p_c scan range must satisfy 0 <= p_lo < p_hi <= 1 with a positive step");
  return options.method == PcMethod::InverseCrossing ? pc_inverse_crossing(ball, run, options)
                                                     : pc_threshold(ball, run, options);
}

// --- theta ----------------------------------------------------------------

ThetaEstimate theta(const Ball& ball, const PercRun& run, const std::vector<int>& radii) {
  ThetaEstimate out;
  out.p = run.p;
  out.curve = crossing_curve(ball, run, radii);
  if (out.curve.empty()) return out;
  out.limit = out.curve.back().estimate;
  if (out.curve.size() >= 3) {
    const double x0 = out.curve[out.curve.size() - 3].estimate;
    const double x1 = out.curve[out.curve.size() - 2].estimate;
    const double x2 = out.curve.back().estimate;
    const double d1 = x1 - x0, d2 = x2 - x1;
    const double denom = d2 - d1;
    if (d1 < 0 && d2 < 0 && d2 > d1 && denom != 0) {
      out.limit = std::clamp(x2 - d2 * d2 / denom, 0.0, x2);
      out.extrapolated = true;
    }
  }
  return out;
}

// --- two-point --------------------------------------------------------------

std::optional<double> connection_bound(int degree, double p, double rho_ub, int distance) {
  const double d = degree;
  const double lambda = p * (d - 1) * rho_ub;
  if (!(lambda < 1) || !(rho_ub < 1)) return std::nullopt;
  if (distance == 0) return 1.0;
  return d * std::pow(lambda, distance) / ((d - 1) * (1 - rho_ub) * (1 - lambda));
}

TwoPoint two_point(const Ball& ball, const PercRun& run, VertexId x, std::optional<double> rho_ub) {
  run.validate();
  if (x >= ball.size()) throw std::invalid_argument("two-point target outside the ball");
  TwoPoint out;
  out.x = x;
  out.distance = ball.distance(x);
  const auto hits = map_trials(
      run.trials, run.workers, [&] { return RootExplorer(ball); },
      [&](RootExplorer& ex, std::uint64_t t) -> std::uint8_t {
        ex.explore(run.p, run.seed, t);
        return ex.in_cluster(x);
      });
  out.trials = run.trials;
  for (auto h : hits) out.hits += h;
  out.estimate = static_cast<double>(out.hits) / out.trials;
  out.ci = wilson_interval(out.hits, out.trials);
  if (ball.is_tree()) out.exact_tree = std::pow(run.p, out.distance);
  if (rho_ub) out.decay_bound = connection_bound(ball.degree(), run.p, *rho_ub, out.distance);
  return out;
}

// --- triangle diagram -------------------------------------------------------

std::string to_string(DiagramMethod m) {
  switch (m) {
    case DiagramMethod::ExactTree: return "exact-tree";
    case DiagramMethod::MonteCarlo: return "monte-carlo";
    case DiagramMethod::Census: return "census";
  }
  return "unknown";
}

std::optional<double> triangle_tail_bound(int degree, double p, double rho_ub, int truncation) {
  const double d = degree;
  const double lambda = p * (d - 1) * rho_ub;
  if (!(lambda < 1) || !(rho_ub < 1)) return std::nullopt;
  const double prefactor = std::pow(d / (d - 1), 3) / std::pow(1 - rho_ub, 3);
  // (s+1)(s+2)/2 triples (r1, r2, r3) have r1 + r2 + r3 = s.
  double sum = 0;
  double term = std::pow(lambda, truncation + 1);
  for (long s = truncation + 1; s < truncation + 10'000'000L; ++s) {
    const double add = 0.5 * (s + 1.0) * (s + 2.0) * term;
    sum += add;
    if (s > 3.0 / (1 - lambda) + truncation && add < 1e-17 * sum) break;
    term *= lambda;
    if (term == 0) break;
  }
  return prefactor * sum;
}

namespace {

void attach_triangle_tail(DiagramResult& r, std::optional<double> rho_ub) {
  r.rho_ub = rho_ub;
  if (!rho_ub) {
    r.note = "rho_ub missing; tail unavailable";
    return;
  }
  r.tail_ratio = r.p * (r.degree - 1) * *rho_ub;
  r.tail_bound = triangle_tail_bound(r.degree, r.p, *rho_ub, r.truncation);
  r.chain_tail = r.tail_bound;
  r.certified = r.tail_bound.has_value();
  if (!r.certified) r.note = "p (d-1) rho_ub >= 1; tail unavailable";
}

}  // namespace

DiagramResult triangle_diagram_tree(int degree, double p, int truncation, std::optional<double> rho_ub) {
  DiagramResult r;
  r.method = DiagramMethod::ExactTree;
  r.p = p;
  r.degree = degree;
  r.truncation = truncation;
  r.value = gw::triangle_truncated(degree, p, truncation);
  attach_triangle_tail(r, rho_ub);
  return r;
}

DiagramResult triangle_diagram_mc(const Ball& ball, const PercRun& run, int truncation, std::optional<double> rho_ub) {
  run.validate();
  if (2 * truncation > ball.radius())
    throw std::invalid_argument("Monte Carlo triangle needs a ball radius of at least twice the truncation");
  const auto clusters = map_trials(
      run.trials, run.workers, [&] { return RootExplorer(ball); },
      [&](RootExplorer& ex, std::uint64_t t) {
        ex.explore(run.p, run.seed, t);
        return ex.cluster();
      });
  std::vector<std::uint64_t> hits(ball.size(), 0);
  for (const auto& c : clusters)
    for (VertexId v : c) ++hits[v];
  const double T = static_cast<double>(run.trials);
  auto tau = [&](VertexId v) { return hits[v] / T; };
  auto rel_var = [&](VertexId v) {
    const double t = tau(v);
    return t > 0 ? (1 - t) / (t * T) : 0.0;  // (se / tau)^2
  };

  const GroupSpec& spec = ball.spec();
  const std::size_t inner = ball.level_end(truncation);
  std::vector<Word> inv(inner);
  std::vector<VertexId> inv_id(inner);
  for (VertexId v = 0; v < inner; ++v) {
    inv[v] = inverse(spec, ball.label(v));
    inv_id[v] = ball.find(inv[v]);
  }
  long double value = 0, var = 0;
  for (VertexId x = 0; x < inner; ++x) {
    if (hits[x] == 0) continue;
    for (VertexId y = 0; y < inner; ++y) {
      if (hits[y] == 0) continue;
      const VertexId xy = ball.find(multiply(spec, inv[x], ball.label(y)));
      if (xy == kNoVertex || hits[xy] == 0) continue;
      const double term = tau(x) * tau(xy) * tau(y);
      value += term;
      var += static_cast<long double>(term) * term * (rel_var(x) + rel_var(xy) + rel_var(y));
    }
  }
  DiagramResult r;
  r.method = DiagramMethod::MonteCarlo;
  r.p = run.p;
  r.degree = ball.degree();
  r.truncation = truncation;
  r.value = static_cast<double>(value);
  r.se = static_cast<double>(std::sqrt(var));
  attach_triangle_tail(r, rho_ub);
  if (r.note.empty()) r.note = "tau from clusters inside the ball (a lower estimate); tail covers pairs beyond the truncation";
  return r;
}

// --- witness ----------------------------------------------------------------

WitnessResult nonuniqueness_witness(const Ball& ball, const PercRun& run, int r_max) {
  run.validate();
  r_max = std::min(r_max, ball.radius());
  std::vector<VertexId> targets;
  for (int r = 1; r <= r_max; ++r) targets.push_back(static_cast<VertexId>(ball.level_end(r - 1)));

  struct Row {
    bool crossed = false;
    std::vector<std::uint8_t> hit;
  };
  const auto rows = map_trials(
      run.trials, run.workers, [&] { return RootExplorer(ball); },
      [&](RootExplorer& ex, std::uint64_t t) {
        const TrialOutcome o = ex.explore(run.p, run.seed, t);
        Row row;
        row.crossed = o.touched_boundary;
        for (VertexId x : targets) row.hit.push_back(ex.in_cluster(x));
        return row;
      });

  const double T = static_cast<double>(run.trials);
  std::uint64_t crossed = 0;
  for (const Row& r : rows) crossed += r.crossed;
  WitnessResult out;
  out.p = run.p;
  out.theta = crossed / T;
  out.theta_se = std::sqrt(out.theta * (1 - out.theta) / T);
  const double z95 = 1.6448536269514722;  // one-sided 95%
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::uint64_t hits = 0, both = 0;
    for (const Row& r : rows) {
      hits += r.hit[i];
      both += r.hit[i] && r.crossed;
    }
    WitnessRow w;
    w.distance = static_cast<int>(i) + 1;
    w.two_point = hits / T;
    w.two_point_se = std::sqrt(w.two_point * (1 - w.two_point) / T);
    w.margin = out.theta * out.theta - w.two_point;
    // Delta method on theta^2 - P with the joint counts.
    const double cov = (both / T - out.theta * w.two_point) / T;
    const double var = 4 * out.theta * out.theta * out.theta_se * out.theta_se +
                       w.two_point_se * w.two_point_se - 4 * out.theta * cov;
    w.margin_lo = w.margin - z95 * std::sqrt(std::max(0.0, var));
    if (!out.r0 && w.margin_lo > 0) out.r0 = w.distance;
    out.rows.push_back(w);
  }
  if (!out.r0) out.note = "inconclusive: no distance up to " + std::to_string(r_max) + " with a positive margin";
  return out;
}

// --- tails and susceptibility -----------------------------------------------

std::vector<std::uint64_t> log_grid(std::uint64_t n_max, int per_decade) {
  std::vector<std::uint64_t> out;
  const double step = std::pow(10.0, 1.0 / per_decade);
  for (double x = 1; x <= static_cast<double>(n_max) * (1 + 1e-12); x *= step) {
    const auto n = static_cast<std::uint64_t>(std::llround(x));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (n_max >= 1 && out.back() != n_max) out.push_back(n_max);
  return out;
}

TailCurve tail_from_sizes(const std::vector<std::uint64_t>& sizes, std::uint64_t n_max, double p,
                          const FitWindow& window) {
  TailCurve curve;
  curve.p = p;
  curve.trials = sizes.size();
  std::vector<std::uint64_t> sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> xs, ys;
  for (std::uint64_t n : log_grid(n_max)) {
    const auto at_least = sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), n);
    const double f = sorted.empty() ? 0.0 : static_cast<double>(at_least) / sorted.size();
    curve.points.push_back({n, f});
    xs.push_back(static_cast<double>(n));
    ys.push_back(f);
  }
  curve.fit = fit_loglog("delta", xs, ys, window.lo, window.hi, -0.5, window.residual_cutoff);
  return curve;
}

TailCurve cluster_size_tail_tree(int degree, const PercRun& run, std::uint64_t n_max, const FitWindow& window) {
  run.validate();
  const gw::ProgenySamples s = gw::sample_total_progeny(degree, run.p, n_max, run.trials, run.seed, run.workers);
  TailCurve curve = tail_from_sizes(s.sizes, n_max, run.p, window);
  curve.censored = s.censored;
  return curve;
}

TailCurve cluster_size_tail(const Ball& ball, const PercRun& run, std::uint64_t n_max, const FitWindow& window) {
  const ClusterStats stats = run_clusters(ball, run);
  std::vector<std::uint64_t> sizes;
  for (const TrialOutcome& o : stats.outcomes)
    sizes.push_back(o.touched_boundary ? std::numeric_limits<std::uint64_t>::max() : o.root_size);
  TailCurve curve = tail_from_sizes(sizes, n_max, run.p, window);
  curve.censored = stats.touched;
  return curve;
}

std::vector<SusceptibilityPoint> susceptibility_tree(int degree, const std::vector<double>& p_grid,
                                                     const PercRun& run, std::uint64_t cap) {
  std::vector<SusceptibilityPoint> out;
  for (double p : p_grid) {
    PercRun r = run;
    r.p = p;
    r.validate();
    const gw::ProgenySamples s = gw::sample_total_progeny(degree, p, cap, r.trials, r.seed, r.workers);
    std::vector<double> v(s.sizes.begin(), s.sizes.end());
    SusceptibilityPoint pt;
    pt.p = p;
    pt.mean = mean_estimate(v);
    pt.censored = s.censored;
    pt.exact = gw::mean_cluster_size(degree, p);
    out.push_back(pt);
  }
  return out;
}

std::vector<SusceptibilityPoint> susceptibility(const Ball& ball, const std::vector<double>& p_grid,
                                                const PercRun& run) {
  std::vector<SusceptibilityPoint> out;
  for (double p : p_grid) {
    PercRun r = run;
    r.p = p;
    const ClusterStats stats = run_clusters(ball, r);
    SusceptibilityPoint pt;
    pt.p = p;
    pt.mean = stats.mean_size;
    pt.censored = stats.touched;
    if (ball.spec().is_tree()) pt.exact = gw::mean_cluster_size(ball.degree(), p);
    out.push_back(pt);
  }
  return out;
}

namespace {

ExponentFit fit_against_distance(std::string name, const std::vector<double>& ps, const std::vector<double>& values,
                                 double pc, bool below, double target, const FitWindow& window) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (window.hi > window.lo && (ps[i] < window.lo || ps[i] > window.hi)) continue;
    xs.push_back(below ? pc - ps[i] : ps[i] - pc);
    ys.push_back(values[i]);
  }
  if (xs.empty()) {
    ExponentFit f;
    f.name = std::move(name);
    f.target = target;
    f.diagnostic = "empty fit window";
    return f;
  }
  const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  return fit_loglog(std::move(name), xs, ys, *mn, *mx, target, window.residual_cutoff);
}

}  // namespace

ExponentFit fit_gamma(const std::vector<SusceptibilityPoint>& points, double pc_lo, double pc_hi,
                      const FitWindow& window) {
  std::vector<double> ps, vs;
  for (const auto& pt : points) {
    if (window.hi > window.lo && (pt.p < window.lo || pt.p > window.hi)) continue;
    if (pt.p >= pc_lo) {
      ExponentFit f;
      f.name = "gamma";
      f.target = -1;
      f.window_lo = window.lo;
      f.window_hi = window.hi;
      f.diagnostic = "sweep reaches the p_c interval";
      return f;
    }
    ps.push_back(pt.p);
    vs.push_back(pt.mean.mean);
  }
  return fit_against_distance("gamma", ps, vs, 0.5 * (pc_lo + pc_hi), true, -1.0, window);
}

ExponentFit fit_beta(const std::vector<double>& p_grid, const std::vector<double>& theta_values, double pc_lo,
                     double pc_hi, const FitWindow& window) {
  for (double p : p_grid) {
    if (window.hi > window.lo && (p < window.lo || p > window.hi)) continue;
    if (p <= pc_hi) {
      ExponentFit f;
      f.name = "beta";
      f.target = 1;
      f.window_lo = window.lo;
      f.window_hi = window.hi;
      f.diagnostic = "sweep reaches the p_c interval";
      return f;
    }
  }
  return fit_against_distance("beta", p_grid, theta_values, 0.5 * (pc_lo + pc_hi), false, 1.0, window);
}

}  // namespace girthlab
