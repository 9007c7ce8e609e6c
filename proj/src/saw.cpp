#include "girthlab/saw.hpp"

#include "girthlab/counter_rng.hpp"
#include "girthlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace girthlab {

BigInt nonbacktracking_count(int degree, int n) {
  if (n == 0) return 1;
  BigInt c = degree;
  for (int k = 1; k < n; ++k) c *= degree - 1;
  return c;
}

// --- census -------------------------------------------------------------------

namespace {

class SawEnumerator {
 public:
  SawEnumerator(const Ball& ball, int n_max) : ball_(ball), n_max_(n_max), on_path_(ball.size(), 0) {
    counts_.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) counts_[n].assign(ball.level_end(n), 0);
  }

  void run_from(VertexId first) {
    on_path_[0] = 1;
    visit(first, 1);
    on_path_[0] = 0;
  }

  std::vector<std::vector<std::uint64_t>>& counts() { return counts_; }

 private:
  void visit(VertexId v, int depth) {
    ++counts_[depth][v];
    if (depth == n_max_) return;
    on_path_[v] = 1;
    for (VertexId w : ball_.neighbors(v))
      if (w != kNoVertex && !on_path_[w]) visit(w, depth + 1);
    on_path_[v] = 0;
  }

  const Ball& ball_;
  int n_max_;
  std::vector<std::uint8_t> on_path_;
  std::vector<std::vector<std::uint64_t>> counts_;
};

}  // namespace

SawCensus enumerate_saw(std::shared_ptr<const Ball> ball, int n_max, int workers) {
  if (!ball) throw std::invalid_argument("census needs a ball");
  if (n_max < 0 || n_max > ball->radius())
    throw std::invalid_argument("census length " + std::to_string(n_max) + " exceeds the ball radius " +
                                std::to_string(ball->radius()));
  SawCensus census;
  census.spec = ball->spec();
  census.degree = ball->degree();
  census.n_max = n_max;
  census.ball = ball;
  census.endpoint.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) census.endpoint[n].assign(ball->level_end(n), 0);
  census.endpoint[0][0] = 1;

  if (n_max >= 1) {
    // One task per first step; each owns its tables and the merge is a sum.
    const auto parts = map_trials(
        static_cast<std::uint64_t>(ball->degree()), workers, [] { return 0; },
        [&](int&, std::uint64_t g) {
          SawEnumerator e(*ball, n_max);
          const VertexId first = ball->neighbor(0, static_cast<int>(g));
          if (first != kNoVertex) e.run_from(first);
          return std::move(e.counts());
        });
    for (const auto& part : parts)
      for (int n = 1; n <= n_max; ++n)
        for (std::size_t v = 0; v < part[n].size(); ++v) census.endpoint[n][v] += part[n][v];
  }

  census.counts.assign(n_max + 1, 0);
  for (int n = 0; n <= n_max; ++n)
    for (std::uint64_t c : census.endpoint[n]) census.counts[n] += c;
  return census;
}

SawCensus tree_saw_census(const GroupSpec& spec, int n_max) {
  if (!spec.is_tree()) throw std::invalid_argument("tree census requires a spec whose Cayley graph is a tree");
  SawCensus census;
  census.spec = spec;
  census.degree = spec.degree();
  census.n_max = n_max;
  census.tree_formula = true;
  census.counts.reserve(n_max + 1);
  census.counts.push_back(1);
  for (int n = 1; n <= n_max; ++n)
    census.counts.push_back(n == 1 ? BigInt(census.degree) : census.counts.back() * (census.degree - 1));
  return census;
}

MuBounds connective_constant(const SawCensus& census) {
  MuBounds mu;
  mu.best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= census.n_max; ++n) {
    const double v = std::exp(log_big(census.counts[n]) / n);
    mu.sequence.push_back(v);
    if (v < mu.best) {
      mu.best = v;
      mu.best_n = n;
    }
  }
  if (census.spec.is_tree()) mu.tree_exact = census.degree - 1;
  return mu;
}

// --- endpoint law -------------------------------------------------------------

EndpointLaw saw_endpoint_law(const SawCensus& census, int n) {
  if (n < 0 || n > census.n_max) throw std::invalid_argument("endpoint law beyond the census");
  EndpointLaw law;
  law.n = n;
  law.c_n = census.counts[n];
  if (census.tree_formula) {
    law.max_multiplicity = 1;
    law.sup = std::exp(-log_big(law.c_n));
    return law;
  }
  const auto& row = census.endpoint[n];
  for (VertexId v = 0; v < row.size(); ++v) {
    if (row[v] == 0) continue;
    law.table.emplace_back(v, row[v]);
    if (row[v] > law.max_multiplicity) {
      law.max_multiplicity = row[v];
      law.argmax = v;
    }
  }
  law.sup = to_double(Rational(BigInt(law.max_multiplicity), law.c_n));
  return law;
}

double default_epsilon(int degree, double mu_hat, double rho_ub) {
  const double gap = 1.0 / ((degree - 1) * rho_ub) - 1.0 / mu_hat;
  return gap > 0 ? 0.5 * gap : 0.0;
}

DecayCheck endpoint_decay(const SawCensus& census, double mu_hat, double rho_ub, std::optional<double> epsilon) {
  const double d = census.degree;
  DecayCheck check;
  check.mu_hat = mu_hat;
  check.epsilon = epsilon.value_or(default_epsilon(census.degree, mu_hat, rho_ub));
  check.lambda = (1.0 / mu_hat + check.epsilon) * (d - 1) * rho_ub;
  check.condition = check.lambda < 1 && rho_ub < 1;

  bool all_within = true;
  std::vector<double> ns, logs;
  for (int n = 1; n <= census.n_max; ++n) {
    DecayRow row;
    row.n = n;
    row.sup = saw_endpoint_law(census, n).sup;
    const double log_bound =
        std::log(d / ((d - 1) * (1 - rho_ub))) + n * std::log((d - 1) * rho_ub) - log_big(census.counts[n]);
    row.bound = std::exp(log_bound);
    row.within = rho_ub < 1 && row.sup <= row.bound * (1 + 1e-12);
    all_within = all_within && row.within;
    if (check.lambda > 0) check.constant = std::max(check.constant, row.sup / std::pow(check.lambda, n));
    if (2 * n > census.n_max) {
      ns.push_back(n);
      logs.push_back(std::log(row.sup));
    }
    check.rows.push_back(row);
  }
  if (ns.size() >= 2) check.fitted_rate = std::exp(least_squares(ns, logs).slope);
  check.passed = check.condition && all_within && !check.rows.empty() && check.fitted_rate < 1;
  return check;
}

SpeedCurve saw_speed_exact(const SawCensus& census, const DecayCheck& decay, std::optional<double> alpha) {
  const double d = census.degree;
  SpeedCurve curve;
  if (alpha)
    curve.alpha = *alpha;
  else if (decay.lambda > 0 && decay.lambda < 1)
    curve.alpha = 0.5 * (-std::log(decay.lambda) / std::log(d - 1));
  curve.alpha_ratio = std::pow(d - 1, curve.alpha) * decay.lambda;
  curve.mass_vanishes = decay.condition && curve.alpha > 0 && curve.alpha_ratio < 1;

  std::vector<double> ns, dists;
  for (int n = 1; n <= census.n_max; ++n) {
    SpeedPoint pt;
    pt.n = n;
    const double cut = curve.alpha * n;
    const EndpointLaw law = saw_endpoint_law(census, n);
    if (census.tree_formula) {
      pt.exact = 1.0;
      pt.mass_below = n <= cut ? 1.0 : 0.0;
    } else {
      BigInt weighted = 0, below = 0;
      const Ball& ball = *census.ball;
      for (const auto& [v, c] : law.table) {
        weighted += BigInt(c) * ball.distance(v);
        if (ball.distance(v) <= cut) below += c;
      }
      pt.exact = to_double(Rational(weighted, law.c_n * n));
      pt.mass_below = to_double(Rational(below, law.c_n));
    }
    // |B_r| <= d (d-1)^r / (d-2) on any d-regular graph
    pt.mass_bound = d / (d - 2) * std::pow(d - 1, cut) * law.sup;
    ns.push_back(n);
    dists.push_back(pt.exact * n);
    curve.points.push_back(pt);
  }
  curve.nu = fit_loglog("nu", ns, dists, 1, census.n_max, 1.0, 0.05);
  return curve;
}

// --- Rosenbluth ---------------------------------------------------------------

RosenbluthResult rosenbluth_sampler(const Ball& ball, int n, const PercRun& run) {
  run.validate();
  if (n < 1) throw std::invalid_argument("Rosenbluth length must be at least 1");
  if (n > ball.radius()) throw std::invalid_argument("Rosenbluth length exceeds the ball radius");

  struct Scratch {
    std::vector<std::uint8_t> on_path;
    std::vector<VertexId> path;
  };
  struct Sample {
    std::vector<double> weight;  // weight[k] for k = 0..n
    std::vector<int> dist;
  };
  const int d = ball.degree();
  if (d > 64) throw std::invalid_argument("Rosenbluth sampler supports degree <= 64");
  const auto samples = map_trials(
      run.trials, run.workers, [&] { return Scratch{std::vector<std::uint8_t>(ball.size(), 0), {}}; },
      [&](Scratch& s, std::uint64_t t) {
        StreamRng rng(run.seed, t);
        Sample out;
        out.weight.assign(n + 1, 0.0);
        out.dist.assign(n + 1, 0);
        out.weight[0] = 1.0;
        s.path.assign(1, 0);
        s.on_path[0] = 1;
        double w = 1.0;
        VertexId options[64];
        for (int k = 1; k <= n; ++k) {
          const VertexId v = s.path.back();
          int m = 0;
          for (int g = 0; g < d; ++g) {
            const VertexId u = ball.neighbor(v, g);
            if (u != kNoVertex && !s.on_path[u]) options[m++] = u;
          }
          if (m == 0) break;  // dead end: this and longer weights stay 0
          w *= m;
          const VertexId next = options[rng.below(static_cast<std::uint64_t>(m))];
          s.on_path[next] = 1;
          s.path.push_back(next);
          out.weight[k] = w;
          out.dist[k] = ball.distance(next);
        }
        for (VertexId v : s.path) s.on_path[v] = 0;
        return out;
      });

  RosenbluthResult res;
  res.n = n;
  res.trials = run.trials;
  bool any_alive = false;
  for (int k = 0; k <= n; ++k) {
    RosenbluthLength len;
    len.n = k;
    std::vector<double> w;
    w.reserve(samples.size());
    long double wsum = 0, wdist = 0;
    for (const Sample& s : samples) {
      w.push_back(s.weight[k]);
      wsum += s.weight[k];
      wdist += static_cast<long double>(s.weight[k]) * s.dist[k];
      len.dead += s.weight[k] == 0;
    }
    len.weight = mean_estimate(w);
    len.speed = (k > 0 && wsum > 0) ? static_cast<double>(wdist / wsum) / k : 0.0;
    if (k == n) any_alive = wsum > 0;
    res.lengths.push_back(len);
  }
  if (!any_alive) throw std::runtime_error("every Rosenbluth sample dead-ended before length " + std::to_string(n));
  return res;
}

// --- generating functions -------------------------------------------------------

namespace {

// c_n z^n without overflow.
double term(const BigInt& c, double z, int n) {
  if (n == 0) return c.convert_to<double>();
  if (z == 0) return 0.0;
  return std::exp(log_big(c) + n * std::log(z));
}

std::optional<double> vertex_tail(int degree, double z, double rho_ub, int n_max) {
  const double d = degree;
  const double ratio = z * (d - 1) * rho_ub;
  if (!(ratio < 1) || !(rho_ub < 1)) return std::nullopt;
  return d / ((d - 1) * (1 - rho_ub)) * std::pow(ratio, n_max + 1) / (1 - ratio);
}

}  // namespace

GreenTable green_function(const SawCensus& census, double z, std::optional<double> rho_ub) {
  if (z < 0) throw std::invalid_argument("fugacity must be non-negative");
  GreenTable g;
  g.z = z;
  g.n_max = census.n_max;
  g.degree = census.degree;

  long double chi = 0, below_m = 0;
  for (int n = 0; n <= census.n_max; ++n) {
    const double t = term(census.counts[n], z, n);
    chi += t;
    if (n < census.n_max) below_m += t;
  }
  g.chi = static_cast<double>(chi);
  // n = q m + r with q >= 1 and 0 <= r < m gives c_n z^n <= (c_m z^m)^q c_r z^r.
  const int m = census.n_max;
  if (m >= 1) {
    const double a = term(census.counts[m], z, m);
    if (a < 1) g.chi_tail = a / (1 - a) * static_cast<double>(below_m);
  }

  if (census.has_endpoints()) {
    g.vertex.assign(census.endpoint[census.n_max].size(), 0.0);
    for (int n = 0; n <= census.n_max; ++n) {
      const double zn = n == 0 ? 1.0 : std::pow(z, n);
      const auto& row = census.endpoint[n];
      for (VertexId v = 0; v < row.size(); ++v)
        if (row[v]) g.vertex[v] += static_cast<double>(row[v]) * zn;
    }
  }
  if (rho_ub) {
    g.tail_ratio = z * (census.degree - 1) * *rho_ub;
    g.vertex_tail = vertex_tail(census.degree, z, *rho_ub, census.n_max);
  }
  g.certified = g.chi_tail.has_value() && g.vertex_tail.has_value();
  return g;
}

ChiCurve susceptibility_saw(const SawCensus& census, const std::vector<double>& z_grid, double mu) {
  ChiCurve curve;
  curve.mu = mu;
  curve.lower = std::numeric_limits<double>::infinity();
  curve.upper = 0;
  for (double z : z_grid) {
    if (z < 0 || z >= 1.0 / mu)
      throw std::invalid_argument("fugacity " + std::to_string(z) + " outside [0, 1/mu)");
    const GreenTable g = green_function(census, z, std::nullopt);
    ChiPoint pt;
    pt.z = z;
    pt.chi = g.chi;
    pt.tail = g.chi_tail;
    const double gap = 1.0 / mu - z;
    pt.ratio_lo = g.chi * gap;
    pt.ratio_hi = g.chi_tail ? (g.chi + *g.chi_tail) * gap : std::numeric_limits<double>::infinity();
    curve.lower = std::min(curve.lower, pt.ratio_lo);
    curve.upper = std::max(curve.upper, pt.ratio_hi);
    curve.points.push_back(pt);
  }
  curve.bounded = !curve.points.empty() && curve.lower > 0 && std::isfinite(curve.upper);
  return curve;
}

std::optional<double> bubble_chain_tail(int degree, double z, double rho_ub, int truncation) {
  const double d = degree;
  const double lambda = z * (d - 1) * rho_ub;
  if (!(lambda < 1) || !(rho_ub < 1)) return std::nullopt;
  const double prefactor = (d / (d - 1)) * (d / (d - 1)) / ((1 - rho_ub) * (1 - rho_ub));
  // s + 1 pairs (n, m) have n + m = s.
  double sum = 0;
  double power = std::pow(lambda, truncation + 1);
  for (long s = truncation + 1; s < truncation + 10'000'000L; ++s) {
    const double add = (s + 1.0) * power;
    sum += add;
    if (s > 2.0 / (1 - lambda) + truncation && add < 1e-17 * sum) break;
    power *= lambda;
    if (power == 0) break;
  }
  return prefactor * sum;
}

DiagramResult bubble_diagram(const SawCensus& census, double z, std::optional<double> rho_ub) {
  if (z < 0) throw std::invalid_argument("fugacity must be non-negative");
  DiagramResult r;
  r.p = z;
  r.degree = census.degree;
  r.truncation = census.n_max;
  r.rho_ub = rho_ub;
  if (rho_ub) {
    r.tail_ratio = z * (census.degree - 1) * *rho_ub;
    r.chain_tail = bubble_chain_tail(census.degree, z, *rho_ub, census.n_max);
  }

  if (census.tree_formula) {
    // G_z(x) = z^{|x|}, so B = sum_r |S_r| z^{2r}; the remainder is geometric.
    r.method = DiagramMethod::ExactTree;
    long double value = 0;
    for (int n = 0; n <= census.n_max; ++n) value += term(census.counts[n], z * z, n);
    r.value = static_cast<double>(value);
    const double d = census.degree;
    const double u = (d - 1) * z * z;
    if (u < 1) r.tail_bound = d / (d - 1) * std::pow(u, census.n_max + 1) / (1 - u);
    r.note = "tail is the exact tree remainder";
  } else {
    r.method = DiagramMethod::Census;
    const GreenTable g = green_function(census, z, rho_ub);
    long double value = 0;
    for (double v : g.vertex) value += static_cast<long double>(v) * v;
    r.value = static_cast<double>(value);
    r.tail_bound = r.chain_tail;
    if (!rho_ub) r.note = "rho_ub missing; tail unavailable";
    else if (!r.tail_bound) r.note = "z (d-1) rho_ub >= 1; tail unavailable";
  }
  r.certified = r.tail_bound.has_value();
  return r;
}

}  // namespace girthlab
