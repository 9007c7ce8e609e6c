#include "girthlab/walk_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace girthlab {

std::string to_string(WalkKind kind) { return kind == WalkKind::Simple ? "SRW" : "NBW"; }

std::string to_string(RhoProvenance p) {
  switch (p) {
    case RhoProvenance::ExactFormula: return "exact-formula";
    case RhoProvenance::UserSupplied: return "user-supplied";
    case RhoProvenance::Missing: break;
  }
  return "missing";
}

BigInt walk_denominator(WalkKind kind, int degree, int n) {
  if (n == 0) return 1;
  BigInt out = 1;
  if (kind == WalkKind::Simple) {
    for (int i = 0; i < n; ++i) out *= degree;
  } else {
    out = degree;
    for (int i = 1; i < n; ++i) out *= degree - 1;
  }
  return out;
}

Rational exact_probability(const ExactKernel& table, int n, VertexId v) {
  return Rational(table.at(n, v), walk_denominator(table.kind, table.degree, n));
}

namespace {

// Mass carried along one arc: probabilities are divided by the number of
// choices, counts are copied.
template <typename Scalar>
inline Scalar split(const Scalar& mass, int ways) {
  if constexpr (std::is_floating_point_v<Scalar>)
    return mass / ways;
  else
    return mass;
}

}  // namespace

template <typename Scalar>
KernelTable<Scalar> srw_kernel(const Ball& ball, int steps) {
  if (steps < 0) throw std::invalid_argument("kernel horizon must be non-negative");
  KernelTable<Scalar> table;
  table.kind = WalkKind::Simple;
  table.horizon = steps;
  table.valid_horizon = std::min(steps, ball.radius());
  table.degree = ball.degree();
  const int d = ball.degree();

  table.steps.resize(steps + 1);
  table.steps[0].assign(1, Scalar{1});
  for (int n = 0; n < steps; ++n) {
    const auto& cur = table.steps[n];
    auto& next = table.steps[n + 1];
    next.assign(ball.level_end(n + 1), Scalar{0});
    for (VertexId v = 0; v < cur.size(); ++v) {
      if (cur[v] == 0) continue;
      const Scalar share = split(cur[v], d);
      for (VertexId w : ball.neighbors(v))
        if (w != kNoVertex) next[w] += share;
    }
  }
  return table;
}

template <typename Scalar>
KernelTable<Scalar> nbw_kernel(const Ball& ball, int steps) {
  if (steps < 0) throw std::invalid_argument("kernel horizon must be non-negative");
  const int d = ball.degree();
  if (d < 3) throw std::invalid_argument("non-backtracking walk needs degree >= 3");
  KernelTable<Scalar> table;
  table.kind = WalkKind::NonBacktracking;
  table.horizon = steps;
  table.valid_horizon = std::min(steps, ball.radius());
  table.degree = d;

  table.steps.resize(steps + 1);
  table.steps[0].assign(1, Scalar{1});
  if (steps == 0) return table;

  // arc[v*d + k]: mass at v having arrived through generator k.
  std::vector<Scalar> arc(ball.level_end(1) * d, Scalar{0});
  for (int k = 0; k < d; ++k) {
    VertexId w = ball.neighbor(0, k);
    if (w != kNoVertex) arc[std::size_t{w} * d + k] = split(Scalar{1}, d);
  }
  auto record = [&](int n) {
    auto& out = table.steps[n];
    out.assign(arc.size() / d, Scalar{0});
    for (std::size_t v = 0; v < out.size(); ++v)
      for (int k = 0; k < d; ++k) out[v] += arc[v * d + k];
  };
  record(1);
  for (int n = 1; n < steps; ++n) {
    std::vector<Scalar> next(ball.level_end(n + 1) * d, Scalar{0});
    const std::size_t nv = arc.size() / d;
    for (VertexId v = 0; v < nv; ++v) {
      for (int k = 0; k < d; ++k) {
        const Scalar& mass = arc[std::size_t{v} * d + k];
        if (mass == 0) continue;
        const Scalar share = split(mass, d - 1);
        const int back = ball.inverse_generator(k);
        for (int j = 0; j < d; ++j) {
          if (j == back) continue;
          VertexId w = ball.neighbor(v, j);
          if (w != kNoVertex) next[std::size_t{w} * d + j] += share;
        }
      }
    }
    arc = std::move(next);
    record(n + 1);
  }
  return table;
}

template FloatKernel srw_kernel<double>(const Ball&, int);
template ExactKernel srw_kernel<BigInt>(const Ball&, int);
template FloatKernel nbw_kernel<double>(const Ball&, int);
template ExactKernel nbw_kernel<BigInt>(const Ball&, int);

double mass_defect(const FloatKernel& table, int n) {
  long double sum = 0;
  for (double p : table.steps[n]) sum += p;
  return static_cast<double>(std::fabs(sum - 1.0L));
}

bool mass_conserved(const ExactKernel& table, int n) {
  BigInt sum = 0;
  for (const auto& c : table.steps[n]) sum += c;
  return sum == walk_denominator(table.kind, table.degree, n);
}

// --- spectral radius ------------------------------------------------------

double kesten_rho(int degree) { return 2.0 * std::sqrt(static_cast<double>(degree - 1)) / degree; }

std::vector<double> radial_return_probabilities(int degree, int steps) {
  if (degree < 2) throw std::invalid_argument("radial chain needs degree >= 2");
  std::vector<double> out(steps + 1, 0.0);
  std::vector<long double> cur(steps + 2, 0.0L), next(steps + 2, 0.0L);
  cur[0] = 1;
  out[0] = 1;
  const long double up = static_cast<long double>(degree - 1) / degree;
  const long double down = 1.0L / degree;
  for (int n = 1; n <= steps; ++n) {
    std::fill(next.begin(), next.end(), 0.0L);
    const int reach = std::min(n - 1, steps);
    for (int r = 0; r <= reach; ++r) {
      if (cur[r] == 0) continue;
      if (r == 0) {
        next[1] += cur[0];
      } else {
        next[r + 1] += cur[r] * up;
        next[r - 1] += cur[r] * down;
      }
    }
    std::swap(cur, next);
    out[n] = static_cast<double>(cur[0]);
  }
  return out;
}

bool RhoEstimate::contradicts_upper_bound() const {
  if (!upper_bound) return false;
  for (double s : sequence)
    if (s > *upper_bound) return true;
  return false;
}

std::pair<std::optional<double>, RhoProvenance> certified_rho(const GroupSpec& spec,
                                                              std::optional<double> user_rho_ub) {
  if (spec.is_tree() && spec.degree() >= 2) return {kesten_rho(spec.degree()), RhoProvenance::ExactFormula};
  if (user_rho_ub) return {user_rho_ub, RhoProvenance::UserSupplied};
  return {std::nullopt, RhoProvenance::Missing};
}

RhoEstimate estimate_spectral_radius(const GroupSpec& spec, int steps, std::optional<double> user_rho_ub,
                                     BallOptions options) {
  steps -= steps % 2;
  RhoEstimate est;
  std::vector<double> returns;
  if (spec.is_tree()) {
    returns = radial_return_probabilities(spec.degree(), steps);
  } else {
    // A walk of length 2n that returns never leaves the ball of radius n.
    Ball ball = build_ball(spec, steps / 2, options);
    FloatKernel srw = srw_kernel<double>(ball, steps);
    returns.resize(steps + 1);
    for (int n = 0; n <= steps; ++n) returns[n] = srw.at(n, 0);
  }
  for (int n = 2; n <= steps; n += 2) {
    const double s = returns[n] > 0 ? std::exp(std::log(returns[n]) / n) : 0.0;
    est.sequence.push_back(s);
    est.lower_bound = std::max(est.lower_bound, s);
  }
  auto [ub, prov] = certified_rho(spec, user_rho_ub);
  est.upper_bound = ub;
  est.provenance = prov;
  return est;
}

// --- walk inequalities ----------------------------------------------------

double LemmaCheck::worst_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : steps) m = std::min(m, s.margin);
  return m;
}

namespace {

constexpr double kFloatSlack = 1e-12;

std::vector<VertexId> resolve_test_set(std::span<const VertexId> test_set, std::size_t size) {
  if (!test_set.empty()) return {test_set.begin(), test_set.end()};
  std::vector<VertexId> all(size);
  for (VertexId v = 0; v < size; ++v) all[v] = v;
  return all;
}

void require_rho(double rho_ub) {
  if (!(rho_ub > 0 && rho_ub < 1)) throw std::invalid_argument("walk inequality checks need 0 < rho_ub < 1");
}

}  // namespace

template <typename Scalar>
LemmaCheck check_nbw_tail(const KernelTable<Scalar>& srw, const KernelTable<Scalar>& nbw, int steps,
                          double rho_ub, std::span<const VertexId> test_set) {
  require_rho(rho_ub);
  constexpr bool exact = !std::is_floating_point_v<Scalar>;
  LemmaCheck check;
  check.id = "nbw-srw-tail";
  check.arithmetic = exact ? Arithmetic::Exact : Arithmetic::Float;
  check.rho_ub = rho_ub;
  const int J = srw.valid_horizon;
  check.tail_horizon = J;
  const int last = std::min({steps, J, nbw.valid_horizon});
  const double tail = std::pow(rho_ub, J + 1) / (1 - rho_ub);

  const std::size_t span = std::max(srw.steps[J].size(), nbw.steps[last].size());
  const std::vector<VertexId> vertices = resolve_test_set(test_set, span);

  // suffix[x] = sum_{j=n}^{J} p^j(0,x); exact mode keeps it scaled by d^J.
  std::vector<Scalar> suffix(span, Scalar{0});
  std::vector<double> suffix_f(exact ? span : 0, 0.0);
  const int d = srw.degree;
  const BigInt scale_J = exact ? walk_denominator(WalkKind::Simple, d, J) : BigInt{1};

  check.steps.resize(last + 1);
  for (int n = J; n >= 0; --n) {
    const auto& row = srw.steps[n];
    if constexpr (exact) {
      const BigInt factor = walk_denominator(WalkKind::Simple, d, J - n);
      const double inv_den = 1.0 / std::pow(static_cast<double>(d), n);
      for (VertexId x = 0; x < row.size(); ++x)
        if (row[x] != 0) {
          suffix[x] += row[x] * factor;
          suffix_f[x] += row[x].template convert_to<double>() * inv_den;
        }
    } else {
      for (VertexId x = 0; x < row.size(); ++x) suffix[x] += row[x];
    }
    if (n > last) continue;

    LemmaStep st;
    st.n = n;
    st.margin = std::numeric_limits<double>::infinity();
    const BigInt nbw_den = exact ? walk_denominator(WalkKind::NonBacktracking, d, n) : BigInt{1};
    for (VertexId x : vertices) {
      double lhs, rhs, margin;
      const Scalar q = nbw.at(n, x);
      if constexpr (exact) {
        const double s = x < span ? suffix_f[x] : 0.0;
        lhs = to_double(Rational(q, nbw_den));
        rhs = s + tail;
        if (q == 0) {
          margin = rhs;
        } else {
          margin = to_double(Rational(suffix[x], scale_J) - Rational(q, nbw_den)) + tail;
        }
      } else {
        lhs = q;
        rhs = (x < span ? suffix[x] : 0.0) + tail;
        margin = rhs - lhs;
      }
      ++check.checks;
      const bool bad = exact ? margin < 0 : margin < -kFloatSlack;
      if (bad) ++st.violations;
      if (margin < st.margin) {
        st.margin = margin;
        st.lhs = lhs;
        st.rhs = rhs;
        st.worst_vertex = x;
      }
    }
    check.violations += st.violations;
    check.steps[n] = st;
  }
  return check;
}

template <typename Scalar>
LemmaCheck check_nbw_rho(const KernelTable<Scalar>& nbw, int steps, double rho_ub,
                         std::span<const VertexId> test_set) {
  require_rho(rho_ub);
  constexpr bool exact = !std::is_floating_point_v<Scalar>;
  LemmaCheck check;
  check.id = "nbw-rho";
  check.arithmetic = exact ? Arithmetic::Exact : Arithmetic::Float;
  check.rho_ub = rho_ub;
  check.tail_horizon = nbw.valid_horizon;
  const int last = std::min(steps, nbw.valid_horizon);
  const std::vector<VertexId> vertices = resolve_test_set(test_set, nbw.steps[last].size());
  for (int n = 0; n <= last; ++n) {
    const double rhs = std::pow(rho_ub, n) / (1 - rho_ub);
    LemmaStep st;
    st.n = n;
    st.rhs = rhs;
    st.margin = std::numeric_limits<double>::infinity();
    for (VertexId x : vertices) {
      const double lhs = probability(nbw, n, x);
      const double margin = rhs - lhs;
      ++check.checks;
      if (exact ? margin < 0 : margin < -kFloatSlack) ++st.violations;
      if (margin < st.margin) {
        st.margin = margin;
        st.lhs = lhs;
        st.worst_vertex = x;
      }
    }
    check.violations += st.violations;
    check.steps.push_back(st);
  }
  return check;
}

template LemmaCheck check_nbw_tail<double>(const FloatKernel&, const FloatKernel&, int, double,
                                           std::span<const VertexId>);
template LemmaCheck check_nbw_tail<BigInt>(const ExactKernel&, const ExactKernel&, int, double,
                                           std::span<const VertexId>);
template LemmaCheck check_nbw_rho<double>(const FloatKernel&, int, double, std::span<const VertexId>);
template LemmaCheck check_nbw_rho<BigInt>(const ExactKernel&, int, double, std::span<const VertexId>);

LemmaCheck check_lemma_nbw_tail(const Ball& ball, int steps, double rho_ub, Arithmetic arithmetic) {
  const int horizon = std::max(steps, ball.radius());
  if (arithmetic == Arithmetic::Exact)
    return check_nbw_tail(srw_kernel<BigInt>(ball, horizon), nbw_kernel<BigInt>(ball, steps), steps, rho_ub);
  return check_nbw_tail(srw_kernel<double>(ball, horizon), nbw_kernel<double>(ball, steps), steps, rho_ub);
}

LemmaCheck check_lemma_nbw_rho(const Ball& ball, int steps, double rho_ub, Arithmetic arithmetic) {
  if (arithmetic == Arithmetic::Exact) return check_nbw_rho(nbw_kernel<BigInt>(ball, steps), steps, rho_ub);
  return check_nbw_rho(nbw_kernel<double>(ball, steps), steps, rho_ub);
}

}  // namespace girthlab
