#include "../oracles.hpp"
#include "girthlab/walk_kernels.hpp"

#include <doctest.h>

#include <cmath>

using namespace girthlab;

namespace {

std::vector<int> orders_of(const GroupSpec& s) {
  std::vector<int> out;
  for (const auto& f : s.factors) out.push_back(f.order);
  return out;
}

VertexId word_vertex(const Ball& b, std::vector<Syllable> syl) { return b.find(normal_form(b.spec(), syl)); }

}  // namespace

TEST_CASE("simple walk examples") {
  const Ball zz = build_ball(parse_group_spec("Z*Z"), 4);
  const auto exact = srw_kernel<BigInt>(zz, 4);
  CHECK(exact_probability(exact, 1, word_vertex(zz, {{0, 1}})) == Rational(1, 4));
  CHECK(exact_probability(exact, 2, 0) == Rational(1, 4));

  const Ball z5 = build_ball(parse_group_spec("Z5*Z5"), 4);
  CHECK(exact_probability(srw_kernel<BigInt>(z5, 4), 2, 0) == Rational(1, 4));
}

TEST_CASE("simple walk matches path expansion oracle") {
  for (const char* text : {"Z5*Z5", "Z3*Z3", "Z2*Z2*Z2"}) {
    const GroupSpec spec = parse_group_spec(text);
    const int R = 5;
    const Ball b = build_ball(spec, R);
    const oracle::CayleyBall o(orders_of(spec), R);
    const auto table = srw_kernel<BigInt>(b, R);
    for (int n = 0; n <= R; ++n) {
      const auto ref = oracle::srw_exact(o, n);
      Rational total_lib = 0, total_ref = 0;
      for (VertexId v = 0; v < b.size(); ++v) total_lib += exact_probability(table, n, v);
      for (const auto& x : ref) total_ref += x;
      CHECK(total_lib == total_ref);
      CHECK(exact_probability(table, n, 0) == ref[0]);
    }
  }
}

TEST_CASE("non-backtracking walk examples") {
  const Ball zz = build_ball(parse_group_spec("Z*Z"), 6);
  const auto q = nbw_kernel<BigInt>(zz, 6);
  for (int n = 1; n <= 6; ++n) CHECK(q.at(n, 0) == 0);
  for (VertexId v = zz.level_end(2); v < zz.level_end(3); ++v) CHECK(exact_probability(q, 3, v) == Rational(1, 36));

  const GroupSpec z5spec = parse_group_spec("Z5*Z5");
  const Ball z5 = build_ball(z5spec, 5);
  const auto q5 = nbw_kernel<BigInt>(z5, 5);
  CHECK(exact_probability(q5, 5, 0) == Rational(1, 81));
  // oracle: closed non-backtracking 5-walks at the root
  CHECK(oracle::nbw_returns(oracle::CayleyBall(orders_of(z5spec), 3), 5) == 4);
}

TEST_CASE("mass conservation up to the validity horizon") {
  for (const char* text : {"Z*Z", "Z5*Z5", "Z2*Z2*Z2"}) {
    const Ball b = build_ball(parse_group_spec(text), 6);
    const auto fe = srw_kernel<double>(b, 9);
    const auto fn = nbw_kernel<double>(b, 9);
    const auto ee = srw_kernel<BigInt>(b, 9);
    const auto en = nbw_kernel<BigInt>(b, 9);
    CHECK(fe.valid_horizon == 6);
    for (int n = 0; n <= 6; ++n) {
      CHECK(mass_defect(fe, n) <= 1e-12);
      CHECK(mass_defect(fn, n) <= 1e-12);
      CHECK(mass_conserved(ee, n));
      CHECK(mass_conserved(en, n));
      for (VertexId v = 0; v < b.size(); ++v) {
        CHECK(fe.at(n, v) >= 0);
        CHECK(fe.at(n, v) <= 1);
      }
    }
  }
}

TEST_CASE("parity and tree-exact NBW values below the girth") {
  const Ball b = build_ball(parse_group_spec("Z*Z"), 5);
  const auto p = srw_kernel<double>(b, 5);
  const auto q = nbw_kernel<double>(b, 5);
  for (int n = 0; n <= 5; ++n)
    for (VertexId v = 0; v < b.size(); ++v) {
      if ((n - b.distance(v)) % 2 != 0) CHECK(p.at(n, v) == 0);
      if (b.distance(v) == n && n > 0) CHECK(q.at(n, v) == doctest::Approx(1.0 / (4 * std::pow(3, n - 1))));
    }
}

TEST_CASE("kernel values do not depend on the ball radius") {
  const GroupSpec spec = parse_group_spec("Z5*Z5");
  const Ball small = build_ball(spec, 4), large = build_ball(spec, 6);
  const auto ps = srw_kernel<BigInt>(small, 4), pl = srw_kernel<BigInt>(large, 4);
  const auto qs = nbw_kernel<BigInt>(small, 4), ql = nbw_kernel<BigInt>(large, 4);
  for (int n = 0; n <= 4; ++n)
    for (VertexId v = 0; v < small.size(); ++v) {
      CHECK(ps.at(n, v) == pl.at(n, v));
      CHECK(qs.at(n, v) == ql.at(n, v));
    }
}

TEST_CASE("spectral radius on trees") {
  CHECK(kesten_rho(4) == doctest::Approx(0.8660254037844386));
  CHECK(kesten_rho(3) == doctest::Approx(oracle::kesten(3)));
  for (const char* text : {"Z*Z", "Z2*Z2*Z2"}) {
    const GroupSpec spec = parse_group_spec(text);
    const RhoEstimate est = estimate_spectral_radius(spec, 200, std::nullopt);
    REQUIRE(est.upper_bound);
    CHECK(*est.upper_bound == doctest::Approx(oracle::kesten(spec.degree())));
    CHECK(est.provenance == RhoProvenance::ExactFormula);
    CHECK_FALSE(est.contradicts_upper_bound());
    CHECK(est.lower_bound <= *est.upper_bound);
  }
  // radial chain agrees with the full kernel at small n
  const Ball b = build_ball(parse_group_spec("Z*Z"), 6);
  const auto p = srw_kernel<double>(b, 12);
  const auto radial = radial_return_probabilities(4, 12);
  for (int n = 0; n <= 12; ++n) CHECK(radial[n] == doctest::Approx(p.at(n, 0)).epsilon(1e-12));
}

TEST_CASE("spectral radius provenance off trees") {
  const GroupSpec spec = parse_group_spec("Z5*Z5");
  const RhoEstimate none = estimate_spectral_radius(spec, 12, std::nullopt);
  CHECK_FALSE(none.upper_bound);
  CHECK(none.provenance == RhoProvenance::Missing);
  const RhoEstimate user = estimate_spectral_radius(spec, 12, 0.8965);
  CHECK(user.provenance == RhoProvenance::UserSupplied);
  CHECK_FALSE(user.contradicts_upper_bound());
  const RhoEstimate wrong = estimate_spectral_radius(spec, 12, 0.5);
  CHECK(wrong.contradicts_upper_bound());
}

// The bound 0.8965 supplied for Z5*Z5 rests on a positive function f with
// P f <= lambda f, which gives rho <= lambda. f is a product over syllables:
// a for a syllable of graph length 1, b for length 2. Checked vertex by
// vertex on a ball.
TEST_CASE("superharmonic witness for the Z5*Z5 spectral radius bound") {
  const double a = 0.57912, b = 0.40573;
  const GroupSpec spec = parse_group_spec("Z5*Z5");
  const Ball ball = build_ball(spec, 9);
  auto f = [&](VertexId v) {
    const Word w = ball.label(v);
    double value = 1;
    for (const Syllable& s : w.syllables) {
      const int e = s.exponent;
      const int len = std::min(e, 5 - e);
      value *= len == 1 ? a : b;
    }
    return value;
  };
  double worst = 0;
  for (VertexId v = 0; v < ball.level_end(7); ++v) {
    double pf = 0;
    for (VertexId u : ball.neighbors(v)) pf += f(u);
    worst = std::max(worst, pf / 4 / f(v));
  }
  const double lambda = std::max({a, (b + 1) / (4 * a) + a / 2, (a + b) / (4 * b) + a / 2});
  CHECK(lambda < 0.8965);
  CHECK(worst <= lambda + 1e-12);
}

TEST_CASE("walk inequalities hold with margins") {
  const Ball zz = build_ball(parse_group_spec("Z*Z"), 6);
  const LemmaCheck tail = check_lemma_nbw_tail(zz, 6, kesten_rho(4), Arithmetic::Exact);
  CHECK(tail.passed());
  CHECK(tail.id == "nbw-srw-tail");
  const LemmaCheck rho = check_lemma_nbw_rho(zz, 6, kesten_rho(4), Arithmetic::Float);
  CHECK(rho.passed());
  // n = 0: 1 <= 1/(1-rho)
  CHECK(rho.steps[0].lhs == 1);
  CHECK(rho.steps[0].rhs == doctest::Approx(1 / (1 - kesten_rho(4))));
  // n = 3 at distance 3: 1/36 <= rho^3/(1-rho)
  CHECK(std::pow(kesten_rho(4), 3) / (1 - kesten_rho(4)) == doctest::Approx(4.849).epsilon(1e-3));

  const Ball z5 = build_ball(parse_group_spec("Z5*Z5"), 6);
  CHECK(check_lemma_nbw_tail(z5, 6, 0.8965, Arithmetic::Exact).passed());
  CHECK(check_lemma_nbw_rho(z5, 6, 0.8965, Arithmetic::Exact).passed());
  // a bound far below the true rho is caught
  CHECK(check_lemma_nbw_rho(z5, 6, 0.3, Arithmetic::Float).violations > 0);
}
