#include "../oracles.hpp"
#include "girthlab/saw.hpp"
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

std::shared_ptr<const Ball> ball_of(const char* text, int R) {
  return std::make_shared<const Ball>(build_ball(parse_group_spec(text), R));
}

}  // namespace

TEST_CASE("census values") {
  const SawCensus zz = enumerate_saw(ball_of("Z*Z", 6), 6, 2);
  CHECK(zz.counts[0] == 1);
  CHECK(zz.counts[3] == 36);
  const SawCensus tri = enumerate_saw(ball_of("Z2*Z2*Z2", 6), 6);
  CHECK(tri.counts[3] == 12);

  const SawCensus z5 = enumerate_saw(ball_of("Z5*Z5", 7), 7, 4);
  CHECK(z5.counts[5] == 320);
  // below the girth every non-backtracking word is self-avoiding
  for (int n = 0; n < 5; ++n) CHECK(z5.counts[n] == nonbacktracking_count(4, n));
  CHECK(z5.counts[5] < nonbacktracking_count(4, 5));

  CHECK_THROWS_AS(enumerate_saw(ball_of("Z*Z", 3), 4), std::invalid_argument);
  CHECK_THROWS(tree_saw_census(parse_group_spec("Z5*Z5"), 4));
}

TEST_CASE("census agrees with the recursive oracle") {
  for (const char* text : {"Z5*Z5", "Z3*Z3", "Z2*Z2*Z2", "Z4*Z4"}) {
    const GroupSpec spec = parse_group_spec(text);
    const int N = 7;
    const auto ball = ball_of(text, N);
    const SawCensus c = enumerate_saw(ball, N, 3);
    const oracle::CayleyBall o(orders_of(spec), N);
    for (int n = 0; n <= N; ++n) {
      CHECK(c.counts[n] == oracle::saw_count(o, n));
      std::uint64_t sum = 0;
      for (std::uint64_t x : c.endpoint[n]) sum += x;
      CHECK(c.counts[n] == sum);
    }
    // endpoint multisets agree (vertex indexing differs between the two)
    for (int n : {3, 6}) {
      std::multiset<std::uint64_t> lib, ref;
      for (std::uint64_t x : c.endpoint[n])
        if (x) lib.insert(x);
      for (const auto& [v, k] : oracle::saw_endpoints(o, n)) ref.insert(k);
      CHECK(lib == ref);
    }
  }
}

TEST_CASE("worker count does not change the census") {
  const auto ball = ball_of("Z5*Z5", 8);
  const SawCensus a = enumerate_saw(ball, 8, 1), b = enumerate_saw(ball, 8, 6);
  CHECK(a.counts == b.counts);
  CHECK(a.endpoint == b.endpoint);
}

TEST_CASE("submultiplicativity and connective constant bounds") {
  const SawCensus z5 = enumerate_saw(ball_of("Z5*Z5", 10), 10, 4);
  for (int m = 1; m <= 10; ++m)
    for (int n = 1; m + n <= 10; ++n) CHECK(z5.counts[m + n] <= z5.counts[m] * z5.counts[n]);
  const MuBounds mu = connective_constant(z5);
  CHECK_FALSE(mu.tree_exact);
  CHECK(mu.best < std::pow(4 * std::pow(3.0, 9), 0.1));
  CHECK(mu.best > 2);
  for (double s : mu.sequence) CHECK(mu.best <= s);

  const MuBounds tree = connective_constant(tree_saw_census(parse_group_spec("Z*Z"), 50));
  REQUIRE(tree.tree_exact);
  CHECK(*tree.tree_exact == 3);
  CHECK(tree.value() == 3);
  CHECK(tree.best >= 3);
}

TEST_CASE("endpoint law") {
  const SawCensus zz = enumerate_saw(ball_of("Z*Z", 6), 6);
  const EndpointLaw one = saw_endpoint_law(zz, 1);
  CHECK(one.sup == doctest::Approx(0.25));
  CHECK(one.table.size() == 4);
  for (int n = 1; n <= 6; ++n) {
    const EndpointLaw law = saw_endpoint_law(zz, n);
    CHECK(law.max_multiplicity == 1);
    CHECK(law.sup == doctest::Approx(1 / (4 * std::pow(3.0, n - 1))));
  }
  const EndpointLaw z5 = saw_endpoint_law(enumerate_saw(ball_of("Z5*Z5", 6), 6), 5);
  CHECK(z5.c_n == 320);
  CHECK(z5.max_multiplicity >= 1);
}

TEST_CASE("endpoint decay and speed on trees") {
  const SawCensus zz = enumerate_saw(ball_of("Z*Z", 10), 10, 4);
  const double rho = kesten_rho(4);
  const DecayCheck decay = endpoint_decay(zz, 3, rho);
  CHECK(decay.epsilon == doctest::Approx(default_epsilon(4, 3, rho)));
  CHECK(decay.lambda < 1);
  CHECK(decay.passed);
  const SpeedCurve speed = saw_speed_exact(zz, decay);
  for (const SpeedPoint& p : speed.points) {
    CHECK(p.exact == doctest::Approx(1));
    CHECK(p.mass_below <= p.mass_bound + 1e-12);
  }
  CHECK(speed.alpha > 0);
  CHECK(speed.alpha_ratio < 1);
}

TEST_CASE("Rosenbluth sampler") {
  const Ball zz = build_ball(parse_group_spec("Z*Z"), 8);
  const RosenbluthResult tree = rosenbluth_sampler(zz, 8, PercRun{0, 200, 3, 4});
  for (int k = 0; k <= 8; ++k) {
    CHECK(tree.lengths[k].weight.mean == doctest::Approx(static_cast<double>(k == 0 ? 1 : 4 * std::pow(3, k - 1))));
    CHECK(tree.lengths[k].weight.se == doctest::Approx(0).epsilon(1e-9));
    CHECK(tree.lengths[k].speed == doctest::Approx(k == 0 ? 0 : 1));
  }
  const Ball z5 = build_ball(parse_group_spec("Z5*Z5"), 6);
  const RosenbluthResult r = rosenbluth_sampler(z5, 6, PercRun{0, 20000, 17, 8});
  const MeanEstimate& w5 = r.lengths[5].weight;
  CHECK(std::abs(w5.mean - 320) <= 3 * w5.se);
  const RosenbluthResult again = rosenbluth_sampler(z5, 6, PercRun{0, 20000, 17, 2});
  CHECK(again.lengths[5].weight.mean == w5.mean);
}

TEST_CASE("Green function and susceptibility") {
  const SawCensus zz = enumerate_saw(ball_of("Z*Z", 8), 8);
  const GreenTable g = green_function(zz, 1.0 / 3, kesten_rho(4));
  for (VertexId v = 0; v < zz.ball->level_end(8); ++v)
    CHECK(g.vertex[v] == doctest::Approx(std::pow(3.0, -zz.ball->distance(v))));

  const GreenTable zero = green_function(zz, 0, kesten_rho(4));
  CHECK(zero.chi == 1);
  CHECK(zero.vertex[0] == 1);
  for (VertexId v = 1; v < zero.vertex.size(); ++v) CHECK(zero.vertex[v] == 0);

  const SawCensus big = tree_saw_census(parse_group_spec("Z*Z"), 400);
  for (double z : {0.1, 0.2, 0.3}) {
    const GreenTable t = green_function(big, z, kesten_rho(4));
    REQUIRE(t.chi_tail);
    const double closed = 1 + 4 * z / (1 - 3 * z);
    CHECK(t.chi <= closed + 1e-12);
    CHECK(closed <= t.chi + *t.chi_tail + 1e-12);
  }

  const ChiCurve curve = susceptibility_saw(big, {0.0, 0.1, 0.2, 0.3, 0.33}, 3);
  // chi (1/mu - z) = (1 + z)/(1 - 3 z) (1/3 - z) = (1 + z)/3 on the tree
  for (const ChiPoint& p : curve.points) {
    const double exact = (1 + p.z) / 3;
    if (p.z <= 0.3) CHECK(p.ratio_lo == doctest::Approx(exact).epsilon(1e-6));
    CHECK(p.ratio_lo <= exact + 1e-12);
    CHECK(exact <= p.ratio_hi + 1e-12);
  }
  CHECK(curve.bounded);
  CHECK_THROWS_AS(susceptibility_saw(big, {0.2, 1.0 / 3}, 3), std::invalid_argument);
}

TEST_CASE("bubble diagram") {
  const SawCensus tree = tree_saw_census(parse_group_spec("Z*Z"), 40);
  const DiagramResult b = bubble_diagram(tree, 1.0 / 3, kesten_rho(4));
  CHECK(b.value == doctest::Approx(5.0 / 3).epsilon(1e-9));
  REQUIRE(b.tail_bound);
  CHECK(*b.tail_bound < 1e-3);
  CHECK(b.value <= 5.0 / 3 + 1e-12);
  CHECK(5.0 / 3 <= b.value + *b.tail_bound + 1e-15);

  const DiagramResult at_zero = bubble_diagram(tree, 0, kesten_rho(4));
  CHECK(at_zero.value == 1);

  double prev = 0;
  for (double z : {0.05, 0.1, 0.2, 0.3}) {
    const double v = bubble_diagram(tree, z, kesten_rho(4)).value;
    CHECK(v > prev);
    prev = v;
  }

  // enumerated census: chain bound only certifies when z (d-1) rho < 1
  const SawCensus z5 = enumerate_saw(ball_of("Z5*Z5", 8), 8, 4);
  const DiagramResult e = bubble_diagram(z5, 0.2, 0.8965);
  CHECK(e.value >= 1);
  CHECK(e.tail_ratio == doctest::Approx(0.2 * 3 * 0.8965));
  CHECK(e.certified);
  CHECK_FALSE(bubble_diagram(z5, 0.4, 0.8965).certified);
}
