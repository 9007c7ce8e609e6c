#include "../oracles.hpp"
#include "girthlab/ball.hpp"
#include "girthlab/counter_rng.hpp"
#include "girthlab/group.hpp"

#include <doctest.h>

#include <sstream>

using namespace girthlab;

namespace {

std::vector<int> orders_of(const GroupSpec& s) {
  std::vector<int> out;
  for (const auto& f : s.factors) out.push_back(f.order);
  return out;
}

}  // namespace

TEST_CASE("parse_group_spec degrees and errors") {
  CHECK(parse_group_spec("Z*Z").degree() == 4);
  CHECK(parse_group_spec("Z2*Z2*Z2").degree() == 3);
  CHECK(parse_group_spec("Z5*Z5").degree() == 4);
  CHECK(parse_group_spec("Z5*Z5").to_string() == "Z5*Z5");
  CHECK(parse_group_spec("Z").amenable());
  CHECK_THROWS_AS(parse_group_spec("Z1*Z5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("Z*"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("Q3"), std::invalid_argument);
}

TEST_CASE("normal_form examples") {
  const GroupSpec zz = parse_group_spec("Z*Z");
  const std::vector<Syllable> cancel = {{0, 1}, {0, -1}};
  CHECK(normal_form(zz, cancel).is_identity());

  const GroupSpec z5 = parse_group_spec("Z5*Z5");
  const std::vector<Syllable> a6 = {{0, 6}};
  CHECK(normal_form(z5, a6) == Word{{{0, 1}}});
  const std::vector<Syllable> abba = {{0, 1}, {1, 1}, {1, 4}, {0, 1}};
  CHECK(normal_form(z5, abba) == Word{{{0, 2}}});

  const std::vector<Syllable> bad = {{2, 1}};
  CHECK_THROWS_AS(normal_form(z5, bad), std::out_of_range);
}

TEST_CASE("normal_form is idempotent on random sequences") {
  for (const char* text : {"Z*Z", "Z5*Z5", "Z2*Z3*Z", "Z3*Z3*Z4"}) {
    const GroupSpec spec = parse_group_spec(text);
    StreamRng rng(7, 0);
    for (int t = 0; t < 500; ++t) {
      std::vector<Syllable> seq(rng.below(12));
      for (auto& s : seq) {
        s.factor = static_cast<int>(rng.below(spec.factors.size()));
        s.exponent = static_cast<std::int32_t>(rng.below(21)) - 10;
      }
      const Word w = normal_form(spec, seq);
      CHECK(normal_form(spec, w.syllables) == w);
      // multiplication by the inverse returns to the identity
      CHECK(multiply(spec, w, inverse(spec, w)).is_identity());
    }
  }
}

TEST_CASE("ball sizes") {
  CHECK(build_ball(parse_group_spec("Z*Z"), 2).size() == 17);
  CHECK(build_ball(parse_group_spec("Z5*Z5"), 2).size() == 17);
  for (const char* text : {"Z*Z", "Z5*Z5", "Z2*Z2*Z2"}) {
    const Ball b = build_ball(parse_group_spec(text), 0);
    CHECK(b.size() == 1);
    CHECK(b.edge_count() == 0);
  }
  CHECK_THROWS_AS(build_ball(parse_group_spec("Z*Z"), 12, {1000}), BallTooLarge);
}

TEST_CASE("ball agrees with the word-level oracle") {
  for (const char* text : {"Z*Z", "Z5*Z5", "Z3*Z3", "Z2*Z2*Z2", "Z2*Z4"}) {
    const GroupSpec spec = parse_group_spec(text);
    const int R = 5;
    const Ball b = build_ball(spec, R);
    const oracle::CayleyBall o(orders_of(spec), R);
    REQUIRE(b.size() == o.size());
    for (VertexId v = 0; v < b.size(); ++v) {
      // same distance multiset and degree everywhere but the boundary
      if (b.distance(v) < R) {
        int inside = 0;
        for (VertexId u : b.neighbors(v)) inside += u != kNoVertex;
        CHECK(inside == b.degree());
      }
    }
    for (int r = 0; r <= R; ++r) {
      std::size_t count = 0;
      for (int dd : o.dist) count += dd == r;
      CHECK(b.sphere_size(r) == count);
    }
  }
}

TEST_CASE("girth against the BFS oracle") {
  CHECK(girth(parse_group_spec("Z5*Z5"), 6).exact);
  CHECK(girth(parse_group_spec("Z5*Z5"), 6).value == 5);
  CHECK(girth(parse_group_spec("Z3*Z3"), 6).value == 3);
  const GirthReport tree = girth(parse_group_spec("Z*Z"), 10);
  CHECK_FALSE(tree.exact);
  CHECK(tree.value == 20);
  CHECK(tree.to_string() == "> 20");
  for (int m = 3; m <= 9; ++m) {
    const std::string text = "Z" + std::to_string(m) + "*Z" + std::to_string(m);
    const GroupSpec spec = parse_group_spec(text);
    const GirthReport g = girth(spec, 6);
    CHECK(g.exact);
    CHECK(g.value == m);
    CHECK(oracle::bfs_girth(oracle::CayleyBall(orders_of(spec), (m + 1) / 2 + 1)) == m);
  }
}

TEST_CASE("sphere sizes below the girth") {
  for (const char* text : {"Z*Z", "Z2*Z2*Z2", "Z7*Z7"}) {
    const GroupSpec spec = parse_group_spec(text);
    const int d = spec.degree();
    const auto sizes = sphere_sizes(spec, 10);
    const int g = spec.structural_girth();
    BigInt expect = d;
    for (int r = 1; r <= 10; ++r) {
      if (g == 0 || 2 * r < g) CHECK(sizes[r] == expect);
      expect *= d - 1;
    }
  }
}

TEST_CASE("tree balls match the vertex-count formula") {
  for (const char* text : {"Z*Z", "Z2*Z2*Z2", "Z*Z2"}) {
    const GroupSpec spec = parse_group_spec(text);
    const int d = spec.degree();
    for (int R = 1; R <= 7; ++R) {
      const Ball b = build_ball(spec, R);
      CHECK(b.is_tree());
      std::size_t expect = 1 + d * (static_cast<std::size_t>(std::pow(d - 1, R)) - 1) / (d - 2);
      CHECK(b.size() == expect);
    }
  }
}

TEST_CASE("Cayley symmetry: left translation preserves adjacency") {
  const GroupSpec spec = parse_group_spec("Z5*Z5");
  const int R = 6, r = 2;
  const Ball big = build_ball(spec, R);
  // Re-root at every vertex g of the radius-2 sphere: x -> g x maps the
  // radius-(R-2) ball around the identity into the big ball, preserving arcs.
  for (VertexId g = 1; g < big.level_end(r); ++g) {
    const Word gw = big.label(g);
    for (VertexId x = 0; x < big.level_end(R - r - 1); ++x) {
      const VertexId gx = big.find(multiply(spec, gw, big.label(x)));
      REQUIRE(gx != kNoVertex);
      for (int k = 0; k < big.degree(); ++k) {
        const VertexId y = big.neighbor(x, k);
        CHECK(big.neighbor(gx, k) == big.find(multiply(spec, gw, big.label(y))));
      }
    }
  }
}

TEST_CASE("edge list export") {
  const Ball b = build_ball(parse_group_spec("Z*Z"), 2);
  std::ostringstream out;
  b.write_edge_list(out);
  const std::string s = out.str();
  CHECK(s.rfind("#", 0) == 0);
  std::size_t lines = 0;
  for (char c : s) lines += c == '\n';
  CHECK(lines == 1 + b.edge_count());
  CHECK(b.edge_count() == 16);
}
