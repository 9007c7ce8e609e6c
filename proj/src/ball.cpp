#include "girthlab/ball.hpp"

#include <algorithm>
#include <deque>

namespace girthlab {

std::string GirthReport::to_string() const {
  return exact ? std::to_string(value) : "> " + std::to_string(value);
}

std::vector<BigInt> sphere_sizes(const GroupSpec& spec, int radius) {
  // ending[L][f]: normal-form words of length L whose last syllable is in factor f.
  const int nf = static_cast<int>(spec.factors.size());
  std::vector<std::vector<BigInt>> syllables_of_length(nf, std::vector<BigInt>(radius + 1));
  for (int f = 0; f < nf; ++f) {
    const Factor& fac = spec.factors[f];
    for (int k = 1; k <= radius; ++k) {
      if (fac.infinite())
        syllables_of_length[f][k] = 2;
      else if (2 * k < fac.order)
        syllables_of_length[f][k] = 2;
      else if (2 * k == fac.order)
        syllables_of_length[f][k] = 1;
    }
  }
  std::vector<std::vector<BigInt>> ending(radius + 1, std::vector<BigInt>(nf));
  std::vector<BigInt> sizes(radius + 1);
  if (radius >= 0) sizes[0] = 1;
  for (int L = 1; L <= radius; ++L) {
    for (int f = 0; f < nf; ++f) {
      BigInt c = syllables_of_length[f][L];
      for (int k = 1; k < L; ++k) {
        if (syllables_of_length[f][k] == 0) continue;
        BigInt others = 0;
        for (int g = 0; g < nf; ++g)
          if (g != f) others += ending[L - k][g];
        c += syllables_of_length[f][k] * others;
      }
      ending[L][f] = c;
      sizes[L] += c;
    }
  }
  return sizes;
}

std::uint64_t Ball::key(VertexId prefix, int factor, std::int32_t exponent) {
  return (std::uint64_t{prefix} << 24) | (std::uint64_t(factor & 0xff) << 16) |
         std::uint64_t(static_cast<std::uint16_t>(exponent + 32768));
}

VertexId Ball::lookup(VertexId prefix, int factor, std::int32_t exponent) const {
  auto it = index_.find(key(prefix, factor, exponent));
  return it == index_.end() ? kNoVertex : it->second;
}

std::size_t Ball::level_end(int r) const {
  if (r < 0) return 0;
  if (r > radius_) r = radius_;
  return level_end_[r];
}

Word Ball::label(VertexId v) const {
  Word w;
  while (v != 0) {
    w.syllables.push_back(last_[v]);
    v = prefix_[v];
  }
  std::reverse(w.syllables.begin(), w.syllables.end());
  return w;
}

VertexId Ball::find(const Word& w) const {
  VertexId v = 0;
  for (const auto& s : w.syllables) {
    v = lookup(v, s.factor, s.exponent);
    if (v == kNoVertex) return kNoVertex;
  }
  return v;
}

std::uint64_t Ball::edge_id(VertexId v, int gen) const {
  VertexId w = neighbor(v, gen);
  if (w < v) return std::uint64_t{w} * degree_ + inverse_generator(gen);
  return std::uint64_t{v} * degree_ + gen;
}

void Ball::write_edge_list(std::ostream& out) const {
  out << "# R=" << radius_ << " d=" << degree_ << " girth" << (girth_.exact ? "=" : ">")
      << girth_.value << " vertices=" << size() << " edges=" << edge_count_ << '\n';
  for (VertexId v = 0; v < size(); ++v)
    for (int k = 0; k < degree_; ++k) {
      VertexId w = neighbor(v, k);
      if (w != kNoVertex && v < w) out << v << ' ' << w << '\n';
    }
}

Ball build_ball(const GroupSpec& spec, int radius, BallOptions options) {
  if (radius < 0) throw std::invalid_argument("ball radius must be non-negative");
  if (radius > 30000) throw std::invalid_argument("ball radius too large");

  BigInt projected = 0;
  for (const auto& s : sphere_sizes(spec, radius)) projected += s;
  if (projected > options.max_vertices) {
    throw BallTooLarge("ball of radius " + std::to_string(radius) + " for " + spec.to_string() +
                       " has " + projected.str() + " vertices, above the cap of " +
                       std::to_string(options.max_vertices));
  }
  const auto n = static_cast<std::size_t>(projected);

  Ball ball;
  ball.spec_ = spec;
  ball.gens_ = generators(spec);
  ball.radius_ = radius;
  ball.degree_ = spec.degree();
  const int d = ball.degree_;

  ball.prefix_.reserve(n);
  ball.last_.reserve(n);
  ball.distance_.reserve(n);
  ball.bfs_parent_.reserve(n);
  ball.adjacency_.assign(n * d, kNoVertex);
  ball.index_.reserve(n);

  ball.prefix_.push_back(kNoVertex);
  ball.last_.push_back({});
  ball.distance_.push_back(0);
  ball.bfs_parent_.push_back(kNoVertex);

  int shortest_cycle = 0;
  int current_level = 0;
  for (VertexId v = 0; v < ball.distance_.size(); ++v) {
    const int dv = ball.distance_[v];
    if (dv != current_level) {
      ball.level_end_.push_back(v);
      current_level = dv;
    }
    for (int k = 0; k < d; ++k) {
      const Generator& g = ball.gens_[k];
      VertexId prefix = v;
      std::int32_t exponent = g.exponent;
      if (v != 0 && ball.last_[v].factor == g.factor) {
        exponent = reduce_exponent(spec.factors[g.factor], std::int64_t{ball.last_[v].exponent} + g.exponent);
        prefix = ball.prefix_[v];
      }
      VertexId w;
      if (exponent == 0) {
        w = prefix;
      } else {
        w = ball.lookup(prefix, g.factor, exponent);
        if (w == kNoVertex && dv < radius) {
          w = static_cast<VertexId>(ball.distance_.size());
          ball.prefix_.push_back(prefix);
          ball.last_.push_back({g.factor, exponent});
          ball.distance_.push_back(static_cast<std::uint16_t>(dv + 1));
          ball.bfs_parent_.push_back(v);
          ball.index_.emplace(Ball::key(prefix, g.factor, exponent), w);
        }
      }
      ball.adjacency_[std::size_t{v} * d + k] = w;
      if (w == kNoVertex) continue;
      if (v < w) ++ball.edge_count_;
      const bool tree_edge = ball.bfs_parent_[w] == v || ball.bfs_parent_[v] == w;
      if (!tree_edge) {
        int len = dv + ball.distance_[w] + 1;
        if (shortest_cycle == 0 || len < shortest_cycle) shortest_cycle = len;
      }
    }
  }
  ball.level_end_.push_back(ball.distance_.size());
  while (static_cast<int>(ball.level_end_.size()) < radius + 1) ball.level_end_.push_back(ball.distance_.size());

  if (shortest_cycle > 0)
    ball.girth_ = {true, shortest_cycle};
  else
    ball.girth_ = {false, 2 * radius};
  return ball;
}

GirthReport girth(const GroupSpec& spec, int r_max, BallOptions options) {
  if (r_max < 1) r_max = 1;
  for (int r = 1; r <= r_max; ++r) {
    try {
      Ball b = build_ball(spec, r, options);
      if (b.girth().exact) return b.girth();
    } catch (const BallTooLarge&) {
      return {false, 2 * (r - 1)};
    }
  }
  return {false, 2 * r_max};
}

}  // namespace girthlab
