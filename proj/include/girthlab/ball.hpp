#pragma once

#include "girthlab/big_int.hpp"
#include "girthlab/group.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace girthlab {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Girth as seen from a finite ball: exact when a cycle closes inside the
/// ball, otherwise a certified lower bound `girth > bound`.
struct GirthReport {
  bool exact = false;
  int value = 0;  // girth when exact, else the exclusive lower bound

  bool exceeds(int length) const { return exact ? value > length : value >= length; }
  std::string to_string() const;
};

struct BallOptions {
  std::size_t max_vertices = 5'000'000;
};

class BallTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Exact sphere sizes |S_r| of the Cayley graph for r = 0..radius, counted
/// from syllable-length combinatorics (no graph is built).
std::vector<BigInt> sphere_sizes(const GroupSpec& spec, int radius);

/// Rooted radius-R ball of a free-product Cayley graph. Vertices are interned
/// normal-form words in BFS order (index 0 is the identity), adjacency is a
/// dense `degree` slots per vertex with kNoVertex for neighbours outside the
/// ball. Slot k of vertex v is the arc v -> v*s_k, so slot indices double as
/// directed-edge labels for non-backtracking walks. Immutable once built.
class Ball {
 public:
  const GroupSpec& spec() const { return spec_; }
  int radius() const { return radius_; }
  int degree() const { return degree_; }
  std::size_t size() const { return distance_.size(); }
  const std::vector<Generator>& gens() const { return gens_; }

  int distance(VertexId v) const { return distance_[v]; }
  VertexId neighbor(VertexId v, int gen) const { return adjacency_[std::size_t{v} * degree_ + gen]; }
  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + std::size_t{v} * degree_, static_cast<std::size_t>(degree_)};
  }
  int inverse_generator(int gen) const { return gens_[gen].inverse; }
  VertexId bfs_parent(VertexId v) const { return bfs_parent_[v]; }

  /// Vertices at distance <= r occupy indices [0, level_end(r)).
  std::size_t level_end(int r) const;
  std::size_t sphere_size(int r) const { return level_end(r) - (r == 0 ? 0 : level_end(r - 1)); }

  Word label(VertexId v) const;
  std::string label_string(VertexId v) const { return girthlab::to_string(spec_, label(v)); }
  VertexId find(const Word& w) const;

  /// Canonical id of the undirected edge behind arc (v, gen).
  std::uint64_t edge_id(VertexId v, int gen) const;
  std::size_t edge_count() const { return edge_count_; }

  const GirthReport& girth() const { return girth_; }
  /// True when the ball is certified to be a tree.
  bool is_tree() const { return girth_.exceeds(2 * radius_); }

  /// `u v` edge list with a `# R=.. d=.. girth..` header.
  void write_edge_list(std::ostream& out) const;

 private:
  friend Ball build_ball(const GroupSpec& spec, int radius, BallOptions options);

  static std::uint64_t key(VertexId prefix, int factor, std::int32_t exponent);
  VertexId lookup(VertexId prefix, int factor, std::int32_t exponent) const;

  GroupSpec spec_;
  std::vector<Generator> gens_;
  int radius_ = 0;
  int degree_ = 0;
  std::vector<VertexId> prefix_;          // word minus its last syllable
  std::vector<Syllable> last_;            // last syllable (unused for the root)
  std::vector<std::uint16_t> distance_;
  std::vector<VertexId> bfs_parent_;
  std::vector<VertexId> adjacency_;
  std::vector<std::size_t> level_end_;
  std::unordered_map<std::uint64_t, VertexId> index_;
  std::size_t edge_count_ = 0;
  GirthReport girth_;
};

/// BFS-complete ball of radius R. Throws BallTooLarge when the projected
/// vertex count exceeds options.max_vertices.
Ball build_ball(const GroupSpec& spec, int radius, BallOptions options = {});

inline std::shared_ptr<const Ball> make_ball(const GroupSpec& spec, int radius, BallOptions options = {}) {
  return std::make_shared<const Ball>(build_ball(spec, radius, options));
}

/// Girth by BFS shortest-cycle search on balls of growing radius up to r_max.
GirthReport girth(const GroupSpec& spec, int r_max, BallOptions options = {});

}  // namespace girthlab
