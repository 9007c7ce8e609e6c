#pragma once

// Test-side reference computations. Nothing here calls into the library, so
// agreement with library results is a genuine cross-check.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <utility>
#include <vector>

namespace oracle {

using Word = std::vector<std::pair<int, int>>;  // (factor, exponent)
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// Cayley graph of a free product built word by word with std::map interning.
/// orders[i] = 0 for Z, m for Z_m.
struct CayleyBall {
  std::vector<int> orders;
  std::vector<std::pair<int, int>> gens;  // (factor, +-1)
  std::vector<Word> words;
  std::vector<int> dist;
  std::vector<std::vector<int>> adj;  // -1 outside the ball

  CayleyBall(std::vector<int> ord, int radius) : orders(std::move(ord)) {
    for (int f = 0; f < static_cast<int>(orders.size()); ++f) {
      gens.emplace_back(f, 1);
      if (orders[f] != 2) gens.emplace_back(f, -1);
    }
    std::map<Word, int> index;
    words.push_back({});
    dist.push_back(0);
    index[{}] = 0;
    for (std::size_t head = 0; head < words.size(); ++head) {
      if (dist[head] == radius) continue;
      for (const auto& g : gens) {
        Word w = times(words[head], g);
        if (!index.count(w)) {
          index[w] = static_cast<int>(words.size());
          words.push_back(w);
          dist.push_back(dist[head] + 1);
        }
      }
    }
    adj.assign(words.size(), std::vector<int>(gens.size(), -1));
    for (std::size_t v = 0; v < words.size(); ++v)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        auto it = index.find(times(words[v], gens[k]));
        if (it != index.end()) adj[v][k] = it->second;
      }
  }

  Word times(Word w, std::pair<int, int> g) const {
    const int m = orders[g.first];
    if (!w.empty() && w.back().first == g.first) {
      int e = w.back().second + g.second;
      if (m > 0) e = ((e % m) + m) % m;
      if (e == 0) w.pop_back();
      else w.back().second = e;
    } else {
      int e = g.second;
      if (m > 0) e = ((e % m) + m) % m;
      w.emplace_back(g.first, e);
    }
    return w;
  }

  int degree() const { return static_cast<int>(gens.size()); }
  std::size_t size() const { return words.size(); }
};

/// Shortest cycle through the root by BFS: min over non-tree edges (u, v) of
/// dist(u) + dist(v) + 1. On a transitive graph this is the girth, provided the
/// ball radius is at least half the girth. Returns 0 when no cycle closes.
inline int bfs_girth(const CayleyBall& b) {
  std::vector<int> parent(b.size(), -2), d(b.size(), -1);
  std::queue<int> q;
  q.push(0);
  d[0] = 0;
  parent[0] = -1;
  int best = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : b.adj[u]) {
      if (v < 0) continue;
      if (d[v] < 0) {
        d[v] = d[u] + 1;
        parent[v] = u;
        q.push(v);
      } else if (parent[u] != v && parent[v] != u) {
        const int len = d[u] + d[v] + 1;
        if (best == 0 || len < best) best = len;
      }
    }
  }
  return best;
}

/// Number of self-avoiding walks of length n from the root, by plain recursion.
inline std::uint64_t saw_count(const CayleyBall& b, int n) {
  std::vector<char> on(b.size(), 0);
  std::uint64_t total = 0;
  auto rec = [&](auto&& self, int v, int left) -> void {
    if (left == 0) {
      ++total;
      return;
    }
    for (int u : b.adj[v])
      if (u >= 0 && !on[u]) {
        on[u] = 1;
        self(self, u, left - 1);
        on[u] = 0;
      }
  };
  on[0] = 1;
  rec(rec, 0, n);
  return total;
}

/// Per-endpoint SAW counts of length n.
inline std::map<int, std::uint64_t> saw_endpoints(const CayleyBall& b, int n) {
  std::vector<char> on(b.size(), 0);
  std::map<int, std::uint64_t> out;
  auto rec = [&](auto&& self, int v, int left) -> void {
    if (left == 0) {
      ++out[v];
      return;
    }
    for (int u : b.adj[v])
      if (u >= 0 && !on[u]) {
        on[u] = 1;
        self(self, u, left - 1);
        on[u] = 0;
      }
  };
  on[0] = 1;
  rec(rec, 0, n);
  return out;
}

/// Exact n-step simple-walk probabilities by explicit path expansion.
inline std::vector<cpp_rational> srw_exact(const CayleyBall& b, int n) {
  std::vector<cpp_rational> cur(b.size(), 0);
  cur[0] = 1;
  for (int s = 0; s < n; ++s) {
    std::vector<cpp_rational> next(b.size(), 0);
    for (std::size_t v = 0; v < b.size(); ++v) {
      if (cur[v] == 0) continue;
      for (int u : b.adj[v])
        if (u >= 0) next[u] += cur[v] / b.degree();
    }
    cur = std::move(next);
  }
  return cur;
}

/// Number of non-backtracking closed walks of length n at the root, by
/// enumerating generator sequences (no ball needed beyond radius n/2).
inline std::uint64_t nbw_returns(const CayleyBall& b, int n) {
  std::uint64_t count = 0;
  const int d = b.degree();
  auto inverse = [&](int k) {
    for (int j = 0; j < d; ++j)
      if (b.adj[b.adj[0][k]][j] == 0) return j;
    return -1;
  };
  std::vector<int> inv(d);
  for (int k = 0; k < d; ++k) inv[k] = inverse(k);
  auto rec = [&](auto&& self, int v, int last, int left) -> void {
    if (v < 0) return;
    if (left == 0) {
      count += v == 0;
      return;
    }
    for (int k = 0; k < d; ++k)
      if (last < 0 || k != inv[last]) self(self, b.adj[v][k], k, left - 1);
  };
  rec(rec, 0, -1, n);
  return count;
}

// --- tree percolation closed forms --------------------------------------------------

inline double kesten(int d) { return 2 * std::sqrt(d - 1.0) / d; }

/// Extinction probability q of a Binomial(d-1, p) subtree: smallest root of
/// (1 - p + p q)^(d-1) = q, by iteration from 0.
inline double subtree_extinction(int d, double p) {
  double q = 0;
  for (int i = 0; i < 200000; ++i) {
    const double nq = std::pow(1 - p + p * q, d - 1);
    if (std::abs(nq - q) < 1e-15) return nq;
    q = nq;
  }
  return q;
}

inline double theta(int d, double p) { return 1 - std::pow(1 - p + p * subtree_extinction(d, p), d); }

/// P(root cluster reaches generation R): g_k = 1 - (1 - p g_{k-1})^(d-1), g_0 = 1.
inline double crossing(int d, double p, int R) {
  if (R == 0) return 1;
  double g = 1;
  for (int k = 1; k < R; ++k) g = 1 - std::pow(1 - p * g, d - 1);
  return 1 - std::pow(1 - p * g, d);
}

inline double mean_cluster(int d, double p) { return 1 + d * p / (1 - (d - 1) * p); }

}  // namespace oracle
