#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace girthlab {

/// One free factor of the presentation: a finite cyclic group Z_m or Z.
struct Factor {
  int order = 0;  // 0 means infinite cyclic

  bool infinite() const { return order == 0; }
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Free product of cyclic groups, e.g. `Z*Z` or `Z5*Z5`.
///
/// The Cayley graph uses the symmetric generating set made of each factor's
/// generator and its inverse (a single involution for Z2 factors), so the
/// degree is the sum over factors of 1 (order 2) or 2 (otherwise).
struct GroupSpec {
  std::vector<Factor> factors;
  std::vector<char> labels;

  int degree() const;
  /// The Cayley graph is a tree iff every factor is Z or Z2.
  bool is_tree() const;
  /// Degree below 3 means the graph is a line, a cycle or a point.
  bool amenable() const { return degree() < 3; }
  /// Smallest cycle length, 0 when the graph is a tree. Structural: each
  /// Z_m factor with m >= 3 closes an m-cycle and nothing shorter exists.
  int structural_girth() const;
  std::string to_string() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct Syllable {
  int factor = 0;
  std::int32_t exponent = 0;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Group element in free-product normal form. Adjacent syllables belong to
/// different factors and every exponent is reduced (1..m-1 for Z_m, nonzero
/// for Z). The empty word is the identity.
struct Word {
  std::vector<Syllable> syllables;

  bool is_identity() const { return syllables.empty(); }
  friend bool operator==(const Word&, const Word&) = default;
};

/// Symmetric generator of the Cayley graph.
struct Generator {
  int factor = 0;
  std::int32_t exponent = 0;  // reduced
  int inverse = 0;            // index of the inverse generator
};

/// Parses `factor (* factor)*` with factor in {Z, Z<m>}.
/// Throws std::invalid_argument on malformed input or an order below 2.
GroupSpec parse_group_spec(std::string_view text);

std::int32_t reduce_exponent(const Factor& f, std::int64_t e);

/// Graph length of a single reduced syllable.
int syllable_length(const Factor& f, std::int32_t exponent);

/// Reduces an arbitrary syllable sequence. Throws std::out_of_range when a
/// factor index is not part of the spec.
Word normal_form(const GroupSpec& spec, std::span<const Syllable> syllables);

Word multiply(const GroupSpec& spec, const Word& lhs, const Word& rhs);
Word inverse(const GroupSpec& spec, const Word& w);

/// Distance from the identity in the Cayley graph.
int word_length(const GroupSpec& spec, const Word& w);

/// Generators in a fixed order: per factor, `+1` then (unless order 2) `-1`.
std::vector<Generator> generators(const GroupSpec& spec);

/// Right multiplication by one generator, touching only the last syllable.
Word step(const GroupSpec& spec, const Word& w, const Generator& g);

/// Human readable label, `1` for the identity, otherwise e.g. `a^2*b^-1`.
std::string to_string(const GroupSpec& spec, const Word& w);

/// Stable 64-bit hash of a word, independent of platform and std::hash.
std::uint64_t word_hash(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const { return static_cast<std::size_t>(word_hash(w)); }
};

}  // namespace girthlab
