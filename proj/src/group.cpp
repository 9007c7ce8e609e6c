#include "girthlab/group.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace girthlab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Factor parse_factor(std::string_view token, std::string_view whole) {
  token = trim(token);
  if (token.empty() || token.front() != 'Z') {
    throw std::invalid_argument("malformed group presentation '" + std::string(whole) +
                                "': expected Z or Z<m>");
  }
  token.remove_prefix(1);
  if (token.empty()) return Factor{0};

  int order = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), order);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw std::invalid_argument("malformed cyclic order in '" + std::string(whole) + "'");
  }
  if (order < 2) {
    throw std::invalid_argument("invalid cyclic order " + std::to_string(order) + " in '" +
                                std::string(whole) + "' (must be >= 2)");
  }
  return Factor{order};
}

}  // namespace

int GroupSpec::degree() const {
  int d = 0;
  for (const auto& f : factors) d += (f.order == 2) ? 1 : 2;
  return d;
}

bool GroupSpec::is_tree() const {
  for (const auto& f : factors)
    if (!f.infinite() && f.order != 2) return false;
  return true;
}

int GroupSpec::structural_girth() const {
  int g = 0;
  for (const auto& f : factors)
    if (!f.infinite() && f.order >= 3 && (g == 0 || f.order < g)) g = f.order;
  return g;
}

std::string GroupSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += '*';
    out += 'Z';
    if (!factors[i].infinite()) out += std::to_string(factors[i].order);
  }
  return out;
}

GroupSpec parse_group_spec(std::string_view text) {
  std::string_view body = trim(text);
  if (body.empty()) throw std::invalid_argument("empty group presentation");

  GroupSpec spec;
  std::size_t start = 0;
  while (true) {
    std::size_t star = body.find('*', start);
    std::string_view token = body.substr(start, star == std::string_view::npos ? star : star - start);
    spec.factors.push_back(parse_factor(token, text));
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  if (spec.factors.size() > 26) throw std::invalid_argument("at most 26 factors are supported");
  for (std::size_t i = 0; i < spec.factors.size(); ++i)
    spec.labels.push_back(static_cast<char>('a' + i));
  return spec;
}

std::int32_t reduce_exponent(const Factor& f, std::int64_t e) {
  if (f.infinite()) return static_cast<std::int32_t>(e);
  std::int64_t r = e % f.order;
  if (r < 0) r += f.order;
  return static_cast<std::int32_t>(r);
}

int syllable_length(const Factor& f, std::int32_t exponent) {
  if (f.infinite()) return std::abs(exponent);
  return std::min(exponent, f.order - exponent);
}

Word normal_form(const GroupSpec& spec, std::span<const Syllable> syllables) {
  Word out;
  auto& stack = out.syllables;
  for (const auto& s : syllables) {
    if (s.factor < 0 || s.factor >= static_cast<int>(spec.factors.size()))
      throw std::out_of_range("factor index " + std::to_string(s.factor) + " out of range");
    const Factor& f = spec.factors[s.factor];
    std::int32_t e = reduce_exponent(f, s.exponent);
    if (e == 0) continue;
    if (!stack.empty() && stack.back().factor == s.factor) {
      std::int32_t merged = reduce_exponent(f, std::int64_t{stack.back().exponent} + e);
      if (merged == 0)
        stack.pop_back();
      else
        stack.back().exponent = merged;
    } else {
      stack.push_back({s.factor, e});
    }
  }
  return out;
}

Word multiply(const GroupSpec& spec, const Word& lhs, const Word& rhs) {
  std::vector<Syllable> seq = lhs.syllables;
  seq.insert(seq.end(), rhs.syllables.begin(), rhs.syllables.end());
  return normal_form(spec, seq);
}

Word inverse(const GroupSpec& spec, const Word& w) {
  Word out;
  out.syllables.reserve(w.syllables.size());
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
    out.syllables.push_back({it->factor, reduce_exponent(spec.factors[it->factor], -std::int64_t{it->exponent})});
  return out;
}

int word_length(const GroupSpec& spec, const Word& w) {
  int len = 0;
  for (const auto& s : w.syllables) len += syllable_length(spec.factors[s.factor], s.exponent);
  return len;
}

std::vector<Generator> generators(const GroupSpec& spec) {
  std::vector<Generator> gens;
  for (int f = 0; f < static_cast<int>(spec.factors.size()); ++f) {
    const Factor& fac = spec.factors[f];
    int base = static_cast<int>(gens.size());
    if (fac.order == 2) {
      gens.push_back({f, 1, base});
    } else {
      gens.push_back({f, 1, base + 1});
      gens.push_back({f, reduce_exponent(fac, -1), base});
    }
  }
  return gens;
}

Word step(const GroupSpec& spec, const Word& w, const Generator& g) {
  Word out = w;
  auto& s = out.syllables;
  if (!s.empty() && s.back().factor == g.factor) {
    std::int32_t e = reduce_exponent(spec.factors[g.factor], std::int64_t{s.back().exponent} + g.exponent);
    if (e == 0)
      s.pop_back();
    else
      s.back().exponent = e;
  } else {
    s.push_back({g.factor, g.exponent});
  }
  return out;
}

std::string to_string(const GroupSpec& spec, const Word& w) {
  if (w.is_identity()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.syllables.size(); ++i) {
    if (i) out += '*';
    const auto& s = w.syllables[i];
    out += spec.labels[s.factor];
    if (s.exponent != 1) {
      out += '^';
      out += std::to_string(s.exponent);
    }
  }
  return out;
}

std::uint64_t word_hash(const Word& w) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& s : w.syllables) {
    std::uint64_t v = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.factor)) << 32) |
                      static_cast<std::uint32_t>(s.exponent);
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return h ^ (h >> 29);
}

}  // namespace girthlab
