// Copyright 2026 The qnlp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Pregroup types and the contraction-only reduction test for grammaticality.
//
// A word is typed as a product of basic types, each decorated with an
// integer adjoint order. A sentence is grammatical iff its concatenated
// type string rewrites to the single sentence type s^0 using contractions
// b^k b^{k+1} -> 1 alone. Reductions are found by an interval dynamic
// program over the factor list; the witness is a non-crossing cup pattern.

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qnlp {

enum class BasicType : unsigned char { n, s };

inline std::string to_string(BasicType b) { return b == BasicType::n ? "n" : "s"; }

inline std::optional<BasicType> basic_type_from(std::string_view name) {
  if (name == "n") return BasicType::n;
  if (name == "s") return BasicType::s;
  return std::nullopt;
}

/// One basic type together with its adjoint order.
/// Order 0 is the plain type; negative orders are left adjoints, positive
/// orders right adjoints.
struct TypeFactor {
  BasicType base = BasicType::n;
  int order = 0;
  friend bool operator==(const TypeFactor&, const TypeFactor&) = default;
};

/// An ordered product of type factors. The empty product is the unit type.
struct PregroupType {
  std::vector<TypeFactor> factors;

  PregroupType() = default;
  explicit PregroupType(std::vector<TypeFactor> f) : factors(std::move(f)) {}

  std::size_t size() const { return factors.size(); }
  bool empty() const { return factors.empty(); }
  const TypeFactor& operator[](std::size_t i) const { return factors[i]; }

  PregroupType& append(const PregroupType& other) {
    factors.insert(factors.end(), other.factors.begin(), other.factors.end());
    return *this;
  }
  friend PregroupType operator+(PregroupType lhs, const PregroupType& rhs) {
    lhs.append(rhs);
    return lhs;
  }
  friend bool operator==(const PregroupType&, const PregroupType&) = default;
};

struct TypeParseError final : std::runtime_error {
  explicit TypeParseError(const std::string& what) : std::runtime_error(what) {}
};

struct DictionaryMiss final : std::runtime_error {
  explicit DictionaryMiss(const std::string& w)
      : std::runtime_error("word not in dictionary: '" + w + "'"), word(w) {}
  std::string word;
};

/// Parses the textual notation "base@order" with whitespace between factors;
/// a bare base name means order 0. The empty string is the unit type.
inline PregroupType parse_type(std::string_view text) {
  PregroupType result;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;

    std::string_view name = token;
    int order = 0;
    if (auto at = token.find('@'); at != std::string_view::npos) {
      name = token.substr(0, at);
      std::string_view digits = token.substr(at + 1);
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
      if (ec != std::errc{} || p != digits.data() + digits.size()) {
        throw TypeParseError("bad adjoint order in token '" + std::string(token) + "'");
      }
    }
    auto base = basic_type_from(name);
    if (!base) throw TypeParseError("unknown basic type in token '" + std::string(token) + "'");
    result.factors.push_back({*base, order});
  }
  return result;
}

/// Inverse of parse_type.
inline std::string format_type(const PregroupType& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ' ';
    out += to_string(t[i].base);
    if (t[i].order != 0) {
      out += '@';
      out += std::to_string(t[i].order);
    }
  }
  return out;
}

/// Word-to-type map. Lookups of unknown words throw DictionaryMiss.
struct Dictionary {
  std::map<std::string, PregroupType> entries;

  bool contains(const std::string& word) const { return entries.count(word) != 0; }

  const PregroupType& at(const std::string& word) const {
    auto it = entries.find(word);
    if (it == entries.end()) throw DictionaryMiss(word);
    return it->second;
  }
};

/// Concatenation of the per-word types in sentence order.
inline PregroupType sentence_type(const std::vector<std::string>& words, const Dictionary& dict) {
  PregroupType t;
  for (const auto& w : words) t.append(dict.at(w));
  return t;
}

/// A contraction b^k b^{k+1} -> 1 applies to a left/right factor pair.
inline bool contracts(const TypeFactor& left, const TypeFactor& right) {
  return left.base == right.base && right.order == left.order + 1;
}

/// Witness of a reduction: non-crossing cups over flattened factor
/// positions plus the positions left open.
struct CupPattern {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (i, j) with i < j
  std::vector<std::size_t> open;                           // ascending
};

/// Structural check of a cup pattern against a type string. Returns an error
/// message for the first violation, or nullopt if the pattern is well formed:
/// cups partition the positions together with `open`, every cup contracts,
/// and no two cups cross.
inline std::optional<std::string> pattern_error(const PregroupType& t, const CupPattern& p) {
  const std::size_t n = t.size();
  std::vector<int> seen(n, 0);
  for (const auto& [i, j] : p.pairs) {
    if (i >= j || j >= n) return "cup (" + std::to_string(i) + "," + std::to_string(j) + ") out of range";
    if (!contracts(t[i], t[j]))
      return "cup (" + std::to_string(i) + "," + std::to_string(j) + ") does not contract: " +
             format_type(PregroupType{{t[i], t[j]}});
    ++seen[i];
    ++seen[j];
  }
  for (std::size_t o : p.open) {
    if (o >= n) return "open position " + std::to_string(o) + " out of range";
    ++seen[o];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i] != 1) return "position " + std::to_string(i) + " covered " + std::to_string(seen[i]) + " times";
  }
  for (const auto& [i, j] : p.pairs) {
    for (const auto& [k, l] : p.pairs) {
      if (i < k && k < j && j < l) return "cups (" + std::to_string(i) + "," + std::to_string(j) + ") and (" +
                                          std::to_string(k) + "," + std::to_string(l) + ") cross";
    }
  }
  return std::nullopt;
}

namespace detail {

// full[i][j] == interval [i, j) contracts away completely.
inline std::vector<std::vector<char>> reducible_intervals(const PregroupType& t) {
  const std::size_t n = t.size();
  std::vector<std::vector<char>> full(n + 1, std::vector<char>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) full[i][i] = 1;
  for (std::size_t len = 2; len <= n; len += 2) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len;
      char ok = 0;
      if (contracts(t[i], t[j - 1]) && full[i + 1][j - 1]) ok = 1;
      for (std::size_t k = i + 2; !ok && k < j; k += 2) {
        if (full[i][k] && full[k][j]) ok = 1;
      }
      full[i][j] = ok;
    }
  }
  return full;
}

// Emits the canonical matching of a fully reducible interval: the leftmost
// unmatched position always pairs with the smallest feasible partner.
inline void match_interval(const PregroupType& t, const std::vector<std::vector<char>>& full,
                           std::size_t i, std::size_t j, CupPattern& out) {
  if (i == j) return;
  for (std::size_t k = i + 1; k < j; k += 2) {
    if (contracts(t[i], t[k]) && full[i + 1][k] && full[k + 1][j]) {
      out.pairs.emplace_back(i, k);
      match_interval(t, full, i + 1, k, out);
      match_interval(t, full, k + 1, j, out);
      return;
    }
  }
  throw std::logic_error("match_interval called on irreducible interval");
}

}  // namespace detail

/// Searches for a contraction-only reduction of `t` to the sentence type.
/// Returns the canonical cup pattern (leftmost cup closes as early as
/// possible, recursively), with the surviving s^0 position in `open`;
/// returns nullopt when no reduction exists.
inline std::optional<CupPattern> reduce(const PregroupType& t) {
  const std::size_t n = t.size();
  if (n % 2 == 0) return std::nullopt;  // one factor must survive
  const auto full = detail::reducible_intervals(t);
  for (std::size_t p = 0; p < n; ++p) {
    if (t[p] == TypeFactor{BasicType::s, 0} && full[0][p] && full[p + 1][n]) {
      CupPattern pattern;
      detail::match_interval(t, full, 0, p, pattern);
      detail::match_interval(t, full, p + 1, n, pattern);
      std::sort(pattern.pairs.begin(), pattern.pairs.end());
      pattern.open = {p};
      return pattern;
    }
  }
  return std::nullopt;
}

/// True iff the sentence's type string reduces to s^0.
inline bool is_grammatical(const std::vector<std::string>& words, const Dictionary& dict) {
  return reduce(sentence_type(words, dict)).has_value();
}

// The fixed word typings used by all corpora in this project.
inline PregroupType noun_type() { return parse_type("n"); }
inline PregroupType transitive_verb_type() { return parse_type("n@1 s n@-1"); }
inline PregroupType intransitive_verb_type() { return parse_type("n@1 s"); }
inline PregroupType relative_pronoun_type() { return parse_type("n@1 n s@-1 n"); }

}  // namespace qnlp
