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
// Random sentence generation from the small context-free grammar
//
//   S  -> N IV | N TV N
//   N  -> noun | N RPRON IV | N RPRON TV N
//   TV/IV/RPRON -> terminal word
//
// and the translation of derivation trees into sentence diagrams, where
// each production becomes a fixed pattern of cups between the types of its
// constituents.

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qnlp/diagram.hpp"
#include "qnlp/pregroup.hpp"
#include "qnlp/rng.hpp"

namespace qnlp {

enum class CfgSymbol : unsigned char { S, N, TV, IV, RPRON, Word };

struct CfgTree {
  CfgSymbol sym = CfgSymbol::S;
  std::string word;               // terminal nodes only
  std::vector<CfgTree> children;  // empty on terminal nodes

  friend bool operator==(const CfgTree&, const CfgTree&) = default;
};

/// Vocabulary split by part of speech.
struct CfgVocab {
  std::vector<std::string> nouns;
  std::vector<std::string> transitive;
  std::vector<std::string> intransitive;
  std::vector<std::string> relative;  // relative pronouns

  void validate() const {
    if (nouns.empty() || transitive.empty() || intransitive.empty() || relative.empty()) {
      throw std::invalid_argument("every part of speech needs at least one word");
    }
  }

  /// The induced dictionary with the project's fixed typings.
  Dictionary dictionary() const {
    Dictionary d;
    for (const auto& w : nouns) d.entries[w] = noun_type();
    for (const auto& w : transitive) d.entries[w] = transitive_verb_type();
    for (const auto& w : intransitive) d.entries[w] = intransitive_verb_type();
    for (const auto& w : relative) d.entries[w] = relative_pronoun_type();
    return d;
  }
};

namespace detail {

inline CfgTree terminal(CfgSymbol pos, const std::string& word) {
  CfgTree leaf{CfgSymbol::Word, word, {}};
  return CfgTree{pos, "", {leaf}};
}

inline CfgTree expand_noun(const CfgVocab& vocab, std::mt19937_64& rng, int depth, int max_depth);

inline CfgTree expand_verb_phrase(CfgSymbol kind, const CfgVocab& vocab, std::mt19937_64& rng) {
  if (kind == CfgSymbol::TV) {
    return terminal(CfgSymbol::TV, vocab.transitive[uniform_index(rng, vocab.transitive.size())]);
  }
  return terminal(CfgSymbol::IV, vocab.intransitive[uniform_index(rng, vocab.intransitive.size())]);
}

inline CfgTree expand_noun(const CfgVocab& vocab, std::mt19937_64& rng, int depth, int max_depth) {
  // Applicable rules: one lexical rule per noun, plus the two relative
  // clause rules while the depth budget allows recursion.
  const bool allow_clause = depth < max_depth;
  const std::size_t n_rules = vocab.nouns.size() + (allow_clause ? 2 : 0);
  const std::size_t pick = uniform_index(rng, n_rules);
  if (pick < vocab.nouns.size()) {
    return terminal(CfgSymbol::N, vocab.nouns[pick]);
  }
  CfgTree node{CfgSymbol::N, "", {}};
  node.children.push_back(expand_noun(vocab, rng, depth + 1, max_depth));
  node.children.push_back(
      terminal(CfgSymbol::RPRON, vocab.relative[uniform_index(rng, vocab.relative.size())]));
  if (pick == vocab.nouns.size()) {
    node.children.push_back(expand_verb_phrase(CfgSymbol::IV, vocab, rng));
  } else {
    node.children.push_back(expand_verb_phrase(CfgSymbol::TV, vocab, rng));
    node.children.push_back(expand_noun(vocab, rng, depth + 1, max_depth));
  }
  return node;
}

}  // namespace detail

/// Generates a complete derivation tree. Production rules are sampled
/// uniformly among those applicable at each node; past max_depth the
/// relative-clause rules are excluded so that expansion always terminates.
inline CfgTree generate(const CfgVocab& vocab, std::uint64_t seed, int max_depth = 3) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  vocab.validate();
  std::mt19937_64 rng(seed);
  CfgTree root{CfgSymbol::S, "", {}};
  const bool transitive = uniform_index(rng, 2) == 1;
  root.children.push_back(detail::expand_noun(vocab, rng, 1, max_depth));
  if (transitive) {
    root.children.push_back(detail::expand_verb_phrase(CfgSymbol::TV, vocab, rng));
    root.children.push_back(detail::expand_noun(vocab, rng, 1, max_depth));
  } else {
    root.children.push_back(detail::expand_verb_phrase(CfgSymbol::IV, vocab, rng));
  }
  return root;
}

/// In-order terminal words.
inline std::vector<std::string> leaves(const CfgTree& tree) {
  std::vector<std::string> out;
  auto walk = [&](const CfgTree& node, auto&& self) -> void {
    if (node.sym == CfgSymbol::Word) {
      out.push_back(node.word);
      return;
    }
    for (const auto& c : node.children) self(c, self);
  };
  walk(tree, walk);
  return out;
}

namespace detail {

struct TreeToDiagram {
  std::vector<std::size_t> leaf_offsets;  // factor offset of each leaf
  std::size_t next_leaf = 0;
  CupPattern cups;

  // Consumes the next leaf (traversal order matches leaves()) and returns
  // the factor offset of its word.
  std::size_t next_pos_offset() { return leaf_offsets[next_leaf++]; }

  // Returns the head wire (the n-factor that represents the phrase).
  std::size_t walk_noun(const CfgTree& node) {
    if (node.children.size() == 1) {
      return next_pos_offset();  // lexical noun: its single n factor
    }
    const std::size_t inner_head = walk_noun(node.children[0]);
    const std::size_t r = next_pos_offset();  // RPRON: n^1 n^0 s^-1 n^0
    cups.pairs.emplace_back(inner_head, r);   // noun head -- rpron n^1
    if (node.children.size() == 3) {          // N RPRON IV
      const std::size_t v = next_pos_offset();  // IV: n^1 s^0
      cups.pairs.emplace_back(r + 2, v + 1);    // s^-1 -- s^0
      cups.pairs.emplace_back(r + 3, v);        // n^0 -- n^1
    } else {                                    // N RPRON TV N
      const std::size_t v = next_pos_offset();  // TV: n^1 s^0 n^-1
      const std::size_t obj = walk_noun(node.children[3]);
      cups.pairs.emplace_back(r + 2, v + 1);  // s^-1 -- s^0
      cups.pairs.emplace_back(r + 3, v);      // n^0 -- n^1
      cups.pairs.emplace_back(v + 2, obj);    // n^-1 -- object head
    }
    return r + 1;  // the rpron's second factor carries the phrase outward
  }

  void walk_sentence(const CfgTree& root) {
    const std::size_t subj = walk_noun(root.children[0]);
    if (root.children.size() == 2) {  // S -> N IV
      const std::size_t v = next_pos_offset();
      cups.pairs.emplace_back(subj, v);  // subject head -- n^1; s^0 stays open
      cups.open = {v + 1};
    } else {  // S -> N TV N
      const std::size_t v = next_pos_offset();
      const std::size_t obj = walk_noun(root.children[2]);
      cups.pairs.emplace_back(subj, v);
      cups.pairs.emplace_back(v + 2, obj);
      cups.open = {v + 1};
    }
  }
};

}  // namespace detail

/// Translates a derivation tree into a sentence diagram by replacing each
/// production with its cup pattern. The result always validates; for
/// structurally unambiguous sentences it coincides with the canonical
/// pattern found by reduce() on the word list.
inline SentenceDiagram to_diagram(const CfgTree& tree, const Dictionary& dict) {
  const std::vector<std::string> words = leaves(tree);

  SentenceDiagram d;
  std::size_t offset = 0;
  detail::TreeToDiagram ctx;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const PregroupType& t = dict.at(words[i]);
    d.words.push_back({words[i], t, offset});
    ctx.leaf_offsets.push_back(offset);
    offset += t.size();
    if (t == relative_pronoun_type()) d.kronecker_words.insert(i);
  }
  ctx.walk_sentence(tree);
  std::sort(ctx.cups.pairs.begin(), ctx.cups.pairs.end());
  d.cups = std::move(ctx.cups);
  if (auto v = validate(d); !v) {
    throw std::logic_error("tree translation produced an invalid diagram: " + v.message);
  }
  return d;
}

/// Generates `count` distinct sentences, resampling duplicates. Seeds are
/// derived per attempt, so the result is a deterministic function of `seed`.
inline std::vector<std::vector<std::string>> generate_corpus(const CfgVocab& vocab,
                                                             std::size_t count,
                                                             std::uint64_t seed,
                                                             int max_depth = 3) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  vocab.validate();
  std::vector<std::vector<std::string>> out;
  std::set<std::vector<std::string>> seen;
  const std::size_t max_attempts = 1000 * count + 1000;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
    auto sent = leaves(generate(vocab, mix_seed(seed, attempt), max_depth));
    if (seen.insert(sent).second) out.push_back(std::move(sent));
  }
  if (out.size() < count) {
    throw std::runtime_error("could not generate " + std::to_string(count) +
                             " distinct sentences (retry budget exhausted)");
  }
  return out;
}

}  // namespace qnlp
