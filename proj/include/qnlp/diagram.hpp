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
// Sentence diagrams: the string-diagram intermediate representation between
// the grammar front end and the circuit back end. A diagram is a single
// layer of word states whose output wires are the flattened type factors,
// connected by a non-crossing cup pattern; for a grammatical sentence
// exactly one s-wire stays open.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnlp/hyper.hpp"
#include "qnlp/pregroup.hpp"

namespace qnlp {

struct UngrammaticalError final : std::runtime_error {
  explicit UngrammaticalError(const std::string& what) : std::runtime_error(what) {}
};

/// A word with its type; wire_offset is the position of the word's first
/// factor in the sentence's flattened factor list.
struct WordState {
  std::string word;
  PregroupType wtype;
  std::size_t wire_offset = 0;
  friend bool operator==(const WordState&, const WordState&) = default;
};

struct SentenceDiagram {
  std::vector<WordState> words;
  CupPattern cups;
  std::set<std::size_t> kronecker_words;  // word positions compiled as GHZ

  std::size_t total_wires() const {
    std::size_t n = 0;
    for (const auto& w : words) n += w.wtype.size();
    return n;
  }

  /// Factor at a flattened wire position.
  const TypeFactor& factor_at(std::size_t pos) const {
    for (const auto& w : words) {
      if (pos < w.wire_offset + w.wtype.size()) return w.wtype[pos - w.wire_offset];
    }
    throw std::out_of_range("wire position out of range");
  }

  PregroupType flattened_type() const {
    PregroupType t;
    for (const auto& w : words) t.append(w.wtype);
    return t;
  }
};

struct ValidationResult {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

/// Confirms all structural invariants; reports the first violation found.
inline ValidationResult validate(const SentenceDiagram& d) {
  std::size_t offset = 0;
  for (const auto& w : d.words) {
    if (w.wire_offset != offset)
      return {false, "word '" + w.word + "' has wire offset " + std::to_string(w.wire_offset) +
                         ", expected " + std::to_string(offset)};
    offset += w.wtype.size();
  }
  const PregroupType t = d.flattened_type();
  if (auto err = pattern_error(t, d.cups)) return {false, *err};
  if (d.cups.open.size() != 1)
    return {false, "expected exactly one open wire, found " + std::to_string(d.cups.open.size())};
  if (!(t[d.cups.open.front()] == TypeFactor{BasicType::s, 0}))
    return {false, "open wire is not the sentence type s"};
  for (std::size_t k : d.kronecker_words) {
    if (k >= d.words.size()) return {false, "kronecker word index out of range"};
    if (!(d.words[k].wtype == relative_pronoun_type()))
      return {false, "kronecker word '" + d.words[k].word + "' is not relative-pronoun typed"};
  }
  return {};
}

/// Builds the canonical diagram of a grammatical sentence; relative-pronoun
/// typed words are marked as Kronecker tensors. Throws UngrammaticalError
/// when no reduction exists.
inline SentenceDiagram from_sentence(const std::vector<std::string>& words, const Dictionary& dict) {
  SentenceDiagram d;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const PregroupType& t = dict.at(words[i]);
    d.words.push_back({words[i], t, offset});
    offset += t.size();
    if (t == relative_pronoun_type()) d.kronecker_words.insert(i);
  }
  auto pattern = reduce(d.flattened_type());
  if (!pattern) {
    std::string s;
    for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
    throw UngrammaticalError("sentence does not reduce to type s: '" + s + "'");
  }
  d.cups = std::move(*pattern);
  return d;
}

/// Contiguous qubit span of one wire in the global register.
struct WireSpan {
  int offset = 0;
  int count = 0;
  friend bool operator==(const WireSpan&, const WireSpan&) = default;
};

struct WireLayout {
  std::vector<WireSpan> wires;  // indexed by flattened factor position
  int total_qubits = 0;
};

/// Assigns q_b qubits to every wire of base type b, in wire order.
inline WireLayout wire_qubits(const SentenceDiagram& d, const HyperParams& hyper) {
  hyper.validate();
  WireLayout layout;
  int next = 0;
  for (const auto& w : d.words) {
    for (const auto& f : w.wtype.factors) {
      const int q = hyper.qubits_for(f.base);
      layout.wires.push_back({next, q});
      next += q;
    }
  }
  layout.total_qubits = next;
  return layout;
}

inline nlohmann::json diagram_to_json(const SentenceDiagram& d) {
  nlohmann::json words = nlohmann::json::array();
  for (const auto& w : d.words) {
    words.push_back({{"word", w.word}, {"type", format_type(w.wtype)}, {"wire_offset", w.wire_offset}});
  }
  nlohmann::json cups = nlohmann::json::array();
  for (const auto& [i, j] : d.cups.pairs) cups.push_back({i, j});
  return {{"words", words},
          {"cups", cups},
          {"open", d.cups.open},
          {"kronecker", std::vector<std::size_t>(d.kronecker_words.begin(), d.kronecker_words.end())}};
}

/// Graphviz rendering: word boxes on one rank, cup arcs between factor nodes.
inline std::string diagram_to_dot(const SentenceDiagram& d) {
  std::string out = "graph sentence {\n  rankdir=TB;\n  node [shape=plaintext];\n";
  for (std::size_t w = 0; w < d.words.size(); ++w) {
    out += "  w" + std::to_string(w) + " [label=\"" + d.words[w].word + "\", shape=box];\n";
  }
  const PregroupType t = d.flattened_type();
  for (std::size_t p = 0; p < t.size(); ++p) {
    out += "  f" + std::to_string(p) + " [label=\"" + to_string(t[p].base);
    if (t[p].order != 0) out += "@" + std::to_string(t[p].order);
    out += "\"];\n";
  }
  for (std::size_t w = 0; w < d.words.size(); ++w) {
    for (std::size_t k = 0; k < d.words[w].wtype.size(); ++k) {
      out += "  w" + std::to_string(w) + " -- f" + std::to_string(d.words[w].wire_offset + k) + ";\n";
    }
  }
  for (const auto& [i, j] : d.cups.pairs) {
    out += "  f" + std::to_string(i) + " -- f" + std::to_string(j) + " [style=dashed, constraint=false];\n";
  }
  for (std::size_t o : d.cups.open) {
    out += "  open" + std::to_string(o) + " [label=\"s\", shape=none];\n";
    out += "  f" + std::to_string(o) + " -- open" + std::to_string(o) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace qnlp
