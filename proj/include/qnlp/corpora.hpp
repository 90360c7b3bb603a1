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
// The three built-in labeled corpora, plus JSON-lines corpus files.

#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnlp/cfg.hpp"
#include "qnlp/pregroup.hpp"

namespace qnlp {

struct LabeledItem {
  std::vector<std::string> words;
  int label = 0;  // truth value, 0 or 1
  friend bool operator==(const LabeledItem&, const LabeledItem&) = default;
};

struct LabeledCorpus {
  std::vector<LabeledItem> items;

  /// Words in order of first appearance across the corpus.
  std::vector<std::string> vocabulary() const {
    std::vector<std::string> vocab;
    for (const auto& item : items) {
      for (const auto& w : item.words) {
        if (std::find(vocab.begin(), vocab.end(), w) == vocab.end()) vocab.push_back(w);
      }
    }
    return vocab;
  }
  friend bool operator==(const LabeledCorpus&, const LabeledCorpus&) = default;
};

enum class BuiltinCorpus { K30, K6, K16 };

inline const char* to_string(BuiltinCorpus c) {
  switch (c) {
    case BuiltinCorpus::K30: return "k30";
    case BuiltinCorpus::K6: return "k6";
    case BuiltinCorpus::K16: return "k16";
  }
  return "?";
}

inline std::optional<BuiltinCorpus> builtin_corpus_from(std::string_view name) {
  std::string lower(name);
  for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "k30") return BuiltinCorpus::K30;
  if (lower == "k6") return BuiltinCorpus::K6;
  if (lower == "k16") return BuiltinCorpus::K16;
  return std::nullopt;
}

namespace detail {

struct RawItem {
  const char* sentence;
  int label;
};

inline constexpr std::array<RawItem, 30> k30_items{{
    {"Dude who loves Walter bowls", 1},
    {"Dude bowls", 1},
    {"Dude annoys Walter", 0},
    {"Walter who abides bowls", 0},
    {"Walter loves Walter", 1},
    {"Walter annoys Dude", 1},
    {"Walter bowls", 1},
    {"Walter abides", 0},
    {"Dude loves Walter", 1},
    {"Dude who bowls abides", 1},
    {"Walter who bowls annoys Dude", 1},
    {"Dude who bowls bowls", 1},
    {"Dude who abides abides", 1},
    {"Dude annoys Dude who bowls", 0},
    {"Walter annoys Walter", 0},
    {"Dude who abides bowls", 1},
    {"Walter who abides loves Walter", 0},
    {"Walter who bowls bowls", 1},
    {"Walter loves Walter who abides", 0},
    {"Walter annoys Walter who bowls", 0},
    {"Dude abides", 1},
    {"Dude loves Walter who bowls", 1},
    {"Walter who loves Dude bowls", 1},
    {"Dude loves Dude who abides", 1},
    {"Walter who abides loves Dude", 0},
    {"Dude annoys Dude", 0},
    {"Walter who annoys Dude bowls", 1},
    {"Walter who annoys Dude abides", 0},
    {"Walter loves Dude", 1},
    {"Dude who bowls loves Walter", 1},
}};

inline constexpr std::array<RawItem, 6> k6_items{{
    {"Romeo dies", 1},
    {"Romeo loves Juliet", 0},
    {"Juliet who dies dies", 1},
    {"Romeo loves Romeo", 0},
    {"Juliet loves Romeo", 0},
    {"Juliet dies", 1},
}};

inline constexpr std::array<RawItem, 16> k16_items{{
    {"Juliet kills Romeo who dies", 0},
    {"Juliet dies", 1},
    {"Romeo who loves Juliet dies", 1},
    {"Romeo dies", 1},
    {"Juliet who dies dies", 1},
    {"Romeo loves Juliet", 1},
    {"Juliet who dies loves Juliet", 0},
    {"Romeo kills Juliet who dies", 0},
    {"Romeo who kills Romeo dies", 1},
    {"Romeo who dies dies", 1},
    {"Romeo who loves Romeo dies", 0},
    {"Romeo kills Juliet", 0},
    {"Romeo who dies kills Romeo", 1},
    {"Juliet who dies kills Romeo", 0},
    {"Romeo loves Romeo", 0},
    {"Romeo who dies kills Juliet", 0},
}};

inline std::vector<std::string> split_words(const std::string& sentence) {
  std::vector<std::string> words;
  std::istringstream in(sentence);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

template <std::size_t N>
LabeledCorpus make_corpus(const std::array<RawItem, N>& raw) {
  LabeledCorpus corpus;
  for (const auto& item : raw) corpus.items.push_back({split_words(item.sentence), item.label});
  return corpus;
}

}  // namespace detail

/// The corpus exactly as shipped, in its fixed order.
inline LabeledCorpus load_builtin(BuiltinCorpus which) {
  switch (which) {
    case BuiltinCorpus::K30: return detail::make_corpus(detail::k30_items);
    case BuiltinCorpus::K6: return detail::make_corpus(detail::k6_items);
    case BuiltinCorpus::K16: return detail::make_corpus(detail::k16_items);
  }
  throw std::logic_error("unreachable");
}

inline CfgVocab builtin_vocab(BuiltinCorpus which) {
  switch (which) {
    case BuiltinCorpus::K30:
      return {{"Dude", "Walter"}, {"loves", "annoys"}, {"abides", "bowls"}, {"who"}};
    case BuiltinCorpus::K6:
      return {{"Romeo", "Juliet"}, {"loves"}, {"dies"}, {"who"}};
    case BuiltinCorpus::K16:
      return {{"Romeo", "Juliet"}, {"loves", "kills"}, {"dies"}, {"who"}};
  }
  throw std::logic_error("unreachable");
}

inline Dictionary builtin_dictionary(BuiltinCorpus which) { return builtin_vocab(which).dictionary(); }

/// Dictionary covering all built-in corpora (the typings agree on shared words).
inline Dictionary merged_builtin_dictionary() {
  Dictionary d;
  for (auto which : {BuiltinCorpus::K30, BuiltinCorpus::K6, BuiltinCorpus::K16}) {
    for (auto& [w, t] : builtin_dictionary(which).entries) d.entries[w] = t;
  }
  return d;
}

struct CorpusFormatError final : std::runtime_error {
  explicit CorpusFormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Reads a JSON-lines corpus: one {"sentence": "...", "label": 0|1} object
/// per line. Blank lines are skipped; anything malformed reports its line
/// number.
inline LabeledCorpus read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusFormatError("cannot open corpus file '" + path + "'");
  LabeledCorpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw CorpusFormatError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("sentence") || !j["sentence"].is_string()) {
      throw CorpusFormatError("line " + std::to_string(line_no) + ": missing string field 'sentence'");
    }
    if (!j.contains("label") || !j["label"].is_number_integer()) {
      throw CorpusFormatError("line " + std::to_string(line_no) + ": missing integer field 'label'");
    }
    const int label = j["label"].get<int>();
    if (label != 0 && label != 1) {
      throw CorpusFormatError("line " + std::to_string(line_no) + ": label must be 0 or 1, got " +
                              std::to_string(label));
    }
    const auto words = detail::split_words(j["sentence"].get<std::string>());
    if (words.empty()) {
      throw CorpusFormatError("line " + std::to_string(line_no) + ": empty sentence");
    }
    corpus.items.push_back({words, label});
  }
  return corpus;
}

inline void write_corpus(const std::string& path, const LabeledCorpus& corpus) {
  std::ofstream out(path);
  if (!out) throw CorpusFormatError("cannot open '" + path + "' for writing");
  for (const auto& item : corpus.items) {
    std::string sentence;
    for (const auto& w : item.words) sentence += (sentence.empty() ? "" : " ") + w;
    out << nlohmann::json{{"sentence", sentence}, {"label", item.label}}.dump() << '\n';
  }
}

/// Writes unlabeled sentences (label null) for later hand curation.
inline void write_sentences(const std::string& path,
                            const std::vector<std::vector<std::string>>& sentences) {
  std::ofstream out(path);
  if (!out) throw CorpusFormatError("cannot open '" + path + "' for writing");
  for (const auto& words : sentences) {
    std::string sentence;
    for (const auto& w : words) sentence += (sentence.empty() ? "" : " ") + w;
    out << nlohmann::json{{"sentence", sentence}, {"label", nullptr}}.dump() << '\n';
  }
}

}  // namespace qnlp
