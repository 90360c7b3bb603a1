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
// Experiment configuration: a flat key = value file (or command-line flags;
// flags win) driving the training pipeline, plus the CSV/JSON outputs that
// batch runs produce.

#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qnlp/corpora.hpp"
#include "qnlp/train.hpp"

namespace qnlp {

struct ConfigError final : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Everything a batch run needs. `corpus` is a built-in name (k30, k6, k16)
/// or a JSON-lines path; file corpora also need `vocab`, a JSON file with
/// nouns / transitive / intransitive / relative word lists.
struct ExperimentConfig {
  std::string corpus = "k30";
  std::string vocab;  // optional vocabulary file for file corpora
  TrainConfig train;
  std::string out_dir = ".";
};

namespace detail {

inline std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out;
  in >> out;
  if (in.fail() || !in.eof()) throw ConfigError("bad value for '" + key + "': " + value);
  return out;
}

}  // namespace detail

inline OptimizerKind optimizer_from(const std::string& name) {
  if (name == "spsa") return OptimizerKind::Spsa;
  if (name == "nelder_mead" || name == "nelder-mead") return OptimizerKind::NelderMead;
  if (name == "basinhopping") return OptimizerKind::Basinhopping;
  throw ConfigError("unknown optimizer '" + name + "'");
}

inline CostKind cost_from(const std::string& name) {
  if (name == "squared") return CostKind::Squared;
  if (name == "bce") return CostKind::Bce;
  throw ConfigError("unknown cost '" + name + "'");
}

inline EvalMode eval_mode_from(const std::string& name) {
  if (name == "exact") return EvalMode::Exact;
  if (name == "shots") return EvalMode::Shots;
  throw ConfigError("unknown evaluator '" + name + "'");
}

inline const char* to_string(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::Spsa: return "spsa";
    case OptimizerKind::NelderMead: return "nelder_mead";
    case OptimizerKind::Basinhopping: return "basinhopping";
  }
  return "?";
}

inline const char* to_string(CostKind k) { return k == CostKind::Squared ? "squared" : "bce"; }
inline const char* to_string(EvalMode m) { return m == EvalMode::Exact ? "exact" : "shots"; }

/// Applies one key = value setting. Keys mirror the command-line flags.
inline void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value) {
  auto& t = config.train;
  if (key == "corpus") config.corpus = value;
  else if (key == "vocab") config.vocab = value;
  else if (key == "out") config.out_dir = value;
  else if (key == "qn") t.hyper.q_n = detail::parse_number<int>(key, value);
  else if (key == "qs") t.hyper.q_s = detail::parse_number<int>(key, value);
  else if (key == "depth") t.hyper.d = detail::parse_number<int>(key, value);
  else if (key == "optimizer") t.optimizer = optimizer_from(value);
  else if (key == "cost") t.cost = cost_from(value);
  else if (key == "evaluator") t.eval_mode = eval_mode_from(value);
  else if (key == "shots") t.shots = detail::parse_number<int>(key, value);
  else if (key == "seed") t.seed = detail::parse_number<std::uint64_t>(key, value);
  else if (key == "split") t.split_p = detail::parse_number<double>(key, value);
  else if (key == "workers") t.workers = detail::parse_number<int>(key, value);
  else if (key == "iterations") t.spsa.iterations = detail::parse_number<int>(key, value);
  else if (key == "spsa_a") t.spsa.a = detail::parse_number<double>(key, value);
  else if (key == "spsa_c") t.spsa.c = detail::parse_number<double>(key, value);
  else if (key == "hops") t.basinhopping.hops = detail::parse_number<int>(key, value);
  else if (key == "temperature") t.basinhopping.temperature = detail::parse_number<double>(key, value);
  else if (key == "step_size") t.basinhopping.step_size = detail::parse_number<double>(key, value);
  else if (key == "nm_max_evals") {
    t.nelder_mead.max_evals = detail::parse_number<int>(key, value);
    t.basinhopping.inner.max_evals = t.nelder_mead.max_evals;
  } else if (key == "nm_xtol") {
    t.nelder_mead.xtol = detail::parse_number<double>(key, value);
    t.basinhopping.inner.xtol = t.nelder_mead.xtol;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

/// Parses a flat "key = value" file; '#' starts a comment.
inline void load_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = detail::trimmed(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = detail::trimmed(body.substr(0, eq));
    const std::string value = detail::trimmed(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

inline nlohmann::ordered_json config_to_json(const ExperimentConfig& config) {
  const auto& t = config.train;
  nlohmann::ordered_json j;
  j["corpus"] = config.corpus;
  if (!config.vocab.empty()) j["vocab"] = config.vocab;
  j["qn"] = t.hyper.q_n;
  j["qs"] = t.hyper.q_s;
  j["depth"] = t.hyper.d;
  j["optimizer"] = to_string(t.optimizer);
  j["cost"] = to_string(t.cost);
  j["evaluator"] = to_string(t.eval_mode);
  if (t.eval_mode == EvalMode::Shots) j["shots"] = t.shots;
  j["split"] = t.split_p;
  j["seed"] = t.seed;
  j["workers"] = t.workers;
  switch (t.optimizer) {
    case OptimizerKind::Spsa:
      j["iterations"] = t.spsa.iterations;
      j["spsa_a"] = t.spsa.a;
      j["spsa_c"] = t.spsa.c;
      break;
    case OptimizerKind::NelderMead:
      j["nm_max_evals"] = t.nelder_mead.max_evals;
      j["nm_xtol"] = t.nelder_mead.xtol;
      break;
    case OptimizerKind::Basinhopping:
      j["hops"] = t.basinhopping.hops;
      j["temperature"] = t.basinhopping.temperature;
      j["step_size"] = t.basinhopping.step_size;
      j["nm_max_evals"] = t.basinhopping.inner.max_evals;
      j["nm_xtol"] = t.basinhopping.inner.xtol;
      break;
  }
  return j;
}

struct ResolvedCorpus {
  LabeledCorpus corpus;
  Dictionary dictionary;
};

inline CfgVocab vocab_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open vocabulary file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad vocabulary file '" + path + "': " + e.what());
  }
  CfgVocab vocab;
  auto read_list = [&](const char* key, std::vector<std::string>& out) {
    if (!j.contains(key) || !j[key].is_array()) {
      throw ConfigError("vocabulary file '" + path + "' needs a string array '" + std::string(key) + "'");
    }
    for (const auto& w : j[key]) out.push_back(w.get<std::string>());
  };
  read_list("nouns", vocab.nouns);
  read_list("transitive", vocab.transitive);
  read_list("intransitive", vocab.intransitive);
  read_list("relative", vocab.relative);
  vocab.validate();
  return vocab;
}

/// Built-in corpus name, or a JSON-lines file (which then needs `vocab`).
inline ResolvedCorpus resolve_corpus(const ExperimentConfig& config) {
  if (const auto builtin = builtin_corpus_from(config.corpus)) {
    return {load_builtin(*builtin), builtin_dictionary(*builtin)};
  }
  if (config.vocab.empty()) {
    throw ConfigError("corpus file '" + config.corpus + "' needs a 'vocab' file for the word typings");
  }
  return {read_corpus(config.corpus), vocab_from_json_file(config.vocab).dictionary()};
}

struct ExperimentOutput {
  TrainRecord record;
  double wall_seconds = 0.0;
  std::string timestamp;
  std::string trace_path;
  std::string summary_path;
};

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Runs the experiment and writes trace.csv and summary.json into out_dir.
/// Everything in summary.json except the run_info block is a deterministic
/// function of the configuration.
inline ExperimentOutput run_and_write(const ExperimentConfig& config) {
  const auto resolved = resolve_corpus(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentOutput out;
  out.record = run_experiment(resolved.corpus, resolved.dictionary, config.train);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.timestamp = utc_timestamp();

  std::filesystem::create_directories(config.out_dir);
  out.trace_path = (std::filesystem::path(config.out_dir) / "trace.csv").string();
  out.summary_path = (std::filesystem::path(config.out_dir) / "summary.json").string();
  write_trace_csv(out.trace_path, out.record.cost_trace);

  nlohmann::ordered_json summary;
  summary["config"] = config_to_json(config);
  summary["param_slots"] = out.record.param_slots;
  summary["e_train"] = out.record.e_train;
  summary["e_test"] = out.record.e_test;
  summary["final_cost"] = out.record.final_cost;
  summary["cost_evaluations"] = out.record.cost_evaluations;
  summary["theta_star"] = out.record.theta_star;
  summary["run_info"] = {{"timestamp", out.timestamp}, {"wall_seconds", out.wall_seconds}};
  std::ofstream(out.summary_path) << summary.dump(2) << '\n';
  return out;
}

}  // namespace qnlp
