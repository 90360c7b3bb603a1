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
// Command-line front end: parse sentences, compile them to circuits,
// generate corpora, train the question-answering model, and run Hadamard
// tests. Exit codes: 0 success, 1 domain failure (e.g. an ungrammatical
// sentence), 2 usage or configuration errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "qnlp/cfg.hpp"
#include "qnlp/circuit.hpp"
#include "qnlp/corpora.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/experiment.hpp"
#include "qnlp/pregroup.hpp"
#include "qnlp/simulator.hpp"
#include "qnlp/train.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> to_words(const std::vector<std::string>& args) {
  std::vector<std::string> words;
  for (const auto& arg : args) {
    std::istringstream in(arg);
    std::string w;
    while (in >> w) words.push_back(w);
  }
  return words;
}

qnlp::Dictionary dictionary_for(const std::string& vocab_arg) {
  if (vocab_arg.empty()) return qnlp::merged_builtin_dictionary();
  if (const auto builtin = qnlp::builtin_corpus_from(vocab_arg)) {
    return qnlp::builtin_dictionary(*builtin);
  }
  return qnlp::vocab_from_json_file(vocab_arg).dictionary();
}

qnlp::CfgVocab cfg_vocab_for(const std::string& vocab_arg) {
  if (const auto builtin = qnlp::builtin_corpus_from(vocab_arg)) {
    return qnlp::builtin_vocab(*builtin);
  }
  return qnlp::vocab_from_json_file(vocab_arg);
}

// Replays the cup pattern as an explicit contraction chain, innermost-first,
// printing the surviving type string after each step.
void print_reduction_steps(const qnlp::PregroupType& t, const qnlp::CupPattern& pattern) {
  std::vector<bool> alive(t.size(), true);
  auto print_live = [&] {
    std::string line;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!alive[i]) continue;
      if (!line.empty()) line += ' ';
      line += qnlp::format_type(qnlp::PregroupType{{t[i]}});
    }
    std::printf("    -> %s\n", line.empty() ? "(unit)" : line.c_str());
  };
  std::printf("  reduction:\n    %s\n", qnlp::format_type(t).c_str());
  std::vector<std::pair<std::size_t, std::size_t>> remaining = pattern.pairs;
  while (!remaining.empty()) {
    // contract the first cup whose endpoints are adjacent among live wires
    std::size_t pick = remaining.size();
    for (std::size_t c = 0; c < remaining.size(); ++c) {
      bool adjacent = true;
      for (std::size_t k = remaining[c].first + 1; k < remaining[c].second; ++k) {
        adjacent = adjacent && !alive[k];
      }
      if (adjacent) { pick = c; break; }
    }
    alive[remaining[pick].first] = alive[remaining[pick].second] = false;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    print_live();
  }
}

int cmd_parse(const std::vector<std::string>& sentence_args, const std::string& vocab_arg) {
  const auto words = to_words(sentence_args);
  const auto dict = dictionary_for(vocab_arg);
  std::printf("sentence: ");
  for (const auto& w : words) std::printf("%s ", w.c_str());
  std::printf("\n  types:\n");
  for (const auto& w : words) {
    std::printf("    %-10s %s\n", w.c_str(), qnlp::format_type(dict.at(w)).c_str());
  }
  const auto t = qnlp::sentence_type(words, dict);
  const auto pattern = qnlp::reduce(t);
  if (!pattern) {
    std::printf("  verdict: not grammatical (no contraction-only reduction to s)\n");
    return kExitDomain;
  }
  print_reduction_steps(t, *pattern);
  std::printf("  cups:");
  for (const auto& [i, j] : pattern->pairs) std::printf(" (%zu,%zu)", i, j);
  std::printf("\n  open: %zu\n  verdict: grammatical\n", pattern->open.front());
  return kExitOk;
}

int cmd_compile(const std::vector<std::string>& sentence_args, const std::string& vocab_arg,
                const qnlp::HyperParams& hyper, const std::string& out_path,
                const std::string& qasm_path) {
  const auto words = to_words(sentence_args);
  const auto dict = dictionary_for(vocab_arg);
  const auto diagram = qnlp::from_sentence(words, dict);
  qnlp::ParamRegistry registry;
  const auto circuit = qnlp::compile(diagram, hyper, registry);
  if (!out_path.empty()) {
    std::ofstream(out_path) << qnlp::circuit_to_json(circuit).dump(2) << '\n';
  }
  if (!qasm_path.empty()) {
    std::ofstream(qasm_path) << qnlp::circuit_to_qasm(circuit);
  }
  std::printf("qubits: %d\nparameter slots: %zu\ncnot count: %zu\npostselected qubits: %zu\n",
              circuit.qubit_count, registry.total_slots(), qnlp::cnot_count(circuit),
              circuit.postselect.size());
  return kExitOk;
}

int cmd_gen(const std::string& vocab_arg, std::size_t count, std::uint64_t seed, int max_depth,
            const std::string& out_path) {
  const auto vocab = cfg_vocab_for(vocab_arg);
  const auto sentences = qnlp::generate_corpus(vocab, count, seed, max_depth);
  qnlp::write_sentences(out_path, sentences);
  std::printf("wrote %zu unlabeled sentences to %s\n", sentences.size(), out_path.c_str());
  return kExitOk;
}

int cmd_train(const qnlp::ExperimentConfig& config) {
  const auto out = qnlp::run_and_write(config);
  std::printf("param slots: %zu\n", out.record.param_slots);
  std::printf("final cost: %.6f\n", out.record.final_cost);
  std::printf("e_train: %.6f\ne_test: %.6f\n", out.record.e_train, out.record.e_test);
  std::printf("trace: %s\nsummary: %s\n", out.trace_path.c_str(), out.summary_path.c_str());
  return kExitOk;
}

int cmd_hadamard(const std::vector<std::string>& sentence_args, const std::string& vocab_arg,
                 const qnlp::HyperParams& hyper, const std::string& theta_path, int shots,
                 std::uint64_t seed) {
  const auto words = to_words(sentence_args);
  const auto dict = dictionary_for(vocab_arg);
  qnlp::ParamRegistry registry;
  const auto circuit = qnlp::compile(qnlp::from_sentence(words, dict), hyper, registry);

  std::ifstream in(theta_path);
  if (!in) throw qnlp::ConfigError("cannot open theta file '" + theta_path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw qnlp::ConfigError("theta file '" + theta_path + "' is not a JSON array: " + e.what());
  }
  if (!j.is_array()) throw qnlp::ConfigError("theta file must hold a JSON array of angles");
  const std::vector<double> theta = j.get<std::vector<double>>();
  if (theta.size() != registry.total_slots()) {
    throw qnlp::ConfigError("theta file has " + std::to_string(theta.size()) +
                            " angles, circuit needs " + std::to_string(registry.total_slots()));
  }

  std::optional<int> shot_opt;
  if (shots > 0) shot_opt = shots;
  const double re = qnlp::hadamard_test(circuit, theta, qnlp::HadamardPart::Real, shot_opt, seed);
  const double im = qnlp::hadamard_test(circuit, theta, qnlp::HadamardPart::Imaginary, shot_opt,
                                        qnlp::mix_seed(seed, 1));
  const double label = qnlp::predicted_label(circuit, theta).value;
  std::printf("re: %.12f\nim: %.12f\nre2_plus_im2: %.12f\npostselected_label: %.12f\n", re, im,
              re * re + im * im, label);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pregroup sentences as parameterized quantum circuits"};
  app.require_subcommand(1);

  std::vector<std::string> sentence;
  std::string vocab_arg;
  qnlp::HyperParams hyper{1, 0, 2};
  std::string out_path, qasm_path;

  auto* parse_cmd = app.add_subcommand("parse", "type a sentence and show its reduction");
  parse_cmd->add_option("sentence", sentence, "sentence words")->required();
  parse_cmd->add_option("--vocab", vocab_arg, "builtin corpus name or vocabulary JSON file");

  auto* compile_cmd = app.add_subcommand("compile", "compile a sentence to a circuit");
  compile_cmd->add_option("sentence", sentence, "sentence words")->required();
  compile_cmd->add_option("--vocab", vocab_arg, "builtin corpus name or vocabulary JSON file");
  compile_cmd->add_option("--qn", hyper.q_n, "qubits per n-wire");
  compile_cmd->add_option("--qs", hyper.q_s, "qubits per s-wire");
  compile_cmd->add_option("--depth", hyper.d, "word-circuit depth");
  compile_cmd->add_option("--out", out_path, "circuit JSON output path");
  compile_cmd->add_option("--qasm", qasm_path, "OpenQASM-style output path");

  std::string gen_vocab = "k30";
  std::size_t gen_count = 10;
  std::uint64_t gen_seed = 0;
  int gen_depth = 3;
  std::string gen_out = "corpus.jsonl";
  auto* gen_cmd = app.add_subcommand("gen", "generate random grammatical sentences");
  gen_cmd->add_option("--vocab", gen_vocab, "builtin corpus name or vocabulary JSON file");
  gen_cmd->add_option("--count", gen_count, "number of distinct sentences");
  gen_cmd->add_option("--seed", gen_seed, "generation seed");
  gen_cmd->add_option("--max-depth", gen_depth, "relative-clause recursion bound");
  gen_cmd->add_option("--out", gen_out, "JSON-lines output path");

  qnlp::ExperimentConfig config;
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> flag_settings;
  auto* train_cmd = app.add_subcommand("train", "train the question-answering model");
  train_cmd->add_option("--config", config_path, "key = value configuration file");
  auto add_train_flag = [&](const std::string& key, const std::string& help) {
    train_cmd->add_option_function<std::string>(
        "--" + key,
        [&flag_settings, key](const std::string& v) { flag_settings.emplace_back(key, v); }, help);
  };
  add_train_flag("corpus", "builtin name (k30, k6, k16) or JSON-lines file");
  add_train_flag("vocab", "vocabulary JSON file for file corpora");
  add_train_flag("qn", "qubits per n-wire");
  add_train_flag("qs", "qubits per s-wire");
  add_train_flag("depth", "word-circuit depth");
  add_train_flag("optimizer", "spsa | nelder_mead | basinhopping");
  add_train_flag("cost", "squared | bce");
  add_train_flag("evaluator", "exact | shots");
  add_train_flag("shots", "shots per label estimate");
  add_train_flag("seed", "experiment seed");
  add_train_flag("split", "training fraction p");
  add_train_flag("workers", "parallel sentence evaluations (0 = hardware)");
  add_train_flag("iterations", "SPSA iterations");
  add_train_flag("spsa_a", "SPSA step gain a");
  add_train_flag("spsa_c", "SPSA perturbation gain c");
  add_train_flag("hops", "basinhopping hops");
  add_train_flag("temperature", "basinhopping Metropolis temperature");
  add_train_flag("step_size", "basinhopping displacement bound");
  add_train_flag("nm_max_evals", "Nelder-Mead evaluation budget");
  add_train_flag("nm_xtol", "Nelder-Mead simplex tolerance");
  add_train_flag("out", "output directory");

  std::string theta_path;
  int hshots = 0;
  std::uint64_t hseed = 0;
  auto* hadamard_cmd = app.add_subcommand("hadamard", "Hadamard-test a sentence circuit");
  hadamard_cmd->add_option("sentence", sentence, "sentence words")->required();
  hadamard_cmd->add_option("--vocab", vocab_arg, "builtin corpus name or vocabulary JSON file");
  hadamard_cmd->add_option("--qn", hyper.q_n, "qubits per n-wire");
  hadamard_cmd->add_option("--qs", hyper.q_s, "qubits per s-wire");
  hadamard_cmd->add_option("--depth", hyper.d, "word-circuit depth");
  hadamard_cmd->add_option("--theta", theta_path, "JSON array of parameter angles")->required();
  hadamard_cmd->add_option("--shots", hshots, "estimate <Z> from this many shots (0 = exact)");
  hadamard_cmd->add_option("--seed", hseed, "shot sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(sentence, vocab_arg);
    if (compile_cmd->parsed()) {
      hyper.validate();
      return cmd_compile(sentence, vocab_arg, hyper, out_path, qasm_path);
    }
    if (gen_cmd->parsed()) return cmd_gen(gen_vocab, gen_count, gen_seed, gen_depth, gen_out);
    if (train_cmd->parsed()) {
      if (!config_path.empty()) qnlp::load_config_file(config, config_path);
      for (const auto& [key, value] : flag_settings) qnlp::apply_setting(config, key, value);
      config.train.hyper.validate();
      return cmd_train(config);
    }
    if (hadamard_cmd->parsed()) {
      hyper.validate();
      return cmd_hadamard(sentence, vocab_arg, hyper, theta_path, hshots, hseed);
    }
  } catch (const qnlp::UngrammaticalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  } catch (const qnlp::TrainSetupError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  } catch (const qnlp::CompileError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  } catch (const qnlp::DictionaryMiss& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const qnlp::TypeParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const qnlp::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const qnlp::CorpusFormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  }
  return kExitUsage;
}
