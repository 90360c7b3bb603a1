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
// Question-answering training: cost functions over compiled corpora,
// train/test splitting, error rates, and the end-to-end experiment driver.

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "qnlp/circuit.hpp"
#include "qnlp/corpora.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/optimize.hpp"
#include "qnlp/simulator.hpp"

namespace qnlp {

struct TrainSetupError final : std::runtime_error {
  explicit TrainSetupError(const std::string& what) : std::runtime_error(what) {}
};

enum class OptimizerKind { Spsa, NelderMead, Basinhopping };
enum class CostKind { Squared, Bce };
enum class EvalMode { Exact, Shots };

struct TrainConfig {
  OptimizerKind optimizer = OptimizerKind::Spsa;
  SpsaOptions spsa;                  // a = c = 0.1, 1000 iterations
  NelderMeadOptions nelder_mead;
  BasinhoppingOptions basinhopping;  // 100 hops, temperature 1
  CostKind cost = CostKind::Squared;
  HyperParams hyper;
  EvalMode eval_mode = EvalMode::Exact;
  int shots = 1 << 13;
  double split_p = 0.5;
  std::uint64_t seed = 0;
  int workers = 1;  // sentence-evaluation fanout; 0 = hardware concurrency
};

struct TrainRecord {
  std::vector<TracePoint> cost_trace;
  std::vector<double> theta_star;
  double e_train = 0.0;
  double e_test = 0.0;
  double final_cost = 0.0;
  std::size_t param_slots = 0;
  long cost_evaluations = 0;
};

/// Number of items in the train half: round-half-to-even of p*N.
inline std::size_t split_point(std::size_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("split fraction must be in (0, 1)");
  const double x = p * static_cast<double>(n);
  const double floor_x = std::floor(x);
  const double frac = x - floor_x;
  std::size_t k = static_cast<std::size_t>(floor_x);
  if (frac > 0.5) ++k;
  else if (frac == 0.5 && (k % 2 == 1)) ++k;  // ties to even
  return k;
}

/// Order-preserving split: the first round(p*N) items train, the rest test.
inline std::pair<LabeledCorpus, LabeledCorpus> split(const LabeledCorpus& corpus, double p) {
  const std::size_t k = split_point(corpus.items.size(), p);
  LabeledCorpus train, test;
  train.items.assign(corpus.items.begin(), corpus.items.begin() + static_cast<std::ptrdiff_t>(k));
  test.items.assign(corpus.items.begin() + static_cast<std::ptrdiff_t>(k), corpus.items.end());
  return {std::move(train), std::move(test)};
}

/// Compiles every sentence of a corpus once against a shared registry and
/// evaluates predicted labels, exactly or from sampled shots. Evaluation
/// can fan out across worker threads; results are reduced in sentence
/// order, so values do not depend on the worker count.
class CorpusEvaluator {
 public:
  CorpusEvaluator(const LabeledCorpus& corpus, const Dictionary& dict, const HyperParams& hyper,
                  EvalMode mode = EvalMode::Exact, int shots = 1 << 13,
                  std::uint64_t shot_seed = 0, int workers = 1)
      : labels_(), mode_(mode), shots_(shots), shot_seed_(shot_seed),
        workers_(workers > 0 ? workers
                             : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))) {
    for (const auto& item : corpus.items) {
      circuits_.push_back(compile(from_sentence(item.words, dict), hyper, registry_));
      labels_.push_back(item.label);
    }
  }

  std::size_t size() const { return circuits_.size(); }
  int label(std::size_t i) const { return labels_[i]; }
  const ParamRegistry& registry() const { return registry_; }
  const SentenceCircuit& circuit(std::size_t i) const { return circuits_[i]; }

  double predict(std::size_t i, const std::vector<double>& theta, std::uint64_t tick = 0) const {
    if (mode_ == EvalMode::Exact) return rescaled_label(circuits_[i], theta).value;
    return rescaled_label_shots(circuits_[i], theta, shots_, mix_seed(shot_seed_, tick * 1315423911ull + i))
        .value;
  }

  /// Predicted labels for sentences [begin, end).
  std::vector<double> predict_range(std::size_t begin, std::size_t end,
                                    const std::vector<double>& theta) const {
    const std::uint64_t tick = tick_++;
    const std::size_t count = end - begin;
    std::vector<double> out(count);
    const int workers = std::min<int>(workers_, static_cast<int>(count));
    if (workers <= 1) {
      for (std::size_t i = 0; i < count; ++i) out[i] = predict(begin + i, theta, tick);
      return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          out[i] = predict(begin + i, theta, tick);
        }
      });
    }
    for (auto& t : pool) t.join();
    return out;
  }

 private:
  std::vector<SentenceCircuit> circuits_;
  std::vector<int> labels_;
  ParamRegistry registry_;
  EvalMode mode_;
  int shots_;
  std::uint64_t shot_seed_;
  int workers_;
  mutable std::atomic<std::uint64_t> tick_{0};  // advances shot streams per cost call
};

/// Sum of squared differences between predictions and labels.
inline double cost_squared_from(const std::vector<double>& predictions,
                                const std::vector<int>& labels) {
  double total = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double diff = predictions[i] - labels[i];
    total += diff * diff;
  }
  return total;
}

/// Mean binary cross entropy; predictions are clipped away from {0, 1}.
inline double cost_bce_from(const std::vector<double>& predictions, const std::vector<int>& labels,
                            double clip = 1e-9) {
  double total = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double p = std::clamp(predictions[i], clip, 1.0 - clip);
    total += labels[i] ? std::log(p) : std::log(1.0 - p);
  }
  return -total / static_cast<double>(predictions.size());
}

inline double cost_squared(const std::vector<double>& theta, const CorpusEvaluator& eval,
                           std::size_t begin, std::size_t end) {
  std::vector<int> labels;
  for (std::size_t i = begin; i < end; ++i) labels.push_back(eval.label(i));
  return cost_squared_from(eval.predict_range(begin, end, theta), labels);
}

inline double cost_bce(const std::vector<double>& theta, const CorpusEvaluator& eval,
                       std::size_t begin, std::size_t end) {
  std::vector<int> labels;
  for (std::size_t i = begin; i < end; ++i) labels.push_back(eval.label(i));
  return cost_bce_from(eval.predict_range(begin, end, theta), labels);
}

/// Rounding rule for binary readout: ties at 0.5 go to 1.
inline int round_label(double prediction) { return prediction >= 0.5 ? 1 : 0; }

/// Fraction of rounded predictions that differ from the labels.
inline double error_rate(const std::vector<double>& theta, const CorpusEvaluator& eval,
                         std::size_t begin, std::size_t end) {
  if (begin == end) return 0.0;
  const auto preds = eval.predict_range(begin, end, theta);
  double wrong = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    wrong += std::abs(round_label(preds[i]) - eval.label(begin + i));
  }
  return wrong / static_cast<double>(preds.size());
}

/// Checks the question-answering precondition: every word of every test
/// sentence must occur in some training sentence.
inline void check_vocabulary_coverage(const LabeledCorpus& corpus, std::size_t n_train) {
  std::set<std::string> train_vocab;
  for (std::size_t i = 0; i < n_train; ++i) {
    for (const auto& w : corpus.items[i].words) train_vocab.insert(w);
  }
  for (std::size_t i = n_train; i < corpus.items.size(); ++i) {
    for (const auto& w : corpus.items[i].words) {
      if (!train_vocab.count(w)) {
        throw TrainSetupError("test sentence " + std::to_string(i) + " uses word '" + w +
                              "' that never occurs in the training half");
      }
    }
  }
}

/// Uniform [0, 2pi) initial parameters.
inline std::vector<double> random_parameters(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> theta(count);
  for (auto& v : theta) v = uniform_double(rng, 0.0, 2.0 * 3.14159265358979323846);
  return theta;
}

/// Full pipeline: compile the corpus against one registry, split, minimize
/// the chosen cost over the training half, then report train/test errors.
inline TrainRecord run_experiment(const LabeledCorpus& corpus, const Dictionary& dict,
                                  const TrainConfig& config) {
  if (corpus.items.empty()) throw TrainSetupError("corpus is empty");
  config.hyper.validate();
  const std::size_t n = corpus.items.size();
  const std::size_t n_train = split_point(n, config.split_p);
  if (n_train == 0 || n_train == n) throw TrainSetupError("split leaves an empty train or test set");
  check_vocabulary_coverage(corpus, n_train);

  CorpusEvaluator evaluator(corpus, dict, config.hyper, config.eval_mode, config.shots,
                            mix_seed(config.seed, 3), config.workers);

  std::vector<double> theta0 = random_parameters(evaluator.registry().total_slots(),
                                                 mix_seed(config.seed, 0));

  long evaluations = 0;
  CostFunction cost = [&](const std::vector<double>& theta) {
    ++evaluations;
    return config.cost == CostKind::Squared ? cost_squared(theta, evaluator, 0, n_train)
                                            : cost_bce(theta, evaluator, 0, n_train);
  };

  OptimResult opt;
  switch (config.optimizer) {
    case OptimizerKind::Spsa: {
      SpsaOptions o = config.spsa;
      o.seed = mix_seed(config.seed, 1);
      opt = spsa_minimize(cost, theta0, o);
      break;
    }
    case OptimizerKind::NelderMead:
      opt = nelder_mead(cost, theta0, config.nelder_mead);
      break;
    case OptimizerKind::Basinhopping: {
      BasinhoppingOptions o = config.basinhopping;
      o.seed = mix_seed(config.seed, 2);
      opt = basinhopping(cost, theta0, o);
      break;
    }
  }

  TrainRecord record;
  record.cost_trace = std::move(opt.trace);
  record.final_cost = opt.cost;
  record.e_train = error_rate(opt.theta, evaluator, 0, n_train);
  record.e_test = error_rate(opt.theta, evaluator, n_train, n);
  record.theta_star = std::move(opt.theta);
  record.param_slots = evaluator.registry().total_slots();
  record.cost_evaluations = evaluations;
  return record;
}

/// CSV trace: header then one "iteration,cost" row per point.
inline void write_trace_csv(const std::string& path, const std::vector<TracePoint>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "iteration,cost\n";
  char buf[64];
  for (const auto& p : trace) {
    std::snprintf(buf, sizeof buf, "%d,%.17g\n", p.iteration, p.cost);
    out << buf;
  }
}

}  // namespace qnlp
