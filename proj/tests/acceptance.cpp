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
// Acceptance suite: one self-contained check per numbered criterion, each
// printing a PASS/FAIL line with the measured quantities. Run with no
// arguments for all criteria or with a list of numbers. The process exit
// code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qnlp/cfg.hpp"
#include "qnlp/circuit.hpp"
#include "qnlp/corpora.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/optimize.hpp"
#include "qnlp/simulator.hpp"
#include "qnlp/train.hpp"
#include "oracles.hpp"

using namespace qnlp;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome out;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      out.pass = false;
      out.detail += (out.detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    out.detail += (out.detail.empty() ? "" : "; ") + what;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::vector<LabeledItem> all_builtin_items() {
  std::vector<LabeledItem> items;
  for (auto which : {BuiltinCorpus::K30, BuiltinCorpus::K6, BuiltinCorpus::K16}) {
    const auto corpus = load_builtin(which);
    items.insert(items.end(), corpus.items.begin(), corpus.items.end());
  }
  return items;
}

// Runs jobs on a fixed pool, preserving result order.
template <typename Result, typename Fn>
std::vector<Result> run_pool(std::size_t n_jobs, int workers, Fn&& fn) {
  std::vector<Result> results(n_jobs);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int count = std::max(1, workers);
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n_jobs; i = next.fetch_add(1)) results[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

// --------------------------------------------------------------------------
// 1. Grammar suite: corpus grammaticality, scramble rejection, DP vs oracle.
// --------------------------------------------------------------------------
Outcome criterion1() {
  Check c;
  const auto t0 = Clock::now();
  const Dictionary dict = merged_builtin_dictionary();

  std::size_t grammatical = 0;
  for (const auto& item : all_builtin_items()) {
    if (is_grammatical(item.words, dict)) ++grammatical;
  }
  c.require(grammatical == 52, fmt("only %zu/52 corpus sentences grammatical", grammatical));

  // Scrambles of corpus sentences; each one the rewriting oracle rejects
  // must be rejected by the parser too.
  const auto items = all_builtin_items();
  std::mt19937_64 rng(20260810);
  std::size_t rejected = 0, tried = 0;
  while (rejected < 100 && tried < 4000) {
    ++tried;
    auto words = items[uniform_index(rng, items.size())].words;
    for (std::size_t i = words.size(); i > 1; --i) {
      std::swap(words[i - 1], words[uniform_index(rng, i)]);
    }
    const auto t = sentence_type(words, dict);
    const bool oracle_ok = oracle::grammatical_by_rewriting(t);
    const bool parser_ok = is_grammatical(words, dict);
    if (parser_ok != oracle_ok) {
      c.require(false, "parser disagrees with the rewriting oracle on a scramble");
      break;
    }
    if (!oracle_ok) ++rejected;
  }
  c.require(rejected >= 100, fmt("only %zu ungrammatical scrambles seen", rejected));

  // All type strings of length <= 10 over the distinct type shapes.
  const std::vector<PregroupType> shapes{noun_type(), transitive_verb_type(),
                                         intransitive_verb_type(), relative_pronoun_type()};
  std::size_t checked = 0;
  bool agree = true;
  auto recurse = [&](auto&& self, const PregroupType& prefix) -> void {
    const auto dp = reduce(prefix);
    agree = agree && (dp.has_value() == oracle::grammatical_by_rewriting(prefix));
    if (dp) agree = agree && !pattern_error(prefix, *dp).has_value();
    ++checked;
    for (const auto& shape : shapes) {
      if (prefix.size() + shape.size() <= 10) self(self, prefix + shape);
    }
  };
  recurse(recurse, PregroupType{});
  c.require(agree, "interval DP disagrees with the exhaustive matcher");

  const double secs = seconds_since(t0);
  c.require(secs < 10.0, fmt("took %.1f s (budget 10 s)", secs));
  c.note(fmt("52 sentences, %zu scrambles rejected, %zu type strings cross-checked, %.2f s",
             rejected, checked, secs));
  return c.out;
}

// --------------------------------------------------------------------------
// 2. Parameter-count formulas.
// --------------------------------------------------------------------------
Outcome criterion2() {
  Check c;
  const Dictionary k30 = builtin_dictionary(BuiltinCorpus::K30);
  const Dictionary k16 = builtin_dictionary(BuiltinCorpus::K16);
  for (int d = 1; d <= 5; ++d) {
    c.require(param_count(k30, {1, 0, d}) == static_cast<std::size_t>(8 + 2 * d),
              fmt("K30 q_n=1 d=%d != 8+2d", d));
    c.require(param_count(k30, {2, 0, d}) == static_cast<std::size_t>(10 * d),
              fmt("K30 q_n=2 d=%d != 10d", d));
  }
  c.require(param_count(k16, {1, 0, 2}) == 10, "K16 q_n=1 d=2 != 10");
  // d=3 follows the same construction, 6+2d = 12; the published caption's 13
  // is not matched.
  c.require(param_count(k16, {1, 0, 3}) == 12, "K16 q_n=1 d=3 != 12");
  c.note("|theta| = 8+2d and 10d for d in 1..5; K16: 10 at d=2, 12 at d=3 by construction");
  return c.out;
}

// --------------------------------------------------------------------------
// 3. Exact amplitudes equal dense tensor contraction of the diagram.
// --------------------------------------------------------------------------
Outcome criterion3() {
  Check c;
  const auto t0 = Clock::now();
  const Dictionary dict = merged_builtin_dictionary();
  const auto items = all_builtin_items();

  struct Case { std::size_t item; int q_n; int d; };
  std::vector<Case> cases;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (int q_n : {1, 2}) {
      for (int d : {1, 2, 3}) cases.push_back({i, q_n, d});
    }
  }
  const auto worst = run_pool<double>(cases.size(), 2, [&](std::size_t idx) {
    const auto& [item, q_n, d] = cases[idx];
    const HyperParams hyper{q_n, 0, d};
    const SentenceDiagram diagram = from_sentence(items[item].words, dict);
    ParamRegistry registry;
    const SentenceCircuit circuit = compile(diagram, hyper, registry);
    std::mt19937_64 rng(mix_seed(900 + idx, 0));
    double max_err = 0;
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> theta(registry.total_slots());
      for (auto& v : theta) v = uniform_double(rng, 0, 6.283185307179586);
      const auto sim = amplitude_zero(circuit, theta);
      const auto ref = oracle::contract_diagram(diagram, hyper, registry, theta);
      max_err = std::max(max_err, std::abs(sim - ref));
    }
    return max_err;
  });
  double max_err = 0;
  for (double e : worst) max_err = std::max(max_err, e);
  c.require(max_err < 1e-9, fmt("max |sim - contraction| = %.3g", max_err));

  const double secs = seconds_since(t0);
  c.require(secs < 120.0, fmt("took %.1f s (budget 120 s)", secs));
  c.note(fmt("%zu circuits x 10 thetas, max deviation %.2e, %.1f s", cases.size(), max_err, secs));
  return c.out;
}

// --------------------------------------------------------------------------
// 4. Bell effect vector and the cap-then-cup identity.
// --------------------------------------------------------------------------
Outcome criterion4() {
  Check c;
  const auto cup = cup_effect({0}, {1});
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t b = 0; b < 4; ++b) {
    StateVector sv;
    sv.qubits = 2;
    sv.amps.assign(4, {0, 0});
    sv.amps[b] = 1.0;
    for (const auto& g : cup.gates) apply_gate(sv, g, {});
    const double expected = (b == 0 || b == 3) ? r : 0.0;
    c.require(std::abs(sv.amps[0] - std::complex<double>(expected, 0)) < 1e-12,
              fmt("Bell effect entry %zu off", b));
  }
  for (int q_b : {1, 2}) {
    SentenceCircuit snake;
    snake.qubit_count = 2 * q_b;
    snake.gates = ghz_prep(2, q_b);
    std::vector<int> left, right;
    for (int j = 0; j < q_b; ++j) {
      left.push_back(j);
      right.push_back(q_b + j);
    }
    const auto effect = cup_effect(left, right);
    snake.gates.insert(snake.gates.end(), effect.gates.begin(), effect.gates.end());
    snake.postselect = effect.postselect;
    const auto amp = amplitude_zero(snake, {});
    c.require(std::abs(amp - std::complex<double>(1, 0)) < 1e-12,
              fmt("cap-then-cup amplitude at q_b=%d is %.12f", q_b, std::abs(amp)));
  }
  c.note("Bell effect = (<00|+<11|)/sqrt(2); cap-then-cup amplitude 1 at q_b in {1,2}");
  return c.out;
}

// --------------------------------------------------------------------------
// 5. Hadamard test reproduces the postselected label, exactly and at 2^13
//    shots.
// --------------------------------------------------------------------------
Outcome criterion5() {
  Check c;
  const Dictionary dict = builtin_dictionary(BuiltinCorpus::K16);
  const int shots = 1 << 13;
  double max_exact = 0, worst_shot_sigma = 0;
  std::mt19937_64 rng(42);
  for (const auto& item : load_builtin(BuiltinCorpus::K16).items) {
    ParamRegistry registry;
    const auto circuit = compile(from_sentence(item.words, dict), {1, 0, 3}, registry);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> theta(registry.total_slots());
      for (auto& v : theta) v = uniform_double(rng, 0, 6.283185307179586);
      const double label = predicted_label(circuit, theta).value;
      const double re = hadamard_test(circuit, theta, HadamardPart::Real);
      const double im = hadamard_test(circuit, theta, HadamardPart::Imaginary);
      max_exact = std::max(max_exact, std::abs(re * re + im * im - label));

      const std::uint64_t seed = rng();
      const double re_s = hadamard_test(circuit, theta, HadamardPart::Real, shots, seed);
      const double im_s = hadamard_test(circuit, theta, HadamardPart::Imaginary, shots, seed + 1);
      const double var_re = std::max(0.0, 1 - re * re) / shots;
      const double var_im = std::max(0.0, 1 - im * im) / shots;
      // first-order error propagation plus the second-order bias of squares
      const double combined = std::sqrt(4 * re * re * var_re + 4 * im * im * var_im) +
                              var_re + var_im + 1e-12;
      const double err = std::abs(re_s * re_s + im_s * im_s - label);
      worst_shot_sigma = std::max(worst_shot_sigma, err / combined);
    }
  }
  c.require(max_exact < 1e-9, fmt("exact Re^2+Im^2 deviates by %.3g", max_exact));
  c.require(worst_shot_sigma < 5.0, fmt("shot-mode deviation %.2f combined sigmas", worst_shot_sigma));
  c.note(fmt("16 sentences x 20 thetas: exact max %.2e, shot mode worst %.2f sigma",
             max_exact, worst_shot_sigma));
  return c.out;
}

// --------------------------------------------------------------------------
// 6. Shot-noise concentration at theta = 0 on "Romeo dies".
// --------------------------------------------------------------------------
Outcome criterion6() {
  Check c;
  const Dictionary dict = builtin_dictionary(BuiltinCorpus::K6);
  ParamRegistry registry;
  const auto circuit = compile(from_sentence({"Romeo", "dies"}, dict), {1, 0, 2}, registry);
  const std::vector<double> zeros(registry.total_slots(), 0.0);
  const int shots = 1 << 13;
  const double bound = 5 * std::sqrt(0.25 / shots);
  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double est = predicted_label_shots(circuit, zeros, shots, seed).value;
    if (std::abs(est - 0.5) < bound) ++within;
  }
  c.require(within >= 95, fmt("only %d/100 seeds within %.4f of 0.5", within, bound));
  c.note(fmt("%d/100 seeds within +/-%.4f of 0.5 at 2^13 shots", within, bound));
  return c.out;
}

// --------------------------------------------------------------------------
// 7. Training reproduction at desk scale.
// --------------------------------------------------------------------------
struct ErrorStats {
  double e_train = 0;
  double e_test = 0;
};

ErrorStats mean_errors(const std::vector<TrainRecord>& records) {
  ErrorStats m;
  for (const auto& r : records) {
    m.e_train += r.e_train;
    m.e_test += r.e_test;
  }
  m.e_train /= static_cast<double>(records.size());
  m.e_test /= static_cast<double>(records.size());
  return m;
}

double loglog_slope(const std::vector<int>& ds, const std::vector<double>& es) {
  // least squares on (log d, log max(e, 1e-3))
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double x = std::log(static_cast<double>(ds[i]));
    const double y = std::log(std::max(es[i], 1e-3));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome criterion7() {
  Check c;
  const auto t0 = Clock::now();
  const auto k30 = load_builtin(BuiltinCorpus::K30);
  const Dictionary dict30 = builtin_dictionary(BuiltinCorpus::K30);
  const int hw = std::max(2u, std::thread::hardware_concurrency());

  // (a) SPSA cost curves: lower final mean cost at d=3 than at d=1.
  {
    const int seeds = 20;
    struct Job { int d; std::uint64_t seed; };
    std::vector<Job> jobs;
    for (int d : {1, 3}) {
      for (int s = 0; s < seeds; ++s) jobs.push_back({d, static_cast<std::uint64_t>(100 + s)});
    }
    const auto finals = run_pool<double>(jobs.size(), hw, [&](std::size_t i) {
      TrainConfig config;
      config.optimizer = OptimizerKind::Spsa;
      config.spsa = {.a = 0.1, .c = 0.1, .iterations = 1000};
      config.cost = CostKind::Squared;
      config.hyper = {1, 0, jobs[i].d};
      config.seed = jobs[i].seed;
      return run_experiment(k30, dict30, config).final_cost;
    });
    double mean_d1 = 0, mean_d3 = 0;
    for (int s = 0; s < seeds; ++s) {
      mean_d1 += finals[s] / seeds;
      mean_d3 += finals[seeds + s] / seeds;
    }
    c.require(mean_d3 < mean_d1,
              fmt("(a) SPSA final mean cost: d=3 %.3f !< d=1 %.3f", mean_d3, mean_d1));
    c.note(fmt("(a) SPSA 20-seed final mean cost: d=1 %.3f, d=3 %.3f", mean_d1, mean_d3));
  }

  // (b) basinhopping error decay in the word-circuit depth.
  auto bh_run = [&](int q_n, int d, std::uint64_t seed, int nm_evals) {
    TrainConfig config;
    config.optimizer = OptimizerKind::Basinhopping;
    config.basinhopping.hops = 100;
    config.basinhopping.temperature = 1.0;
    config.basinhopping.step_size = 0.8;
    config.basinhopping.inner.max_evals = nm_evals;
    config.cost = CostKind::Squared;
    config.hyper = {q_n, 0, d};
    config.seed = seed;
    return run_experiment(k30, dict30, config);
  };

  for (int q_n : {1, 2}) {
    const std::vector<int> depths = (q_n == 1) ? std::vector<int>{1, 2, 3, 4}
                                               : std::vector<int>{1, 2, 3};
    const int seeds = (q_n == 1) ? 5 : 2;
    struct Job { int d; std::uint64_t seed; };
    std::vector<Job> jobs;
    for (int d : depths) {
      for (int s = 0; s < seeds; ++s) jobs.push_back({d, static_cast<std::uint64_t>(200 + s)});
    }
    const auto records = run_pool<TrainRecord>(jobs.size(), hw, [&](std::size_t i) {
      const int nm_evals = (q_n == 1) ? 400 : 150 + 100 * jobs[i].d;
      return bh_run(q_n, jobs[i].d, jobs[i].seed, nm_evals);
    });

    std::vector<double> mean_tr, mean_te;
    std::string per_d;
    for (std::size_t di = 0; di < depths.size(); ++di) {
      std::vector<TrainRecord> group(records.begin() + static_cast<std::ptrdiff_t>(di * seeds),
                                     records.begin() + static_cast<std::ptrdiff_t>((di + 1) * seeds));
      const auto m = mean_errors(group);
      mean_tr.push_back(m.e_train);
      mean_te.push_back(m.e_test);
      per_d += fmt(" d=%d(%.3f/%.3f)", depths[di], m.e_train, m.e_test);
    }
    for (std::size_t di = 0; di + 1 < depths.size() && depths[di + 1] <= 3; ++di) {
      c.require(mean_tr[di + 1] <= mean_tr[di] + 1e-12,
                fmt("(b) q_n=%d mean e_train rises from d=%d to d=%d", q_n, depths[di], depths[di + 1]));
      c.require(mean_te[di + 1] <= mean_te[di] + 1e-12,
                fmt("(b) q_n=%d mean e_test rises from d=%d to d=%d", q_n, depths[di], depths[di + 1]));
    }
    const double slope3 = loglog_slope({1, 2, 3}, {mean_tr[0], mean_tr[1], mean_tr[2]});
    c.require(slope3 < 0, fmt("(b) q_n=%d log-log e_train slope %.2f not negative", q_n, slope3));
    if (q_n == 1) {
      const double slope4 = loglog_slope({1, 2, 3, 4}, mean_tr);
      c.require(slope4 < 0, fmt("(b) q_n=1 d<=4 slope %.2f not negative", slope4));
      c.note(fmt("(b) q_n=1 (e_tr/e_te):%s, slope %.2f", per_d.c_str(), slope4));
    } else {
      c.note(fmt("(b) q_n=2 (e_tr/e_te):%s, slope %.2f", per_d.c_str(), slope3));
    }
  }

  // (c) K16 at d=3: one of five declared seeds reaches the paper's regime.
  {
    const auto k16 = load_builtin(BuiltinCorpus::K16);
    const Dictionary dict16 = builtin_dictionary(BuiltinCorpus::K16);
    const std::vector<std::uint64_t> declared_seeds{2, 3, 4, 5, 6};
    const auto records = run_pool<TrainRecord>(declared_seeds.size(), hw, [&](std::size_t i) {
      TrainConfig config;
      config.optimizer = OptimizerKind::Basinhopping;
      config.basinhopping.hops = 100;
      config.basinhopping.step_size = 0.8;
      config.basinhopping.inner.max_evals = 300;
      config.hyper = {1, 0, 3};
      config.seed = declared_seeds[i];
      return run_experiment(k16, dict16, config);
    });
    bool hit = false;
    std::string detail;
    for (std::size_t i = 0; i < records.size(); ++i) {
      hit = hit || (records[i].e_train <= 0.125 && records[i].e_test <= 0.5);
      detail += fmt(" s%llu(%.3f/%.3f)", (unsigned long long)declared_seeds[i],
                    records[i].e_train, records[i].e_test);
    }
    c.require(hit, "(c) no declared seed reaches e_train <= 0.125 and e_test <= 0.5");
    c.note(fmt("(c) K16 d=3 (e_tr/e_te):%s", detail.c_str()));
  }

  const double secs = seconds_since(t0);
  c.require(secs < 1800.0, fmt("took %.0f s (budget 1800 s)", secs));
  c.note(fmt("%.0f s total", secs));
  return c.out;
}

// --------------------------------------------------------------------------
// 8. Binary cross entropy decreases under SPSA.
// --------------------------------------------------------------------------
Outcome criterion8() {
  Check c;
  const auto t0 = Clock::now();
  const auto k30 = load_builtin(BuiltinCorpus::K30);
  const Dictionary dict = builtin_dictionary(BuiltinCorpus::K30);
  const int seeds = 10;
  const auto drops = run_pool<std::pair<double, double>>(seeds, 2, [&](std::size_t s) {
    TrainConfig config;
    config.optimizer = OptimizerKind::Spsa;
    config.spsa = {.a = 0.1, .c = 0.1, .iterations = 1000};
    config.cost = CostKind::Bce;
    config.hyper = {1, 0, 2};
    config.seed = 300 + s;
    const auto record = run_experiment(k30, dict, config);

    // initial cost at theta0, recomputed independently of the optimizer
    const CorpusEvaluator eval(k30, dict, config.hyper);
    const auto theta0 = random_parameters(eval.registry().total_slots(), mix_seed(config.seed, 0));
    const double initial = cost_bce(theta0, eval, 0, 15);
    const double final_cost = cost_bce(record.theta_star, eval, 0, 15);
    return std::make_pair(initial, final_cost);
  });
  double mean_initial = 0, mean_final = 0;
  for (const auto& [i, f] : drops) {
    mean_initial += i / seeds;
    mean_final += f / seeds;
  }
  const double drop = (mean_initial - mean_final) / mean_initial;
  c.require(drop >= 0.30, fmt("BCE drops only %.0f%% of its initial value", 100 * drop));
  c.note(fmt("seed-averaged BCE %.3f -> %.3f (%.0f%% drop), %.0f s",
             mean_initial, mean_final, 100 * drop, seconds_since(t0)));
  return c.out;
}

// --------------------------------------------------------------------------
// 9. Optimizer benchmark examples.
// --------------------------------------------------------------------------
Outcome criterion9() {
  Check c;
  {
    const CostFunction f = [](const std::vector<double>& x) { return x[0] * x[0] + x[1] * x[1]; };
    const auto res = spsa_minimize(f, {1.0, 1.0}, {.a = 0.1, .c = 0.1, .iterations = 500, .seed = 4});
    c.require(f(res.theta) < 1e-2, fmt("SPSA quadratic final cost %.4f", f(res.theta)));
    c.require(res.trace.size() == 500, "SPSA trace length != iterations");
    c.require(res.evaluations == 1000, "SPSA evaluations != 2 per iteration");
  }
  {
    const CostFunction bowl = [](const std::vector<double>& x) {
      return (x[0] - 1.5) * (x[0] - 1.5) + 2 * (x[1] + 0.5) * (x[1] + 0.5);
    };
    const auto res = nelder_mead(bowl, {0.0, 0.0});
    c.require(res.cost < 1e-4, fmt("Nelder-Mead bowl cost %.2e", res.cost));

    const CostFunction constant = [](const std::vector<double>&) { return 1.0; };
    const auto stall = nelder_mead(constant, {0.3, -0.7});
    c.require(stall.theta == std::vector<double>{0.3, -0.7}, "constant function does not return start");

    const CostFunction rosenbrock = [](const std::vector<double>& x) {
      const double a = 1 - x[0], b = x[1] - x[0] * x[0];
      return a * a + 100 * b * b;
    };
    const auto rb = nelder_mead(rosenbrock, {-1.0, 1.0}, {.max_evals = 3000});
    c.require(rb.cost < 1e-3 && rb.trace.size() <= 2000,
              fmt("Rosenbrock cost %.2e in %zu iterations", rb.cost, rb.trace.size()));
  }
  {
    const CostFunction quad = [](const std::vector<double>& x) { return x[0] * x[0] + x[1] * x[1]; };
    const auto bh = basinhopping(quad, {2.0, -1.0}, {.hops = 10, .seed = 5});
    c.require(bh.cost < 1e-8, fmt("basinhopping quadratic cost %.2e", bh.cost));

    const CostFunction dw = [](const std::vector<double>& x) {
      const double w = x[0] * x[0] - 1;
      return w * w + 0.2 * x[0];
    };
    const auto escaped = basinhopping(dw, {1.0}, {.hops = 100, .temperature = 1.0,
                                                  .step_size = 1.5, .seed = 3});
    c.require(escaped.theta[0] < 0 && escaped.cost < -0.19,
              fmt("double-well stuck at x=%.3f f=%.3f", escaped.theta[0], escaped.cost));

    const CostFunction rugged = [](const std::vector<double>& x) {
      return std::sin(3 * x[0]) + 0.1 * x[0] * x[0];
    };
    const auto greedy = basinhopping(rugged, {2.0}, {.hops = 60, .temperature = 0.0,
                                                     .step_size = 2.0, .seed = 9});
    bool monotone = true;
    for (std::size_t i = 1; i < greedy.accepted_costs.size(); ++i) {
      monotone = monotone && greedy.accepted_costs[i] <= greedy.accepted_costs[i - 1] + 1e-15;
    }
    c.require(monotone, "temperature-0 acceptance was not greedy");
  }
  c.note("SPSA quadratic, Nelder-Mead bowl/constant/Rosenbrock, basinhopping quad/double-well/greedy");
  return c.out;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                             criterion6, criterion7, criterion8, criterion9};
  int failures = 0;
  for (int n : selected) {
    if (n < 1 || n > 9) {
      std::fprintf(stderr, "no criterion %d\n", n);
      return 2;
    }
    const Outcome out = criteria[n - 1]();
    std::printf("[%s] criterion %d: %s\n", out.pass ? "PASS" : "FAIL", n, out.detail.c_str());
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  return failures;
}
