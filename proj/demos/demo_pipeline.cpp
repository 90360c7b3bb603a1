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
// End-to-end walkthrough: parse a sentence, compile it, evaluate its truth
// value at random parameters, then train the tiny K6 task.

#include <cstdio>

#include "qnlp/corpora.hpp"
#include "qnlp/experiment.hpp"
#include "qnlp/simulator.hpp"
#include "qnlp/train.hpp"

int main() {
  using namespace qnlp;

  const std::vector<std::string> sentence{"Romeo", "who", "loves", "Juliet", "dies"};
  const Dictionary dict = builtin_dictionary(BuiltinCorpus::K16);

  const SentenceDiagram diagram = from_sentence(sentence, dict);
  std::printf("wires: %zu, cups: %zu, open wire: %zu\n", diagram.total_wires(),
              diagram.cups.pairs.size(), diagram.cups.open.front());

  ParamRegistry registry;
  const HyperParams hyper{1, 0, 2};
  const SentenceCircuit circuit = compile(diagram, hyper, registry);
  std::printf("qubits: %d, gates: %zu, parameter slots: %zu, cnots: %zu\n", circuit.qubit_count,
              circuit.gates.size(), registry.total_slots(), cnot_count(circuit));

  const auto theta = random_parameters(registry.total_slots(), 7);
  std::printf("postselected amplitude^2 at random theta: %.6f\n",
              predicted_label(circuit, theta).value);
  std::printf("truth value (diagram normalization):      %.6f\n",
              rescaled_label(circuit, theta).value);

  TrainConfig config;
  config.optimizer = OptimizerKind::Basinhopping;
  config.basinhopping.hops = 40;
  config.basinhopping.step_size = 0.8;
  config.basinhopping.inner.max_evals = 200;
  config.hyper = hyper;
  config.seed = 1;
  const TrainRecord record = run_experiment(load_builtin(BuiltinCorpus::K6),
                                            builtin_dictionary(BuiltinCorpus::K6), config);
  std::printf("K6 training: final cost %.4f, e_train %.3f, e_test %.3f\n", record.final_cost,
              record.e_train, record.e_test);
  return 0;
}
