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

#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "qnlp/circuit.hpp"
#include "qnlp/corpora.hpp"
#include "qnlp/simulator.hpp"
#include "oracles.hpp"

using namespace qnlp;
using cplx = std::complex<double>;

namespace {
const Dictionary kDict = merged_builtin_dictionary();

std::vector<GateKind> kinds(const std::vector<Gate>& gates) {
  std::vector<GateKind> out;
  for (const auto& g : gates) out.push_back(g.kind);
  return out;
}
}  // namespace

TEST_CASE("word_arity sums per-factor qubit counts") {
  REQUIRE(word_arity(transitive_verb_type(), {1, 0, 1}) == 2);
  REQUIRE(word_arity(relative_pronoun_type(), {1, 0, 1}) == 3);
  REQUIRE(word_arity(intransitive_verb_type(), {2, 0, 1}) == 2);
  REQUIRE(word_arity(noun_type(), {2, 0, 1}) == 2);
}

TEST_CASE("word_ansatz layouts") {
  SECTION("width 2, depth 2: H-H-CRz twice, two slots") {
    const auto gates = word_ansatz(0, 2, 2, {0, 2});
    REQUIRE(kinds(gates) == std::vector<GateKind>{GateKind::H, GateKind::H, GateKind::CRz,
                                                  GateKind::H, GateKind::H, GateKind::CRz});
    REQUIRE(gates[2].slot == 0);
    REQUIRE(gates[5].slot == 1);
    REQUIRE(ansatz_slot_count(2, 2) == 2);
  }
  SECTION("unary word: Rx then Rz on the same qubit, two slots") {
    const auto gates = word_ansatz(3, 1, 5, {4, 2});
    REQUIRE(kinds(gates) == std::vector<GateKind>{GateKind::Rx, GateKind::Rz});
    REQUIRE(gates[0].target == 3);
    REQUIRE(gates[0].slot == 4);
    REQUIRE(gates[1].slot == 5);
    REQUIRE(ansatz_slot_count(1, 5) == 2);
  }
  SECTION("width 4, depth 3: nine slots, 21 gates") {
    REQUIRE(ansatz_slot_count(4, 3) == 9);
    REQUIRE(word_ansatz(0, 4, 3, {0, 9}).size() == 21);
  }
  SECTION("width 0 is rejected") {
    REQUIRE_THROWS_AS(ansatz_slot_count(0, 2), CompileError);
  }
}

TEST_CASE("ghz_prep prepares the shared-bit superposition") {
  SECTION("two wires, one qubit each: Bell state") {
    const auto gates = ghz_prep(2, 1);
    SentenceCircuit c{2, gates, {}, {}};
    const auto sv = run(c, {});
    REQUIRE(sv.amps[0].real() == Catch::Approx(1 / std::sqrt(2.0)).margin(1e-12));
    REQUIRE(sv.amps[3].real() == Catch::Approx(1 / std::sqrt(2.0)).margin(1e-12));
    REQUIRE(std::abs(sv.amps[1]) < 1e-12);
    REQUIRE(std::abs(sv.amps[2]) < 1e-12);
  }
  SECTION("three wires, one qubit each") {
    SentenceCircuit c{3, ghz_prep(3, 1), {}, {}};
    const auto sv = run(c, {});
    for (std::size_t i = 0; i < 8; ++i) {
      const double expected = (i == 0 || i == 7) ? 1 / std::sqrt(2.0) : 0.0;
      REQUIRE(std::abs(sv.amps[i] - cplx(expected, 0)) < 1e-12);
    }
  }
  SECTION("three wires of two qubits match the explicit tensor") {
    SentenceCircuit c{6, ghz_prep(3, 2), {}, {}};
    const auto sv = run(c, {});
    const auto expected = oracle::ghz_tensor(3, 2);
    for (std::size_t i = 0; i < expected.size(); ++i) {
      REQUIRE(std::abs(sv.amps[i] - expected[i]) < 1e-12);
    }
  }
  SECTION("bad arguments") {
    REQUIRE_THROWS_AS(ghz_prep(1, 1), CompileError);
    REQUIRE_THROWS_AS(ghz_prep(2, 0), CompileError);
  }
}

TEST_CASE("cup_effect implements the Bell effect") {
  SECTION("single pair: row vector (1,0,0,1)/sqrt(2)") {
    const auto cup = cup_effect({0}, {1});
    REQUIRE(cup.gates.size() == 2);
    REQUIRE(cup.postselect == std::vector<int>{0, 1});
    // <00| (gates applied to each basis state) is the effect's row vector.
    for (std::size_t b = 0; b < 4; ++b) {
      StateVector sv = StateVector::zero(2);
      sv.amps.assign(4, {0, 0});
      sv.amps[b] = 1.0;
      for (const auto& g : cup.gates) apply_gate(sv, g, {});
      const double expected = (b == 0 || b == 3) ? 1 / std::sqrt(2.0) : 0.0;
      REQUIRE(std::abs(sv.amps[0] - cplx(expected, 0)) < 1e-12);
    }
  }
  SECTION("two-qubit wires: 2 CNOTs, 2 Hs, 4 postselected qubits") {
    const auto cup = cup_effect({0, 1}, {2, 3});
    REQUIRE(cup.gates.size() == 4);
    REQUIRE(cnot_count(SentenceCircuit{4, cup.gates, {}, {}}) == 2);
    REQUIRE(cup.postselect.size() == 4);
  }
  SECTION("width mismatch is an error") {
    REQUIRE_THROWS_AS(cup_effect({0, 1}, {2}), CompileError);
  }
}

TEST_CASE("cap followed by cup is the identity scalar") {
  for (int q_b : {1, 2}) {
    SentenceCircuit c;
    c.qubit_count = 2 * q_b;
    c.gates = ghz_prep(2, q_b);
    std::vector<int> left, right;
    for (int j = 0; j < q_b; ++j) {
      left.push_back(j);
      right.push_back(q_b + j);
    }
    const auto cup = cup_effect(left, right);
    c.gates.insert(c.gates.end(), cup.gates.begin(), cup.gates.end());
    c.postselect = cup.postselect;
    REQUIRE(std::abs(amplitude_zero(c, {}) - cplx(1, 0)) < 1e-12);
  }
}

TEST_CASE("compile lays out word circuits and cups") {
  SECTION("Romeo dies at q_n=1") {
    ParamRegistry reg;
    const auto c = compile(from_sentence({"Romeo", "dies"}, kDict), {1, 0, 2}, reg);
    REQUIRE(c.qubit_count == 2);
    REQUIRE(kinds(c.gates) == std::vector<GateKind>{GateKind::Rx, GateKind::Rz, GateKind::Rx,
                                                    GateKind::Rz, GateKind::Cnot, GateKind::H});
    REQUIRE(c.postselect == std::vector<int>{0, 1});
    REQUIRE(c.open_qubits.empty());
    REQUIRE(cnot_count(c) == 1);
    REQUIRE(reg.total_slots() == 4);
  }
  SECTION("the five-word sentence at q_n=1, d=2") {
    ParamRegistry reg;
    const auto c = compile(from_sentence({"Romeo", "who", "loves", "Juliet", "dies"}, kDict),
                           {1, 0, 2}, reg);
    REQUIRE(c.qubit_count == 8);
    REQUIRE(c.postselect.size() == 8);
    REQUIRE(c.open_qubits.empty());
    // GHZ contributes 2 CNOTs, the four qubit-carrying cups one each.
    REQUIRE(cnot_count(c) == 6);
    // Romeo 2 + who 0 + loves d(k-1)=2 + Juliet 2 + dies 2
    REQUIRE(reg.total_slots() == 8);
  }
  SECTION("every qubit is postselected or open") {
    ParamRegistry reg;
    for (const auto& item : load_builtin(BuiltinCorpus::K30).items) {
      const auto c = compile(from_sentence(item.words, kDict), {2, 0, 1}, reg);
      std::set<int> covered(c.postselect.begin(), c.postselect.end());
      covered.insert(c.open_qubits.begin(), c.open_qubits.end());
      REQUIRE(covered.size() == static_cast<std::size_t>(c.qubit_count));
    }
  }
}

TEST_CASE("parameter slots are shared across sentences") {
  ParamRegistry reg;
  compile(from_sentence({"Romeo", "dies"}, kDict), {1, 0, 2}, reg);
  const auto romeo = reg.find("Romeo");
  compile(from_sentence({"Romeo", "loves", "Juliet"}, kDict), {1, 0, 2}, reg);
  REQUIRE(reg.find("Romeo") == romeo);
  REQUIRE(reg.find("loves")->count == 2);
  REQUIRE(reg.find("who") == std::nullopt);

  SECTION("slot-count mismatch under different hyperparameters is detected") {
    REQUIRE_THROWS_AS(compile(from_sentence({"Romeo", "loves", "Juliet"}, kDict), {1, 0, 3}, reg),
                      CompileError);
  }
}

TEST_CASE("param_count reproduces the closed-form slot totals") {
  const Dictionary k30 = builtin_dictionary(BuiltinCorpus::K30);
  const Dictionary k16 = builtin_dictionary(BuiltinCorpus::K16);
  for (int d = 1; d <= 5; ++d) {
    REQUIRE(param_count(k30, {1, 0, d}) == static_cast<std::size_t>(8 + 2 * d));
    REQUIRE(param_count(k30, {2, 0, d}) == static_cast<std::size_t>(10 * d));
  }
  REQUIRE(param_count(k16, {1, 0, 2}) == 10);
  // The d=3 total follows the same construction: 6 + 2d.
  REQUIRE(param_count(k16, {1, 0, 3}) == 12);

  SECTION("registry totals agree after compiling a whole corpus") {
    for (int d : {1, 2, 3}) {
      ParamRegistry reg;
      for (const auto& item : load_builtin(BuiltinCorpus::K30).items) {
        compile(from_sentence(item.words, kDict), {1, 0, d}, reg);
      }
      REQUIRE(reg.total_slots() == static_cast<std::size_t>(8 + 2 * d));
    }
  }
}

TEST_CASE("cnot_count counts only CNOT gates") {
  ParamRegistry reg;
  const auto c = compile(from_sentence({"Romeo", "loves", "Juliet"}, kDict), {1, 0, 2}, reg);
  REQUIRE(cnot_count(c) == 2);
  REQUIRE(cnot_count(SentenceCircuit{}) == 0);
}

TEST_CASE("compiled circuits are unitary before postselection") {
  std::mt19937_64 rng(2024);
  const std::vector<std::vector<std::string>> sentences{
      {"Romeo", "dies"},
      {"Romeo", "loves", "Juliet"},
      {"Juliet", "who", "dies", "dies"},
  };
  for (const auto& words : sentences) {
    ParamRegistry reg;
    const auto c = compile(from_sentence(words, kDict), {1, 0, 2}, reg);
    std::vector<double> theta(reg.total_slots());
    for (auto& v : theta) v = uniform_double(rng, 0, 6.28);
    const std::size_t dim = std::size_t{1} << c.qubit_count;
    // Columns of U from basis-state inputs.
    std::vector<std::vector<cplx>> cols(dim);
    for (std::size_t b = 0; b < dim; ++b) {
      StateVector sv;
      sv.qubits = c.qubit_count;
      sv.amps.assign(dim, {0, 0});
      sv.amps[b] = 1.0;
      apply_circuit(sv, c, theta);
      cols[b] = sv.amps;
    }
    // max |(U^dagger U - I)_{ij}|
    double worst = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        cplx dot = 0;
        for (std::size_t r = 0; r < dim; ++r) dot += std::conj(cols[i][r]) * cols[j][r];
        if (i == j) dot -= 1.0;
        worst = std::max(worst, std::abs(dot));
      }
    }
    REQUIRE(worst < 1e-10);
  }
}

TEST_CASE("circuit export formats") {
  ParamRegistry reg;
  const auto c = compile(from_sentence({"Romeo", "dies"}, kDict), {1, 0, 2}, reg);
  const auto j = circuit_to_json(c);
  REQUIRE(j["qubits"] == 2);
  REQUIRE(j["gates"].size() == 6);
  REQUIRE(j["gates"][0]["kind"] == "rx");
  REQUIRE(j["gates"][0]["slot"] == 0);
  REQUIRE(j["gates"][4]["kind"] == "cx");
  REQUIRE(j["gates"][4]["qubits"] == nlohmann::json::array({0, 1}));
  REQUIRE(j["postselect"] == nlohmann::json::array({0, 1}));

  const auto qasm = circuit_to_qasm(c);
  REQUIRE(qasm.find("qreg q[2];") != std::string::npos);
  REQUIRE(qasm.find("rx(theta[0]) q[0];") != std::string::npos);
  REQUIRE(qasm.find("cx q[0],q[1];") != std::string::npos);
  const std::vector<double> theta{0.5, 0.25, 0.125, 1.5};
  const auto bound = circuit_to_qasm(c, &theta);
  REQUIRE(bound.find("rx(0.5") != std::string::npos);
}
