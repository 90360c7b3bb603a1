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
// Lowering from sentence diagrams to parameterized circuits.
//
// Word states become parameterized preparation circuits (an Rx/Rz pair for
// one-qubit words, layered H + CRz ladders otherwise), relative pronouns
// become GHZ preparations, and each cup becomes per-qubit Bell effects
// (CNOT, H on the control, postselection of both qubits on <0|).
//
// Gate conventions, fixed once for the whole project:
//   Rx(t) = exp(-i t X / 2)
//   Rz(t) = exp(-i t Z / 2)
//   CRz(t) = diag(1, 1, e^{-it/2}, e^{+it/2})  on (control, target)

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnlp/diagram.hpp"
#include "qnlp/hyper.hpp"

namespace qnlp {

struct CompileError final : std::runtime_error {
  explicit CompileError(const std::string& what) : std::runtime_error(what) {}
};

enum class GateKind : unsigned char { H, X, S, Sdg, Rx, Rz, CRz, Cnot };

inline const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::Rx: return "rx";
    case GateKind::Rz: return "rz";
    case GateKind::CRz: return "crz";
    case GateKind::Cnot: return "cx";
  }
  return "?";
}

struct Gate {
  GateKind kind;
  int target = 0;
  int control = -1;  // CRz / Cnot only
  int slot = -1;     // Rx / Rz / CRz parameter index

  static Gate h(int q) { return {GateKind::H, q}; }
  static Gate x(int q) { return {GateKind::X, q}; }
  static Gate s(int q) { return {GateKind::S, q}; }
  static Gate sdg(int q) { return {GateKind::Sdg, q}; }
  static Gate rx(int q, int slot) { return {GateKind::Rx, q, -1, slot}; }
  static Gate rz(int q, int slot) { return {GateKind::Rz, q, -1, slot}; }
  static Gate crz(int control, int target, int slot) { return {GateKind::CRz, target, control, slot}; }
  static Gate cnot(int control, int target) { return {GateKind::Cnot, target, control}; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Global word -> parameter-slot mapping shared by every sentence of a
/// corpus, so that a word reuses the same parameters wherever it appears.
class ParamRegistry {
 public:
  struct Range {
    std::size_t offset = 0;
    std::size_t count = 0;
    friend bool operator==(const Range&, const Range&) = default;
  };

  /// Returns the word's slot range, allocating it on first sight. Throws if
  /// the word was previously registered with a different slot count (i.e.
  /// compiled under different hyperparameters).
  Range ensure(const std::string& word, std::size_t count) {
    auto it = ranges_.find(word);
    if (it != ranges_.end()) {
      if (it->second.count != count) {
        throw CompileError("word '" + word + "' already registered with " +
                           std::to_string(it->second.count) + " slots, requested " +
                           std::to_string(count));
      }
      return it->second;
    }
    Range r{total_, count};
    ranges_.emplace(word, r);
    total_ += count;
    return r;
  }

  std::optional<Range> find(const std::string& word) const {
    auto it = ranges_.find(word);
    if (it == ranges_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t total_slots() const { return total_; }
  const std::map<std::string, Range>& ranges() const { return ranges_; }

 private:
  std::map<std::string, Range> ranges_;
  std::size_t total_ = 0;
};

/// Compiled sentence circuit. With q_s = 0 every qubit is postselected and
/// the circuit denotes the scalar <0...0|U|0...0>.
///
/// postselect_scale_exp2: every Bell effect attenuates the postselected
/// amplitude by 1/sqrt(2) per qubit pair and every GHZ preparation by
/// 1/sqrt(2) per qubit of its wire width. This exponent accumulates those
/// factors, so 2^exp * |amplitude|^2 is the sentence's truth value in the
/// diagram normalization (unnormalized cups and copy tensors), which is the
/// quantity the question-answering task trains on.
struct SentenceCircuit {
  int qubit_count = 0;
  std::vector<Gate> gates;
  std::vector<int> postselect;    // qubits read out on <0|, ascending
  std::vector<int> open_qubits;   // qubits of the open s-wire (empty if q_s=0)
  int postselect_scale_exp2 = 0;
};

/// Width of a word's preparation circuit: total qubits over its factors.
inline int word_arity(const PregroupType& t, const HyperParams& hyper) {
  int k = 0;
  for (const auto& f : t.factors) k += hyper.qubits_for(f.base);
  return k;
}

/// Parameter slots of a word circuit of width k and depth d.
/// One-qubit words carry an Rx/Rz pair (2 slots); the third Euler angle
/// would only add a global phase on |0> and is dropped. Wider words carry
/// one CRz slot per neighbor pair per layer.
inline std::size_t ansatz_slot_count(int k, int d) {
  if (k <= 0) throw CompileError("word circuit of width 0 cannot be parameterized");
  if (k == 1) return 2;
  return static_cast<std::size_t>(d) * static_cast<std::size_t>(k - 1);
}

/// Preparation circuit of a word state on qubits [first_qubit,
/// first_qubit + k). Slots are taken contiguously from `slots`.
inline std::vector<Gate> word_ansatz(int first_qubit, int k, int d, ParamRegistry::Range slots) {
  if (slots.count != ansatz_slot_count(k, d)) {
    throw CompileError("slot range size does not match ansatz");
  }
  std::vector<Gate> gates;
  if (k == 1) {
    gates.push_back(Gate::rx(first_qubit, static_cast<int>(slots.offset)));
    gates.push_back(Gate::rz(first_qubit, static_cast<int>(slots.offset + 1)));
    return gates;
  }
  int slot = static_cast<int>(slots.offset);
  for (int layer = 0; layer < d; ++layer) {
    for (int q = 0; q < k; ++q) gates.push_back(Gate::h(first_qubit + q));
    // CRz gates within a layer commute; emitted in ascending qubit order.
    for (int q = 0; q + 1 < k; ++q) {
      gates.push_back(Gate::crz(first_qubit + q, first_qubit + q + 1, slot++));
    }
  }
  return gates;
}

/// GHZ preparation over n_wires groups of q_b qubits starting at
/// first_qubit: H on the first group, then CNOTs copying each of its qubits
/// into the matching qubit of every other group. Prepares
/// (1/sqrt(2^q_b)) sum_x |bin(x)>^{(tensor) n_wires}. No parameters.
inline std::vector<Gate> ghz_prep(int n_wires, int q_b, int first_qubit = 0) {
  if (n_wires < 2) throw CompileError("GHZ preparation needs at least 2 wires");
  if (q_b < 1) throw CompileError("GHZ preparation needs q_b >= 1");
  std::vector<Gate> gates;
  for (int j = 0; j < q_b; ++j) gates.push_back(Gate::h(first_qubit + j));
  for (int w = 1; w < n_wires; ++w) {
    for (int j = 0; j < q_b; ++j) {
      gates.push_back(Gate::cnot(first_qubit + j, first_qubit + w * q_b + j));
    }
  }
  return gates;
}

struct CupGates {
  std::vector<Gate> gates;
  std::vector<int> postselect;
};

/// Bell effects joining two equal-width qubit groups: qubit j of the left
/// group pairs with qubit j of the right group, so the overall effect is
/// (1/sqrt(2^q_b)) sum_x <x|<x| -- the adjoint of the GHZ cap on two wires,
/// which is what makes a cap followed by a cup the identity. Each pair
/// contributes CNOT(left, right), H(left) and postselection of both qubits.
inline CupGates cup_effect(const std::vector<int>& left, const std::vector<int>& right) {
  if (left.size() != right.size()) throw CompileError("cup joins wires of different width");
  CupGates out;
  for (std::size_t j = 0; j < left.size(); ++j) {
    out.gates.push_back(Gate::cnot(left[j], right[j]));
    out.gates.push_back(Gate::h(left[j]));
    out.postselect.push_back(left[j]);
    out.postselect.push_back(right[j]);
  }
  return out;
}

/// Compiles a validated diagram: word circuits side by side over the wire
/// layout, then cup effects in cup order. The registry is extended lazily;
/// pre-build it (or serialize access) when compiling from several threads.
inline SentenceCircuit compile(const SentenceDiagram& d, const HyperParams& hyper,
                               ParamRegistry& registry) {
  hyper.validate();
  if (auto v = validate(d); !v) throw CompileError("invalid diagram: " + v.message);
  const WireLayout layout = wire_qubits(d, hyper);

  SentenceCircuit circuit;
  circuit.qubit_count = layout.total_qubits;

  for (std::size_t w = 0; w < d.words.size(); ++w) {
    const WordState& ws = d.words[w];
    const std::size_t first_wire = ws.wire_offset;
    const int first_qubit = layout.wires[first_wire].offset;
    if (d.kronecker_words.count(w)) {
      int n_wires = 0, width = -1;
      for (std::size_t f = 0; f < ws.wtype.size(); ++f) {
        const int c = layout.wires[first_wire + f].count;
        if (c == 0) continue;
        if (width == -1) width = c;
        if (c != width) {
          throw CompileError("Kronecker word '" + ws.word + "' has wires of unequal width");
        }
        ++n_wires;
      }
      registry.ensure(ws.word, 0);
      auto gates = ghz_prep(n_wires, width, first_qubit);
      circuit.gates.insert(circuit.gates.end(), gates.begin(), gates.end());
      circuit.postselect_scale_exp2 += width;
    } else {
      const int k = word_arity(ws.wtype, hyper);
      const auto range = registry.ensure(ws.word, ansatz_slot_count(k, hyper.d));
      auto gates = word_ansatz(first_qubit, k, hyper.d, range);
      circuit.gates.insert(circuit.gates.end(), gates.begin(), gates.end());
    }
  }

  for (const auto& [i, j] : d.cups.pairs) {
    const WireSpan& l = layout.wires[i];
    const WireSpan& r = layout.wires[j];
    if (l.count == 0) continue;  // zero-width wires vanish
    std::vector<int> lq(static_cast<std::size_t>(l.count)), rq(static_cast<std::size_t>(r.count));
    for (int q = 0; q < l.count; ++q) lq[static_cast<std::size_t>(q)] = l.offset + q;
    for (int q = 0; q < r.count; ++q) rq[static_cast<std::size_t>(q)] = r.offset + q;
    CupGates cup = cup_effect(lq, rq);
    circuit.gates.insert(circuit.gates.end(), cup.gates.begin(), cup.gates.end());
    circuit.postselect.insert(circuit.postselect.end(), cup.postselect.begin(), cup.postselect.end());
    circuit.postselect_scale_exp2 += l.count;  // one sqrt(2) per Bell pair
  }
  std::sort(circuit.postselect.begin(), circuit.postselect.end());

  for (std::size_t o : d.cups.open) {
    const WireSpan& span = layout.wires[o];
    for (int q = 0; q < span.count; ++q) circuit.open_qubits.push_back(span.offset + q);
  }
  return circuit;
}

/// Total parameter slots of a vocabulary under the given hyperparameters.
/// Relative-pronoun typed words compile to GHZ and contribute none.
inline std::size_t param_count(const Dictionary& vocab, const HyperParams& hyper) {
  hyper.validate();
  std::size_t total = 0;
  for (const auto& [word, t] : vocab.entries) {
    if (t == relative_pronoun_type()) continue;
    total += ansatz_slot_count(word_arity(t, hyper), hyper.d);
  }
  return total;
}

/// Number of CNOT gates in the compiled gate list.
inline std::size_t cnot_count(const SentenceCircuit& c) {
  std::size_t n = 0;
  for (const auto& g : c.gates) n += (g.kind == GateKind::Cnot) ? 1 : 0;
  return n;
}

inline nlohmann::json circuit_to_json(const SentenceCircuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : c.gates) {
    nlohmann::json jg{{"kind", to_string(g.kind)}};
    if (g.control >= 0) {
      jg["qubits"] = {g.control, g.target};
    } else {
      jg["qubits"] = {g.target};
    }
    if (g.slot >= 0) jg["slot"] = g.slot;
    gates.push_back(std::move(jg));
  }
  return {{"qubits", c.qubit_count},
          {"gates", gates},
          {"postselect", c.postselect},
          {"open_qubits", c.open_qubits},
          {"postselect_scale_exp2", c.postselect_scale_exp2}};
}

/// OpenQASM-style text. Without a parameter vector, angles are emitted
/// symbolically as theta[slot]; postselections are annotated as comments.
inline std::string circuit_to_qasm(const SentenceCircuit& c,
                                   const std::vector<double>* theta = nullptr) {
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(c.qubit_count) + "];\n";
  auto angle = [&](int slot) {
    if (theta) return std::to_string((*theta)[static_cast<std::size_t>(slot)]);
    return "theta[" + std::to_string(slot) + "]";
  };
  for (const auto& g : c.gates) {
    out += to_string(g.kind);
    if (g.slot >= 0) out += "(" + angle(g.slot) + ")";
    out += " ";
    if (g.control >= 0) out += "q[" + std::to_string(g.control) + "],";
    out += "q[" + std::to_string(g.target) + "];\n";
  }
  for (int q : c.postselect) out += "// postselect <0| on q[" + std::to_string(q) + "]\n";
  return out;
}

}  // namespace qnlp
