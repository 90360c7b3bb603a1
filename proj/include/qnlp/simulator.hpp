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
// Dense statevector evaluation of sentence circuits.
//
// Basis convention: qubit 0 is the most significant bit, so the amplitude
// index of |b0 b1 ... b_{q-1}> is sum_k b_k 2^{q-1-k} and bitstrings read
// left to right like the circuit register.
//
// Postselection is never performed as a projection: with q_s = 0 every
// qubit is postselected on <0| and the sentence scalar is simply the
// |0...0> amplitude of the evolved state.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnlp/circuit.hpp"
#include "qnlp/rng.hpp"

namespace qnlp {

struct StateVector {
  int qubits = 0;
  std::vector<std::complex<double>> amps;

  static StateVector zero(int qubits) {
    StateVector sv;
    sv.qubits = qubits;
    sv.amps.assign(std::size_t{1} << qubits, {0.0, 0.0});
    sv.amps[0] = 1.0;
    return sv;
  }

  std::size_t dim() const { return amps.size(); }

  std::uint64_t qubit_mask(int q) const { return std::uint64_t{1} << (qubits - 1 - q); }

  double norm() const {
    double n2 = 0;
    for (const auto& a : amps) n2 += std::norm(a);
    return std::sqrt(n2);
  }
};

namespace detail {

// Kernels write the complex arithmetic out by component; this keeps the
// inner loops free of the library's NaN-correct complex multiply.

inline void pair_h(std::complex<double>& a, std::complex<double>& b) {
  constexpr double r = 0.70710678118654752440;
  const std::complex<double> a0 = a, b0 = b;
  a = {(a0.real() + b0.real()) * r, (a0.imag() + b0.imag()) * r};
  b = {(a0.real() - b0.real()) * r, (a0.imag() - b0.imag()) * r};
}

inline void pair_rx(std::complex<double>& a, std::complex<double>& b, double c, double s) {
  // [c, -i s; -i s, c]
  const std::complex<double> a0 = a, b0 = b;
  a = {c * a0.real() + s * b0.imag(), c * a0.imag() - s * b0.real()};
  b = {s * a0.imag() + c * b0.real(), -s * a0.real() + c * b0.imag()};
}

inline void mul(std::complex<double>& a, double pr, double pi) {
  a = {a.real() * pr - a.imag() * pi, a.real() * pi + a.imag() * pr};
}

}  // namespace detail

/// Applies one gate in place. `cmask` restricts the action to amplitudes
/// whose bits include the mask (used to promote gates to controlled form
/// for the Hadamard test); 0 means unconditional.
inline void apply_gate(StateVector& sv, const Gate& g, std::span<const double> theta,
                       std::uint64_t cmask = 0) {
  const std::size_t dim = sv.dim();
  auto slot_angle = [&](int slot) {
    if (slot < 0 || static_cast<std::size_t>(slot) >= theta.size()) {
      throw std::out_of_range("parameter slot " + std::to_string(slot) +
                              " out of range (have " + std::to_string(theta.size()) + ")");
    }
    return theta[static_cast<std::size_t>(slot)];
  };
  const std::uint64_t mt = sv.qubit_mask(g.target);

  switch (g.kind) {
    case GateKind::H: {
      for (std::size_t base = 0; base < dim; base += mt << 1)
        for (std::size_t i = base; i < base + mt; ++i) {
          if (cmask && (i & cmask) != cmask) continue;
          detail::pair_h(sv.amps[i], sv.amps[i | mt]);
        }
      break;
    }
    case GateKind::X: {
      for (std::size_t base = 0; base < dim; base += mt << 1)
        for (std::size_t i = base; i < base + mt; ++i) {
          if (cmask && (i & cmask) != cmask) continue;
          std::swap(sv.amps[i], sv.amps[i | mt]);
        }
      break;
    }
    case GateKind::S:
    case GateKind::Sdg: {
      const double pi_part = (g.kind == GateKind::S) ? 1.0 : -1.0;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mt) == 0) continue;
        if (cmask && (i & cmask) != cmask) continue;
        detail::mul(sv.amps[i], 0.0, pi_part);
      }
      break;
    }
    case GateKind::Rx: {
      const double t = slot_angle(g.slot);
      const double c = std::cos(t / 2), s = std::sin(t / 2);
      for (std::size_t base = 0; base < dim; base += mt << 1)
        for (std::size_t i = base; i < base + mt; ++i) {
          if (cmask && (i & cmask) != cmask) continue;
          detail::pair_rx(sv.amps[i], sv.amps[i | mt], c, s);
        }
      break;
    }
    case GateKind::Rz: {
      const double t = slot_angle(g.slot);
      const double c = std::cos(t / 2), s = std::sin(t / 2);
      for (std::size_t i = 0; i < dim; ++i) {
        if (cmask && (i & cmask) != cmask) continue;
        if (i & mt) detail::mul(sv.amps[i], c, s);
        else detail::mul(sv.amps[i], c, -s);
      }
      break;
    }
    case GateKind::CRz: {
      const double t = slot_angle(g.slot);
      const double c = std::cos(t / 2), s = std::sin(t / 2);
      const std::uint64_t mc = sv.qubit_mask(g.control);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mc) == 0) continue;
        if (cmask && (i & cmask) != cmask) continue;
        if (i & mt) detail::mul(sv.amps[i], c, s);
        else detail::mul(sv.amps[i], c, -s);
      }
      break;
    }
    case GateKind::Cnot: {
      const std::uint64_t mc = sv.qubit_mask(g.control);
      for (std::size_t base = 0; base < dim; base += mt << 1)
        for (std::size_t i = base; i < base + mt; ++i) {
          if ((i & mc) == 0) continue;
          if (cmask && (i & cmask) != cmask) continue;
          std::swap(sv.amps[i], sv.amps[i | mt]);
        }
      break;
    }
  }
}

/// Applies a whole circuit; extra_control promotes every gate to its
/// controlled version on that qubit.
inline void apply_circuit(StateVector& sv, const SentenceCircuit& c, std::span<const double> theta,
                          int extra_control = -1) {
  const std::uint64_t cmask = extra_control >= 0 ? sv.qubit_mask(extra_control) : 0;
  for (const auto& g : c.gates) apply_gate(sv, g, theta, cmask);
}

/// State after applying all gates to |0...0>.
inline StateVector run(const SentenceCircuit& c, std::span<const double> theta) {
  StateVector sv = StateVector::zero(c.qubit_count);
  apply_circuit(sv, c, theta);
  return sv;
}

/// The postselected scalar <0...0|U|0...0>. Requires q_s = 0, i.e. no open
/// qubits, so that reading one amplitude is exact postselection.
inline std::complex<double> amplitude_zero(const SentenceCircuit& c, std::span<const double> theta) {
  if (!c.open_qubits.empty()) {
    throw std::logic_error("amplitude_zero requires a scalar circuit (q_s = 0)");
  }
  return run(c, theta).amps[0];
}

enum class EstimateMethod { Exact, Shots, Hadamard };

struct LabelEstimate {
  double value = 0.0;  // in [0, 1]
  EstimateMethod method = EstimateMethod::Exact;
  std::optional<double> std_error;  // present for stochastic methods
  int shots = 0;
};

/// Exact predicted label |<0...0|U|0...0>|^2.
inline LabelEstimate predicted_label(const SentenceCircuit& c, std::span<const double> theta) {
  const double p = std::norm(amplitude_zero(c, theta));
  return {std::clamp(p, 0.0, 1.0), EstimateMethod::Exact, std::nullopt, 0};
}

/// Samples `shots` bitstrings from |U|0...0>|^2 and estimates the label as
/// the all-zeros frequency (every sample of nonzero Hamming weight is
/// discarded by the postselection rule).
inline LabelEstimate predicted_label_shots(const SentenceCircuit& c, std::span<const double> theta,
                                           int shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (!c.open_qubits.empty()) {
    throw std::logic_error("shot estimation requires a scalar circuit (q_s = 0)");
  }
  const StateVector sv = run(c, theta);
  std::vector<double> cdf(sv.dim());
  double acc = 0;
  for (std::size_t i = 0; i < sv.dim(); ++i) {
    acc += std::norm(sv.amps[i]);
    cdf[i] = acc;
  }
  std::mt19937_64 rng(seed);
  int zeros = 0;
  for (int s = 0; s < shots; ++s) {
    const double u = uniform_double(rng) * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx == 0) ++zeros;
  }
  const double p = static_cast<double>(zeros) / shots;
  const double se = std::sqrt(p * (1 - p) / shots);
  return {std::clamp(p, 0.0, 1.0), EstimateMethod::Shots, se, shots};
}

/// Predicted label in the diagram normalization: undoes the known sqrt(2)
/// attenuations recorded in postselect_scale_exp2, so a perfectly fitting
/// sentence can reach 1. This is the truth value the training task uses.
inline LabelEstimate rescaled_label(const SentenceCircuit& c, std::span<const double> theta) {
  LabelEstimate est = predicted_label(c, theta);
  est.value = std::clamp(std::ldexp(est.value, c.postselect_scale_exp2), 0.0, 1.0);
  return est;
}

/// Shot-based version of rescaled_label; the standard error scales with the
/// same factor.
inline LabelEstimate rescaled_label_shots(const SentenceCircuit& c, std::span<const double> theta,
                                          int shots, std::uint64_t seed) {
  LabelEstimate est = predicted_label_shots(c, theta, shots, seed);
  est.value = std::clamp(std::ldexp(est.value, c.postselect_scale_exp2), 0.0, 1.0);
  if (est.std_error) *est.std_error = std::ldexp(*est.std_error, c.postselect_scale_exp2);
  return est;
}

enum class HadamardPart { Real, Imaginary };

/// Hadamard test for <0...0|U|0...0> with U the circuit's unitary part.
/// An ancilla is appended; H (and S-dagger for the imaginary part) precede
/// the ancilla-controlled U, then H again, and <Z> on the ancilla is
/// returned -- exactly, or estimated from `shots` ancilla measurements.
inline double hadamard_test(const SentenceCircuit& c, std::span<const double> theta,
                            HadamardPart part, std::optional<int> shots = std::nullopt,
                            std::uint64_t seed = 0) {
  const int anc = c.qubit_count;
  StateVector sv = StateVector::zero(c.qubit_count + 1);
  apply_gate(sv, Gate::h(anc), theta);
  if (part == HadamardPart::Imaginary) apply_gate(sv, Gate::sdg(anc), theta);
  apply_circuit(sv, c, theta, anc);
  apply_gate(sv, Gate::h(anc), theta);

  const std::uint64_t m = sv.qubit_mask(anc);
  double z = 0;
  for (std::size_t i = 0; i < sv.dim(); ++i) {
    const double p = std::norm(sv.amps[i]);
    z += (i & m) ? -p : p;
  }
  if (!shots) return z;

  if (*shots < 1) throw std::invalid_argument("shots must be >= 1");
  const double p0 = std::clamp((1.0 + z) / 2.0, 0.0, 1.0);
  std::mt19937_64 rng(seed);
  int n0 = 0;
  for (int s = 0; s < *shots; ++s) n0 += (uniform_double(rng) < p0) ? 1 : 0;
  return 2.0 * n0 / *shots - 1.0;
}

/// Debug dump: qubit count then interleaved re/im doubles, little endian.
inline void save_statevector(const std::string& path, const StateVector& sv) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const std::uint64_t q = static_cast<std::uint64_t>(sv.qubits);
  out.write(reinterpret_cast<const char*>(&q), sizeof q);
  out.write(reinterpret_cast<const char*>(sv.amps.data()),
            static_cast<std::streamsize>(sv.amps.size() * sizeof(std::complex<double>)));
}

inline StateVector load_statevector(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::uint64_t q = 0;
  in.read(reinterpret_cast<char*>(&q), sizeof q);
  StateVector sv;
  sv.qubits = static_cast<int>(q);
  sv.amps.resize(std::size_t{1} << q);
  in.read(reinterpret_cast<char*>(sv.amps.data()),
          static_cast<std::streamsize>(sv.amps.size() * sizeof(std::complex<double>)));
  if (!in) throw std::runtime_error("truncated statevector file '" + path + "'");
  return sv;
}

}  // namespace qnlp
