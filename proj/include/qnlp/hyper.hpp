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

#pragma once

#include <stdexcept>

#include "qnlp/pregroup.hpp"

namespace qnlp {

/// Circuit-mapping hyperparameters: qubits per basic type and the layer
/// depth of multi-qubit word circuits. q_s = 0 makes every sentence circuit
/// denote a scalar.
struct HyperParams {
  int q_n = 1;
  int q_s = 0;
  int d = 1;

  int qubits_for(BasicType b) const { return b == BasicType::n ? q_n : q_s; }

  void validate() const {
    if (q_n < 1) throw std::invalid_argument("q_n must be >= 1");
    if (q_s < 0) throw std::invalid_argument("q_s must be >= 0");
    if (d < 1) throw std::invalid_argument("word-circuit depth d must be >= 1");
  }

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

}  // namespace qnlp
