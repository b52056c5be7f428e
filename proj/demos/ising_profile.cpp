// Copyright 2026 The qscmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Complexity of a qubit along the Bloch radius, and the ground-state
// complexity profile of the transverse-field Ising chain.

#include <cstdio>

#include "qscm/complexity.hpp"
#include "qscm/ising.hpp"

int main() {
  const double r_star = qscm::qscm_qubit_argmax();
  std::printf("qubit: max C = %.6f at r = %.6f\n\n", qscm::qscm_qubit(r_star), r_star);

  std::printf("%6s %10s %10s %12s\n", "g", "<sz>", "C", "d2C/dg2");
  for (int k = 0; k <= 20; ++k) {
    const double g = 0.1 * k;
    const auto p = qscm::ising::evaluate(g, qscm::ising::Thermodynamic{}, 2);
    std::printf("%6.2f %10.6f %10.6f %12.4f\n", g, p.sigma_z, p.qscm, p.d2);
  }
}
