// Copyright 2026 The qtele Authors
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

#ifndef QTELE_TELEPORT_HPP_
#define QTELE_TELEPORT_HPP_

#include <array>
#include <string_view>
#include <vector>

#include "qtele/core.hpp"

namespace qtele {

// Alice's readout |path, polarization>; H = 0, V = 1.
enum class Outcome { k0H = 0, k0V = 1, k1H = 2, k1V = 3 };

inline constexpr std::array<Outcome, 4> kOutcomes = {Outcome::k0H, Outcome::k0V, Outcome::k1H,
                                                     Outcome::k1V};

std::string_view outcome_label(Outcome o);

// Bob's correction table: 0H -> I, 0V -> X, 1H -> Y, 1V -> Z.
ComplexMatrix correction(Outcome o);

// Pauli index (0..3 for I, X, Y, Z) of the correction for an outcome.
int correction_index(Outcome o);

struct TeleportOutcome {
  Outcome label;
  double probability;
  // Bob's conditional state before and after correction. For an outcome that
  // never occurs (probability below 1e-15) both are I/2.
  DensityMatrix bob_raw;
  DensityMatrix bob_corrected;
};

// Register is (input, A, B). Alice applies CNOT(input -> A), a Hadamard on
// the input qubit and reads both qubits in the computational basis; the
// polarization analyzer on path output 1 is flipped, which makes the
// correction table above exact for |Phi+>.
std::array<TeleportOutcome, 4> teleport(const DensityMatrix& input, const DensityMatrix& resource);

// Unnormalized, uncorrected Bob operators for each outcome. Linear in
// input_op, which may be any 2x2 operator.
std::array<ComplexMatrix, 4> conditional_outputs(const ComplexMatrix& input_op,
                                                 const DensityMatrix& resource);

// Outcome-conditioned map input -> Bob (trace = outcome probability).
struct OutcomeChannel {
  Outcome label;
  std::vector<ComplexMatrix> kraus;  // uncorrected

  ComplexMatrix apply_raw(const ComplexMatrix& op) const;
  ComplexMatrix apply_corrected(const ComplexMatrix& op) const;
};

std::array<OutcomeChannel, 4> teleport_channel(const DensityMatrix& resource);

// Average teleportation fidelity over the six axial pure states, each
// outcome weighted by its probability.
double average_fidelity_direct(const DensityMatrix& resource);

// The six Pauli eigenstates |0>, |1>, |+>, |->, |+i>, |-i>.
std::array<ComplexVector, 6> axial_states();

nlohmann::json to_json(const TeleportOutcome& outcome);

}  // namespace qtele

#endif  // QTELE_TELEPORT_HPP_
