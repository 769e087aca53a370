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

#include "qtele/teleport.hpp"

#include <cmath>
#include <stdexcept>

namespace qtele {

namespace {

constexpr double kNullProbability = 1e-15;

ComplexMatrix cnot() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

// Everything Alice does before the computational-basis readout.
const ComplexMatrix& alice_unitary() {
  static const ComplexMatrix u = [] {
    const ComplexMatrix entangle = embed(cnot(), 0, 1, 3);
    const ComplexMatrix mix = embed(hadamard(), 0, 3);
    // Analyzer flip on path output 1.
    const ComplexMatrix relabel = embed(cnot(), 0, 1, 3);
    return ComplexMatrix(relabel * mix * entangle);
  }();
  return u;
}

void require_resource(const DensityMatrix& resource) {
  if (resource.num_qubits() != 2) {
    throw std::invalid_argument("teleport: resource must be a two-qubit state");
  }
}

}  // namespace

std::string_view outcome_label(Outcome o) {
  switch (o) {
    case Outcome::k0H: return "0H";
    case Outcome::k0V: return "0V";
    case Outcome::k1H: return "1H";
    case Outcome::k1V: return "1V";
  }
  return "?";
}

int correction_index(Outcome o) { return static_cast<int>(o); }

ComplexMatrix correction(Outcome o) {
  switch (o) {
    case Outcome::k0H: return pauli::I();
    case Outcome::k0V: return pauli::X();
    case Outcome::k1H: return pauli::Y();
    case Outcome::k1V: return pauli::Z();
  }
  return pauli::I();
}

std::array<ComplexMatrix, 4> conditional_outputs(const ComplexMatrix& input_op,
                                                 const DensityMatrix& resource) {
  require_resource(resource);
  if (input_op.rows() != 2 || input_op.cols() != 2) {
    throw std::invalid_argument("teleport: input must be a single-qubit operator");
  }
  const ComplexMatrix& u = alice_unitary();
  const ComplexMatrix joint = u * tensor_product(input_op, resource.matrix()) * u.adjoint();
  // Alice's qubits are the high-order pair, so projecting onto |ij> and
  // tracing them out selects the 2x2 diagonal block at offset 2(2i + j).
  std::array<ComplexMatrix, 4> out;
  for (Outcome o : kOutcomes) {
    const Eigen::Index offset = 2 * static_cast<Eigen::Index>(o);
    out[static_cast<std::size_t>(o)] = joint.block(offset, offset, 2, 2);
  }
  return out;
}

std::array<TeleportOutcome, 4> teleport(const DensityMatrix& input,
                                        const DensityMatrix& resource) {
  if (input.num_qubits() != 1) throw std::invalid_argument("teleport: input must be one qubit");
  const auto raw = conditional_outputs(input.matrix(), resource);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(1);
  std::array<TeleportOutcome, 4> result{
      TeleportOutcome{Outcome::k0H, 0.0, mixed, mixed},
      TeleportOutcome{Outcome::k0V, 0.0, mixed, mixed},
      TeleportOutcome{Outcome::k1H, 0.0, mixed, mixed},
      TeleportOutcome{Outcome::k1V, 0.0, mixed, mixed}};
  for (Outcome o : kOutcomes) {
    const auto k = static_cast<std::size_t>(o);
    const double prob = raw[k].trace().real();
    result[k].probability = std::max(prob, 0.0);
    if (prob < kNullProbability) continue;
    const ComplexMatrix bob = raw[k] / prob;
    const ComplexMatrix c = correction(o);
    result[k].bob_raw = DensityMatrix(bob);
    result[k].bob_corrected = DensityMatrix(c * bob * c.adjoint());
  }
  return result;
}

ComplexMatrix OutcomeChannel::apply_raw(const ComplexMatrix& op) const {
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (const auto& k : kraus) out += k * op * k.adjoint();
  return out;
}

ComplexMatrix OutcomeChannel::apply_corrected(const ComplexMatrix& op) const {
  const ComplexMatrix c = correction(label);
  return c * apply_raw(op) * c.adjoint();
}

std::array<OutcomeChannel, 4> teleport_channel(const DensityMatrix& resource) {
  require_resource(resource);
  // Choi matrix J = sum_ab |a><b| (x) E(|a><b|) per outcome.
  std::array<ComplexMatrix, 4> choi;
  choi.fill(ComplexMatrix::Zero(4, 4));
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      ComplexMatrix unit = ComplexMatrix::Zero(2, 2);
      unit(a, b) = 1.0;
      const auto outs = conditional_outputs(unit, resource);
      for (std::size_t k = 0; k < 4; ++k) choi[k].block(2 * a, 2 * b, 2, 2) = outs[k];
    }
  }
  std::array<OutcomeChannel, 4> channels;
  for (Outcome o : kOutcomes) {
    const auto k = static_cast<std::size_t>(o);
    const ComplexMatrix j = 0.5 * (choi[k] + choi[k].adjoint());
    const HermitianEigen eig = eig_hermitian(j);
    channels[k].label = o;
    for (Eigen::Index e = 0; e < 4; ++e) {
      const double lambda = eig.values(e);
      if (lambda <= 1e-14) continue;
      ComplexMatrix op(2, 2);
      for (int in = 0; in < 2; ++in) {
        for (int out = 0; out < 2; ++out) {
          op(out, in) = std::sqrt(lambda) * eig.vectors(2 * in + out, e);
        }
      }
      channels[k].kraus.push_back(std::move(op));
    }
  }
  return channels;
}

std::array<ComplexVector, 6> axial_states() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  std::array<ComplexVector, 6> states;
  for (auto& v : states) v = ComplexVector::Zero(2);
  states[0] << 1, 0;
  states[1] << 0, 1;
  states[2] << s, s;
  states[3] << s, -s;
  states[4] << s, s * i;
  states[5] << s, -s * i;
  return states;
}

double average_fidelity_direct(const DensityMatrix& resource) {
  double total = 0.0;
  for (const ComplexVector& psi : axial_states()) {
    const auto raw = conditional_outputs(psi * psi.adjoint(), resource);
    for (Outcome o : kOutcomes) {
      const ComplexMatrix c = correction(o);
      const ComplexMatrix corrected = c * raw[static_cast<std::size_t>(o)] * c.adjoint();
      total += std::real(psi.dot(corrected * psi));
    }
  }
  return total / 6.0;
}

nlohmann::json to_json(const TeleportOutcome& outcome) {
  return {{"label", std::string(outcome_label(outcome.label))},
          {"probability", outcome.probability},
          {"bob_raw", to_json(outcome.bob_raw)},
          {"bob_corrected", to_json(outcome.bob_corrected)}};
}

}  // namespace qtele
