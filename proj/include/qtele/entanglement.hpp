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

#ifndef QTELE_ENTANGLEMENT_HPP_
#define QTELE_ENTANGLEMENT_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "qtele/core.hpp"

namespace qtele {

enum class FefMethod { kClosedForm, kBruteForce };

struct FefResult {
  double f;
  PureState maximizer;  // maximally entangled state achieving f
  FefMethod method;
};

// Validated pair of damping strengths, both in [0, 1].
struct DampingPair {
  DampingPair(double p_a, double p_b);
  double p_a;
  double p_b;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Magic basis e1 = |Phi+>, e2 = i|Phi->, e3 = i|Psi+>, e4 = |Psi->, as columns.
ComplexMatrix magic_basis();

// Fully entangled fraction: largest eigenvalue of Re(M), M_ij = <e_i|rho|e_j>
// in the magic basis. Real combinations of magic-basis vectors are exactly the
// maximally entangled states (up to phase).
FefResult fef(const DensityMatrix& rho);

// Independent search over |psi> = (U x I)|Phi+>, U in SU(2): multi-start
// coordinate ascent where each step rotates U about a fixed Pauli axis by the
// exactly optimal angle. Gradient free; does not use the magic basis.
FefResult fef_bruteforce(const DensityMatrix& rho, int n_starts = 32, double tol = 1e-8,
                         std::uint64_t seed = 0x5eed);

// F = (f d + 1) / (d + 1).
double teleport_fidelity(double f, int d = 2);

// Closed forms for damped |Phi+>.
double f_adc_single(double p);
double f_adc_both(const DampingPair& pair);
double f_adc_pdc(const DampingPair& pair);  // ADC on A, PDC on B
double f_pdc_both(const DampingPair& pair);

// d f_adc_both / d p_b. Throws std::domain_error at p_b = 1 where the
// derivative is singular.
double dfdpb(const DampingPair& pair);

// Root of f_curve(p) - 1/2 on [0, 1] by bisection to `tol`. A root sitting
// exactly on an endpoint is reported as that endpoint. Throws NotFoundError
// when there is no sign change.
double classical_threshold(const std::function<double(double)>& f_curve, double tol = 1e-6);

}  // namespace qtele

#endif  // QTELE_ENTANGLEMENT_HPP_
