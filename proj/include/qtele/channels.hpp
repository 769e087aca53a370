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

#ifndef QTELE_CHANNELS_HPP_
#define QTELE_CHANNELS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "qtele/core.hpp"

namespace qtele {

inline constexpr double kCompletenessTol = 1e-10;

// Completely positive map in Kraus form. Construction checks the
// trace-preservation condition sum_j K_j^dagger K_j = I.
class KrausChannel {
 public:
  KrausChannel(std::vector<ComplexMatrix> kraus_ops, std::string label);

  Eigen::Index dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus_ops() const { return kraus_ops_; }
  const std::string& label() const { return label_; }

  // Max-entry deviation of sum K^dagger K from the identity.
  double completeness_error() const;

 private:
  Eigen::Index dim_;
  std::vector<ComplexMatrix> kraus_ops_;
  std::string label_;
};

enum class DampingFamily { kAmplitude, kPhase };

// Amplitude damping: K1 = diag(1, sqrt(1-p)), K2 = sqrt(p) |0><1|.
KrausChannel adc(double p);
// Phase damping: K1 = diag(1, sqrt(1-p)), K2 = sqrt(p) |1><1|.
KrausChannel pdc(double p);
KrausChannel damping_channel(DampingFamily family, double p);

// Sum_j K_j rho K_j^dagger on an arbitrary (possibly unnormalized) operator.
ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& op);
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

// Channel on one qubit of a register, identity elsewhere.
ComplexMatrix apply_local(const KrausChannel& ch, const ComplexMatrix& op, int num_qubits,
                          int target);
DensityMatrix apply_local(const KrausChannel& ch, const DensityMatrix& rho, int target);

// Interferometric (Sagnac) realization: the polarization qubit is coupled to
// a path qubit that starts in mode a, the path is traced out after the two
// output modes are recombined incoherently. With the mode-b half-wave plate
// in place the result is amplitude damping; without it, phase damping.
DensityMatrix dilation_adc(double p, const DensityMatrix& rho, int target = 0);
DensityMatrix dilation_pdc(double p, const DensityMatrix& rho, int target = 0);

// Bob's waveplate calibration, p_b = sin^2(2 alpha).
double pb_from_alpha(double alpha_deg);
// Pump waveplate calibration, p_a = 2 - 1/sin^2(2 theta), theta in [22.5, 45].
double pa_from_theta(double theta_deg);

enum class Side { kAlice = 0, kBob = 1 };

struct CalibrationPoint {
  double control_angle_deg = 0.0;
  double damping = 0.0;
  Side side = Side::kBob;
};

CalibrationPoint calibrate_bob(double alpha_deg);
CalibrationPoint calibrate_alice(double theta_deg);

// Alice-side damping simulated as a weighted average of two pure-state
// resources: (1 - p_a/2) |psi_phi><psi_phi| + (p_a/2) |01><01| with
// |psi_phi> = sin(phi)|00> + cos(phi)|11>, sin(phi) = 1/sqrt(2 - p_a).
//
// With a base resource, each of the two states is prepared from the base
// instead of from |Phi+>: the first through the local filter
// sqrt(2) diag(sin phi, cos phi) on qubit A (which maps |Phi+> to
// |psi_phi>), the second by projecting qubit A onto |0> and flipping B.
DensityMatrix alice_mixture(double p_a, const std::optional<DensityMatrix>& base = std::nullopt);

// Best-fit damping strength: argmax over p in [0, 1] of
// F(measured, family(p) applied to `side` of base). A 51-point grid selects
// the bracket, golden-section search refines it to `tol`.
double estimate_p(const DensityMatrix& measured, DampingFamily family, Side side,
                  const DensityMatrix& base, double tol = 1e-4);

// Channel descriptor: {"family": "adc"|"pdc", "p": x} or {"family": "adc",
// "alpha_deg": a} or {"family": "adc", "theta_deg": t}.
KrausChannel channel_from_json(const nlohmann::json& j);

}  // namespace qtele

#endif  // QTELE_CHANNELS_HPP_
