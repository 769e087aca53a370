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

#include "qtele/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtele {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": p must lie in [0, 1]");
  }
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Sagnac coupling on (polarization, path) with H = 0, V = 1 and path modes
// a = 0, b = 1: |Ha> -> |Ha>, |Va> -> sqrt(1-p)|Va> + sqrt(p)|Hb>. The
// |.b> inputs carry no amplitude; they are completed to a unitary.
ComplexMatrix sagnac_coupling(double p) {
  const double keep = std::sqrt(1.0 - p);
  const double swap = std::sqrt(p);
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  // Columns are inputs |Ha>, |Hb>, |Va>, |Vb>.
  u(0, 0) = 1.0;
  u(2, 2) = keep;
  u(1, 2) = swap;
  u(2, 1) = -swap;
  u(1, 1) = keep;
  u(3, 3) = 1.0;
  return u;
}

// Controlled polarization flip on mode b (path = 1).
ComplexMatrix flip_on_mode_b() {
  ComplexMatrix cx = ComplexMatrix::Zero(4, 4);
  // Order (polarization, path): |Ha>=0, |Hb>=1, |Va>=2, |Vb>=3.
  cx(0, 0) = 1.0;
  cx(2, 2) = 1.0;
  cx(3, 1) = 1.0;
  cx(1, 3) = 1.0;
  return cx;
}

DensityMatrix run_sagnac(double p, const DensityMatrix& rho, int target, bool mode_b_waveplate) {
  require_probability(p, "dilation");
  const int n = rho.num_qubits();
  if (target < 0 || target >= n) throw std::invalid_argument("dilation: bad target qubit");
  if (n + 1 > kMaxQubits) throw std::invalid_argument("dilation: register too large");
  const int path = n;
  ComplexMatrix mode_a = ComplexMatrix::Zero(2, 2);
  mode_a(0, 0) = 1.0;
  const ComplexMatrix joint = tensor_product(rho.matrix(), mode_a);
  ComplexMatrix u = embed(sagnac_coupling(p), target, path, n + 1);
  // Incoherent recombination at the output PBS reads mode b in the
  // orthogonal polarization; the 45-degree plate on mode b undoes that.
  if (!mode_b_waveplate) u = embed(flip_on_mode_b(), target, path, n + 1) * u;
  const ComplexMatrix out = u * joint * u.adjoint();
  std::vector<int> keep(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) keep[static_cast<std::size_t>(q)] = q;
  return DensityMatrix(partial_trace(out, n + 1, keep));
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus_ops, std::string label)
    : dim_(0), kraus_ops_(std::move(kraus_ops)), label_(std::move(label)) {
  if (kraus_ops_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  dim_ = kraus_ops_.front().rows();
  for (const auto& k : kraus_ops_) {
    if (k.rows() != dim_ || k.cols() != dim_) {
      throw std::invalid_argument("KrausChannel: Kraus operators must share a square shape");
    }
  }
  if (completeness_error() > kCompletenessTol) {
    throw std::invalid_argument("KrausChannel: sum K^dagger K != I");
  }
}

double KrausChannel::completeness_error() const {
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_ops_) sum += k.adjoint() * k;
  return (sum - ComplexMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
}

KrausChannel adc(double p) {
  require_probability(p, "adc");
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k2 = ComplexMatrix::Zero(2, 2);
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(1.0 - p);
  k2(0, 1) = std::sqrt(p);
  return KrausChannel({k1, k2}, "adc");
}

KrausChannel pdc(double p) {
  require_probability(p, "pdc");
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k2 = ComplexMatrix::Zero(2, 2);
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(1.0 - p);
  k2(1, 1) = std::sqrt(p);
  return KrausChannel({k1, k2}, "pdc");
}

KrausChannel damping_channel(DampingFamily family, double p) {
  return family == DampingFamily::kAmplitude ? adc(p) : pdc(p);
}

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& op) {
  if (op.rows() != ch.dim() || op.cols() != ch.dim()) {
    throw std::invalid_argument("apply: channel and operator dimensions differ");
  }
  ComplexMatrix out = ComplexMatrix::Zero(op.rows(), op.cols());
  for (const auto& k : ch.kraus_ops()) out += k * op * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix(apply(ch, rho.matrix()));
}

ComplexMatrix apply_local(const KrausChannel& ch, const ComplexMatrix& op, int num_qubits,
                          int target) {
  if (ch.dim() != 2) throw std::invalid_argument("apply_local: channel must act on one qubit");
  if (target < 0 || target >= num_qubits) {
    throw std::invalid_argument("apply_local: target qubit out of range");
  }
  ComplexMatrix out = ComplexMatrix::Zero(op.rows(), op.cols());
  for (const auto& k : ch.kraus_ops()) {
    const ComplexMatrix lifted = embed(k, target, num_qubits);
    out += lifted * op * lifted.adjoint();
  }
  return out;
}

DensityMatrix apply_local(const KrausChannel& ch, const DensityMatrix& rho, int target) {
  return DensityMatrix(apply_local(ch, rho.matrix(), rho.num_qubits(), target));
}

DensityMatrix dilation_adc(double p, const DensityMatrix& rho, int target) {
  return run_sagnac(p, rho, target, /*mode_b_waveplate=*/true);
}

DensityMatrix dilation_pdc(double p, const DensityMatrix& rho, int target) {
  return run_sagnac(p, rho, target, /*mode_b_waveplate=*/false);
}

double pb_from_alpha(double alpha_deg) {
  const double s = std::sin(2.0 * deg_to_rad(alpha_deg));
  return s * s;
}

double pa_from_theta(double theta_deg) {
  if (!(theta_deg >= 22.5 && theta_deg <= 45.0)) {
    throw std::invalid_argument("pa_from_theta: theta must lie in [22.5, 45] degrees");
  }
  const double s = std::sin(2.0 * deg_to_rad(theta_deg));
  return std::clamp(2.0 - 1.0 / (s * s), 0.0, 1.0);
}

CalibrationPoint calibrate_bob(double alpha_deg) {
  return {alpha_deg, pb_from_alpha(alpha_deg), Side::kBob};
}

CalibrationPoint calibrate_alice(double theta_deg) {
  return {theta_deg, pa_from_theta(theta_deg), Side::kAlice};
}

DensityMatrix alice_mixture(double p_a, const std::optional<DensityMatrix>& base) {
  require_probability(p_a, "alice_mixture");
  const double sin_phi = 1.0 / std::sqrt(2.0 - p_a);
  const double cos_phi = std::sqrt((1.0 - p_a) / (2.0 - p_a));
  const double w1 = 1.0 - p_a / 2.0;
  const double w2 = p_a / 2.0;

  if (!base) {
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = sin_phi;
    psi(3) = cos_phi;
    ComplexMatrix hv = ComplexMatrix::Zero(4, 4);
    hv(1, 1) = 1.0;
    return DensityMatrix(w1 * psi * psi.adjoint() + w2 * hv);
  }

  if (base->num_qubits() != 2) {
    throw std::invalid_argument("alice_mixture: base resource must be two qubits");
  }
  ComplexMatrix filter = ComplexMatrix::Zero(2, 2);
  filter(0, 0) = std::sqrt(2.0) * sin_phi;
  filter(1, 1) = std::sqrt(2.0) * cos_phi;
  const ComplexMatrix f = embed(filter, 0, 2);
  ComplexMatrix rho1 = f * base->matrix() * f.adjoint();

  ComplexMatrix ground = ComplexMatrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  const ComplexMatrix prep = embed(pauli::X(), 1, 2) * embed(ground, 0, 2);
  ComplexMatrix rho2 = prep * base->matrix() * prep.adjoint();

  const double t1 = rho1.trace().real();
  const double t2 = rho2.trace().real();
  if (t1 <= 0.0 || t2 <= 0.0) {
    throw std::invalid_argument("alice_mixture: base resource has no weight on the required branch");
  }
  rho1 /= t1;
  rho2 /= t2;
  return DensityMatrix(w1 * rho1 + w2 * rho2);
}

double estimate_p(const DensityMatrix& measured, DampingFamily family, Side side,
                  const DensityMatrix& base, double tol) {
  if (measured.dim() != base.dim()) {
    throw std::invalid_argument("estimate_p: measured and base dimensions differ");
  }
  const int target = static_cast<int>(side);
  const auto score = [&](double p) {
    return state_fidelity(measured, apply_local(damping_channel(family, p), base, target));
  };

  constexpr int kGrid = 51;
  int best = 0;
  double best_score = -1.0;
  for (int i = 0; i < kGrid; ++i) {
    const double s = score(static_cast<double>(i) / (kGrid - 1));
    if (s > best_score) {
      best_score = s;
      best = i;
    }
  }
  double lo = static_cast<double>(std::max(best - 1, 0)) / (kGrid - 1);
  double hi = static_cast<double>(std::min(best + 1, kGrid - 1)) / (kGrid - 1);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = score(x1);
  double f2 = score(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = score(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = score(x1);
    }
  }
  const double refined = 0.5 * (lo + hi);
  const double grid_p = static_cast<double>(best) / (kGrid - 1);
  // Boundary optima: the bracket endpoint itself can beat the interior.
  double answer = refined;
  double answer_score = score(refined);
  for (double candidate : {lo, hi, grid_p}) {
    const double s = score(candidate);
    if (s > answer_score) {
      answer_score = s;
      answer = candidate;
    }
  }
  return std::clamp(answer, 0.0, 1.0);
}

KrausChannel channel_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw std::invalid_argument("channel descriptor needs a \"family\" field");
  }
  const std::string family = j.at("family").get<std::string>();
  double p = 0.0;
  if (j.contains("p")) {
    p = j.at("p").get<double>();
  } else if (j.contains("alpha_deg")) {
    p = pb_from_alpha(j.at("alpha_deg").get<double>());
  } else if (j.contains("theta_deg")) {
    p = pa_from_theta(j.at("theta_deg").get<double>());
  } else {
    throw std::invalid_argument("channel descriptor needs one of p, alpha_deg, theta_deg");
  }
  if (family == "adc") return adc(p);
  if (family == "pdc") return pdc(p);
  throw std::invalid_argument("unknown channel family: " + family);
}

}  // namespace qtele
