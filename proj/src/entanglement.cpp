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

#include "qtele/entanglement.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace qtele {

namespace {

void require_pair_member(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("damping strength must lie in [0, 1]");
  }
}

// exp(-i angle sigma / 2)
ComplexMatrix axis_rotation(const ComplexMatrix& sigma, double angle) {
  return std::cos(angle / 2.0) * pauli::I() - Complex(0.0, std::sin(angle / 2.0)) * sigma;
}

double overlap(const ComplexMatrix& rho, const ComplexVector& psi) {
  return std::real(psi.dot(rho * psi));
}

ComplexVector lift(const ComplexMatrix& u, const ComplexVector& phi_plus) {
  return tensor_product(u, pauli::I()) * phi_plus;
}

}  // namespace

DampingPair::DampingPair(double a, double b) : p_a(a), p_b(b) {
  require_pair_member(a);
  require_pair_member(b);
}

ComplexMatrix magic_basis() {
  const Complex i{0.0, 1.0};
  ComplexMatrix basis(4, 4);
  basis.col(0) = bell_state(BellLabel::kPhiPlus).amplitudes();
  basis.col(1) = i * bell_state(BellLabel::kPhiMinus).amplitudes();
  basis.col(2) = i * bell_state(BellLabel::kPsiPlus).amplitudes();
  basis.col(3) = bell_state(BellLabel::kPsiMinus).amplitudes();
  return basis;
}

FefResult fef(const DensityMatrix& rho) {
  if (rho.num_qubits() != 2) throw std::invalid_argument("fef: state must be two qubits");
  const ComplexMatrix e = magic_basis();
  const ComplexMatrix m = e.adjoint() * rho.matrix() * e;
  const Eigen::Matrix4d re = m.real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(0.5 * (re + re.transpose()));
  const Eigen::Vector4d leading = solver.eigenvectors().col(3);
  ComplexVector psi = e * leading.cast<Complex>();
  psi.normalize();
  return {solver.eigenvalues()(3), PureState(psi), FefMethod::kClosedForm};
}

FefResult fef_bruteforce(const DensityMatrix& rho, int n_starts, double tol, std::uint64_t seed) {
  if (rho.num_qubits() != 2) {
    throw std::invalid_argument("fef_bruteforce: state must be two qubits");
  }
  if (n_starts < 1) throw std::invalid_argument("fef_bruteforce: n_starts must be >= 1");
  const ComplexMatrix& m = rho.matrix();
  const ComplexVector phi_plus = bell_state(BellLabel::kPhiPlus).amplitudes();
  const std::array<ComplexMatrix, 3> axes = {pauli::X(), pauli::Y(), pauli::Z()};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  double best_f = -1.0;
  ComplexVector best_psi = phi_plus;
  for (int start = 0; start < n_starts; ++start) {
    // Z-Y-Z Euler angles for the starting point.
    ComplexMatrix u = axis_rotation(pauli::Z(), angle(rng)) *
                      axis_rotation(pauli::Y(), angle(rng)) *
                      axis_rotation(pauli::Z(), angle(rng));
    double current = overlap(m, lift(u, phi_plus));
    constexpr int kMaxSweeps = 20000;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      const double before = current;
      for (const auto& sigma : axes) {
        // Along one rotation angle t the objective is A + B cos t + C sin t.
        const double g0 = overlap(m, lift(u, phi_plus));
        const double g_pi = overlap(m, lift(axis_rotation(sigma, std::numbers::pi) * u, phi_plus));
        const double g_half =
            overlap(m, lift(axis_rotation(sigma, std::numbers::pi / 2.0) * u, phi_plus));
        const double a = 0.5 * (g0 + g_pi);
        const double b = 0.5 * (g0 - g_pi);
        const double c = g_half - a;
        const double t = std::atan2(c, b);
        if (a + std::hypot(b, c) > g0) u = axis_rotation(sigma, t) * u;
      }
      current = overlap(m, lift(u, phi_plus));
      if (current - before < tol * 1e-6) break;
    }
    if (current > best_f) {
      best_f = current;
      best_psi = lift(u, phi_plus);
    }
  }
  best_psi.normalize();
  return {best_f, PureState(best_psi), FefMethod::kBruteForce};
}

double teleport_fidelity(double f, int d) {
  if (d < 2) throw std::invalid_argument("teleport_fidelity: d must be >= 2");
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("teleport_fidelity: f must lie in [0, 1]");
  return (f * d + 1.0) / (d + 1.0);
}

double f_adc_single(double p) {
  require_pair_member(p);
  const double r = 1.0 + std::sqrt(1.0 - p);
  return r * r / 4.0;
}

double f_adc_both(const DampingPair& pair) {
  const double r = 1.0 + std::sqrt((1.0 - pair.p_a) * (1.0 - pair.p_b));
  return 0.25 * (pair.p_a * pair.p_b + r * r);
}

double f_adc_pdc(const DampingPair& pair) {
  return 0.5 * (1.0 + std::sqrt((1.0 - pair.p_a) * (1.0 - pair.p_b)) - pair.p_a / 2.0);
}

double f_pdc_both(const DampingPair& pair) {
  return 0.5 * (1.0 + std::sqrt((1.0 - pair.p_a) * (1.0 - pair.p_b)));
}

double dfdpb(const DampingPair& pair) {
  if (pair.p_b >= 1.0) throw std::domain_error("dfdpb: singular at p_b = 1");
  const double s = std::sqrt((1.0 - pair.p_a) * (1.0 - pair.p_b));
  // (1 - p_a)/s written as sqrt(1 - p_a)/sqrt(1 - p_b) stays finite at p_a = 1.
  const double ratio = std::sqrt(1.0 - pair.p_a) / std::sqrt(1.0 - pair.p_b);
  return 0.25 * (pair.p_a - (1.0 + s) * ratio);
}

double classical_threshold(const std::function<double(double)>& f_curve, double tol) {
  constexpr double kEndpointTol = 1e-12;
  double lo = 0.0;
  double hi = 1.0;
  double g_lo = f_curve(lo) - 0.5;
  const double g_hi = f_curve(hi) - 0.5;
  if (std::abs(g_lo) <= kEndpointTol) return lo;
  if (std::abs(g_hi) <= kEndpointTol) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    throw NotFoundError("classical_threshold: curve does not cross 1/2 on [0, 1]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = f_curve(mid) - 0.5;
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qtele
