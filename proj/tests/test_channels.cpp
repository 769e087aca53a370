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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qtele/channels.hpp"
#include "qtele/entanglement.hpp"
#include "support.hpp"

using namespace qtele;
using qtele::testing::max_abs_diff;

namespace {

const DensityMatrix& phi_plus() {
  static const DensityMatrix rho(bell_state(BellLabel::kPhiPlus));
  return rho;
}

ComplexMatrix damped_phi_plus(double p) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5 * p;
  m(3, 3) = 0.5 * (1.0 - p);
  m(0, 3) = m(3, 0) = 0.5 * std::sqrt(1.0 - p);
  return m;
}

DensityMatrix basis(int k) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(k, k) = 1.0;
  return DensityMatrix(m);
}

DensityMatrix plus() {
  return DensityMatrix(ComplexMatrix(ComplexMatrix::Constant(2, 2, 0.5)));
}

}  // namespace

TEST_CASE("adc Kraus operators") {
  const auto id = adc(0.0);
  CHECK(max_abs_diff(id.kraus_ops()[0], pauli::I()) == 0.0);
  CHECK(id.kraus_ops()[1].cwiseAbs().maxCoeff() == 0.0);

  CHECK(max_abs_diff(qtele::apply(adc(1.0), basis(1)).matrix(), basis(0).matrix()) < 1e-15);

  const auto half = adc(0.5);
  CHECK(std::abs(half.kraus_ops()[0](0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(half.kraus_ops()[0](1, 1) - 0.70711) < 1e-5);
  CHECK(std::abs(half.kraus_ops()[1](0, 1) - 0.70711) < 1e-5);
  CHECK_THROWS_AS(adc(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(adc(1.1), std::invalid_argument);
}

TEST_CASE("pdc") {
  std::mt19937_64 rng(21);
  const DensityMatrix rho = testing::random_density(1, rng);
  CHECK(max_abs_diff(qtele::apply(pdc(0.0), rho).matrix(), rho.matrix()) < 1e-15);
  CHECK(max_abs_diff(qtele::apply(pdc(1.0), plus()).matrix(), ComplexMatrix::Identity(2, 2) / 2.0) <
        1e-15);
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag.diagonal() << 0.3, 0.7;
  for (double p : {0.1, 0.5, 0.9}) {
    CHECK(max_abs_diff(qtele::apply(pdc(p), DensityMatrix(diag)).matrix(), diag) < 1e-15);
  }
  const auto once = qtele::apply(pdc(1.0), rho);
  CHECK(max_abs_diff(qtele::apply(pdc(1.0), once).matrix(), once.matrix()) < 1e-15);
}

TEST_CASE("completeness and trace preservation") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit;
  for (int t = 0; t < 100; ++t) {
    const double p = unit(rng);
    CHECK(adc(p).completeness_error() < 1e-12);
    CHECK(pdc(p).completeness_error() < 1e-12);
    const DensityMatrix rho = testing::random_density(1, rng);
    for (const auto& ch : {adc(p), pdc(p)}) {
      const ComplexMatrix out = qtele::apply(ch, rho.matrix());
      CHECK(std::abs(out.trace() - 1.0) < 1e-12);
      CHECK(hermitian_deviation(out) < 1e-12);
    }
  }
  // Operators that are not trace preserving are rejected.
  CHECK_THROWS_AS(KrausChannel({pauli::I(), pauli::X()}, "bad"), std::invalid_argument);
}

TEST_CASE("apply_local") {
  CHECK(max_abs_diff(apply_local(adc(0.5), phi_plus(), 0).matrix(), damped_phi_plus(0.5)) < 1e-15);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 0.5, 0.25, 0.0, 0.25;
  expected(0, 3) = expected(3, 0) = 0.35355;
  CHECK(max_abs_diff(apply_local(adc(0.5), phi_plus(), 0).matrix(), expected) < 1e-5);

  for (double p : {0.0, 0.2, 0.7, 1.0}) {
    CHECK(max_abs_diff(apply_local(adc(p), phi_plus(), 0).matrix(), damped_phi_plus(p)) < 1e-15);
  }

  std::mt19937_64 rng(25);
  const DensityMatrix a = testing::random_density(1, rng);
  const DensityMatrix b = testing::random_density(1, rng);
  const auto ch = adc(0.4);
  CHECK(max_abs_diff(apply_local(ch, tensor_product(a, b), 1).matrix(),
                     tensor_product(a, qtele::apply(ch, b)).matrix()) < 1e-14);

  const auto twice = apply_local(adc(0.3), apply_local(adc(0.6), phi_plus(), 0), 1);
  CHECK(std::abs(fef(twice).f - f_adc_both(DampingPair(0.6, 0.3))) < 1e-12);
  CHECK_THROWS_AS(apply_local(ch, phi_plus(), 2), std::invalid_argument);
}

TEST_CASE("dilation examples") {
  std::mt19937_64 rng(27);
  const DensityMatrix rho = testing::random_density(1, rng);
  CHECK(max_abs_diff(dilation_adc(pb_from_alpha(0.0), rho).matrix(), rho.matrix()) < 1e-15);
  CHECK(max_abs_diff(dilation_adc(pb_from_alpha(45.0), basis(1)).matrix(), basis(0).matrix()) <
        1e-12);
  CHECK(max_abs_diff(dilation_pdc(0.0, rho).matrix(), rho.matrix()) < 1e-15);
  CHECK(max_abs_diff(dilation_pdc(1.0, plus()).matrix(), ComplexMatrix::Identity(2, 2) / 2.0) <
        1e-12);
  for (double p : {0.1, 0.5, 0.9}) {
    const auto out = dilation_pdc(p, rho);
    CHECK(std::abs(out.matrix()(0, 0) - rho.matrix()(0, 0)) < 1e-12);
    CHECK(std::abs(out.matrix()(1, 1) - rho.matrix()(1, 1)) < 1e-12);
  }
}

TEST_CASE("dilation matches Kraus form") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double p = unit(rng);
    const DensityMatrix rho = testing::random_density(1, rng);
    worst = std::max(worst, max_abs_diff(dilation_adc(p, rho).matrix(), qtele::apply(adc(p), rho).matrix()));
    worst = std::max(worst, max_abs_diff(dilation_pdc(p, rho).matrix(), qtele::apply(pdc(p), rho).matrix()));
    // On a register, the dilation targets one qubit.
    const DensityMatrix pair = testing::random_density(2, rng);
    worst = std::max(worst, max_abs_diff(dilation_adc(p, pair, 1).matrix(),
                                         apply_local(adc(p), pair, 1).matrix()));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("calibration maps") {
  CHECK(pb_from_alpha(0.0) == 0.0);
  CHECK(std::abs(pb_from_alpha(45.0) - 1.0) < 1e-15);
  CHECK(std::abs(pb_from_alpha(22.5) - 0.5) < 1e-15);
  CHECK(std::abs(pa_from_theta(22.5)) < 1e-12);
  CHECK(std::abs(pa_from_theta(45.0) - 1.0) < 1e-15);
  CHECK(std::abs(pa_from_theta(30.0) - 2.0 / 3.0) < 1e-12);
  CHECK_THROWS_AS(pa_from_theta(10.0), std::invalid_argument);

  double prev_a = -1.0;
  double prev_b = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double a = pa_from_theta(22.5 + 22.5 * i / 100.0);
    const double b = pb_from_alpha(45.0 * i / 100.0);
    CHECK(a >= prev_a);
    CHECK(b >= prev_b);
    prev_a = a;
    prev_b = b;
  }
  const auto point = calibrate_alice(30.0);
  CHECK(point.side == Side::kAlice);
  CHECK(std::abs(point.damping - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("alice mixture") {
  CHECK(max_abs_diff(alice_mixture(0.0).matrix(), phi_plus().matrix()) < 1e-15);
  ComplexMatrix full = ComplexMatrix::Zero(4, 4);
  full(0, 0) = full(1, 1) = 0.5;
  CHECK(max_abs_diff(alice_mixture(1.0).matrix(), full) < 1e-15);
  CHECK(max_abs_diff(alice_mixture(0.5).matrix(), damped_phi_plus(0.5)) < 1e-15);

  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    const auto expected = apply_local(adc(p), phi_plus(), 0).matrix();
    worst = std::max(worst, max_abs_diff(alice_mixture(p).matrix(), expected));
    worst = std::max(worst, max_abs_diff(alice_mixture(p, phi_plus()).matrix(), expected));
  }
  CHECK(worst < 1e-12);

  // Non-ideal base stays a valid state and reduces to the base at p = 0.
  const DensityMatrix w = werner_state(0.8);
  CHECK(max_abs_diff(alice_mixture(0.0, w).matrix(), w.matrix()) < 1e-14);
  CHECK_NOTHROW(alice_mixture(0.7, w));
}

TEST_CASE("estimate_p") {
  const auto measured = apply_local(adc(0.3), phi_plus(), 1);
  CHECK(std::abs(estimate_p(measured, DampingFamily::kAmplitude, Side::kBob, phi_plus()) - 0.3) <
        1e-3);
  CHECK(std::abs(estimate_p(phi_plus(), DampingFamily::kAmplitude, Side::kBob, phi_plus())) < 1e-3);
  for (int i = 0; i <= 9; ++i) {
    const double alpha = 5.0 * i;
    const double p = pb_from_alpha(alpha);
    const auto m = apply_local(adc(p), phi_plus(), 1);
    CHECK(std::abs(estimate_p(m, DampingFamily::kAmplitude, Side::kBob, phi_plus()) - p) < 1e-3);
  }
  const auto dephased = apply_local(pdc(0.45), werner_state(0.9), 0);
  CHECK(std::abs(estimate_p(dephased, DampingFamily::kPhase, Side::kAlice, werner_state(0.9)) -
                 0.45) < 1e-3);
}

TEST_CASE("channel descriptors") {
  const auto ch = channel_from_json(nlohmann::json{{"family", "adc"}, {"alpha_deg", 22.5}});
  CHECK(max_abs_diff(ch.kraus_ops()[1], adc(0.5).kraus_ops()[1]) < 1e-15);
  CHECK_THROWS(channel_from_json(nlohmann::json{{"family", "xyz"}, {"p", 0.1}}));
  CHECK_THROWS(channel_from_json(nlohmann::json{{"family", "pdc"}}));
}
