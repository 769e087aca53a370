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

// Random states and unitaries for property tests.

#ifndef QTELE_TESTS_SUPPORT_HPP_
#define QTELE_TESTS_SUPPORT_HPP_

#include <cmath>
#include <random>

#include "qtele/core.hpp"

namespace qtele::testing {

inline ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

// G G^dagger / Tr with G of shape d x rank.
inline DensityMatrix random_density(int num_qubits, std::mt19937_64& rng, int rank = 0) {
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  const ComplexMatrix g = ginibre(d, rank > 0 ? rank : d, rng);
  const ComplexMatrix m = g * g.adjoint();
  return DensityMatrix(ComplexMatrix(m / m.trace().real()));
}

inline ComplexVector random_ket(int num_qubits, std::mt19937_64& rng) {
  ComplexVector v = ginibre(Eigen::Index{1} << num_qubits, 1, rng);
  return v / v.norm();
}

// Haar unitary via QR with the phase of R's diagonal removed.
inline ComplexMatrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qtele::testing

#endif  // QTELE_TESTS_SUPPORT_HPP_
