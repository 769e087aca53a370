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

#ifndef QTELE_CORE_HPP_
#define QTELE_CORE_HPP_

#include <complex>
#include <filesystem>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

namespace qtele {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Tolerances used by the state validators.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kNormTol = 1e-12;

inline constexpr int kMaxQubits = 3;

// Kronecker product. The left factor occupies the high-order (first) qubits,
// so basis order for two qubits is |00>, |01>, |10>, |11>.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
tensor_product(const Eigen::MatrixBase<DerivedA>& a,
               const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Max-entry deviation from Hermiticity.
template <typename Derived>
double hermitian_deviation(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

struct HermitianEigen {
  RealVector values;        // ascending
  ComplexMatrix vectors;    // columns are eigenvectors
};

// Throws std::invalid_argument when m deviates from Hermitian by more than 1e-8.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

// Square root of a positive semidefinite matrix. Negative eigenvalues are
// clamped to zero first.
ComplexMatrix sqrtm_psd(const ComplexMatrix& m);

// Integer log2 of a power-of-two dimension in [2, 2^kMaxQubits]; throws
// std::invalid_argument otherwise.
int qubits_for_dim(Eigen::Index dim);

class PureState {
 public:
  // Throws std::invalid_argument if the norm deviates from 1 by more than
  // kNormTol or the length is not 2^n with 1 <= n <= 3.
  explicit PureState(ComplexVector amplitudes);

  int num_qubits() const { return num_qubits_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  int num_qubits_;
  ComplexVector amplitudes_;
};

enum class Validation {
  kStrict,  // reject anything outside tolerance
  kRepair,  // Hermitize and project onto the nearest unit-trace PSD matrix
};

struct ValidationReport {
  double hermitian_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool ok() const {
    return hermitian_deviation <= kHermitianTol && trace_deviation <= kTraceTol &&
           min_eigenvalue >= -kPsdTol;
  }
};

ValidationReport check_density(const ComplexMatrix& m);

// Nearest (Frobenius) unit-trace PSD matrix to the Hermitian part of m.
ComplexMatrix project_to_physical(const ComplexMatrix& m);

// Validated n-qubit mixed state (1 <= n <= 3).
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, Validation mode = Validation::kStrict);
  explicit DensityMatrix(const PureState& psi);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  static DensityMatrix maximally_mixed(int num_qubits);

 private:
  int num_qubits_;
  ComplexMatrix matrix_;
};

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// Partial trace of an arbitrary operator on num_qubits qubits, keeping the
// listed qubit indices (qubit 0 is the most significant). Kept qubits retain
// their relative order. Throws std::invalid_argument when keep is empty, is
// not a proper subset, or has repeated/out-of-range entries.
ComplexMatrix partial_trace(const ComplexMatrix& m, int num_qubits,
                            std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

// Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

enum class BellLabel { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

PureState bell_state(BellLabel label);

// v |Phi+><Phi+| + (1 - v) I/4.
DensityMatrix werner_state(double v);

// Single-qubit Paulis and basis states.
namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
}  // namespace pauli

// Embeds a single-qubit operator on `target` of an n-qubit register.
ComplexMatrix embed(const ComplexMatrix& op, int target, int num_qubits);

// Embeds a two-qubit operator (basis order |first second>) on the given pair.
ComplexMatrix embed(const ComplexMatrix& op, int first, int second, int num_qubits);

// Density-matrix file format: {"num_qubits": n, "re": [[...]], "im": [[...]]}.
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json matrix_to_json(const ComplexMatrix& m);
DensityMatrix density_from_json(const nlohmann::json& j);
DensityMatrix read_density_file(const std::filesystem::path& path);
void write_density_file(const DensityMatrix& rho, const std::filesystem::path& path);

}  // namespace qtele

#endif  // QTELE_CORE_HPP_
