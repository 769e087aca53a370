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

#include "qtele/core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qtele {

namespace {

constexpr double kEigHermitianTol = 1e-8;

// Eigenvalues above this are treated as a pure-state support in fidelity.
constexpr double kPureThreshold = 1.0 - 1e-12;

// Euclidean projection of x onto the probability simplex.
RealVector project_simplex(const RealVector& x) {
  std::vector<double> sorted(x.data(), x.data() + x.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) shift = candidate;
  }
  return (x.array() - shift).cwiseMax(0.0).matrix();
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("eig_hermitian: matrix must be square and nonempty");
  }
  if (hermitian_deviation(m) > kEigHermitianTol) {
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& m) {
  const HermitianEigen eig = eig_hermitian(m);
  const RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

int qubits_for_dim(Eigen::Index dim) {
  for (int n = 1; n <= kMaxQubits; ++n) {
    if (dim == (Eigen::Index{1} << n)) return n;
  }
  throw std::invalid_argument("dimension must be 2, 4 or 8 (1 to 3 qubits)");
}

PureState::PureState(ComplexVector amplitudes)
    : num_qubits_(qubits_for_dim(amplitudes.size())), amplitudes_(std::move(amplitudes)) {
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTol) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
}

ValidationReport check_density(const ComplexMatrix& m) {
  ValidationReport report;
  if (m.rows() != m.cols()) {
    report.hermitian_deviation = std::numeric_limits<double>::infinity();
    return report;
  }
  report.hermitian_deviation = hermitian_deviation(m);
  report.trace_deviation = std::abs(m.trace() - Complex{1.0, 0.0});
  const ComplexMatrix hermitian = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  return report;
}

ComplexMatrix project_to_physical(const ComplexMatrix& m) {
  const ComplexMatrix hermitian = 0.5 * (m + m.adjoint());
  const HermitianEigen eig = eig_hermitian(hermitian);
  const RealVector projected = project_simplex(eig.values);
  return eig.vectors * projected.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

DensityMatrix::DensityMatrix(ComplexMatrix m, Validation mode)
    : num_qubits_(0), matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  }
  num_qubits_ = qubits_for_dim(matrix_.rows());
  if (mode == Validation::kRepair) {
    matrix_ = project_to_physical(matrix_);
    return;
  }
  const ValidationReport report = check_density(matrix_);
  if (report.hermitian_deviation > kHermitianTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (report.trace_deviation > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  if (report.min_eigenvalue < -kPsdTol) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : num_qubits_(psi.num_qubits()), matrix_(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
    throw std::invalid_argument("tensor_product: more than 3 qubits");
  }
  return DensityMatrix(tensor_product(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int num_qubits,
                            std::span<const int> keep) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("partial_trace: matrix dimension does not match qubit count");
  }
  if (keep.empty() || static_cast<int>(keep.size()) >= num_qubits) {
    throw std::invalid_argument("partial_trace: keep must be a nonempty proper subset");
  }
  std::vector<bool> kept(static_cast<std::size_t>(num_qubits), false);
  for (int q : keep) {
    if (q < 0 || q >= num_qubits || kept[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument("partial_trace: invalid qubit index set");
    }
    kept[static_cast<std::size_t>(q)] = true;
  }
  std::vector<int> kept_sorted(keep.begin(), keep.end());
  std::sort(kept_sorted.begin(), kept_sorted.end());
  std::vector<int> traced;
  for (int q = 0; q < num_qubits; ++q) {
    if (!kept[static_cast<std::size_t>(q)]) traced.push_back(q);
  }

  // Bit of qubit q inside a full index (qubit 0 is the most significant).
  const auto shift = [num_qubits](int q) { return num_qubits - 1 - q; };
  const auto compose = [&](Eigen::Index kept_index, Eigen::Index traced_index) {
    Eigen::Index full = 0;
    const int nk = static_cast<int>(kept_sorted.size());
    for (int k = 0; k < nk; ++k) {
      const Eigen::Index bit = (kept_index >> (nk - 1 - k)) & 1;
      full |= bit << shift(kept_sorted[static_cast<std::size_t>(k)]);
    }
    const int nt = static_cast<int>(traced.size());
    for (int t = 0; t < nt; ++t) {
      const Eigen::Index bit = (traced_index >> (nt - 1 - t)) & 1;
      full |= bit << shift(traced[static_cast<std::size_t>(t)]);
    }
    return full;
  };

  const Eigen::Index kept_dim = Eigen::Index{1} << kept_sorted.size();
  const Eigen::Index traced_dim = Eigen::Index{1} << traced.size();
  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (Eigen::Index i = 0; i < kept_dim; ++i) {
    for (Eigen::Index j = 0; j < kept_dim; ++j) {
      Complex sum{0.0, 0.0};
      for (Eigen::Index t = 0; t < traced_dim; ++t) {
        sum += m(compose(i, t), compose(j, t));
      }
      out(i, j) = sum;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  return DensityMatrix(partial_trace(rho.matrix(), rho.num_qubits(), keep));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  }
  const HermitianEigen eig_rho = eig_hermitian(rho.matrix());
  const HermitianEigen eig_sigma = eig_hermitian(sigma.matrix());
  const Eigen::Index top = rho.dim() - 1;
  // Pure arguments reduce to an expectation value; this avoids amplifying
  // round-off in the null space through the square root.
  if (eig_rho.values(top) > kPureThreshold) {
    const ComplexVector psi = eig_rho.vectors.col(top);
    return std::clamp(std::real(psi.dot(sigma.matrix() * psi)), 0.0, 1.0);
  }
  if (eig_sigma.values(top) > kPureThreshold) {
    const ComplexVector psi = eig_sigma.vectors.col(top);
    return std::clamp(std::real(psi.dot(rho.matrix() * psi)), 0.0, 1.0);
  }
  // F = ||sqrt(rho) sqrt(sigma)||_1^2, symmetric in its arguments. Eigenvalues
  // at round-off level are dropped so their square roots do not leak in.
  const auto root = [](const HermitianEigen& e) {
    const RealVector r =
        e.values.unaryExpr([](double v) { return v > 1e-13 ? std::sqrt(v) : 0.0; });
    return ComplexMatrix(e.vectors * r.cast<Complex>().asDiagonal() * e.vectors.adjoint());
  };
  const ComplexMatrix product = root(eig_rho) * root(eig_sigma);
  Eigen::JacobiSVD<ComplexMatrix> svd(product);
  const double trace_sqrt = svd.singularValues().sum();
  return std::min(trace_sqrt * trace_sqrt, 1.0);
}

PureState bell_state(BellLabel label) {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector v = ComplexVector::Zero(4);
  switch (label) {
    case BellLabel::kPhiPlus:
      v << s, 0, 0, s;
      break;
    case BellLabel::kPhiMinus:
      v << s, 0, 0, -s;
      break;
    case BellLabel::kPsiPlus:
      v << 0, s, s, 0;
      break;
    case BellLabel::kPsiMinus:
      v << 0, s, -s, 0;
      break;
  }
  return PureState(v);
}

DensityMatrix werner_state(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("werner_state: v must lie in [0, 1]");
  }
  const ComplexMatrix phi = bell_state(BellLabel::kPhiPlus).projector();
  return DensityMatrix(v * phi + (1.0 - v) * ComplexMatrix::Identity(4, 4) / 4.0);
}

namespace pauli {
ComplexMatrix I() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix X() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
ComplexMatrix Y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
ComplexMatrix Z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

ComplexMatrix embed(const ComplexMatrix& op, int target, int num_qubits) {
  if (target < 0 || target >= num_qubits) {
    throw std::invalid_argument("embed: target qubit out of range");
  }
  if (op.rows() != 2 || op.cols() != 2) {
    throw std::invalid_argument("embed: operator must be 2x2");
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < num_qubits; ++q) {
    out = tensor_product(out, q == target ? op : pauli::I());
  }
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, int first, int second, int num_qubits) {
  if (op.rows() != 4 || op.cols() != 4) {
    throw std::invalid_argument("embed: two-qubit operator must be 4x4");
  }
  if (first == second) throw std::invalid_argument("embed: qubits must differ");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (op(i, j) == Complex{0.0, 0.0}) continue;
      ComplexMatrix first_unit = ComplexMatrix::Zero(2, 2);
      ComplexMatrix second_unit = ComplexMatrix::Zero(2, 2);
      first_unit(i >> 1, j >> 1) = 1.0;
      second_unit(i & 1, j & 1) = 1.0;
      out += op(i, j) * embed(first_unit, first, num_qubits) *
             embed(second_unit, second, num_qubits);
    }
  }
  return out;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

nlohmann::json to_json(const DensityMatrix& rho) {
  nlohmann::json j = matrix_to_json(rho.matrix());
  j["num_qubits"] = rho.num_qubits();
  return j;
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num_qubits") || !j.contains("re") || !j.contains("im")) {
    throw std::invalid_argument("density matrix JSON needs num_qubits, re and im");
  }
  const int n = j.at("num_qubits").get<int>();
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("density matrix JSON: num_qubits must be 1, 2 or 3");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() || static_cast<Eigen::Index>(re.size()) != dim ||
      static_cast<Eigen::Index>(im.size()) != dim) {
    throw std::invalid_argument("density matrix JSON: wrong row count");
  }
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto& re_row = re.at(static_cast<std::size_t>(r));
    const auto& im_row = im.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(re_row.size()) != dim ||
        static_cast<Eigen::Index>(im_row.size()) != dim) {
      throw std::invalid_argument("density matrix JSON: wrong column count");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = Complex(re_row.at(static_cast<std::size_t>(c)).get<double>(),
                        im_row.at(static_cast<std::size_t>(c)).get<double>());
    }
  }
  return DensityMatrix(std::move(m), Validation::kStrict);
}

DensityMatrix read_density_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open density matrix file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed density matrix file: " + std::string(e.what()));
  }
  return density_from_json(j);
}

void write_density_file(const DensityMatrix& rho, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(rho).dump(2) << '\n';
}

}  // namespace qtele
