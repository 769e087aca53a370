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

#include "qtele/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "qtele/parallel.hpp"
#include "qtele/teleport.hpp"

namespace qtele {

namespace {

ComplexVector ket(char c) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  ComplexVector v(2);
  switch (c) {
    case 'H': v << 1, 0; break;
    case 'V': v << 0, 1; break;
    case 'D': v << s, s; break;
    case 'A': v << s, -s; break;
    case 'R': v << s, s * i; break;
    case 'L': v << s, -s * i; break;
    default:
      throw std::invalid_argument(std::string("unknown projector label character: ") + c);
  }
  return v;
}

// Pauli axis measured by a label character and the eigenvalue sign.
struct AxisOutcome {
  int axis;  // 1 = X, 2 = Y, 3 = Z
  int sign;
};

AxisOutcome axis_of(char c) {
  switch (c) {
    case 'D': return {1, +1};
    case 'A': return {1, -1};
    case 'R': return {2, +1};
    case 'L': return {2, -1};
    case 'H': return {3, +1};
    case 'V': return {3, -1};
    default:
      throw std::invalid_argument(std::string("unknown projector label character: ") + c);
  }
}

int label_qubits(std::span<const MeasurementRecord> records) {
  if (records.empty()) throw std::invalid_argument("tomography: no measurement records");
  const std::size_t n = records.front().setting.size();
  if (n < 1 || n > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("tomography: labels must have 1 to 3 characters");
  }
  for (const auto& r : records) {
    if (r.setting.size() != n) throw std::invalid_argument("tomography: mixed label lengths");
    if (r.counts < 0) throw std::invalid_argument("tomography: negative counts");
  }
  return static_cast<int>(n);
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Precomputed projectors and counts for the likelihood.
struct LikelihoodData {
  std::vector<ComplexMatrix> projectors;
  std::vector<double> counts;
  ComplexMatrix projector_sum;
  double total = 0.0;
  Eigen::Index dim = 0;
};

LikelihoodData make_likelihood(std::span<const MeasurementRecord> records) {
  const int n = label_qubits(records);
  LikelihoodData data;
  data.dim = Eigen::Index{1} << n;
  data.projector_sum = ComplexMatrix::Zero(data.dim, data.dim);
  for (const auto& r : records) {
    data.projectors.push_back(projector(r.setting));
    data.counts.push_back(static_cast<double>(r.counts));
    data.projector_sum += data.projectors.back();
    data.total += static_cast<double>(r.counts);
  }
  return data;
}

double evaluate(const LikelihoodData& data, const ComplexMatrix& rho) {
  double value = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < data.projectors.size(); ++k) {
    const double p = (data.projectors[k] * rho).trace().real();
    norm += p;
    if (data.counts[k] > 0.0) {
      if (p <= 0.0) return -std::numeric_limits<double>::infinity();
      value += data.counts[k] * std::log(p);
    }
  }
  if (norm <= 0.0) return -std::numeric_limits<double>::infinity();
  return value - data.total * std::log(norm);
}

// Lower-triangular factor with real diagonal from d^2 real parameters.
ComplexMatrix unpack(const Eigen::VectorXd& x, Eigen::Index dim) {
  ComplexMatrix l = ComplexMatrix::Zero(dim, dim);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < dim; ++i) l(i, i) = x(k++);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      l(i, j) = Complex(x(k), x(k + 1));
      k += 2;
    }
  }
  return l;
}

Eigen::VectorXd pack(const ComplexMatrix& l) {
  const Eigen::Index dim = l.rows();
  Eigen::VectorXd x(dim * dim);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < dim; ++i) x(k++) = l(i, i).real();
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      x(k++) = l(i, j).real();
      x(k++) = l(i, j).imag();
    }
  }
  return x;
}

ComplexMatrix state_of(const Eigen::VectorXd& x, Eigen::Index dim) {
  const ComplexMatrix l = unpack(x, dim);
  const ComplexMatrix a = l * l.adjoint();
  return a / a.trace().real();
}

// Log-likelihood and its gradient with respect to the packed parameters.
double value_and_gradient(const LikelihoodData& data, const Eigen::VectorXd& x,
                          Eigen::VectorXd& grad) {
  const Eigen::Index dim = data.dim;
  const ComplexMatrix l = unpack(x, dim);
  const ComplexMatrix a = l * l.adjoint();
  const double t = a.trace().real();
  const ComplexMatrix rho = a / t;

  ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
  double norm = 0.0;
  double value = 0.0;
  for (std::size_t k = 0; k < data.projectors.size(); ++k) {
    const double p = (data.projectors[k] * rho).trace().real();
    norm += p;
    if (data.counts[k] > 0.0) {
      if (p <= 0.0) {
        grad = Eigen::VectorXd::Zero(x.size());
        return -std::numeric_limits<double>::infinity();
      }
      value += data.counts[k] * std::log(p);
      g += (data.counts[k] / p) * data.projectors[k];
    }
  }
  value -= data.total * std::log(norm);
  g -= (data.total / norm) * data.projector_sum;
  const double g_rho = (g * rho).trace().real();
  const ComplexMatrix h = (g - g_rho * ComplexMatrix::Identity(dim, dim)) / t;
  const ComplexMatrix m = h * l;

  grad.resize(x.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < dim; ++i) grad(k++) = 2.0 * m(i, i).real();
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      grad(k++) = 2.0 * m(i, j).real();
      grad(k++) = 2.0 * m(i, j).imag();
    }
  }
  return value;
}

ComplexMatrix initial_factor(std::span<const MeasurementRecord> records, Eigen::Index dim) {
  ComplexMatrix start;
  try {
    start = project_to_physical(linear_inversion(records));
  } catch (const std::invalid_argument&) {
    start = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  }
  start = 0.9 * start + 0.1 * ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  Eigen::LLT<ComplexMatrix> llt(start);
  return llt.matrixL();
}

}  // namespace

ComplexMatrix projector(std::string_view label) {
  if (label.empty() || label.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("projector label must have 1 to 3 characters");
  }
  ComplexVector v = ComplexVector::Ones(1);
  for (char c : label) {
    const ComplexVector k = ket(c);
    v = tensor_product(v, k);
  }
  return v * v.adjoint();
}

std::vector<std::string> pauli_projector_labels(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("pauli_projector_labels: 1 to 3 qubits");
  }
  static constexpr char kAlphabet[] = {'H', 'V', 'D', 'A', 'R', 'L'};
  std::vector<std::string> labels{""};
  for (int q = 0; q < num_qubits; ++q) {
    std::vector<std::string> next;
    for (const auto& prefix : labels) {
      for (char c : kAlphabet) next.push_back(prefix + c);
    }
    labels = std::move(next);
  }
  return labels;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<MeasurementRecord> simulate_counts(const ComplexMatrix& op,
                                               std::span<const std::string> settings,
                                               std::int64_t n_per_setting, std::uint64_t seed) {
  if (n_per_setting < 1) throw std::invalid_argument("simulate_counts: n_per_setting must be >= 1");
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::vector<MeasurementRecord> records;
  records.reserve(settings.size());
  for (const auto& label : settings) {
    const ComplexMatrix p = projector(label);
    if (p.rows() != op.rows()) {
      throw std::invalid_argument("simulate_counts: label does not match state dimension");
    }
    const double mean = static_cast<double>(n_per_setting) * (p * op).trace().real();
    std::int64_t counts = 0;
    if (mean > 0.0) counts = std::poisson_distribution<std::int64_t>(mean)(rng);
    records.push_back({label, counts});
  }
  return records;
}

std::vector<MeasurementRecord> simulate_counts(const DensityMatrix& rho,
                                               std::span<const std::string> settings,
                                               std::int64_t n_per_setting, std::uint64_t seed) {
  return simulate_counts(rho.matrix(), settings, n_per_setting, seed);
}

ComplexMatrix linear_inversion(std::span<const MeasurementRecord> records) {
  const int n = label_qubits(records);
  std::map<std::string, double> counts;
  for (const auto& r : records) {
    if (!counts.emplace(r.setting, static_cast<double>(r.counts)).second) {
      throw std::invalid_argument("linear_inversion: duplicate label " + r.setting);
    }
  }
  for (const auto& label : pauli_projector_labels(n)) {
    if (!counts.contains(label)) {
      throw std::invalid_argument("linear_inversion: incomplete settings, missing " + label);
    }
  }

  // Frequencies within each Pauli setting, keyed by the axis string.
  struct Setting {
    std::vector<std::pair<std::vector<int>, double>> outcomes;  // signs, counts
    double total = 0.0;
  };
  std::map<std::vector<int>, Setting> settings;
  for (const auto& [label, c] : counts) {
    std::vector<int> axes;
    std::vector<int> signs;
    for (char ch : label) {
      const AxisOutcome ao = axis_of(ch);
      axes.push_back(ao.axis);
      signs.push_back(ao.sign);
    }
    auto& s = settings[axes];
    s.outcomes.emplace_back(signs, c);
    s.total += c;
  }

  const std::array<ComplexMatrix, 4> paulis = {pauli::I(), pauli::X(), pauli::Y(), pauli::Z()};
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  bool any_counts = false;
  const std::int64_t n_strings = ipow(4, n);
  for (std::int64_t code = 0; code < n_strings; ++code) {
    std::vector<int> mu(static_cast<std::size_t>(n));
    std::int64_t rest = code;
    for (int q = n - 1; q >= 0; --q) {
      mu[static_cast<std::size_t>(q)] = static_cast<int>(rest % 4);
      rest /= 4;
    }
    double sum = 0.0;
    int used = 0;
    for (const auto& [axes, s] : settings) {
      bool compatible = true;
      for (int q = 0; q < n; ++q) {
        const int m = mu[static_cast<std::size_t>(q)];
        if (m != 0 && m != axes[static_cast<std::size_t>(q)]) compatible = false;
      }
      if (!compatible || s.total <= 0.0) continue;
      double expectation = 0.0;
      for (const auto& [signs, c] : s.outcomes) {
        int sign = 1;
        for (int q = 0; q < n; ++q) {
          if (mu[static_cast<std::size_t>(q)] != 0) sign *= signs[static_cast<std::size_t>(q)];
        }
        expectation += sign * c;
      }
      sum += expectation / s.total;
      ++used;
    }
    if (used == 0) continue;
    any_counts = true;
    ComplexMatrix sigma = ComplexMatrix::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
      sigma = tensor_product(sigma, paulis[static_cast<std::size_t>(mu[static_cast<std::size_t>(q)])]);
    }
    rho += (sum / used) * sigma;
  }
  if (!any_counts) throw std::invalid_argument("linear_inversion: no counts recorded");
  return rho / static_cast<double>(dim);
}

DensityMatrix state_tomo_linear(std::span<const MeasurementRecord> records) {
  return DensityMatrix(linear_inversion(records), Validation::kRepair);
}

double log_likelihood(std::span<const MeasurementRecord> records, const ComplexMatrix& rho) {
  return evaluate(make_likelihood(records), rho);
}

DensityMatrix state_tomo_mle(std::span<const MeasurementRecord> records, MleOptions options) {
  const LikelihoodData data = make_likelihood(records);
  if (data.total <= 0.0) throw std::invalid_argument("state_tomo_mle: no counts recorded");
  const Eigen::Index dim = data.dim;
  const Eigen::Index np = dim * dim;

  Eigen::VectorXd x = pack(initial_factor(records, dim));
  Eigen::VectorXd grad;
  double value = value_and_gradient(data, x, grad);
  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(np, np);
  bool scaled = false;
  int quiet_iterations = 0;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    // Ascent direction (maximizing the likelihood).
    Eigen::VectorXd direction = inv_hessian * grad;
    if (!scaled) direction *= 0.1 * x.norm() / std::max(grad.norm(), 1e-300);
    if (direction.dot(grad) <= 0.0) {
      inv_hessian.setIdentity();
      direction = grad * (0.1 * x.norm() / std::max(grad.norm(), 1e-300));
    }

    double step = 1.0;
    Eigen::VectorXd candidate;
    Eigen::VectorXd candidate_grad;
    double candidate_value = -std::numeric_limits<double>::infinity();
    const double slope = direction.dot(grad);
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving) {
      candidate = x + step * direction;
      candidate_value = value_and_gradient(data, candidate, candidate_grad);
      if (std::isfinite(candidate_value) && candidate_value >= value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return DensityMatrix(state_of(x, dim), Validation::kRepair);

    const double improvement = candidate_value - value;
    const Eigen::VectorXd s = candidate - x;
    // Quasi-Newton update on the negated objective.
    const Eigen::VectorXd y = grad - candidate_grad;
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      if (!scaled) {
        inv_hessian = Eigen::MatrixXd::Identity(np, np) * (sy / y.squaredNorm());
        scaled = true;
      }
      const double r = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(np, np);
      inv_hessian = (id - r * s * y.transpose()) * inv_hessian * (id - r * y * s.transpose()) +
                    r * s * s.transpose();
    }
    x = candidate;
    grad = candidate_grad;
    value = candidate_value;
    // Keep the factor at unit scale; rho is invariant under rescaling.
    const double norm = x.norm();
    x /= norm;
    grad *= norm;
    inv_hessian /= norm * norm;

    if (improvement <= options.tol * std::max(1.0, std::abs(value))) {
      if (++quiet_iterations >= 3) return DensityMatrix(state_of(x, dim), Validation::kRepair);
    } else {
      quiet_iterations = 0;
    }
  }
  throw ConvergenceError("state_tomo_mle: iteration cap reached",
                         DensityMatrix(state_of(x, dim), Validation::kRepair));
}

ChiMatrix::ChiMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != 4 || entries_.cols() != 4) {
    throw std::invalid_argument("ChiMatrix: must be 4x4");
  }
  if (hermitian_deviation(entries_) > 1e-8) {
    throw std::invalid_argument("ChiMatrix: not Hermitian");
  }
}

double ChiMatrix::trace_preservation_error() const {
  const auto& e = pauli_basis();
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      sum += entries_(m, n) * e[static_cast<std::size_t>(n)].adjoint() * e[static_cast<std::size_t>(m)];
    }
  }
  return (sum - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
}

const std::array<ComplexMatrix, 4>& pauli_basis() {
  static const std::array<ComplexMatrix, 4> basis = {pauli::I(), pauli::X(), pauli::Y(),
                                                     pauli::Z()};
  return basis;
}

ComplexMatrix apply_chi(const ChiMatrix& chi, const ComplexMatrix& op) {
  const auto& e = pauli_basis();
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      out += chi(m, n) * e[static_cast<std::size_t>(m)] * op * e[static_cast<std::size_t>(n)].adjoint();
    }
  }
  return out;
}

std::array<ComplexMatrix, 4> probe_inputs() {
  const std::array<ComplexVector, 6> axial = axial_states();
  // |0>, |1>, |+>, |+i>
  return {axial[0] * axial[0].adjoint(), axial[1] * axial[1].adjoint(),
          axial[2] * axial[2].adjoint(), axial[4] * axial[4].adjoint()};
}

std::array<ComplexMatrix, 4> probe_channel(const ChannelEvaluator& channel,
                                           const ProcessStats& stats) {
  const auto probes = probe_inputs();
  std::array<ComplexMatrix, 4> outputs;
  for (std::size_t k = 0; k < 4; ++k) {
    const ComplexMatrix exact = channel(probes[k]);
    if (exact.rows() != 2 || exact.cols() != 2) {
      throw std::invalid_argument("process_tomo: channel must act on one qubit");
    }
    if (std::holds_alternative<ExactStats>(stats)) {
      outputs[k] = exact;
      continue;
    }
    const auto& counts = std::get<CountStats>(stats);
    static const std::vector<std::string> kLabels = pauli_projector_labels(1);
    const auto records = simulate_counts(exact, kLabels, counts.n_per_setting,
                                         derive_seed(counts.seed, k));
    double total = 0.0;
    for (const auto& r : records) total += static_cast<double>(r.counts);
    if (total <= 0.0) {
      outputs[k] = ComplexMatrix::Zero(2, 2);
      continue;
    }
    const DensityMatrix estimate = state_tomo_mle(records);
    // Each Pauli setting sums to the identity, so the expected total is
    // 3 n Tr(output).
    const double trace = total / (3.0 * static_cast<double>(counts.n_per_setting));
    outputs[k] = trace * estimate.matrix();
  }
  return outputs;
}

ChiMatrix chi_from_probe_outputs(const std::array<ComplexMatrix, 4>& outputs) {
  const Complex i{0.0, 1.0};
  const ComplexMatrix& e00 = outputs[0];
  const ComplexMatrix& e11 = outputs[1];
  const ComplexMatrix half_diag = 0.5 * (e00 + e11);
  const ComplexMatrix sym = outputs[2] - half_diag;   // image of (|0><1| + |1><0|)/2
  const ComplexMatrix asym = outputs[3] - half_diag;  // image of i(|1><0| - |0><1|)/2
  const ComplexMatrix e01 = sym + i * asym;
  const ComplexMatrix e10 = sym - i * asym;

  ComplexMatrix choi(4, 4);
  choi.block(0, 0, 2, 2) = e00;
  choi.block(0, 2, 2, 2) = e01;
  choi.block(2, 0, 2, 2) = e10;
  choi.block(2, 2, 2, 2) = e11;

  // chi_mn = <<E_m| J |E_n>> / 4 with |E>> = sum_a |a> (x) E|a>.
  const auto& basis = pauli_basis();
  std::array<ComplexVector, 4> vecs;
  for (std::size_t m = 0; m < 4; ++m) {
    vecs[m] = ComplexVector(4);
    for (int a = 0; a < 2; ++a) {
      for (int out = 0; out < 2; ++out) vecs[m](2 * a + out) = basis[m](out, a);
    }
  }
  ComplexMatrix chi(4, 4);
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t n = 0; n < 4; ++n) {
      chi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
          vecs[m].dot(choi * vecs[n]) / 4.0;
    }
  }
  return ChiMatrix(0.5 * (chi + chi.adjoint()));
}

ChiMatrix process_tomo(const ChannelEvaluator& channel, const ProcessStats& stats) {
  return chi_from_probe_outputs(probe_channel(channel, stats));
}

double avg_fidelity_from_chi(const ChiMatrix& chi) {
  return (2.0 * chi(0, 0).real() + 1.0) / 3.0;
}

double composite_teleport_fidelity(const DensityMatrix& resource, const ProcessStats& stats) {
  const auto channels = teleport_channel(resource);
  double weighted = 0.0;
  for (Outcome o : kOutcomes) {
    const auto k = static_cast<std::size_t>(o);
    const OutcomeChannel& ch = channels[k];
    ProcessStats outcome_stats = stats;
    if (auto* counts = std::get_if<CountStats>(&outcome_stats)) {
      counts->seed = derive_seed(counts->seed, k);
    }
    auto outputs = probe_channel([&ch](const ComplexMatrix& op) { return ch.apply_raw(op); },
                                 outcome_stats);
    double mean_probability = 0.0;
    for (const auto& out : outputs) mean_probability += out.trace().real() / 4.0;
    if (mean_probability <= 0.0) continue;
    for (auto& out : outputs) out /= mean_probability;
    const ChiMatrix chi = chi_from_probe_outputs(outputs);
    const int c = correction_index(o);
    weighted += mean_probability * chi(c, c).real();
  }
  return (2.0 * weighted + 1.0) / 3.0;
}

MonteCarloSummary monte_carlo_fidelity_error(const DensityMatrix& resource,
                                             std::int64_t n_per_setting, int n_resamples,
                                             std::uint64_t seed, int workers) {
  if (n_resamples < 2) throw std::invalid_argument("monte_carlo_fidelity_error: need >= 2 resamples");
  std::vector<double> values(static_cast<std::size_t>(n_resamples));
  parallel_for(values.size(), workers, [&](std::size_t r) {
    values[r] = composite_teleport_fidelity(resource, CountStats{n_per_setting, derive_seed(seed, r)});
  });
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

std::vector<MeasurementRecord> read_counts_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open counts file: " + path.string());
  const auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    const auto last = s.find_last_not_of(" \t\r\n");
    return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
  };
  std::string line;
  if (!std::getline(in, line) || trim(line) != "setting_label,counts") {
    throw std::invalid_argument("counts file must start with header setting_label,counts");
  }
  std::vector<MeasurementRecord> records;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("malformed counts row: " + line);
    MeasurementRecord r;
    r.setting = trim(line.substr(0, comma));
    const std::string value = trim(line.substr(comma + 1));
    std::size_t used = 0;
    try {
      r.counts = std::stoll(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty() || r.counts < 0) {
      throw std::invalid_argument("malformed counts value: " + line);
    }
    projector(r.setting);  // validates the label
    records.push_back(std::move(r));
  }
  return records;
}

void write_counts_csv(std::span<const MeasurementRecord> records,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "setting_label,counts\n";
  for (const auto& r : records) out << r.setting << ',' << r.counts << '\n';
}

}  // namespace qtele
