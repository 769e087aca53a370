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

#ifndef QTELE_TOMOGRAPHY_HPP_
#define QTELE_TOMOGRAPHY_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qtele/core.hpp"

namespace qtele {

// Projector labels use one character per qubit from the polarization
// alphabet: H = |0>, V = |1>, D = |+>, A = |->, R = |+i>, L = |-i>.
struct MeasurementRecord {
  std::string setting;
  std::int64_t counts = 0;
};

ComplexMatrix projector(std::string_view label);

// All 6^n labels (3^n Pauli settings, both eigenstates per qubit).
std::vector<std::string> pauli_projector_labels(int num_qubits);

// splitmix64 of (master, index); used for every derived RNG stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Poisson counts with mean n_per_setting * Tr(P op). `op` may be
// unnormalized (a conditional output whose trace is a probability).
std::vector<MeasurementRecord> simulate_counts(const ComplexMatrix& op,
                                               std::span<const std::string> settings,
                                               std::int64_t n_per_setting, std::uint64_t seed);
std::vector<MeasurementRecord> simulate_counts(const DensityMatrix& rho,
                                               std::span<const std::string> settings,
                                               std::int64_t n_per_setting, std::uint64_t seed);

// Stokes-parameter inversion from per-setting frequencies; unit trace but
// possibly not PSD. Throws std::invalid_argument unless all 6^n labels are
// present exactly once.
ComplexMatrix linear_inversion(std::span<const MeasurementRecord> records);

// linear_inversion followed by projection onto the nearest physical state.
DensityMatrix state_tomo_linear(std::span<const MeasurementRecord> records);

// Poisson log-likelihood with the overall intensity profiled out:
// sum_k c_k log p_k - C log sum_k p_k, p_k = Tr(P_k rho), C = sum_k c_k.
double log_likelihood(std::span<const MeasurementRecord> records, const ComplexMatrix& rho);

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, DensityMatrix best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const DensityMatrix& best() const { return best_; }

 private:
  DensityMatrix best_;
};

struct MleOptions {
  double tol = 1e-9;       // relative log-likelihood improvement
  int max_iterations = 5000;
};

// Maximum-likelihood state over rho = T^dagger T / Tr(T^dagger T) with T
// triangular (4^n real parameters), quasi-Newton ascent started from the
// projected linear estimate. Throws ConvergenceError carrying the best
// iterate when the iteration cap is hit.
DensityMatrix state_tomo_mle(std::span<const MeasurementRecord> records, MleOptions options = {});

// Process matrix in the {I, X, Y, Z} operator basis.
class ChiMatrix {
 public:
  explicit ChiMatrix(ComplexMatrix entries);

  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(int m, int n) const { return entries_(m, n); }

  // Max-entry deviation of sum_mn chi_mn E_n^dagger E_m from I.
  double trace_preservation_error() const;

 private:
  ComplexMatrix entries_;
};

// E_0..E_3 = I, X, Y, Z.
const std::array<ComplexMatrix, 4>& pauli_basis();

// sum_mn chi_mn E_m op E_n^dagger
ComplexMatrix apply_chi(const ChiMatrix& chi, const ComplexMatrix& op);

using ChannelEvaluator = std::function<ComplexMatrix(const ComplexMatrix&)>;

struct ExactStats {};
struct CountStats {
  std::int64_t n_per_setting = 10000;
  std::uint64_t seed = 1;
};
using ProcessStats = std::variant<ExactStats, CountStats>;

// Probe inputs |0>, |1>, |+>, |+i>.
std::array<ComplexMatrix, 4> probe_inputs();

// Channel outputs for the four probes: exact, or reconstructed by MLE state
// tomography with the trace estimated from the total count rate.
std::array<ComplexMatrix, 4> probe_channel(const ChannelEvaluator& channel,
                                           const ProcessStats& stats);

// Linear reconstruction of chi from the probe outputs.
ChiMatrix chi_from_probe_outputs(const std::array<ComplexMatrix, 4>& outputs);

ChiMatrix process_tomo(const ChannelEvaluator& channel, const ProcessStats& stats = ExactStats{});

// (2 Re chi_00 + 1) / 3
double avg_fidelity_from_chi(const ChiMatrix& chi);

// Teleportation fidelity assembled from per-outcome process tomography:
// F = (2 sum_ij p_ij chi^(ij)_{C_ij C_ij} + 1) / 3, where C_ij is the
// correction Pauli of the outcome and p_ij its probability averaged over the
// probe inputs.
double composite_teleport_fidelity(const DensityMatrix& resource,
                                   const ProcessStats& stats = ExactStats{});

struct MonteCarloSummary {
  double mean;
  double std;
};

// Repeats composite_teleport_fidelity in counts mode with per-resample seeds
// derive_seed(seed, r). Sample standard deviation (n - 1 denominator).
MonteCarloSummary monte_carlo_fidelity_error(const DensityMatrix& resource,
                                             std::int64_t n_per_setting, int n_resamples,
                                             std::uint64_t seed, int workers = 1);

// Count-record CSV: header "setting_label,counts", one record per row.
std::vector<MeasurementRecord> read_counts_csv(const std::filesystem::path& path);
void write_counts_csv(std::span<const MeasurementRecord> records,
                      const std::filesystem::path& path);

}  // namespace qtele

#endif  // QTELE_TOMOGRAPHY_HPP_
