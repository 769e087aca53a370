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

#ifndef QTELE_HARNESS_HPP_
#define QTELE_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtele/channels.hpp"
#include "qtele/core.hpp"

namespace qtele {

// Invalid sweep configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepKind {
  kFefContour,
  kSensitivity,
  kCalibAlice,
  kCalibBob,
  kFidelityAdc,
  kFidelityPdc,
  kEnhancementSearch,
};

std::string to_string(SweepKind kind);
SweepKind sweep_kind_from_string(const std::string& s);

// How Alice's damping is produced: ADC on qubit A, or the two-branch
// weighted mixture used to emulate it.
enum class AliceMode { kDirect, kMixture };

struct Axis {
  double start = 0.0;
  double stop = 1.0;
  int points = 101;

  std::vector<double> values() const;
  nlohmann::json to_json() const;
};

struct ResourceSpec {
  enum class Kind { kIdeal, kWerner, kFile };
  Kind kind = Kind::kIdeal;
  double visibility = 1.0;
  std::string path;

  // "ideal", "werner:<v>" or "file:<path>"
  static ResourceSpec parse(const std::string& text);
  std::string to_string() const;
  DensityMatrix load() const;
};

struct StatsSpec {
  bool counts = false;
  std::int64_t n_per_setting = 10000;
  int n_resamples = 20;

  // "exact" or "counts:<n>:<resamples>"
  static StatsSpec parse(const std::string& text);
  std::string to_string() const;
};

// One curve of a fidelity sweep: fixed p_a, or p_a tied to p_b.
struct Series {
  bool tied = false;
  double p_a = 0.0;

  std::string label() const;
};

struct SweepConfig {
  SweepKind kind = SweepKind::kFefContour;
  ResourceSpec resource;
  Axis p_a;
  Axis p_b;
  Axis angle;  // degrees; calibration only
  StatsSpec stats;
  std::uint64_t seed = 1;
  std::vector<Series> series;
  AliceMode alice_mode = AliceMode::kDirect;
  int workers = 1;
  std::string format = "csv";
  std::string out;
  double crossing_tol = 1e-4;

  // Kind-dependent defaults (angle ranges, series, scan sizes).
  static SweepConfig defaults(SweepKind kind);
  // Overlays the keys present in `j` onto defaults(kind-from-j-or-fallback).
  static SweepConfig from_json(const nlohmann::json& j, std::optional<SweepKind> fallback = {});

  void validate() const;
  nlohmann::json to_json() const;
};

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  nlohmann::json metadata;

  std::size_t column_index(const std::string& name) const;
  std::optional<double> at(std::size_t row, const std::string& column) const;

  // Header row, 12 significant digits, empty cell for absent values.
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

SweepResult run_fef_contour(const SweepConfig& cfg);
SweepResult run_sensitivity(const SweepConfig& cfg);
SweepResult run_calibration(const SweepConfig& cfg);
SweepResult run_fidelity_adc(const SweepConfig& cfg);
SweepResult run_fidelity_pdc(const SweepConfig& cfg);

struct EnhancementReport {
  std::optional<double> p_b_star;
  std::optional<double> p_a_opt;
  std::optional<double> f_max;
  std::optional<double> f_at_pa0;
  // F(p_a = 0) at p_b = 0 and p_b = 1; always filled.
  double f_boundary_low = 0.0;
  double f_boundary_high = 0.0;
  std::vector<double> scan_p_a;
  std::vector<double> scan_f;
  nlohmann::json metadata;

  nlohmann::json to_json() const;
};

// Teleportation fidelity F(p_a, p_b) of the damped base resource (ADC on both
// sides, Alice per `mode`), from exact composite process tomography.
double damped_fidelity(const DensityMatrix& base, AliceMode mode, DampingFamily bob_family,
                       double p_a, double p_b);

// Resource after damping: Alice side per `mode`, then `bob_family` on B.
DensityMatrix damped_resource(const DensityMatrix& base, AliceMode mode,
                              DampingFamily bob_family, double p_a, double p_b);

EnhancementReport run_enhancement_search(const SweepConfig& cfg);

std::string version();

}  // namespace qtele

#endif  // QTELE_HARNESS_HPP_
