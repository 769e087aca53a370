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

#include "qtele/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "qtele/entanglement.hpp"
#include "qtele/parallel.hpp"
#include "qtele/tomography.hpp"

namespace qtele {

namespace {

constexpr double kClassicalF = 2.0 / 3.0;
constexpr double kFlatLine = 0.76;

double threshold_line() { return 2.0 * std::sqrt(2.0) - 2.0; }

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size() || !std::isfinite(v)) {
    throw ConfigError("invalid " + what + ": '" + text + "'");
  }
  return v;
}

std::int64_t parse_integer(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) {
    throw ConfigError("invalid " + what + ": '" + text + "'");
  }
  return v;
}

struct MeanStd {
  double mean;
  double std;
};

MeanStd summarize(const std::vector<double>& values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double denom = values.size() > 1 ? static_cast<double>(values.size() - 1) : 1.0;
  return {mean, std::sqrt(ss / denom)};
}

// State tomography resampling of `truth`, reduced by `metric`.
MeanStd resample_state_metric(const DensityMatrix& truth, const StatsSpec& stats,
                              std::uint64_t point_seed,
                              const std::function<double(const DensityMatrix&)>& metric) {
  const auto labels = pauli_projector_labels(truth.num_qubits());
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(stats.n_resamples));
  for (int r = 0; r < stats.n_resamples; ++r) {
    const auto records = simulate_counts(truth, labels, stats.n_per_setting,
                                         derive_seed(point_seed, static_cast<std::uint64_t>(r)));
    values.push_back(metric(state_tomo_mle(records)));
  }
  return summarize(values);
}

nlohmann::json base_metadata(const SweepConfig& cfg) {
  return {{"config", cfg.to_json()}, {"version", version()}, {"seed", cfg.seed}};
}

// Grid of (p_a, p_b) in row-major order, p_b fastest.
std::vector<std::pair<double, double>> plane(const SweepConfig& cfg) {
  std::vector<std::pair<double, double>> points;
  for (double a : cfg.p_a.values()) {
    for (double b : cfg.p_b.values()) points.emplace_back(a, b);
  }
  return points;
}

// f(p_a, p_b) of the damped base resource (ADC on both sides, direct).
std::function<double(double, double)> fef_surface(const SweepConfig& cfg) {
  if (cfg.resource.kind == ResourceSpec::Kind::kIdeal) {
    return [](double a, double b) { return f_adc_both(DampingPair(a, b)); };
  }
  const DensityMatrix base = cfg.resource.load();
  return [base](double a, double b) {
    return fef(damped_resource(base, AliceMode::kDirect, DampingFamily::kAmplitude, a, b)).f;
  };
}

// Root of g on [lo, hi] by bisection, when g changes sign.
std::optional<double> bisect(const std::function<double(double)>& g, double lo, double hi,
                             double tol) {
  double g_lo = g(lo);
  const double g_hi = g(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void check_axis(const Axis& axis, const std::string& name, double lo, double hi) {
  if (axis.points < 2) throw ConfigError(name + ": grid needs at least 2 points");
  if (!(axis.start <= axis.stop)) throw ConfigError(name + ": start must not exceed stop");
  if (axis.start < lo || axis.stop > hi) {
    std::ostringstream msg;
    msg << name << ": range must lie within [" << lo << ", " << hi << "]";
    throw ConfigError(msg.str());
  }
}

Axis axis_from_json(const nlohmann::json& j, Axis axis, const std::string& name) {
  if (!j.is_object()) throw ConfigError("grid." + name + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "start") {
      axis.start = value.get<double>();
    } else if (key == "stop") {
      axis.stop = value.get<double>();
    } else if (key == "points") {
      axis.points = value.get<int>();
    } else {
      throw ConfigError("grid." + name + ": unknown key '" + key + "'");
    }
  }
  return axis;
}

}  // namespace

std::string version() { return QTELE_VERSION; }

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::kFefContour: return "fef_contour";
    case SweepKind::kSensitivity: return "sensitivity";
    case SweepKind::kCalibAlice: return "calib_alice";
    case SweepKind::kCalibBob: return "calib_bob";
    case SweepKind::kFidelityAdc: return "fidelity_adc";
    case SweepKind::kFidelityPdc: return "fidelity_pdc";
    case SweepKind::kEnhancementSearch: return "enhancement_search";
  }
  return "?";
}

SweepKind sweep_kind_from_string(const std::string& s) {
  for (SweepKind k : {SweepKind::kFefContour, SweepKind::kSensitivity, SweepKind::kCalibAlice,
                      SweepKind::kCalibBob, SweepKind::kFidelityAdc, SweepKind::kFidelityPdc,
                      SweepKind::kEnhancementSearch}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("unknown sweep kind '" + s + "'");
}

std::vector<double> Axis::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    v[static_cast<std::size_t>(i)] =
        i == points - 1 ? stop : start + (stop - start) * i / (points - 1);
  }
  return v;
}

nlohmann::json Axis::to_json() const {
  return {{"start", start}, {"stop", stop}, {"points", points}};
}

ResourceSpec ResourceSpec::parse(const std::string& text) {
  ResourceSpec spec;
  if (text == "ideal") return spec;
  if (text.starts_with("werner:")) {
    spec.kind = Kind::kWerner;
    spec.visibility = parse_number(text.substr(7), "werner visibility");
    if (spec.visibility < 0.0 || spec.visibility > 1.0) {
      throw ConfigError("werner visibility must lie in [0, 1]");
    }
    return spec;
  }
  if (text.starts_with("file:")) {
    spec.kind = Kind::kFile;
    spec.path = text.substr(5);
    if (spec.path.empty()) throw ConfigError("file resource needs a path");
    return spec;
  }
  throw ConfigError("resource must be ideal, werner:<v> or file:<path>, got '" + text + "'");
}

std::string ResourceSpec::to_string() const {
  switch (kind) {
    case Kind::kIdeal: return "ideal";
    case Kind::kWerner: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "werner:%.15g", visibility);
      return buf;
    }
    case Kind::kFile: return "file:" + path;
  }
  return "?";
}

DensityMatrix ResourceSpec::load() const {
  switch (kind) {
    case Kind::kIdeal: return DensityMatrix(bell_state(BellLabel::kPhiPlus));
    case Kind::kWerner: return werner_state(visibility);
    case Kind::kFile: {
      DensityMatrix rho = [&] {
        try {
          return read_density_file(path);
        } catch (const std::exception& e) {
          throw ConfigError(std::string("resource file: ") + e.what());
        }
      }();
      if (rho.num_qubits() != 2) throw ConfigError("resource file must hold a two-qubit state");
      return rho;
    }
  }
  throw ConfigError("bad resource");
}

StatsSpec StatsSpec::parse(const std::string& text) {
  StatsSpec spec;
  if (text == "exact") return spec;
  if (text.starts_with("counts:")) {
    const std::string rest = text.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ConfigError("stats must be counts:<n>:<resamples>");
    spec.counts = true;
    spec.n_per_setting = parse_integer(rest.substr(0, colon), "counts per setting");
    spec.n_resamples = static_cast<int>(parse_integer(rest.substr(colon + 1), "resample count"));
    if (spec.n_per_setting < 1) throw ConfigError("counts per setting must be >= 1");
    if (spec.n_resamples < 2) throw ConfigError("resample count must be >= 2");
    return spec;
  }
  throw ConfigError("stats must be exact or counts:<n>:<resamples>, got '" + text + "'");
}

std::string StatsSpec::to_string() const {
  if (!counts) return "exact";
  return "counts:" + std::to_string(n_per_setting) + ":" + std::to_string(n_resamples);
}

std::string Series::label() const {
  if (tied) return "p_a=p_b";
  std::ostringstream s;
  s << "p_a=" << p_a;
  return s.str();
}

SweepConfig SweepConfig::defaults(SweepKind kind) {
  SweepConfig cfg;
  cfg.kind = kind;
  switch (kind) {
    case SweepKind::kCalibBob:
      cfg.angle = {0.0, 45.0, 46};
      break;
    case SweepKind::kCalibAlice:
      cfg.angle = {22.5, 45.0, 46};
      break;
    case SweepKind::kFidelityAdc:
      cfg.series = {{false, 0.0}, {false, 0.7}, {true, 0.0}};
      break;
    case SweepKind::kFidelityPdc:
      cfg.series = {{false, 0.0}, {false, 0.5}};
      break;
    case SweepKind::kEnhancementSearch:
      cfg.p_a = {0.0, 1.0, 201};
      break;
    default:
      break;
  }
  return cfg;
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j, std::optional<SweepKind> fallback) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  std::optional<SweepKind> kind = fallback;
  if (j.contains("kind")) kind = sweep_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw ConfigError("config does not name a sweep kind");
  SweepConfig cfg = defaults(*kind);
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "kind") {
        continue;
      } else if (key == "resource") {
        cfg.resource = ResourceSpec::parse(value.get<std::string>());
      } else if (key == "stats") {
        cfg.stats = StatsSpec::parse(value.get<std::string>());
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "workers") {
        cfg.workers = value.get<int>();
      } else if (key == "format") {
        cfg.format = value.get<std::string>();
      } else if (key == "out") {
        cfg.out = value.get<std::string>();
      } else if (key == "crossing_tol") {
        cfg.crossing_tol = value.get<double>();
      } else if (key == "alice_mode") {
        const auto mode = value.get<std::string>();
        if (mode == "direct") {
          cfg.alice_mode = AliceMode::kDirect;
        } else if (mode == "mixture") {
          cfg.alice_mode = AliceMode::kMixture;
        } else {
          throw ConfigError("alice_mode must be direct or mixture");
        }
      } else if (key == "grid") {
        if (!value.is_object()) throw ConfigError("grid must be an object");
        for (const auto& [axis, spec] : value.items()) {
          if (axis == "p_a") {
            cfg.p_a = axis_from_json(spec, cfg.p_a, axis);
          } else if (axis == "p_b") {
            cfg.p_b = axis_from_json(spec, cfg.p_b, axis);
          } else if (axis == "angle") {
            cfg.angle = axis_from_json(spec, cfg.angle, axis);
          } else {
            throw ConfigError("grid: unknown axis '" + axis + "'");
          }
        }
      } else if (key == "series") {
        if (!value.is_array()) throw ConfigError("series must be an array");
        cfg.series.clear();
        for (const auto& s : value) {
          if (s.is_string() && s.get<std::string>() == "p_b") {
            cfg.series.push_back({true, 0.0});
          } else if (s.is_number()) {
            cfg.series.push_back({false, s.get<double>()});
          } else {
            throw ConfigError("series entries must be numbers or \"p_b\"");
          }
        }
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

void SweepConfig::validate() const {
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  if (stats.counts && (stats.n_per_setting < 1 || stats.n_resamples < 2)) {
    throw ConfigError("counts statistics need n >= 1 and resamples >= 2");
  }
  if (resource.kind == ResourceSpec::Kind::kWerner &&
      (resource.visibility < 0.0 || resource.visibility > 1.0)) {
    throw ConfigError("werner visibility must lie in [0, 1]");
  }
  switch (kind) {
    case SweepKind::kFefContour:
      check_axis(p_a, "p_a", 0.0, 1.0);
      check_axis(p_b, "p_b", 0.0, 1.0);
      break;
    case SweepKind::kSensitivity:
      check_axis(p_a, "p_a", 0.0, 1.0);
      check_axis(p_b, "p_b", 0.0, 1.0);
      if (stats.counts) throw ConfigError("sensitivity is analytic; use exact statistics");
      break;
    case SweepKind::kCalibBob:
      check_axis(angle, "angle", 0.0, 45.0);
      break;
    case SweepKind::kCalibAlice:
      check_axis(angle, "angle", 22.5, 45.0);
      break;
    case SweepKind::kFidelityAdc:
    case SweepKind::kFidelityPdc:
      check_axis(p_b, "p_b", 0.0, 1.0);
      if (series.empty()) throw ConfigError("at least one series is required");
      for (const auto& s : series) {
        if (!s.tied && (s.p_a < 0.0 || s.p_a > 1.0)) {
          throw ConfigError("series p_a must lie in [0, 1]");
        }
      }
      break;
    case SweepKind::kEnhancementSearch:
      check_axis(p_a, "p_a", 0.0, 1.0);
      if (stats.counts) throw ConfigError("enhancement search runs on exact statistics");
      if (!(crossing_tol > 0.0)) throw ConfigError("crossing_tol must be positive");
      break;
  }
}

nlohmann::json SweepConfig::to_json() const {
  nlohmann::json j{{"kind", qtele::to_string(kind)},
                   {"resource", resource.to_string()},
                   {"stats", stats.to_string()},
                   {"seed", seed},
                   {"alice_mode", alice_mode == AliceMode::kDirect ? "direct" : "mixture"},
                   {"workers", workers},
                   {"format", format},
                   {"out", out},
                   {"crossing_tol", crossing_tol}};
  j["grid"] = {{"p_a", p_a.to_json()}, {"p_b", p_b.to_json()}, {"angle", angle.to_json()}};
  auto s = nlohmann::json::array();
  for (const auto& x : series) {
    if (x.tied) {
      s.push_back("p_b");
    } else {
      s.push_back(x.p_a);
    }
  }
  j["series"] = s;
  return j;
}

std::size_t SweepResult::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::optional<double> SweepResult::at(std::size_t row, const std::string& column) const {
  return rows.at(row).at(column_index(column));
}

std::string SweepResult::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (row[c]) {
        std::snprintf(buf, sizeof(buf), "%.12g", *row[c]);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

nlohmann::json SweepResult::to_json() const {
  auto data = nlohmann::json::array();
  for (const auto& row : rows) {
    auto r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(optional_json(v));
    data.push_back(r);
  }
  return {{"columns", columns}, {"rows", data}, {"metadata", metadata}};
}

DensityMatrix damped_resource(const DensityMatrix& base, AliceMode mode,
                              DampingFamily bob_family, double p_a, double p_b) {
  const DensityMatrix alice = mode == AliceMode::kDirect
                                  ? apply_local(adc(p_a), base, 0)
                                  : alice_mixture(p_a, base);
  return apply_local(damping_channel(bob_family, p_b), alice, 1);
}

double damped_fidelity(const DensityMatrix& base, AliceMode mode, DampingFamily bob_family,
                       double p_a, double p_b) {
  return composite_teleport_fidelity(damped_resource(base, mode, bob_family, p_a, p_b));
}

SweepResult run_fef_contour(const SweepConfig& cfg) {
  cfg.validate();
  const auto surface = fef_surface(cfg);
  const auto points = plane(cfg);
  const DensityMatrix base = cfg.resource.load();

  SweepResult result;
  result.columns = {"p_a", "p_b", "f"};
  if (cfg.stats.counts) result.columns.push_back("err");
  result.rows.resize(points.size());
  parallel_for(points.size(), cfg.workers, [&](std::size_t i) {
    const auto [a, b] = points[i];
    auto& row = result.rows[i];
    row = {a, b};
    if (!cfg.stats.counts) {
      row.push_back(surface(a, b));
      return;
    }
    const DensityMatrix truth =
        damped_resource(base, AliceMode::kDirect, DampingFamily::kAmplitude, a, b);
    const MeanStd ms = resample_state_metric(truth, cfg.stats, derive_seed(cfg.seed, i),
                                             [](const DensityMatrix& r) { return fef(r).f; });
    row.push_back(ms.mean);
    row.push_back(ms.std);
  });

  result.metadata = base_metadata(cfg);
  const auto p_b_values = cfg.p_b.values();
  auto lines = nlohmann::json::array();
  for (double line : {kFlatLine, threshold_line()}) {
    std::vector<double> f;
    for (double b : p_b_values) f.push_back(surface(line, b));
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    lines.push_back({{"p_a", line}, {"p_b", p_b_values}, {"f", f}, {"spread", *hi - *lo}});
  }
  result.metadata["reference_lines"] = lines;
  return result;
}

SweepResult run_sensitivity(const SweepConfig& cfg) {
  cfg.validate();
  const bool ideal = cfg.resource.kind == ResourceSpec::Kind::kIdeal;
  const auto surface = fef_surface(cfg);
  const auto points = plane(cfg);

  SweepResult result;
  result.columns = {"p_a", "p_b", "dfdpb"};
  result.rows.resize(points.size());
  parallel_for(points.size(), cfg.workers, [&](std::size_t i) {
    const auto [a, b] = points[i];
    std::optional<double> slope;
    if (surface(a, b) > 0.5 && b < 1.0) {
      if (ideal) {
        slope = dfdpb(DampingPair(a, b));
      } else {
        const double h = 1e-6;
        const double lo = std::max(b - h, 0.0);
        const double hi = std::min(b + h, 1.0);
        slope = (surface(a, hi) - surface(a, lo)) / (hi - lo);
      }
    }
    result.rows[i] = {a, b, slope};
  });

  result.metadata = base_metadata(cfg);
  auto contour = nlohmann::json::array();
  for (double a : cfg.p_a.values()) {
    const auto root = bisect([&](double b) { return surface(a, b) - 0.5; }, 0.0, 1.0, 1e-9);
    contour.push_back({{"p_a", a}, {"p_b", optional_json(root)}});
  }
  result.metadata["f_half_contour"] = contour;
  return result;
}

SweepResult run_calibration(const SweepConfig& cfg) {
  cfg.validate();
  const bool bob = cfg.kind == SweepKind::kCalibBob;
  if (!bob && cfg.kind != SweepKind::kCalibAlice) {
    throw ConfigError("run_calibration needs calib_alice or calib_bob");
  }
  const DensityMatrix base = cfg.resource.load();
  const Side side = bob ? Side::kBob : Side::kAlice;
  const auto angles = cfg.angle.values();

  SweepResult result;
  result.columns = {"angle_deg", "p_theory", "p_est"};
  if (cfg.stats.counts) result.columns.push_back("err");
  result.rows.resize(angles.size());
  parallel_for(angles.size(), cfg.workers, [&](std::size_t i) {
    const CalibrationPoint point = bob ? calibrate_bob(angles[i]) : calibrate_alice(angles[i]);
    const DensityMatrix damped = bob ? dilation_adc(point.damping, base, 1)
                                     : alice_mixture(point.damping, base);
    const auto estimate = [&](const DensityMatrix& measured) {
      return estimate_p(measured, DampingFamily::kAmplitude, side, base);
    };
    auto& row = result.rows[i];
    row = {angles[i], point.damping};
    if (!cfg.stats.counts) {
      row.push_back(estimate(damped));
      return;
    }
    const MeanStd ms = resample_state_metric(damped, cfg.stats, derive_seed(cfg.seed, i), estimate);
    row.push_back(ms.mean);
    row.push_back(ms.std);
  });
  result.metadata = base_metadata(cfg);
  return result;
}

namespace {

SweepResult run_fidelity(const SweepConfig& cfg, DampingFamily bob_family) {
  cfg.validate();
  const DensityMatrix base = cfg.resource.load();
  const AliceMode other =
      cfg.alice_mode == AliceMode::kDirect ? AliceMode::kMixture : AliceMode::kDirect;
  const auto p_b_values = cfg.p_b.values();

  struct Point {
    std::size_t series;
    double p_a;
    double p_b;
  };
  std::vector<Point> points;
  for (std::size_t s = 0; s < cfg.series.size(); ++s) {
    for (double b : p_b_values) points.push_back({s, cfg.series[s].tied ? b : cfg.series[s].p_a, b});
  }

  SweepResult result;
  result.columns = {"series", "p_a", "p_b", "F", "F_alt"};
  if (cfg.stats.counts) result.columns.push_back("err");
  result.rows.resize(points.size());
  parallel_for(points.size(), cfg.workers, [&](std::size_t i) {
    const Point& pt = points[i];
    const DensityMatrix resource = damped_resource(base, cfg.alice_mode, bob_family, pt.p_a, pt.p_b);
    const double alt = damped_fidelity(base, other, bob_family, pt.p_a, pt.p_b);
    auto& row = result.rows[i];
    row = {static_cast<double>(pt.series), pt.p_a, pt.p_b};
    if (!cfg.stats.counts) {
      row.push_back(composite_teleport_fidelity(resource));
      row.push_back(alt);
      return;
    }
    const MonteCarloSummary mc = monte_carlo_fidelity_error(
        resource, cfg.stats.n_per_setting, cfg.stats.n_resamples, derive_seed(cfg.seed, i), 1);
    row.push_back(mc.mean);
    row.push_back(alt);
    row.push_back(mc.std);
  });

  result.metadata = base_metadata(cfg);
  auto series = nlohmann::json::array();
  for (std::size_t s = 0; s < cfg.series.size(); ++s) {
    double lo = 1.0;
    double hi = 0.0;
    double max_mode_gap = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].series != s) continue;
      const double f = *result.rows[i][3];
      lo = std::min(lo, f);
      hi = std::max(hi, f);
      max_mode_gap = std::max(max_mode_gap, std::abs(f - *result.rows[i][4]));
    }
    series.push_back({{"index", s},
                      {"label", cfg.series[s].label()},
                      {"spread", hi - lo},
                      {"max_alice_mode_difference", max_mode_gap}});
  }
  result.metadata["series"] = series;
  result.metadata["F_alt_mode"] = other == AliceMode::kDirect ? "direct" : "mixture";
  result.metadata["bob_channel"] = bob_family == DampingFamily::kAmplitude ? "adc" : "pdc";
  return result;
}

}  // namespace

SweepResult run_fidelity_adc(const SweepConfig& cfg) {
  return run_fidelity(cfg, DampingFamily::kAmplitude);
}

SweepResult run_fidelity_pdc(const SweepConfig& cfg) {
  return run_fidelity(cfg, DampingFamily::kPhase);
}

EnhancementReport run_enhancement_search(const SweepConfig& cfg) {
  cfg.validate();
  const DensityMatrix base = cfg.resource.load();
  const auto fidelity = [&](double a, double b) {
    return damped_fidelity(base, cfg.alice_mode, DampingFamily::kAmplitude, a, b);
  };

  EnhancementReport report;
  report.metadata = base_metadata(cfg);
  report.f_boundary_low = fidelity(0.0, 0.0);
  report.f_boundary_high = fidelity(0.0, 1.0);
  const auto crossing =
      bisect([&](double b) { return fidelity(0.0, b) - kClassicalF; }, 0.0, 1.0, cfg.crossing_tol);
  if (!crossing) return report;

  const double p_b = *crossing;
  report.p_b_star = p_b;
  report.f_at_pa0 = fidelity(0.0, p_b);
  report.scan_p_a = cfg.p_a.values();
  report.scan_f.resize(report.scan_p_a.size());
  parallel_for(report.scan_p_a.size(), cfg.workers,
               [&](std::size_t i) { report.scan_f[i] = fidelity(report.scan_p_a[i], p_b); });
  const auto best = std::max_element(report.scan_f.begin(), report.scan_f.end());
  report.p_a_opt = report.scan_p_a[static_cast<std::size_t>(best - report.scan_f.begin())];
  report.f_max = *best;
  return report;
}

nlohmann::json EnhancementReport::to_json() const {
  nlohmann::json j{{"p_b_star", optional_json(p_b_star)},
                   {"p_a_opt", optional_json(p_a_opt)},
                   {"F_max", optional_json(f_max)},
                   {"F_at_pa0", optional_json(f_at_pa0)},
                   {"crossing_found", p_b_star.has_value()},
                   {"boundary", {{"F_at_pb0", f_boundary_low}, {"F_at_pb1", f_boundary_high}}},
                   {"scan", {{"p_a", scan_p_a}, {"F", scan_f}}},
                   {"metadata", metadata}};
  return j;
}

}  // namespace qtele
