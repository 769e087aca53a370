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

// qtele: sweep datasets and single teleportation runs.
//
//   qtele fidelity-adc --resource werner:0.8 --out adc.csv
//   qtele enhance --resource ideal
//   qtele teleport --input D --pa 0.3 --pb 0.5
//
// Exit status: 0 ok, 2 bad configuration, 3 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qtele/channels.hpp"
#include "qtele/entanglement.hpp"
#include "qtele/harness.hpp"
#include "qtele/teleport.hpp"
#include "qtele/tomography.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::string resource;
  std::string stats;
  std::string alice_mode;
  std::optional<int> workers;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "JSON sweep configuration");
  cmd->add_option("--out", flags.out, "output path (stdout when omitted)");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--format", flags.format, "csv or json");
  cmd->add_option("--resource", flags.resource, "ideal | werner:<v> | file:<path>");
  cmd->add_option("--stats", flags.stats, "exact | counts:<n>:<resamples>");
  cmd->add_option("--alice-mode", flags.alice_mode, "direct | mixture");
  cmd->add_option("--workers", flags.workers, "worker threads");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qtele::ConfigError("cannot open config " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw qtele::ConfigError("config " + path + ": " + e.what());
  }
}

qtele::SweepConfig build_config(const CommonFlags& flags, qtele::SweepKind kind,
                                bool kind_from_file_allowed = false) {
  nlohmann::json j = nlohmann::json::object();
  if (!flags.config.empty()) j = read_json_file(flags.config);
  if (!j.is_object()) throw qtele::ConfigError("config must be a JSON object");
  if (!kind_from_file_allowed || !j.contains("kind")) j["kind"] = qtele::to_string(kind);
  if (!flags.out.empty()) j["out"] = flags.out;
  if (flags.seed) j["seed"] = *flags.seed;
  if (!flags.format.empty()) j["format"] = flags.format;
  if (!flags.resource.empty()) j["resource"] = flags.resource;
  if (!flags.stats.empty()) j["stats"] = flags.stats;
  if (!flags.alice_mode.empty()) j["alice_mode"] = flags.alice_mode;
  if (flags.workers) j["workers"] = *flags.workers;
  return qtele::SweepConfig::from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qtele::ConfigError("cannot write " + path);
  out << text;
}

void emit(const qtele::SweepConfig& cfg, const qtele::SweepResult& result) {
  if (cfg.format == "json") {
    write_text(cfg.out, result.to_json().dump(2) + "\n");
    return;
  }
  write_text(cfg.out, result.to_csv());
  if (!cfg.out.empty()) write_text(cfg.out + ".meta.json", result.metadata.dump(2) + "\n");
}

qtele::DensityMatrix input_state(const std::string& spec) {
  if (spec.starts_with("file:")) return qtele::read_density_file(spec.substr(5));
  try {
    return qtele::DensityMatrix(qtele::projector(spec), qtele::Validation::kStrict);
  } catch (const std::invalid_argument&) {
    throw qtele::ConfigError("input must be one of H V D A R L or file:<path>");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damped-resource teleportation simulator"};
  app.set_version_flag("--version", qtele::version());
  app.require_subcommand(1);

  CommonFlags flags;
  auto* fef_cmd = app.add_subcommand("fef-contour", "fully entangled fraction over (p_a, p_b)");
  auto* sens_cmd = app.add_subcommand("sensitivity", "df/dp_b where f > 1/2");
  auto* calib_cmd = app.add_subcommand("calib", "damping calibration curves");
  auto* adc_cmd = app.add_subcommand("fidelity-adc", "teleportation fidelity, ADC on both sides");
  auto* pdc_cmd = app.add_subcommand("fidelity-pdc", "teleportation fidelity, PDC on Bob");
  auto* enh_cmd = app.add_subcommand("enhance", "classical crossing and Alice-side enhancement");
  auto* tel_cmd = app.add_subcommand("teleport", "single teleportation run");
  for (auto* cmd : {fef_cmd, sens_cmd, calib_cmd, adc_cmd, pdc_cmd, enh_cmd}) {
    add_common(cmd, flags);
  }

  std::string side;
  calib_cmd->add_option("--side", side, "alice | bob")->check(CLI::IsMember({"alice", "bob"}));

  std::string input = "H";
  std::string tel_resource = "ideal";
  std::string tel_out;
  std::string bob_channel = "adc";
  std::string tel_alice_mode = "direct";
  double p_a = 0.0;
  double p_b = 0.0;
  tel_cmd->add_option("--input", input, "H V D A R L or file:<path>");
  tel_cmd->add_option("--resource", tel_resource, "ideal | werner:<v> | file:<path>");
  tel_cmd->add_option("--pa", p_a, "ADC strength on Alice's qubit")->check(CLI::Range(0.0, 1.0));
  tel_cmd->add_option("--pb", p_b, "damping strength on Bob's qubit")->check(CLI::Range(0.0, 1.0));
  tel_cmd->add_option("--bob-channel", bob_channel, "adc | pdc")
      ->check(CLI::IsMember({"adc", "pdc"}));
  tel_cmd->add_option("--alice-mode", tel_alice_mode, "direct | mixture")
      ->check(CLI::IsMember({"direct", "mixture"}));
  tel_cmd->add_option("--out", tel_out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qtele: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    using qtele::SweepKind;
    if (fef_cmd->parsed()) {
      const auto cfg = build_config(flags, SweepKind::kFefContour);
      emit(cfg, qtele::run_fef_contour(cfg));
    } else if (sens_cmd->parsed()) {
      const auto cfg = build_config(flags, SweepKind::kSensitivity);
      emit(cfg, qtele::run_sensitivity(cfg));
    } else if (calib_cmd->parsed()) {
      const SweepKind kind = side == "alice" ? SweepKind::kCalibAlice : SweepKind::kCalibBob;
      const auto cfg = build_config(flags, kind, side.empty());
      if (cfg.kind != SweepKind::kCalibAlice && cfg.kind != SweepKind::kCalibBob) {
        throw qtele::ConfigError("calib needs kind calib_alice or calib_bob");
      }
      emit(cfg, qtele::run_calibration(cfg));
    } else if (adc_cmd->parsed()) {
      const auto cfg = build_config(flags, SweepKind::kFidelityAdc);
      emit(cfg, qtele::run_fidelity_adc(cfg));
    } else if (pdc_cmd->parsed()) {
      const auto cfg = build_config(flags, SweepKind::kFidelityPdc);
      emit(cfg, qtele::run_fidelity_pdc(cfg));
    } else if (enh_cmd->parsed()) {
      const auto cfg = build_config(flags, SweepKind::kEnhancementSearch);
      const auto report = qtele::run_enhancement_search(cfg);
      write_text(cfg.out, report.to_json().dump(2) + "\n");
    } else if (tel_cmd->parsed()) {
      const auto base = qtele::ResourceSpec::parse(tel_resource).load();
      const auto mode =
          tel_alice_mode == "direct" ? qtele::AliceMode::kDirect : qtele::AliceMode::kMixture;
      const auto family = bob_channel == "adc" ? qtele::DampingFamily::kAmplitude
                                               : qtele::DampingFamily::kPhase;
      const auto resource = qtele::damped_resource(base, mode, family, p_a, p_b);
      const auto in = input_state(input);
      nlohmann::json j;
      auto outcomes = nlohmann::json::array();
      double fidelity = 0.0;
      for (const auto& o : qtele::teleport(in, resource)) {
        outcomes.push_back(qtele::to_json(o));
        if (o.probability > 0.0) {
          fidelity += o.probability * qtele::state_fidelity(in, o.bob_corrected);
        }
      }
      j["outcomes"] = outcomes;
      j["input_fidelity"] = fidelity;
      j["average_fidelity"] = qtele::average_fidelity_direct(resource);
      j["fef"] = qtele::fef(resource).f;
      write_text(tel_out, j.dump(2) + "\n");
    }
  } catch (const qtele::ConfigError& e) {
    std::cerr << "qtele: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qtele: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "qtele: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
