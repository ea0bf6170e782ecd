#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsspi/acquisition.hpp"
#include "qsspi/reconstruction.hpp"
#include "qsspi/security.hpp"

namespace qsspi {

// Configuration error that names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// One full scenario: physics, scene, attack and reporting choices. Every
// numeric default matches the reference bench parameters (300 cps pairs,
// 8e4 / 6e3 cps singles, 650 ps window, 3.5 s per shot, 32x32 resolution).
struct ScenarioConfig {
  std::string preset;  // informational tag, set when built from a preset

  int resolution_exponent = 5;
  RunMode mode = RunMode::analytic;
  std::uint64_t seed = 1;
  int repetitions = 5;

  SourceModel source;
  DetectorModel detector;

  std::string scene = "A";       // glyph id or "pgm:<path>"
  std::string attack = "none";   // variant id, see attack_variant_from_name
  std::string fraud_scene = "D";
  double theta = 0.0;
  double intensity_ratio = 1.0;
  double jam_power_ratio = 0.0;
  std::string fixed_polarization = "H";

  std::string output_dir = ".";
  bool dump_tallies = true;
};

AttackVariant attack_variant_from_name(std::string_view name);
std::string_view attack_variant_name(AttackVariant variant);

struct PresetInfo {
  std::string name;
  std::string description;
};

// Catalog: no-attack, full-deceive, partial-F8-{500,1000,2000},
// partial-AD-{500,1000,2000}, random-pol, jamming-1000x.
std::vector<PresetInfo> list_presets();

ScenarioConfig preset_config(const std::string& name);

// key = value lines, '#' comments. A "preset" key rebases the configuration
// on that preset before later keys override individual fields.
ScenarioConfig load_config_file(const std::string& path);
void apply_config_entry(ScenarioConfig& config, const std::string& key,
                        const std::string& value);

// Resolved pieces of a validated scenario, for callers that drive the
// acquisition layer directly.
struct ResolvedScenario {
  RunConfig run;  // rng_seed is re-derived per repetition
  SceneProfile scene;
};

ResolvedScenario resolve_scenario(const ScenarioConfig& config);

struct RunStatistic {
  std::optional<double> mean;
  std::optional<double> stddev;  // sample standard deviation across repetitions
};

struct RunResult {
  std::vector<SecurityReport> per_run;
  RunStatistic e_r, e_d, e_T;
  Verdict aggregate_verdict = Verdict::indeterminate;
  SplitImages images;          // repetition 1
  ImageGrid trustworthy;       // repetition 1, negatives clipped
  std::vector<std::string> written_files;
};

// Executes acquisition -> reconstruction -> security for every repetition and
// writes images (PGM), per-repetition tally dumps and the run report into
// output_dir. Deterministic given config and seed. Throws ConfigError on
// invalid configuration.
RunResult run_scenario(const ScenarioConfig& config);

// Writes the per-shot tallies of repetition `repetition` (1-based) to `path`.
void dump_scenario_tallies(const ScenarioConfig& config, const std::string& path,
                           int repetition = 1);

// The report is a pure function of the tally sequences; this recomputes the
// per-run analyses exactly as run_scenario does.
std::vector<SecurityReport> reports_from_tallies(
    const std::vector<std::vector<CoincidenceTally>>& runs);

}  // namespace qsspi
