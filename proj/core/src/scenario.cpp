#include "qsspi/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qsspi/image_io.hpp"
#include "qsspi/numeric.hpp"
#include "qsspi/tally_io.hpp"

namespace qsspi {
namespace {

namespace fs = std::filesystem;

std::string format_value(double value, const char* spec = "%.9g") {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), spec, value);
  return buffer;
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_value(*value) : std::string("undefined");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + value + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw ConfigError(key, "expected a boolean, got '" + value + "'");
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

SceneProfile resolve_scene(const std::string& field, const std::string& spec, int side) {
  constexpr std::string_view kPgmPrefix = "pgm:";
  try {
    if (spec.starts_with(kPgmPrefix)) {
      SceneProfile scene = scene_from_pgm(spec.substr(kPgmPrefix.size()));
      if (scene.side != side) {
        throw std::invalid_argument("target side " + std::to_string(scene.side) +
                                    " does not match resolution side " +
                                    std::to_string(side));
      }
      return scene;
    }
    return builtin_glyph(glyph_from_name(spec), side);
  } catch (const std::exception& error) {
    throw ConfigError(field, error.what());
  }
}

Polarization polarization_from_name(const std::string& field, const std::string& name) {
  for (Polarization p : kAllPolarizations) {
    if (name == to_string(p)) return p;
  }
  throw ConfigError(field, "unknown polarization '" + name + "'");
}

RunStatistic collect_statistic(const std::vector<SecurityReport>& reports,
                               std::optional<double> SecurityReport::* field) {
  RunStatistic statistic;
  std::vector<double> values;
  for (const SecurityReport& report : reports) {
    const auto& value = report.*field;
    if (!value) return statistic;  // any undefined repetition -> undefined aggregate
    values.push_back(*value);
  }
  if (values.empty()) return statistic;
  KahanSum sum;
  for (double v : values) sum.add(v);
  const double mean = sum.value() / static_cast<double>(values.size());
  double stddev = 0.0;
  if (values.size() > 1) {
    KahanSum squares;
    for (double v : values) squares.add((v - mean) * (v - mean));
    stddev = std::sqrt(squares.value() / static_cast<double>(values.size() - 1));
  }
  statistic.mean = mean;
  statistic.stddev = stddev;
  return statistic;
}

void write_report_file(const std::string& path, const ScenarioConfig& config,
                       const RunResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("run_scenario: cannot open " + path + " for writing");
  }
  out << "# qsspi run report\n";
  if (!config.preset.empty()) out << "preset = " << config.preset << "\n";
  out << "scene = " << config.scene << "\n";
  out << "attack = " << config.attack << "\n";
  if (is_deceiving(attack_variant_from_name(config.attack))) {
    out << "fraud_scene = " << config.fraud_scene << "\n";
    out << "intensity_ratio = " << format_value(config.intensity_ratio) << "\n";
    out << "theta = " << format_value(config.theta) << "\n";
    out << "fixed_polarization = " << config.fixed_polarization << "\n";
  }
  if (attack_variant_from_name(config.attack) == AttackVariant::jamming) {
    out << "jam_power_ratio = " << format_value(config.jam_power_ratio) << "\n";
  }
  out << "resolution_exponent = " << config.resolution_exponent << "\n";
  out << "shots_per_image = " << (1 << (2 * config.resolution_exponent + 1)) << "\n";
  out << "mode = " << (config.mode == RunMode::analytic ? "analytic" : "stochastic") << "\n";
  out << "seed = " << config.seed << "\n";
  out << "repetitions = " << config.repetitions << "\n";
  out << "pair_rate_cps = " << format_value(config.source.pair_rate_cps) << "\n";
  out << "visibility = " << format_value(config.source.visibility) << "\n";
  out << "idler_singles_cps = " << format_value(config.source.idler_singles_cps) << "\n";
  out << "signal_singles_cps = " << format_value(config.source.signal_singles_cps) << "\n";
  out << "coincidence_window_s = " << format_value(config.detector.coincidence_window_s)
      << "\n";
  out << "shot_time_s = " << format_value(config.detector.shot_time_s) << "\n";

  for (std::size_t r = 0; r < result.per_run.size(); ++r) {
    const SecurityReport& report = result.per_run[r];
    out << "\n[run " << (r + 1) << "]\n";
    out << "e_r = " << format_optional(report.e_r) << "\n";
    out << "e_d = " << format_optional(report.e_d) << "\n";
    out << "e_T = " << format_optional(report.e_T) << "\n";
    for (Polarization p : kAllPolarizations) {
      out << "e_" << to_string(p) << " = "
          << format_optional(report.e_by_idler[static_cast<std::size_t>(p)]) << "\n";
    }
    out << "verdict = " << to_string(report.verdict) << "\n";
  }

  // Mean with the standard deviation across repetitions in parentheses.
  out << "\n[aggregate]\n";
  const auto aggregate_line = [&](const char* name, const RunStatistic& statistic) {
    out << name << " = ";
    if (statistic.mean) {
      out << format_value(*statistic.mean) << " (" << format_value(*statistic.stddev)
          << ")\n";
    } else {
      out << "undefined\n";
    }
  };
  aggregate_line("e_r", result.e_r);
  aggregate_line("e_d", result.e_d);
  aggregate_line("e_T", result.e_T);
  out << "verdict = " << to_string(result.aggregate_verdict) << "\n";
  if (!out) {
    throw std::runtime_error("run_scenario: failed writing " + path);
  }
}

}  // namespace

AttackVariant attack_variant_from_name(std::string_view name) {
  if (name == "none") return AttackVariant::none;
  if (name == "full-intercept-resend") return AttackVariant::full_intercept_resend;
  if (name == "partial-intercept-resend") return AttackVariant::partial_intercept_resend;
  if (name == "random-polarization") return AttackVariant::random_polarization;
  if (name == "emulated-fixed-polarization")
    return AttackVariant::emulated_fixed_polarization;
  if (name == "jamming") return AttackVariant::jamming;
  throw ConfigError("attack", "unknown attack variant '" + std::string(name) + "'");
}

std::string_view attack_variant_name(AttackVariant variant) {
  switch (variant) {
    case AttackVariant::none: return "none";
    case AttackVariant::full_intercept_resend: return "full-intercept-resend";
    case AttackVariant::partial_intercept_resend: return "partial-intercept-resend";
    case AttackVariant::random_polarization: return "random-polarization";
    case AttackVariant::emulated_fixed_polarization:
      return "emulated-fixed-polarization";
    case AttackVariant::jamming: return "jamming";
  }
  return "?";
}

std::vector<PresetInfo> list_presets() {
  return {
      {"no-attack", "undisturbed imaging of the letter A; error rates stay at zero"},
      {"full-deceive",
       "true signal blocked, intercept-resend forger images the letter D; "
       "error rates reach the 25% alarm"},
      {"partial-F8-500", "letter F mixed with a mirrored-L forgery at ratio 500"},
      {"partial-F8-1000", "letter F mixed with a mirrored-L forgery at ratio 1000"},
      {"partial-F8-2000", "letter F mixed with a mirrored-L forgery at ratio 2000"},
      {"partial-AD-500", "letter A overlapped by a letter-D forgery at ratio 500"},
      {"partial-AD-1000", "letter A overlapped by a letter-D forgery at ratio 1000"},
      {"partial-AD-2000", "letter A overlapped by a letter-D forgery at ratio 2000"},
      {"random-pol",
       "forger resending random polarizations at ratio 0.5; measured errors double "
       "the intercept-resend threshold"},
      {"jamming-1000x",
       "chaotic illumination 1000x the signal power; ruins singles-based imaging, "
       "coincidence gating survives"},
  };
}

ScenarioConfig preset_config(const std::string& name) {
  ScenarioConfig config;
  config.preset = name;
  const auto partial = [&](const std::string& scene, const std::string& fraud,
                           double ratio) {
    config.scene = scene;
    config.attack = "partial-intercept-resend";
    config.fraud_scene = fraud;
    config.intensity_ratio = ratio;
  };
  if (name == "no-attack") {
    config.attack = "none";
  } else if (name == "full-deceive") {
    config.attack = "full-intercept-resend";
    config.fraud_scene = "D";
    config.intensity_ratio = 1.0;
  } else if (name == "partial-F8-500") {
    partial("F", "mirrored-L", 500.0);
  } else if (name == "partial-F8-1000") {
    partial("F", "mirrored-L", 1000.0);
  } else if (name == "partial-F8-2000") {
    partial("F", "mirrored-L", 2000.0);
  } else if (name == "partial-AD-500") {
    partial("A", "D", 500.0);
  } else if (name == "partial-AD-1000") {
    partial("A", "D", 1000.0);
  } else if (name == "partial-AD-2000") {
    partial("A", "D", 2000.0);
  } else if (name == "random-pol") {
    config.scene = "A";
    config.attack = "random-polarization";
    config.fraud_scene = "D";
    config.intensity_ratio = 0.5;
  } else if (name == "jamming-1000x") {
    config.scene = "A";
    config.attack = "jamming";
    config.jam_power_ratio = 1000.0;
  } else {
    throw ConfigError("preset", "unknown preset '" + name + "'");
  }
  return config;
}

void apply_config_entry(ScenarioConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "preset") {
    const std::string output_dir = config.output_dir;
    config = preset_config(value);
    config.output_dir = output_dir;
  } else if (key == "resolution_exponent") {
    config.resolution_exponent = static_cast<int>(parse_integer(key, value));
  } else if (key == "mode") {
    if (value == "analytic") {
      config.mode = RunMode::analytic;
    } else if (value == "stochastic") {
      config.mode = RunMode::stochastic;
    } else {
      throw ConfigError(key, "expected analytic or stochastic, got '" + value + "'");
    }
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_integer(key, value));
  } else if (key == "repetitions") {
    config.repetitions = static_cast<int>(parse_integer(key, value));
  } else if (key == "pair_rate_cps") {
    config.source.pair_rate_cps = parse_double(key, value);
  } else if (key == "visibility") {
    config.source.visibility = parse_double(key, value);
  } else if (key == "idler_singles_cps") {
    config.source.idler_singles_cps = parse_double(key, value);
  } else if (key == "signal_singles_cps") {
    config.source.signal_singles_cps = parse_double(key, value);
  } else if (key == "coincidence_window_s") {
    config.detector.coincidence_window_s = parse_double(key, value);
  } else if (key == "shot_time_s") {
    config.detector.shot_time_s = parse_double(key, value);
  } else if (key == "scene") {
    config.scene = value;
  } else if (key == "attack") {
    config.attack = value;
  } else if (key == "fraud_scene") {
    config.fraud_scene = value;
  } else if (key == "theta") {
    config.theta = parse_double(key, value);
  } else if (key == "intensity_ratio") {
    config.intensity_ratio = parse_double(key, value);
  } else if (key == "jam_power_ratio") {
    config.jam_power_ratio = parse_double(key, value);
  } else if (key == "fixed_polarization") {
    config.fixed_polarization = value;
  } else if (key == "output_dir") {
    config.output_dir = value;
  } else if (key == "dump_tallies") {
    config.dump_tallies = parse_bool(key, value);
  } else {
    throw ConfigError(key, "unknown configuration key");
  }
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config", "cannot open " + path);
  }
  ScenarioConfig config;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto separator = stripped.find('=');
    if (separator == std::string::npos) {
      throw ConfigError("config", path + ":" + std::to_string(line_number) +
                                      ": expected 'key = value'");
    }
    apply_config_entry(config, trim(stripped.substr(0, separator)),
                       trim(stripped.substr(separator + 1)));
  }
  return config;
}

ResolvedScenario resolve_scenario(const ScenarioConfig& config) {
  if (config.resolution_exponent < 1 || config.resolution_exponent > kMaxResolutionExponent) {
    throw ConfigError("resolution_exponent",
                      "must lie in [1, " + std::to_string(kMaxResolutionExponent) + "]");
  }
  if (config.repetitions < 1) {
    throw ConfigError("repetitions", "must be >= 1");
  }
  if (!(config.source.visibility >= 0.0 && config.source.visibility <= 1.0)) {
    throw ConfigError("visibility", "must lie in [0, 1]");
  }
  if (config.source.pair_rate_cps < 0.0) {
    throw ConfigError("pair_rate_cps", "must be >= 0");
  }
  if (config.source.idler_singles_cps < 0.0) {
    throw ConfigError("idler_singles_cps", "must be >= 0");
  }
  if (config.source.signal_singles_cps < 0.0) {
    throw ConfigError("signal_singles_cps", "must be >= 0");
  }
  if (!(config.detector.coincidence_window_s > 0.0)) {
    throw ConfigError("coincidence_window_s", "must be > 0");
  }
  if (!(config.detector.shot_time_s > 0.0)) {
    throw ConfigError("shot_time_s", "must be > 0");
  }
  if (config.intensity_ratio < 0.0) {
    throw ConfigError("intensity_ratio", "must be >= 0");
  }
  if (config.jam_power_ratio < 0.0) {
    throw ConfigError("jam_power_ratio", "must be >= 0");
  }

  const int side = 1 << config.resolution_exponent;
  ResolvedScenario resolved;
  resolved.run.resolution_exponent = config.resolution_exponent;
  resolved.run.mode = config.mode;
  resolved.run.rng_seed = config.seed;
  resolved.run.source = config.source;
  resolved.run.detector = config.detector;
  resolved.scene = resolve_scene("scene", config.scene, side);

  AttackSpec attack;
  attack.variant = attack_variant_from_name(config.attack);
  attack.theta = config.theta;
  attack.intensity_ratio = config.intensity_ratio;
  attack.jam_power_ratio = config.jam_power_ratio;
  attack.fixed_polarization =
      polarization_from_name("fixed_polarization", config.fixed_polarization);
  if (is_deceiving(attack.variant)) {
    attack.fraud_scene = resolve_scene("fraud_scene", config.fraud_scene, side);
  }
  resolved.run.attack = attack;
  return resolved;
}

RunResult run_scenario(const ScenarioConfig& config) {
  ResolvedScenario resolved = resolve_scenario(config);

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    throw ConfigError("output_dir", "cannot create " + config.output_dir + ": " +
                                        ec.message());
  }

  RunResult result;
  for (int rep = 0; rep < config.repetitions; ++rep) {
    RunConfig run = resolved.run;
    run.rng_seed = derive_seed(config.seed, static_cast<std::uint64_t>(rep));
    const std::vector<CoincidenceTally> tallies = run_experiment(run, resolved.scene);

    if (config.dump_tallies) {
      const fs::path path =
          fs::path(config.output_dir) / ("tallies_rep" + std::to_string(rep + 1) + ".txt");
      write_tallies(path.string(), tallies);
      result.written_files.push_back(path.string());
    }

    SplitImages images = split_reconstructions(tallies);
    result.per_run.push_back(analyze_run(tallies, images));

    if (rep == 0) {
      result.trustworthy = trustworthy_image(images.cor, images.mask);
      const auto write_image = [&](const char* name, const ImageGrid& image) {
        const fs::path path = fs::path(config.output_dir) / name;
        write_pgm(path.string(), render_8bit(image));
        result.written_files.push_back(path.string());
      };
      write_image("g_all.pgm", images.all);
      write_image("g_cor.pgm", images.cor);
      write_image("g_mask.pgm", images.mask);
      write_image("trustworthy.pgm", result.trustworthy);
      if (resolved.run.attack.variant == AttackVariant::jamming) {
        std::vector<double> singles;
        singles.reserve(tallies.size());
        for (const CoincidenceTally& tally : tallies) {
          singles.push_back(tally.signal_singles);
        }
        write_image("singles.pgm",
                    spi_reconstruct(pattern_sequence(config.resolution_exponent), singles));
      }
      result.images = std::move(images);
    }
  }

  result.e_r = collect_statistic(result.per_run, &SecurityReport::e_r);
  result.e_d = collect_statistic(result.per_run, &SecurityReport::e_d);
  result.e_T = collect_statistic(result.per_run, &SecurityReport::e_T);
  result.aggregate_verdict = verdict(result.e_r.mean, result.e_d.mean, result.e_T.mean);

  const fs::path report_path = fs::path(config.output_dir) / "report.txt";
  write_report_file(report_path.string(), config, result);
  result.written_files.push_back(report_path.string());
  return result;
}

void dump_scenario_tallies(const ScenarioConfig& config, const std::string& path,
                           int repetition) {
  if (repetition < 1 || repetition > config.repetitions) {
    throw ConfigError("repetitions",
                      "dump repetition " + std::to_string(repetition) + " out of range");
  }
  ResolvedScenario resolved = resolve_scenario(config);
  RunConfig run = resolved.run;
  run.rng_seed = derive_seed(config.seed, static_cast<std::uint64_t>(repetition - 1));
  write_tallies(path, run_experiment(run, resolved.scene));
}

std::vector<SecurityReport> reports_from_tallies(
    const std::vector<std::vector<CoincidenceTally>>& runs) {
  std::vector<SecurityReport> reports;
  reports.reserve(runs.size());
  for (const auto& tallies : runs) {
    reports.push_back(analyze_run(tallies));
  }
  return reports;
}

}  // namespace qsspi
