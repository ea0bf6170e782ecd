// qsspi: scenario runner for quantum-secured single-pixel imaging.
//
// Subcommands:
//   run      execute a scenario (preset and/or config file), write images,
//            tally dumps and the security report
//   presets  list the built-in scenario presets
//   dump     write the per-shot tally file for one repetition
//   mask     render one display mask of the Hadamard sequence as PGM
//   glyph    render a built-in target as PGM

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qsspi/image_io.hpp"
#include "qsspi/patterns.hpp"
#include "qsspi/scenario.hpp"
#include "qsspi/scene.hpp"

namespace {

struct CommonOptions {
  std::string preset;
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<int> repetitions;
  std::vector<std::string> overrides;  // key=value pairs
};

void add_common_options(CLI::App* command, CommonOptions* options) {
  command->add_option("--preset", options->preset, "start from a named preset");
  command->add_option("--config", options->config_file,
                      "configuration file (key = value lines)");
  command->add_option("--seed", options->seed, "RNG seed");
  command->add_option("--mode", options->mode, "analytic or stochastic");
  command->add_option("--reps", options->repetitions, "number of repetitions");
  command->add_option("--set", options->overrides,
                      "override a configuration key, e.g. --set visibility=0.972");
}

qsspi::ScenarioConfig build_config(const CommonOptions& options) {
  qsspi::ScenarioConfig config;
  if (!options.config_file.empty()) {
    config = qsspi::load_config_file(options.config_file);
    if (!options.preset.empty()) {
      throw qsspi::ConfigError("preset",
                               "use either --preset or --config (a config file may "
                               "itself contain a preset key)");
    }
  } else if (!options.preset.empty()) {
    config = qsspi::preset_config(options.preset);
  }
  for (const std::string& entry : options.overrides) {
    const auto separator = entry.find('=');
    if (separator == std::string::npos) {
      throw qsspi::ConfigError("set", "expected key=value, got '" + entry + "'");
    }
    qsspi::apply_config_entry(config, entry.substr(0, separator),
                              entry.substr(separator + 1));
  }
  if (options.seed) config.seed = *options.seed;
  if (options.mode) qsspi::apply_config_entry(config, "mode", *options.mode);
  if (options.repetitions) config.repetitions = *options.repetitions;
  return config;
}

int command_run(const CommonOptions& options, const std::string& output_dir,
                bool no_dump) {
  qsspi::ScenarioConfig config = build_config(options);
  if (!output_dir.empty()) config.output_dir = output_dir;
  if (no_dump) config.dump_tallies = false;
  const qsspi::RunResult result = qsspi::run_scenario(config);

  const auto show = [](const char* name, const qsspi::RunStatistic& statistic) {
    std::printf("%s = ", name);
    if (statistic.mean) {
      std::printf("%.9g (%.9g)\n", *statistic.mean, *statistic.stddev);
    } else {
      std::printf("undefined\n");
    }
  };
  show("e_r", result.e_r);
  show("e_d", result.e_d);
  show("e_T", result.e_T);
  std::printf("verdict = %s\n", std::string(qsspi::to_string(result.aggregate_verdict)).c_str());
  std::printf("wrote %zu files under %s\n", result.written_files.size(),
              config.output_dir.c_str());
  return 0;
}

int command_presets() {
  for (const qsspi::PresetInfo& preset : qsspi::list_presets()) {
    std::printf("%-18s %s\n", preset.name.c_str(), preset.description.c_str());
  }
  return 0;
}

int command_dump(const CommonOptions& options, const std::string& output_file,
                 int repetition) {
  const qsspi::ScenarioConfig config = build_config(options);
  qsspi::dump_scenario_tallies(config, output_file, repetition);
  std::printf("wrote %s\n", output_file.c_str());
  return 0;
}

int command_mask(int resolution_exponent, int shot_index, const std::string& output_file) {
  const auto sequence = qsspi::pattern_sequence(resolution_exponent);
  if (shot_index < 0 || shot_index >= static_cast<int>(sequence.size())) {
    throw qsspi::ConfigError("index", "shot index out of range, sequence has " +
                                          std::to_string(sequence.size()) + " masks");
  }
  const qsspi::PatternMask& mask = sequence[static_cast<std::size_t>(shot_index)];
  qsspi::ByteGrid image(mask.side);
  for (std::size_t i = 0; i < image.size(); ++i) {
    image[i] = mask.cells[i] ? 255 : 0;
  }
  qsspi::write_pgm(output_file, image);
  std::printf("wrote %s\n", output_file.c_str());
  return 0;
}

int command_glyph(const std::string& name, int side, const std::string& output_file) {
  const qsspi::SceneProfile scene = qsspi::builtin_glyph(qsspi::glyph_from_name(name), side);
  qsspi::ByteGrid image(scene.side);
  for (std::size_t i = 0; i < image.size(); ++i) {
    image[i] = static_cast<std::uint8_t>(scene.chi[i] * 255.0 + 0.5);
  }
  qsspi::write_pgm(output_file, image);
  std::printf("wrote %s\n", output_file.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-secured single-pixel imaging simulator"};
  app.require_subcommand(1);

  CommonOptions run_options;
  std::string run_output_dir;
  bool run_no_dump = false;
  CLI::App* run = app.add_subcommand("run", "execute a scenario and write its artifacts");
  add_common_options(run, &run_options);
  run->add_option("--out", run_output_dir, "output directory");
  run->add_flag("--no-dump", run_no_dump, "skip the per-repetition tally dumps");

  CLI::App* presets = app.add_subcommand("presets", "list the scenario presets");

  CommonOptions dump_options;
  std::string dump_output_file = "tallies.txt";
  int dump_repetition = 1;
  CLI::App* dump = app.add_subcommand("dump", "write one repetition's tally file");
  add_common_options(dump, &dump_options);
  dump->add_option("--out", dump_output_file, "output file");
  dump->add_option("--rep", dump_repetition, "repetition to dump (1-based)");

  int mask_exponent = 5;
  int mask_index = 0;
  std::string mask_output_file = "mask.pgm";
  CLI::App* mask = app.add_subcommand("mask", "render one display mask as PGM");
  mask->add_option("--n", mask_exponent, "resolution exponent (side 2^n)");
  mask->add_option("--index", mask_index, "shot index in the display sequence");
  mask->add_option("--out", mask_output_file, "output file");

  std::string glyph_id = "A";
  int glyph_side = 32;
  std::string glyph_output_file = "glyph.pgm";
  CLI::App* glyph = app.add_subcommand("glyph", "render a built-in target as PGM");
  glyph->add_option("--name", glyph_id, "glyph id (A, D, F, mirrored-L, blank, full)");
  glyph->add_option("--side", glyph_side, "image side (power of two)");
  glyph->add_option("--out", glyph_output_file, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return command_run(run_options, run_output_dir, run_no_dump);
    if (presets->parsed()) return command_presets();
    if (dump->parsed()) return command_dump(dump_options, dump_output_file, dump_repetition);
    if (mask->parsed()) return command_mask(mask_exponent, mask_index, mask_output_file);
    if (glyph->parsed()) return command_glyph(glyph_id, glyph_side, glyph_output_file);
  } catch (const qsspi::ConfigError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
