// chernoff-lab: runs Chernoff-approximation convergence experiments and
// writes errors.csv, report.json and SVG plots.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chernoff/lab/config.hpp"
#include "chernoff/lab/presets.hpp"
#include "chernoff/lab/report.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitIo = 4;

int run(const std::string& config_path, const std::string& preset, const std::vector<std::string>& overrides,
        const std::string& out_dir) {
  using namespace chernoff;
  std::vector<std::vector<std::pair<std::string, std::string>>> layers;
  if (!preset.empty()) {
    const auto& table = lab::presets();
    const auto it = table.find(preset);
    if (it == table.end()) throw ValidationError("preset", "unknown preset '" + preset + "'");
    layers.push_back(lab::tokenize_config(it->second.config));
  }
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot read config '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    layers.push_back(lab::tokenize_config(buf.str()));
  }
  std::vector<std::pair<std::string, std::string>> flags;
  for (const std::string& o : overrides) {
    const auto t = lab::tokenize_config(o);
    flags.insert(flags.end(), t.begin(), t.end());
  }
  if (!out_dir.empty()) flags.emplace_back("out", out_dir);
  layers.push_back(flags);

  const lab::ExperimentConfig cfg = lab::parse_config(layers);
  const lab::RunReport rep = lab::run_experiment(cfg);

  std::printf("%s: %zu records", cfg.name.empty() ? "experiment" : cfg.name.c_str(), rep.records.size());
  if (rep.fit) std::printf(", slope %.4f (r^2 %.6f, n in [%lld, %lld])", rep.fit->slope, rep.fit->r_squared,
                           rep.fit->n_min, rep.fit->n_max);
  if (rep.probe)
    std::printf(", n^%g*err sup %.6g at n=%lld (%s)", rep.probe->order, rep.probe->sup_value,
                rep.probe->attained_at_n, to_string(rep.probe->trend));
  std::printf(", %.2fs\n", rep.wall_time_seconds);
  for (const std::string& note : rep.notes) std::printf("note: %s\n", note.c_str());
  if (!cfg.output_dir.empty()) std::printf("wrote %s\n", cfg.output_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chernoff approximation convergence laboratory"};
  app.name("chernoff-lab");
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run one experiment");
  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::vector<std::string> overrides;
  run_cmd->add_option("--config", config_path, "key=value config file");
  run_cmd->add_option("--preset", preset, "built-in experiment (see list-presets)");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("overrides", overrides, "key=value overrides");

  auto* list_cmd = app.add_subcommand("list-presets", "List built-in experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (list_cmd->parsed()) {
    for (const auto& [name, p] : chernoff::lab::presets()) std::printf("%-30s %s\n", name.c_str(), p.description.c_str());
    return 0;
  }

  try {
    if (config_path.empty() && preset.empty()) throw chernoff::ValidationError("config", "need --config or --preset");
    return run(config_path, preset, overrides, out_dir);
  } catch (const chernoff::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kExitValidation;
  } catch (const chernoff::DomainError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kExitValidation;
  } catch (const chernoff::ResourceError& e) {
    std::fprintf(stderr, "resource error: %s\n", e.what());
    return kExitResource;
  } catch (const chernoff::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  }
}
