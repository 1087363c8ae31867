#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magnocool/config.hpp"
#include "magnocool/recipes.hpp"
#include "magnocool/runner.hpp"
#include "magnocool/trace_io.hpp"
#include "magnocool/version.hpp"

namespace {

using nlohmann::json;

std::string default_out_root() {
  const char* env = std::getenv("MAGNOCOOL_OUT_ROOT");
  return env ? env : "runs";
}

json load_config(const std::string& config_path, const std::string& recipe_name,
                 long seed_override) {
  json cfg;
  if (!recipe_name.empty()) {
    cfg = magnocool::io::find_recipe(recipe_name).config;
    if (!config_path.empty()) {
      // Explicit config entries override the recipe's.
      const json user = json::parse(magnocool::io::read_text_file(config_path));
      cfg.merge_patch(user);
    }
  } else if (!config_path.empty()) {
    cfg = json::parse(magnocool::io::read_text_file(config_path));
  }
  if (seed_override >= 0) cfg["seed"] = seed_override;
  return magnocool::io::validate_config(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magnocool: covariance-dynamics simulator, cooling baselines, "
               "and soft actor-critic pulse training for coupled bosonic modes"};
  app.set_version_flag("--version", magnocool::kVersion);
  app.require_subcommand(1);

  std::string config_path, recipe, out_dir, schedule_file, teacher, checkpoint;
  std::string export_format = "csv";
  long seed = -1;
  int workers = 1;
  bool force = false, merge = false;
  std::vector<std::string> export_inputs;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON run configuration");
    cmd->add_option("--recipe", recipe, "builtin recipe name (see `recipes`)");
    cmd->add_option("--seed", seed, "seed override");
    cmd->add_option("--out", out_dir, "output directory");
  };

  auto* sim = app.add_subcommand("simulate", "propagate a control schedule");
  add_common(sim);
  sim->add_option("--schedule", schedule_file,
                  "schedule CSV (for simulate.schedule = \"file\")");

  auto* base = app.add_subcommand("baseline",
                                  "sideband sweeps, STIRAP pulses, Raman limits");
  add_common(base);
  base->add_option("--workers", workers, "parallel workers for sweep entries");

  auto* train = app.add_subcommand("train", "soft actor-critic training");
  add_common(train);
  train->add_option("--teacher", teacher, "warm-start checkpoint (imitation)");

  auto* eval = app.add_subcommand("evaluate", "deterministic policy rollouts");
  add_common(eval);
  eval->add_option("--checkpoint", checkpoint, "agent checkpoint")->required();
  eval->add_flag("--force", force, "ignore environment-hash mismatch");

  auto* exp = app.add_subcommand("export", "convert outputs to csv/json");
  exp->add_option("inputs", export_inputs, "trace/table/curve files")->required();
  exp->add_option("--format", export_format, "csv or json");
  exp->add_flag("--merge", merge, "stack csv inputs into one long table");
  exp->add_option("--out", out_dir, "output directory");

  auto* rec = app.add_subcommand("recipes", "list builtin recipes");
  std::string show_recipe;
  rec->add_option("--show", show_recipe, "print one recipe's full config");

  auto* rerun = app.add_subcommand("rerun", "re-execute a run from its manifest");
  std::string manifest_path;
  rerun->add_option("--manifest", manifest_path, "manifest.json path")->required();
  rerun->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (out_dir.empty()) {
      std::string name = "run";
      if (app.got_subcommand(sim)) name = "simulate";
      if (app.got_subcommand(base)) name = "baseline";
      if (app.got_subcommand(train)) name = "train";
      if (app.got_subcommand(eval)) name = "evaluate";
      if (app.got_subcommand(exp)) name = "export";
      if (app.got_subcommand(rerun)) name = "rerun";
      if (!recipe.empty()) name += "-" + recipe;
      out_dir = (std::filesystem::path(default_out_root()) / name).string();
    }

    if (app.got_subcommand(rec)) {
      if (!show_recipe.empty()) {
        std::cout << magnocool::io::find_recipe(show_recipe).config.dump(2)
                  << std::endl;
      } else {
        for (const auto& r : magnocool::io::builtin_recipes()) {
          std::cout << r.name << "  [" << r.command << "]\n    "
                    << r.description << "\n";
        }
      }
      return 0;
    }

    json summary;
    if (app.got_subcommand(sim)) {
      summary = magnocool::cli::run_simulate(load_config(config_path, recipe, seed),
                                             out_dir, schedule_file);
    } else if (app.got_subcommand(base)) {
      summary = magnocool::cli::run_baseline(load_config(config_path, recipe, seed),
                                             out_dir, workers);
    } else if (app.got_subcommand(train)) {
      summary = magnocool::cli::run_train(load_config(config_path, recipe, seed),
                                          out_dir, teacher);
    } else if (app.got_subcommand(eval)) {
      summary = magnocool::cli::run_evaluate(load_config(config_path, recipe, seed),
                                             out_dir, checkpoint, force);
    } else if (app.got_subcommand(exp)) {
      summary = magnocool::cli::run_export(export_inputs, export_format, out_dir,
                                           merge);
    } else if (app.got_subcommand(rerun)) {
      summary = magnocool::cli::rerun_from_manifest(manifest_path, out_dir);
    }
    std::cout << summary.dump(2) << std::endl;
    std::cerr << "outputs written to " << out_dir << std::endl;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
