#include "magnocool/recipes.hpp"

#include <sstream>
#include <stdexcept>

#include "magnocool/config.hpp"

namespace magnocool {
namespace io {

using nlohmann::json;

namespace {

json bipartite_train_config(double g_max_over_sqrt2) {
  json j;
  j["system"] = {{"kind", "bipartite"}};
  j["env"] = {{"g_max_over_sqrt2", g_max_over_sqrt2}};
  j["train"] = {{"episodes", 10000}};
  return validate_config(j);
}

std::vector<Recipe> make_recipes() {
  std::vector<Recipe> r;

  {
    json j;
    j["simulate"] = {{"horizon_periods", 5.0}, {"schedule", "zero"}};
    r.push_back({"bipartite-free-decay", "simulate",
                 "uncoupled bipartite decay; quotient stays ~1 over 5 periods",
                 validate_config(j)});
  }
  {
    json j;
    j["baseline"] = {{"mode", "sideband"}};
    r.push_back({"sideband-limit", "baseline",
                 "constant-G sweep at the red sideband; reports the fastest "
                 "time to the 1e-4 quotient",
                 validate_config(j)});
  }
  {
    json j;
    j["system"] = {{"kind", "tripartite"}, {"omega_m", 1000.0}};
    j["baseline"] = {{"mode", "stirap"},
                     {"omega_max_values", {6.0, 8.0, 10.0, 12.0, 15.0}},
                     {"undamped", true}};
    r.push_back({"stirap-family", "baseline",
                 "optimized counter-intuitive Gaussian pulses for a range of "
                 "peak couplings, with the heating breakdown at strong drive",
                 validate_config(j)});
  }
  {
    json j;
    j["system"] = {{"kind", "tripartite"}};
    j["baseline"] = {{"mode", "limits"},
                     {"limit_pairs", {{1000.0, 10.0, 10.0},
                                      {100000.0, 100.0, 100.0},
                                      {1000.0, 6.0, 6.0},
                                      {1000.0, 8.0, 8.0}}}};
    r.push_back({"raman-limits", "baseline",
                 "ideal-Raman transfer-time limits and the effective "
                 "two-mode reductions for the standard coupling choices",
                 validate_config(j)});
  }
  for (double g : {0.1, 0.2, 0.3, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0}) {
    std::ostringstream name;
    name << "train-bipartite-g" << g;
    std::ostringstream desc;
    desc << "bipartite coupling-modulation training at max |G|/sqrt(2) = " << g;
    r.push_back({name.str(), "train", desc.str(), bipartite_train_config(g)});
  }
  {
    json j;
    j["system"] = {{"kind", "tripartite"}, {"omega_m", 1000.0},
                   {"kappa_a", 0.1}, {"kappa_m", 1e-3}, {"kappa_b", 1e-5}};
    j["env"] = {{"steps_per_episode", 150},
                {"omega_s_max", 10.0},
                {"omega_p_max", 10.0}};
    j["train"] = {{"episodes", 3000},
                  {"noise_std_initial", 0.1},
                  {"noise_std_final", 0.01}};
    r.push_back({"train-tripartite-aux", "train",
                 "auxiliary three-mode training (intermediate mode at 1e3, "
                 "couplings to 10); the teacher for the primary system",
                 validate_config(j)});
  }
  {
    json j;
    j["system"] = {{"kind", "tripartite"}, {"omega_m", 100000.0},
                   {"kappa_a", 0.1}, {"kappa_m", 1e-3}, {"kappa_b", 1e-5}};
    j["env"] = {{"steps_per_episode", 150},
                {"omega_s_max", 100.0},
                {"omega_p_max", 100.0}};
    j["train"] = {{"episodes", 500},
                  {"noise_std_initial", 0.05},
                  {"noise_std_final", 0.01}};
    r.push_back({"train-tripartite-primary", "train",
                 "primary three-mode fine-tuning (intermediate mode at 1e5, "
                 "couplings to 100); pass --teacher with the auxiliary "
                 "checkpoint",
                 validate_config(j)});
  }
  {
    json j;
    j["evaluate"] = {{"episodes", 3}, {"target_quotient", 1e-4}};
    r.push_back({"evaluate-bipartite", "evaluate",
                 "deterministic rollouts of a trained bipartite policy with "
                 "the complex-pulse polar table",
                 validate_config(j)});
  }
  return r;
}

}  // namespace

const std::vector<Recipe>& builtin_recipes() {
  static const std::vector<Recipe> recipes = make_recipes();
  return recipes;
}

const Recipe& find_recipe(const std::string& name) {
  for (const auto& r : builtin_recipes()) {
    if (r.name == name) return r;
  }
  std::ostringstream msg;
  msg << "unknown recipe '" << name << "'; available:";
  for (const auto& r : builtin_recipes()) msg << ' ' << r.name;
  throw std::invalid_argument(msg.str());
}

}  // namespace io
}  // namespace magnocool
