#include "magnocool/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "magnocool/sha256.hpp"

namespace magnocool {
namespace io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config: " + path + ": " + what);
}

void expect_keys(const json& j, const std::string& path,
                 const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

long get_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

// Recursive merge of `user` over `base`, validating key existence against
// the defaults tree (objects only; arrays and scalars replace wholesale).
json merge_over(const json& base, const json& user, const std::string& path) {
  if (!user.is_object() || !base.is_object()) return user;
  json out = base;
  for (const auto& [key, value] : user.items()) {
    const std::string sub = path.empty() ? key : path + "." + key;
    if (!base.contains(key)) fail(sub, "unknown key");
    out[key] = merge_over(base[key], value, sub);
  }
  return out;
}

void check_types(const json& merged) {
  const std::string root;
  expect_keys(merged, "config",
              {"system", "env", "agent", "train", "simulate", "baseline",
               "evaluate", "seed"});

  const json& sys = merged.at("system");
  expect_keys(sys, "system",
              {"kind", "delta_m", "delta_a", "omega_m", "kappa_a", "kappa_m",
               "kappa_b", "n_a", "n_m", "n_thermal"});
  const std::string kind = get_string(sys.at("kind"), "system.kind");
  if (kind != "bipartite" && kind != "tripartite")
    fail("system.kind", "must be 'bipartite' or 'tripartite'");
  for (const char* k : {"delta_m", "delta_a", "omega_m", "kappa_a", "kappa_m",
                        "kappa_b", "n_a", "n_m", "n_thermal"})
    get_number(sys.at(k), std::string("system.") + k);

  const json& env = merged.at("env");
  expect_keys(env, "env",
              {"steps_per_episode", "dt_periods", "g_max_over_sqrt2",
               "omega_s_max", "omega_p_max", "reward_lambda"});
  get_integer(env.at("steps_per_episode"), "env.steps_per_episode");
  for (const char* k :
       {"dt_periods", "g_max_over_sqrt2", "omega_s_max", "omega_p_max",
        "reward_lambda"})
    get_number(env.at(k), std::string("env.") + k);

  const json& agent = merged.at("agent");
  expect_keys(agent, "agent",
              {"hidden", "lr", "buffer_capacity", "batch_size", "gamma", "tau",
               "alpha_init", "adaptive_alpha", "target_entropy", "grad_clip",
               "log_std_min", "log_std_max"});
  if (!agent.at("hidden").is_array()) fail("agent.hidden", "expected an array");
  for (const auto& h : agent.at("hidden"))
    if (!h.is_number_integer()) fail("agent.hidden", "expected integers");
  if (!agent.at("adaptive_alpha").is_boolean())
    fail("agent.adaptive_alpha", "expected a boolean");

  const json& train = merged.at("train");
  expect_keys(train, "train",
              {"episodes", "warmup_steps", "update_every", "eval_interval",
               "eval_episodes", "noise_std_initial", "noise_std_final"});
  for (const char* k :
       {"episodes", "warmup_steps", "update_every", "eval_interval",
        "eval_episodes"})
    get_integer(train.at(k), std::string("train.") + k);

  const json& sim = merged.at("simulate");
  expect_keys(sim, "simulate", {"horizon_periods", "schedule", "constant"});
  get_number(sim.at("horizon_periods"), "simulate.horizon_periods");
  const std::string sched = get_string(sim.at("schedule"), "simulate.schedule");
  if (sched != "zero" && sched != "constant" && sched != "file")
    fail("simulate.schedule", "must be 'zero', 'constant' or 'file'");

  const json& base = merged.at("baseline");
  expect_keys(base, "baseline",
              {"mode", "g_lo", "g_hi", "per_decade", "horizon_periods",
               "target_quotient", "omega_max_values", "stirap_horizon_periods",
               "restarts", "limit_pairs", "undamped"});
  const std::string mode = get_string(base.at("mode"), "baseline.mode");
  if (mode != "sideband" && mode != "stirap" && mode != "limits")
    fail("baseline.mode", "must be 'sideband', 'stirap' or 'limits'");

  const json& eval = merged.at("evaluate");
  expect_keys(eval, "evaluate", {"episodes", "target_quotient"});
  get_integer(eval.at("episodes"), "evaluate.episodes");
  get_number(eval.at("target_quotient"), "evaluate.target_quotient");

  get_integer(merged.at("seed"), "seed");
}

}  // namespace

json default_config() {
  json j;
  j["system"] = {{"kind", "bipartite"}, {"delta_m", 1.0},    {"delta_a", 1.0},
                 {"omega_m", 1000.0},   {"kappa_a", 0.1},    {"kappa_m", 0.1},
                 {"kappa_b", 1e-5},     {"n_a", 0.0},        {"n_m", 0.0},
                 {"n_thermal", 100.0}};
  j["env"] = {{"steps_per_episode", 50}, {"dt_periods", 0.1},
              {"g_max_over_sqrt2", 5.0}, {"omega_s_max", 10.0},
              {"omega_p_max", 10.0},     {"reward_lambda", 10.0}};
  j["agent"] = {{"hidden", {512, 256, 256, 128}},
                {"lr", 1e-4},
                {"buffer_capacity", 1000000},
                {"batch_size", 512},
                {"gamma", 0.99},
                {"tau", 0.005},
                {"alpha_init", 0.1},
                {"adaptive_alpha", true},
                {"target_entropy", nullptr},
                {"grad_clip", 10.0},
                {"log_std_min", -20.0},
                {"log_std_max", 2.0}};
  j["train"] = {{"episodes", 10000},   {"warmup_steps", 1000},
                {"update_every", 1},   {"eval_interval", 50},
                {"eval_episodes", 3},  {"noise_std_initial", 0.0},
                {"noise_std_final", 0.0}};
  j["simulate"] = {{"horizon_periods", 5.0},
                   {"schedule", "zero"},
                   {"constant", json::array()}};
  j["baseline"] = {{"mode", "sideband"},
                   {"g_lo", 0.02},
                   {"g_hi", 0.3},
                   {"per_decade", 15},
                   {"horizon_periods", 200.0},
                   {"target_quotient", 1e-4},
                   {"omega_max_values", {6.0, 8.0, 10.0, 12.0, 15.0}},
                   {"stirap_horizon_periods", 25.0},
                   {"restarts", 20},
                   {"limit_pairs", json::array()},
                   {"undamped", true}};
  j["evaluate"] = {{"episodes", 1}, {"target_quotient", 1e-4}};
  j["seed"] = 1;
  return j;
}

json validate_config(const json& user) {
  const json merged = merge_over(default_config(), user, "");
  check_types(merged);
  return merged;
}

SystemSpec system_from_config(const json& cfg) {
  const json& sys = cfg.at("system");
  const std::string kind = sys.at("kind");
  if (kind == "bipartite") {
    return bipartite_system(sys.at("delta_m"), sys.at("kappa_m"),
                            sys.at("kappa_b"), sys.at("n_m"),
                            sys.at("n_thermal"));
  }
  return tripartite_system(sys.at("delta_a"), sys.at("omega_m"),
                           sys.at("kappa_a"), sys.at("kappa_m"),
                           sys.at("kappa_b"), sys.at("n_a"), sys.at("n_m"),
                           sys.at("n_thermal"));
}

double n_thermal_from_config(const json& cfg) {
  return cfg.at("system").at("n_thermal").get<double>();
}

rl::EnvConfig env_from_config(const json& cfg) {
  const SystemSpec sys = system_from_config(cfg);
  const json& env = cfg.at("env");
  const double n_thermal = n_thermal_from_config(cfg);
  rl::EnvConfig out;
  if (cfg.at("system").at("kind") == "bipartite") {
    const double g_max = env.at("g_max_over_sqrt2").get<double>() * std::sqrt(2.0);
    out = rl::bipartite_env_config(sys, g_max, n_thermal,
                                   env.at("steps_per_episode").get<int>());
  } else {
    out = rl::tripartite_env_config(
        sys, env.at("omega_s_max"), env.at("omega_p_max"), n_thermal,
        env.at("reward_lambda"), env.at("steps_per_episode").get<int>());
  }
  out.dt = periods_to_time(env.at("dt_periods").get<double>());
  out.seed = seed_from_config(cfg);
  out.validate();
  return out;
}

rl::SacConfig agent_from_config(const json& cfg) {
  const json& a = cfg.at("agent");
  rl::SacConfig out;
  out.hidden = a.at("hidden").get<std::vector<int>>();
  out.lr = a.at("lr");
  out.buffer_capacity = a.at("buffer_capacity");
  out.batch_size = a.at("batch_size");
  out.gamma = a.at("gamma");
  out.tau = a.at("tau");
  out.alpha_init = a.at("alpha_init");
  out.adaptive_alpha = a.at("adaptive_alpha");
  out.target_entropy = a.at("target_entropy").is_null()
                           ? std::numeric_limits<double>::quiet_NaN()
                           : a.at("target_entropy").get<double>();
  out.grad_clip = a.at("grad_clip");
  out.log_std_min = a.at("log_std_min");
  out.log_std_max = a.at("log_std_max");
  const json& t = cfg.at("train");
  out.noise_std = t.at("noise_std_initial");
  return out;
}

rl::TrainOptions train_options_from_config(const json& cfg) {
  const json& t = cfg.at("train");
  rl::TrainOptions out;
  out.episodes = t.at("episodes");
  out.warmup_steps = t.at("warmup_steps");
  out.update_every = t.at("update_every");
  out.eval_interval = t.at("eval_interval");
  out.eval_episodes = t.at("eval_episodes");
  out.noise_std_initial = t.at("noise_std_initial");
  out.noise_std_final = t.at("noise_std_final");
  return out;
}

std::uint64_t seed_from_config(const json& cfg) {
  return cfg.at("seed").get<std::uint64_t>();
}

std::string env_hash_of_config(const json& cfg) {
  json env_part;
  env_part["system"] = cfg.at("system");
  env_part["env"] = cfg.at("env");
  return sha256_hex(env_part.dump());
}

}  // namespace io
}  // namespace magnocool
