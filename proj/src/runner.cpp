#include "magnocool/runner.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "magnocool/baselines.hpp"
#include "magnocool/checkpoint.hpp"
#include "magnocool/config.hpp"
#include "magnocool/env.hpp"
#include "magnocool/errors.hpp"
#include "magnocool/generators.hpp"
#include "magnocool/manifest.hpp"
#include "magnocool/propagation.hpp"
#include "magnocool/trace_io.hpp"
#include "magnocool/trainer.hpp"

namespace magnocool {
namespace cli {

namespace fs = std::filesystem;
using io::RunManifest;

namespace {

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void finish_run(RunManifest& manifest, const json& summary,
                const std::string& out_dir) {
  const std::string summary_text = summary.dump(2) + "\n";
  io::write_text_file(join(out_dir, "summary.json"), summary_text);
  manifest.add_output("summary", "summary.json", summary_text);
  manifest.write(join(out_dir, "manifest.json"));
}

/// The shared rollout path: identical propagation and reward calls to
/// Environment::step, so an exported schedule replays bit-identically.
EpisodeTrace run_schedule(const SystemSpec& sys, const ControlSchedule& schedule,
                          const rl::RewardSpec& reward) {
  EpisodeTrace trace;
  trace.target_mode = sys.target_mode;
  trace.n_thermal = reward.n_thermal;
  CovarianceState state = thermal_covariance(sys);
  for (int k = 0; k < schedule.n_steps(); ++k) {
    const ControlVector u = schedule.at_step(k);
    state = propagate(state, build_generators(sys, u), schedule.dt);
    EpisodeStep step;
    step.time = state.time;
    step.controls = u;
    step.occupancies.resize(sys.n_modes());
    for (int j = 0; j < sys.n_modes(); ++j)
      step.occupancies(j) = occupancy(state, j);
    step.reward = rl::compute_reward(reward, state, sys.target_mode);
    trace.steps.push_back(std::move(step));
  }
  trace.refresh_aggregates();
  return trace;
}

rl::RewardSpec reward_from_config(const json& cfg, const SystemSpec& sys) {
  rl::RewardSpec reward;
  reward.n_thermal = io::n_thermal_from_config(cfg);
  if (cfg.at("system").at("kind") == "tripartite") {
    reward.kind = rl::RewardSpec::Kind::InverseQuotientMinusMagnon;
    reward.lambda = cfg.at("env").at("reward_lambda");
    reward.penalized_mode = sys.mode_index("magnon");
  }
  return reward;
}

SystemSpec undamped_copy(SystemSpec sys) {
  for (auto& m : sys.modes) m.damping = 0.0;
  return sys;
}

}  // namespace

json run_simulate(const json& user_config, const std::string& out_dir,
                  const std::string& schedule_file) {
  const json cfg = io::validate_config(user_config);
  ensure_dir(out_dir);
  const SystemSpec sys = io::system_from_config(cfg);
  const json& sim = cfg.at("simulate");
  const double dt = periods_to_time(cfg.at("env").at("dt_periods").get<double>());
  const int n_steps = static_cast<int>(
      std::ceil(sim.at("horizon_periods").get<double>() /
                cfg.at("env").at("dt_periods").get<double>()));

  ControlSchedule schedule;
  const std::string mode = sim.at("schedule");
  if (mode == "zero") {
    schedule = ControlSchedule::zero(sys.n_control_slots, dt, n_steps);
  } else if (mode == "constant") {
    const json& values = sim.at("constant");
    if (static_cast<int>(values.size()) != sys.n_control_slots)
      throw std::invalid_argument(
          "simulate.constant: need one value (number or [re, im]) per slot");
    ControlVector u(sys.n_control_slots);
    for (int s = 0; s < sys.n_control_slots; ++s) {
      const json& v = values[s];
      if (v.is_array())
        u(s) = Complex(v.at(0).get<double>(), v.at(1).get<double>());
      else
        u(s) = Complex(v.get<double>(), 0.0);
    }
    schedule = ControlSchedule::constant(u, dt, n_steps);
  } else {  // file
    if (schedule_file.empty())
      throw std::invalid_argument("simulate: schedule mode 'file' needs --schedule");
    schedule = io::parse_schedule_csv(io::read_text_file(schedule_file), sys);
  }
  schedule.validate();

  const EpisodeTrace trace = run_schedule(sys, schedule, reward_from_config(cfg, sys));

  RunManifest manifest = RunManifest::make("simulate", cfg);
  const std::string trace_text = io::write_trace_csv(trace, sys);
  io::write_text_file(join(out_dir, "trace.csv"), trace_text);
  manifest.add_output("trace", "trace.csv", trace_text);
  const std::string sched_text = io::write_schedule_csv(schedule, sys);
  io::write_text_file(join(out_dir, "schedule.csv"), sched_text);
  manifest.add_output("schedule", "schedule.csv", sched_text);

  json summary;
  summary["net_reward"] = trace.net_reward;
  summary["min_quotient"] = trace.min_quotient;
  summary["time_of_min_periods"] = time_to_periods(trace.time_of_min);
  finish_run(manifest, summary, out_dir);
  return summary;
}

namespace {

json sideband_baseline(const json& cfg, RunManifest& manifest,
                       const std::string& out_dir) {
  const SystemSpec sys = io::system_from_config(cfg);
  if (sys.n_modes() != 2)
    throw std::invalid_argument("baseline sideband: needs the bipartite system");
  const json& b = cfg.at("baseline");
  const auto grid = baselines::log_grid(b.at("g_lo"), b.at("g_hi"),
                                        b.at("per_decade").get<int>());
  const auto sweep = baselines::sideband_sweep(
      sys, grid, b.at("horizon_periods"), b.at("target_quotient"));

  io::CsvTable table;
  table.columns = {"G", "min_quotient", "time_to_min_periods",
                   "time_to_target_periods", "diverged"};
  io::CsvTable curves;
  curves.columns = {"G", "t_periods", "quotient"};
  for (const auto& e : sweep.entries) {
    table.rows.push_back(
        {e.coupling, e.min_quotient, e.time_to_min,
         e.time_to_target ? *e.time_to_target
                          : std::numeric_limits<double>::quiet_NaN(),
         e.diverged ? 1.0 : 0.0});
    for (const auto& [t, q] : e.curve) curves.rows.push_back({e.coupling, t, q});
  }
  const std::string table_text = io::write_csv(table);
  io::write_text_file(join(out_dir, "sweep.csv"), table_text);
  manifest.add_output("sweep", "sweep.csv", table_text);
  const std::string curves_text = io::write_csv(curves);
  io::write_text_file(join(out_dir, "sweep_curves.csv"), curves_text);
  manifest.add_output("sweep_curves", "sweep_curves.csv", curves_text);

  json summary;
  summary["mode"] = "sideband";
  summary["target_quotient"] = b.at("target_quotient");
  try {
    summary["tau_sb_periods"] =
        baselines::sideband_time_limit(sweep, b.at("target_quotient"));
  } catch (const TargetUnreachable& e) {
    summary["tau_sb_periods"] = nullptr;
    summary["target_unreachable_best_quotient"] = e.best_quotient;
  }
  double best_q = std::numeric_limits<double>::infinity();
  double best_g = 0.0;
  for (const auto& e : sweep.entries) {
    if (e.min_quotient < best_q) {
      best_q = e.min_quotient;
      best_g = e.coupling;
    }
  }
  summary["best_min_quotient"] = best_q;
  summary["best_coupling"] = best_g;
  return summary;
}

json stirap_baseline(const json& cfg, RunManifest& manifest,
                     const std::string& out_dir, int workers) {
  SystemSpec sys = io::system_from_config(cfg);
  if (sys.n_modes() != 3)
    throw std::invalid_argument("baseline stirap: needs the tripartite system");
  const json& b = cfg.at("baseline");
  if (b.at("undamped").get<bool>()) sys = undamped_copy(sys);
  const double horizon = b.at("stirap_horizon_periods");
  const std::vector<double> omegas =
      b.at("omega_max_values").get<std::vector<double>>();

  baselines::StirapOptimizeOptions opts;
  opts.restarts = b.at("restarts").get<int>();
  opts.seed = io::seed_from_config(cfg);

  struct Entry {
    double omega_max;
    baselines::StirapOptimizeResult opt;
    EpisodeTrace trace;
  };
  std::vector<Entry> entries(omegas.size());
  const int pool = std::max(1, std::min<int>(workers, omegas.size()));
  std::vector<std::future<void>> jobs;
  std::atomic<size_t> cursor{0};
  for (int w = 0; w < pool; ++w) {
    jobs.push_back(std::async(std::launch::async, [&]() {
      for (size_t i = cursor.fetch_add(1); i < omegas.size();
           i = cursor.fetch_add(1)) {
        Entry& e = entries[i];
        e.omega_max = omegas[i];
        e.opt = baselines::stirap_optimize(sys, e.omega_max, horizon, opts);
        e.trace = baselines::stirap_run(sys, e.opt.pulses, horizon);
      }
    }));
  }
  for (auto& j : jobs) j.get();

  json summary;
  summary["mode"] = "stirap";
  summary["undamped"] = b.at("undamped");
  summary["entries"] = json::array();
  for (const auto& e : entries) {
    std::ostringstream name;
    name << "stirap_omega" << e.omega_max << ".csv";
    const std::string text = io::write_trace_csv(e.trace, sys);
    io::write_text_file(join(out_dir, name.str()), text);
    manifest.add_output(name.str(), name.str(), text);

    const double final_q = e.trace.quotient_at(e.trace.n_steps() - 1);
    json entry;
    entry["omega_max"] = e.omega_max;
    entry["final_quotient"] = final_q;
    entry["min_quotient"] = e.trace.min_quotient;
    entry["time_of_min_periods"] = time_to_periods(e.trace.time_of_min);
    entry["heating"] = final_q >= 1.0;
    entry["optimizer_converged"] = e.opt.converged;
    entry["tau_lim_periods"] = time_to_periods(
        baselines::raman_time_limit(sys.modes[1].frequency, e.omega_max, e.omega_max));
    entry["pulses"] = {{"peak_s", e.opt.pulses.peak_s},
                       {"peak_p", e.opt.pulses.peak_p},
                       {"center_s_periods", time_to_periods(e.opt.pulses.center_s)},
                       {"center_p_periods", time_to_periods(e.opt.pulses.center_p)},
                       {"width_periods", time_to_periods(e.opt.pulses.width)}};
    summary["entries"].push_back(entry);
  }
  return summary;
}

json limits_baseline(const json& cfg, RunManifest& manifest,
                     const std::string& out_dir) {
  const json& b = cfg.at("baseline");
  json pairs = b.at("limit_pairs");
  if (pairs.empty()) {
    pairs = json::array({{1000.0, 10.0, 10.0}, {100000.0, 100.0, 100.0}});
  }
  io::CsvTable table;
  table.columns = {"omega_m",        "omega_s",        "omega_p",
                   "tau_lim",        "tau_lim_periods", "delta_eff",
                   "omega_eff",      "rwa_valid"};
  json summary;
  summary["mode"] = "limits";
  summary["entries"] = json::array();
  for (const auto& p : pairs) {
    const double om = p.at(0), os = p.at(1), op = p.at(2);
    bool rwa = false;
    const double tau = baselines::raman_time_limit(om, os, op, &rwa);
    const auto [delta_eff, omega_eff] = baselines::effective_two_mode(om, os, op);
    table.rows.push_back({om, os, op, tau, time_to_periods(tau), delta_eff,
                          omega_eff, rwa ? 1.0 : 0.0});
    summary["entries"].push_back({{"omega_m", om},
                                  {"omega_s", os},
                                  {"omega_p", op},
                                  {"tau_lim", tau},
                                  {"tau_lim_periods", time_to_periods(tau)},
                                  {"delta_eff", delta_eff},
                                  {"omega_eff", omega_eff},
                                  {"rwa_valid", rwa}});
  }
  const std::string text = io::write_csv(table);
  io::write_text_file(join(out_dir, "limits.csv"), text);
  manifest.add_output("limits", "limits.csv", text);
  return summary;
}

}  // namespace

json run_baseline(const json& user_config, const std::string& out_dir, int workers) {
  const json cfg = io::validate_config(user_config);
  ensure_dir(out_dir);
  RunManifest manifest = RunManifest::make("baseline", cfg);
  const std::string mode = cfg.at("baseline").at("mode");
  json summary;
  if (mode == "sideband") {
    summary = sideband_baseline(cfg, manifest, out_dir);
  } else if (mode == "stirap") {
    summary = stirap_baseline(cfg, manifest, out_dir, workers);
  } else {
    summary = limits_baseline(cfg, manifest, out_dir);
  }
  finish_run(manifest, summary, out_dir);
  return summary;
}

json run_train(const json& user_config, const std::string& out_dir,
               const std::string& teacher_checkpoint) {
  const json cfg = io::validate_config(user_config);
  ensure_dir(out_dir);
  const rl::EnvConfig env_cfg = io::env_from_config(cfg);
  rl::Environment env(env_cfg);
  rl::SacAgent agent(env.observation_dim(), env.action_dim(),
                     io::agent_from_config(cfg), io::seed_from_config(cfg));
  if (!teacher_checkpoint.empty())
    rl::warm_start_from(rl::read_checkpoint_file(teacher_checkpoint), agent);

  const std::string env_hash = io::env_hash_of_config(cfg);
  const rl::TrainOptions opts = io::train_options_from_config(cfg);

  // Streamed so a long run's progress is inspectable while it trains.
  std::ofstream curve_stream(join(out_dir, "curve.csv"));
  curve_stream << "episode,net_reward,mean_reward,mean_quotient,eval_score,"
                  "alpha,q1_loss,q2_loss,actor_loss\n";
  const auto on_episode = [&](const rl::CurvePoint& p) {
    curve_stream << p.episode << ',' << io::format_g17(p.net_reward) << ','
                 << io::format_g17(p.mean_reward) << ','
                 << io::format_g17(p.mean_quotient) << ','
                 << io::format_g17(p.eval_score) << ','
                 << io::format_g17(p.alpha) << ',' << io::format_g17(p.q1_loss)
                 << ',' << io::format_g17(p.q2_loss) << ','
                 << io::format_g17(p.actor_loss) << '\n';
    curve_stream.flush();
  };

  const rl::TrainResult result = train(env, agent, opts, env_hash, on_episode);
  curve_stream.close();

  RunManifest manifest = RunManifest::make("train", cfg);
  manifest.add_output("curve", "curve.csv",
                      io::read_text_file(join(out_dir, "curve.csv")));
  rl::write_checkpoint_file(join(out_dir, "best.ckpt"), result.best_checkpoint);
  manifest.add_output(
      "best_checkpoint", "best.ckpt",
      std::string(result.best_checkpoint.begin(), result.best_checkpoint.end()));
  const auto final_ckpt = rl::Checkpoint::serialize(agent, env_hash);
  rl::write_checkpoint_file(join(out_dir, "final.ckpt"), final_ckpt);
  manifest.add_output("final_checkpoint", "final.ckpt",
                      std::string(final_ckpt.begin(), final_ckpt.end()));

  json summary;
  summary["episodes"] = static_cast<long>(result.curve.size());
  summary["best_episode"] = result.best_episode;
  summary["best_eval_score"] = result.best_eval_score;
  summary["diverged"] = result.diverged;
  if (result.diverged) summary["divergence_reason"] = result.divergence_reason;
  summary["total_env_steps"] = result.total_env_steps;
  summary["total_updates"] = result.total_updates;
  summary["env_hash"] = env_hash;
  finish_run(manifest, summary, out_dir);
  return summary;
}

json run_evaluate(const json& user_config, const std::string& out_dir,
                  const std::string& checkpoint_path, bool force) {
  const json cfg = io::validate_config(user_config);
  ensure_dir(out_dir);
  const rl::EnvConfig env_cfg = io::env_from_config(cfg);
  const std::string env_hash = io::env_hash_of_config(cfg);
  rl::SacAgent agent = rl::Checkpoint::deserialize(
      rl::read_checkpoint_file(checkpoint_path), env_hash, force);

  rl::Environment env(env_cfg);
  if (agent.obs_dim() != env.observation_dim() ||
      agent.action_dim() != env.action_dim())
    throw std::invalid_argument("evaluate: checkpoint dimensions do not match "
                                "the configured environment");

  const int episodes = cfg.at("evaluate").at("episodes");
  const double target = cfg.at("evaluate").at("target_quotient");

  RunManifest manifest = RunManifest::make("evaluate", cfg);
  json summary;
  summary["episodes"] = json::array();
  const bool tripartite = env_cfg.system.n_modes() == 3;
  const int magnon = env_cfg.system.mode_index("magnon");

  for (int e = 0; e < episodes; ++e) {
    Vec obs = env.reset();
    bool done = false;
    while (!done) {
      const auto [action, logp] = agent.sample_action(obs, /*deterministic=*/true);
      auto res = env.step(action);
      obs = std::move(res.observation);
      done = res.done;
    }
    const EpisodeTrace& trace = env.trace();

    std::ostringstream tname;
    tname << "trace_" << e << ".csv";
    const std::string trace_text = io::write_trace_csv(trace, env_cfg.system);
    io::write_text_file(join(out_dir, tname.str()), trace_text);
    manifest.add_output(tname.str(), tname.str(), trace_text);

    // The applied controls, replayable through `simulate` and directly
    // plottable (for the complex slot: Re/Im per step, the polar data).
    ControlSchedule applied;
    applied.dt = env_cfg.dt;
    applied.values.resize(env_cfg.system.n_control_slots, trace.n_steps());
    for (int k = 0; k < trace.n_steps(); ++k)
      applied.values.col(k) = trace.steps[k].controls;
    std::ostringstream sname;
    sname << "schedule_" << e << ".csv";
    const std::string sched_text = io::write_schedule_csv(applied, env_cfg.system);
    io::write_text_file(join(out_dir, sname.str()), sched_text);
    manifest.add_output(sname.str(), sname.str(), sched_text);

    json ep;
    ep["net_reward"] = trace.net_reward;
    ep["min_quotient"] = trace.min_quotient;
    ep["time_of_min_periods"] = time_to_periods(trace.time_of_min);
    const auto crossing = trace.first_crossing(target);
    ep["tau_drl_periods"] =
        crossing ? json(time_to_periods(*crossing)) : json(nullptr);
    if (tripartite) {
      double max_magnon = 0.0;
      for (const auto& s : trace.steps)
        max_magnon = std::max(max_magnon, s.occupancies(magnon));
      ep["max_magnon_occupancy"] = max_magnon;
    }
    summary["episodes"].push_back(ep);
  }
  summary["target_quotient"] = target;
  finish_run(manifest, summary, out_dir);
  return summary;
}

json run_export(const std::vector<std::string>& inputs, const std::string& format,
                const std::string& out_dir, bool merge) {
  if (format != "csv" && format != "json")
    throw std::invalid_argument("export: format must be 'csv' or 'json'");
  if (inputs.empty()) throw std::invalid_argument("export: no inputs");
  ensure_dir(out_dir);

  json summary;
  summary["outputs"] = json::array();
  RunManifest manifest = RunManifest::make("export", json{{"format", format}});

  if (merge && format == "csv") {
    io::CsvTable merged;
    for (size_t idx = 0; idx < inputs.size(); ++idx) {
      const io::CsvTable t = io::parse_csv(io::read_text_file(inputs[idx]));
      if (merged.columns.empty()) {
        merged.columns = t.columns;
        merged.columns.insert(merged.columns.begin(), "source");
      } else if (std::vector<std::string>(merged.columns.begin() + 1,
                                          merged.columns.end()) != t.columns) {
        throw std::invalid_argument("export: schema mismatch between '" +
                                    inputs.front() + "' and '" + inputs[idx] + "'");
      }
      for (auto row : t.rows) {
        row.insert(row.begin(), static_cast<double>(idx));
        merged.rows.push_back(std::move(row));
      }
    }
    const std::string text = io::write_csv(merged);
    io::write_text_file(join(out_dir, "merged.csv"), text);
    manifest.add_output("merged", "merged.csv", text);
    summary["outputs"].push_back("merged.csv");
  } else {
    for (const auto& input : inputs) {
      const io::CsvTable t = io::parse_csv(io::read_text_file(input));
      const std::string stem = fs::path(input).stem().string();
      if (format == "csv") {
        const std::string text = io::write_csv(t);
        io::write_text_file(join(out_dir, stem + ".csv"), text);
        manifest.add_output(stem, stem + ".csv", text);
        summary["outputs"].push_back(stem + ".csv");
      } else {
        json records = json::array();
        for (const auto& row : t.rows) {
          json rec;
          for (size_t i = 0; i < t.columns.size(); ++i) rec[t.columns[i]] = row[i];
          records.push_back(rec);
        }
        json doc;
        doc["schema_version"] = 1;
        doc["columns"] = t.columns;
        doc["records"] = records;
        const std::string text = doc.dump(2) + "\n";
        io::write_text_file(join(out_dir, stem + ".json"), text);
        manifest.add_output(stem, stem + ".json", text);
        summary["outputs"].push_back(stem + ".json");
      }
    }
  }
  finish_run(manifest, summary, out_dir);
  return summary;
}

json rerun_from_manifest(const std::string& manifest_path,
                         const std::string& out_dir) {
  const RunManifest m = RunManifest::read(manifest_path);
  if (m.command == "simulate") return run_simulate(m.config, out_dir);
  if (m.command == "baseline") return run_baseline(m.config, out_dir);
  if (m.command == "train") return run_train(m.config, out_dir);
  throw std::invalid_argument("rerun: command '" + m.command +
                              "' cannot be re-executed from a manifest alone");
}

}  // namespace cli
}  // namespace magnocool
