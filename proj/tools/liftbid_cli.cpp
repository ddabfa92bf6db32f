// Copyright 2026 The liftbid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: world generation, logging, training, campaigns,
// A/B tests, the IPS unbiasedness check and PID tuning.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liftbid/config.hpp"
#include "liftbid/experiment.hpp"
#include "liftbid/io.hpp"
#include "liftbid/rng.hpp"

namespace fs = std::filesystem;
using namespace liftbid;
using nlohmann::json;

namespace {

struct Common {
  std::string config;
  std::uint64_t seed = 1;
  std::string out = "out";
  bool trace_bids = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "experiment config JSON");
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_flag("--trace-bids", c.trace_bids, "write per-bid records");
}

ExperimentConfig load(const Common& c) {
  ExperimentConfig cfg;
  if (!c.config.empty()) cfg = load_experiment_config(c.config);
  cfg.validate();
  return cfg;
}

void log_line(const std::string& msg) { std::cerr << msg << '\n'; }

void write_campaign_outputs(const fs::path& out,
                            std::span<const io::ArmRun> arms, bool trace) {
  io::write_hourly_csv(out / "hourly.csv", arms);
  if (trace) io::write_bids_csv(out / "bids.csv", arms);
}

int cmd_gen_world(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const Population pop = generate_population(cfg.world, c.seed);
  const fs::path path = fs::path(c.out) / "world.csv";
  io::write_world(path, cfg.world, c.seed, pop);
  log_line("wrote " + path.string() + " (" + std::to_string(pop.size()) +
           " users)");
  return 0;
}

int cmd_log_sim(const Common& c, const std::string& world_csv) {
  const ExperimentConfig cfg = load(c);
  const io::WorldFile wf = io::read_world(world_csv);
  const TrainingLog log = run_logging_campaign(
      wf.population, cfg.logging, wf.config, derive_seed(c.seed, "logging-run"));
  const fs::path path = fs::path(c.out) / "training_log.csv";
  io::write_training_log(path, log);
  std::string counts;
  for (const auto n : log.n_per_state()) counts += " " + std::to_string(n);
  log_line("wrote " + path.string() + "; records per state:" + counts);
  return 0;
}

int cmd_train(const Common& c, const std::string& log_csv) {
  const ExperimentConfig cfg = load(c);
  const TrainingLog log = io::read_training_log(log_csv);
  const ModelBank bank = train_model_bank(log, cfg.learner,
                                          cfg.world.ad_size_groups,
                                          cfg.clip_floor);
  for (const auto& w : bank.warnings) log_line("warning: " + w);
  const fs::path out(c.out);
  io::write_json(out / "model_bank.json", io::model_bank_to_json(bank));

  std::vector<LiftRow> rows;
  rows.reserve(log.n());
  for (const auto& r : log.records()) {
    rows.push_back(make_lift_row(bank, r.user_id, r.x, r.ad_size,
                                 cfg.lift_training_mode));
  }
  io::write_lift_table(out / "lift_table.csv", LiftTable(std::move(rows)));
  log_line("wrote " + (out / "model_bank.json").string() + " and " +
           (out / "lift_table.csv").string());
  return 0;
}

int cmd_simulate(const Common& c, const std::string& strategy_name) {
  const ExperimentConfig cfg = load(c);
  const Strategy strategy = strategy_from_string(strategy_name);
  const Pipeline pipeline = prepare_pipeline(cfg, c.seed);
  const CampaignResult run = run_pipeline_campaign(
      pipeline, strategy, cfg.pid, derive_seed(c.seed, "simulate"),
      c.trace_bids);
  const std::string arm(to_string(strategy));
  json metrics;
  metrics["seed"] = c.seed;
  metrics["arms"][arm] = {{"strategy", arm},
                          {"budget", run.budget},
                          {"metrics", io::metrics_to_json(compute_metrics(run))}};
  const fs::path out(c.out);
  io::write_json(out / "metrics.json", metrics);
  const io::ArmRun arms[] = {{arm, &run}};
  write_campaign_outputs(out, arms, c.trace_bids);
  log_line("spend " + io::format_double(run.total_spend) + " of " +
           io::format_double(run.budget));
  return 0;
}

int cmd_ab_test(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const Pipeline pipeline = prepare_pipeline(cfg, c.seed);
  const AbTestResult ab =
      run_default_ab_test(pipeline, derive_seed(c.seed, "ab"), c.trace_bids);
  json metrics = io::ab_test_to_json(ab);
  metrics["seed"] = c.seed;
  const fs::path out(c.out);
  io::write_json(out / "metrics.json", metrics);
  const io::ArmRun arms[] = {{ab.treatment_name, &ab.treatment_run},
                             {ab.control_name, &ab.control_run}};
  write_campaign_outputs(out, arms, c.trace_bids);
  for (const auto& [k, v] : ab.ratio) {
    std::printf("%-36s %s\n", k.c_str(),
                v ? io::format_double(*v).c_str() : "undefined");
  }
  return 0;
}

int cmd_unbiasedness(const Common& c, std::vector<int> states,
                     int replications, std::size_t users) {
  ExperimentConfig cfg = load(c);
  cfg.world.n_users = users;
  const Population pop = generate_population(cfg.world, c.seed);
  if (states.empty()) states = {0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<UnbiasednessReport> reports;
  json summary = json::array();
  for (const int k : states) {
    const ExposureState s(k);
    std::vector<double> pred;
    try {
      pred = reference_predictions(cfg, pop, s, derive_seed(c.seed, "reference"));
    } catch (const std::invalid_argument& e) {
      log_line("skipping state " + std::string(s.label()) + ": " + e.what());
      continue;
    }
    reports.push_back(check_unbiasedness(cfg.world, pop, cfg.logging, pred, s,
                                         replications,
                                         derive_seed(c.seed, "unbiasedness")));
    const auto& r = reports.back();
    summary.push_back({{"state", std::string(s.label())},
                       {"oracle", r.oracle},
                       {"ips_mean", r.ips_mean},
                       {"ips_se", r.ips_se},
                       {"erm_mean", r.erm_mean},
                       {"erm_se", r.erm_se},
                       {"ips_within_3se", r.ips_pass},
                       {"erm_outside_3se", r.erm_biased}});
    std::printf("state %-5s oracle %.6f ips %.6f (se %.6f) erm %.6f (se %.6f)\n",
                std::string(s.label()).c_str(), r.oracle, r.ips_mean, r.ips_se,
                r.erm_mean, r.erm_se);
  }
  const fs::path out(c.out);
  io::write_unbiasedness_csv(out / "unbiasedness.csv", reports);
  io::write_json(out / "unbiasedness.json", summary);
  return 0;
}

int cmd_tune_pid(const Common& c, const std::string& strategy_name,
                 int n_seeds) {
  const ExperimentConfig cfg = load(c);
  const Strategy strategy = strategy_from_string(strategy_name);
  const Pipeline pipeline = prepare_pipeline(cfg, c.seed);
  const std::vector<PIDConfig> grid = default_gain_grid(cfg.pid);
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < n_seeds; ++i) {
    seeds.push_back(derive_seed(c.seed, "tune", static_cast<std::uint64_t>(i)));
  }
  const PIDConfig best = tune_pid_gains(pipeline, strategy, grid, seeds);
  json j = to_json(cfg)["pid"];
  j["k_p"] = best.k_p;
  j["k_i"] = best.k_i;
  j["k_d"] = best.k_d;
  json runs = json::array();
  for (const auto s : seeds) {
    const CampaignResult r =
        run_pipeline_campaign(pipeline, strategy, best, s, false);
    runs.push_back({{"seed", s},
                    {"spend", r.total_spend},
                    {"budget", r.budget},
                    {"relative_deviation",
                     std::abs(r.total_spend - r.budget) / r.budget}});
  }
  const fs::path out(c.out);
  io::write_json(out / "tuned_pid.json",
                 {{"strategy", std::string(to_string(strategy))},
                  {"pid", j},
                  {"runs", runs}});
  std::printf("k_p %s k_i %s k_d %s\n", io::format_double(best.k_p).c_str(),
              io::format_double(best.k_i).c_str(),
              io::format_double(best.k_d).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liftbid: lift-based bidding simulator"};
  app.require_subcommand(1);

  Common common;
  auto* gen = app.add_subcommand("gen-world", "generate a synthetic population");
  add_common(gen, common);

  std::string world_csv;
  auto* logsim = app.add_subcommand("log-sim", "replay the logging policy");
  add_common(logsim, common);
  logsim->add_option("--world", world_csv, "world CSV (default <out>/world.csv)");

  std::string log_csv;
  auto* train = app.add_subcommand("train", "train the model bank");
  add_common(train, common);
  train->add_option("--log", log_csv,
                    "training log CSV (default <out>/training_log.csv)");

  std::string strategy = "lift";
  auto* sim = app.add_subcommand("simulate", "run one campaign");
  add_common(sim, common);
  sim->add_option("--strategy", strategy, "lift or performance");

  auto* ab = app.add_subcommand("ab-test", "lift versus performance A/B test");
  add_common(ab, common);

  std::vector<int> states;
  int replications = 200;
  std::size_t users = 10000;
  auto* unb = app.add_subcommand("unbiasedness-check",
                                 "Monte Carlo check of the IPS loss");
  add_common(unb, common);
  unb->add_option("--state", states, "bucket indices (default all)");
  unb->add_option("--replications", replications, "replicated logs");
  unb->add_option("--users", users, "population size");

  int tune_seeds = 3;
  auto* tune = app.add_subcommand("tune-pid", "grid-search PID gains");
  add_common(tune, common);
  tune->add_option("--strategy", strategy, "lift or performance");
  tune->add_option("--seeds", tune_seeds, "campaign seeds per candidate");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out(common.out);
    if (*gen) return cmd_gen_world(common);
    if (*logsim) {
      return cmd_log_sim(common, world_csv.empty() ? (out / "world.csv").string()
                                                   : world_csv);
    }
    if (*train) {
      return cmd_train(common, log_csv.empty()
                                   ? (out / "training_log.csv").string()
                                   : log_csv);
    }
    if (*sim) return cmd_simulate(common, strategy);
    if (*ab) return cmd_ab_test(common);
    if (*unb) return cmd_unbiasedness(common, states, replications, users);
    if (*tune) return cmd_tune_pid(common, strategy, tune_seeds);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
