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

#include "liftbid/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "liftbid/config.hpp"

namespace liftbid::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return in;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument("bad number in CSV: '" + s + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& s) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument("bad integer in CSV: '" + s + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& s) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0' || s.front() == '-') {
    throw std::invalid_argument("bad id in CSV: '" + s + "'");
  }
  return v;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

/// Feature dimension from a header of the form id, x_0..x_{D-1}, rest...
std::size_t count_features(const std::vector<std::string>& header,
                           std::size_t first) {
  std::size_t d = 0;
  while (first + d < header.size() &&
         header[first + d] == "x_" + std::to_string(d)) {
    ++d;
  }
  return d;
}

void expect_column(const std::vector<std::string>& header, std::size_t i,
                   const std::string& name, const fs::path& path) {
  if (i >= header.size() || header[i] != name) {
    throw std::invalid_argument(path.string() + ": expected column '" + name +
                                "' at position " + std::to_string(i));
  }
}

}  // namespace

fs::path world_sidecar_path(const fs::path& csv_path) {
  fs::path p = csv_path;
  p.replace_extension(".json");
  return p;
}

void write_world(const fs::path& csv_path, const WorldConfig& cfg,
                 std::uint64_t seed, const Population& population) {
  std::ofstream out = open_out(csv_path);
  out << "user_id";
  for (std::size_t d = 0; d < cfg.feature_dim; ++d) out << ",x_" << d;
  for (int k = 0; k < kNumStates; ++k) out << ",curve_" << k;
  out << '\n';
  for (const auto& u : population) {
    out << u.user_id;
    for (const double v : u.x) out << ',' << format_double(v);
    for (const double v : u.outcome_curve) out << ',' << format_double(v);
    out << '\n';
  }
  json side;
  side["world"] = world_config_to_json(cfg);
  side["seed"] = seed;
  side["n_users"] = population.size();
  write_json(world_sidecar_path(csv_path), side);
}

WorldFile read_world(const fs::path& csv_path) {
  WorldFile wf;
  const json side = read_json(world_sidecar_path(csv_path));
  wf.config = world_config_from_json(side.at("world"));
  wf.seed = side.at("seed").get<std::uint64_t>();

  std::ifstream in = open_in(csv_path);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty world CSV");
  strip_cr(line);
  const auto header = split(line);
  expect_column(header, 0, "user_id", csv_path);
  const std::size_t d = count_features(header, 1);
  if (d != wf.config.feature_dim) {
    throw std::invalid_argument("world CSV feature count disagrees with sidecar");
  }
  for (int k = 0; k < kNumStates; ++k) {
    expect_column(header, 1 + d + k, "curve_" + std::to_string(k), csv_path);
  }
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("world CSV row has wrong column count");
    }
    UserProfile u;
    u.user_id = parse_uint(cells[0]);
    u.x.resize(d);
    for (std::size_t j = 0; j < d; ++j) u.x[j] = parse_double(cells[1 + j]);
    for (int k = 0; k < kNumStates; ++k) {
      u.outcome_curve[k] = parse_double(cells[1 + d + k]);
    }
    attach_traits(wf.config, u);
    wf.population.push_back(std::move(u));
  }
  return wf;
}

void write_training_log(const fs::path& path, const TrainingLog& log) {
  std::ofstream out = open_out(path);
  const std::size_t d = log.n() > 0 ? log.records().front().x.size() : 0;
  out << "user_id";
  for (std::size_t j = 0; j < d; ++j) out << ",x_" << j;
  out << ",s_obs,y_obs,est_cvr,pre_campaign_impressions,ad_size\n";
  for (const auto& r : log.records()) {
    out << r.user_id;
    for (const double v : r.x) out << ',' << format_double(v);
    out << ',' << r.s_obs.index() << ',' << r.y_obs << ','
        << format_double(r.est_cvr) << ',' << r.pre_campaign_impressions << ','
        << r.ad_size.id() << '\n';
  }
}

TrainingLog read_training_log(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty log CSV");
  strip_cr(line);
  const auto header = split(line);
  expect_column(header, 0, "user_id", path);
  const std::size_t d = count_features(header, 1);
  const std::vector<std::string> tail = {"s_obs", "y_obs", "est_cvr",
                                         "pre_campaign_impressions"};
  for (std::size_t k = 0; k < tail.size(); ++k) {
    expect_column(header, 1 + d + k, tail[k], path);
  }
  const bool has_size =
      header.size() > 5 + d && header[5 + d] == "ad_size";
  std::vector<TrainingLogRecord> records;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("log CSV row has wrong column count");
    }
    TrainingLogRecord r;
    r.user_id = parse_uint(cells[0]);
    r.x.resize(d);
    for (std::size_t j = 0; j < d; ++j) r.x[j] = parse_double(cells[1 + j]);
    r.s_obs = ExposureState(static_cast<int>(parse_int(cells[1 + d])));
    r.y_obs = static_cast<int>(parse_int(cells[2 + d]));
    r.est_cvr = parse_double(cells[3 + d]);
    r.pre_campaign_impressions = parse_int(cells[4 + d]);
    if (has_size) r.ad_size = AdSize(static_cast<int>(parse_int(cells[5 + d])));
    records.push_back(std::move(r));
  }
  return TrainingLog(std::move(records));
}

json regressor_to_json(const Regressor& r) {
  json j;
  if (const auto* ridge = std::get_if<RidgeRegressor>(&r)) {
    j["type"] = to_string(LearnerKind::kWeightedRidge);
    j["coef"] = ridge->coef;
    j["intercept"] = ridge->intercept;
  } else {
    const auto& b = std::get<BoostedStumps>(r);
    j["type"] = to_string(LearnerKind::kWeightedBoostedStumps);
    j["base"] = b.base;
    j["stumps"] = json::array();
    for (const auto& s : b.stumps) {
      j["stumps"].push_back({{"feature", s.feature},
                             {"threshold", s.threshold},
                             {"left", s.left},
                             {"right", s.right}});
    }
  }
  return j;
}

Regressor regressor_from_json(const json& j) {
  const LearnerKind kind =
      learner_kind_from_string(j.at("type").get<std::string>());
  if (kind == LearnerKind::kWeightedRidge) {
    RidgeRegressor r;
    r.coef = j.at("coef").get<std::vector<double>>();
    r.intercept = j.at("intercept").get<double>();
    return r;
  }
  BoostedStumps b;
  b.base = j.at("base").get<double>();
  for (const auto& s : j.at("stumps")) {
    b.stumps.push_back({s.at("feature").get<std::size_t>(),
                        s.at("threshold").get<double>(),
                        s.at("left").get<double>(),
                        s.at("right").get<double>()});
  }
  return b;
}

json model_bank_to_json(const ModelBank& bank) {
  json j;
  j["learner"] = {{"learner_kind", to_string(bank.spec.learner_kind)},
                  {"regularization", bank.spec.regularization},
                  {"rounds", bank.spec.rounds},
                  {"learning_rate", bank.spec.learning_rate},
                  {"propensity_regularization",
                   bank.spec.propensity_regularization},
                  {"min_outcome_records", bank.spec.min_outcome_records}};
  j["clip_floor"] = bank.clip_floor;
  j["ad_size_groups"] = bank.ad_size_groups;
  j["propensity"] = json::array();
  for (std::size_t g = 0; g < bank.propensity.size(); ++g) {
    const PropensityModel& p = bank.propensity[g];
    std::vector<bool> active(p.active_states().begin(),
                             p.active_states().end());
    j["propensity"].push_back({{"ad_size", g},
                               {"fitted", p.fitted()},
                               {"active", active},
                               {"feature_mean", p.feature_mean},
                               {"feature_scale", p.feature_scale},
                               {"weights", p.weights}});
  }
  j["impressed_cvr"] = json::array();
  for (const auto& m : bank.impressed_cvr) {
    j["impressed_cvr"].push_back(
        {{"ad_size", m.ad_size.id()}, {"model", regressor_to_json(m.regressor)}});
  }
  j["outcome"] = json::array();
  for (const auto& [key, f] : bank.outcome) {
    j["outcome"].push_back({{"state", f.state.index()},
                            {"ad_size", f.ad_size.id()},
                            {"mode", to_string(f.training_mode)},
                            {"model", regressor_to_json(f.regressor)}});
  }
  j["warnings"] = bank.warnings;
  return j;
}

ModelBank model_bank_from_json(const json& j) {
  ModelBank bank;
  const json& l = j.at("learner");
  bank.spec.learner_kind =
      learner_kind_from_string(l.at("learner_kind").get<std::string>());
  bank.spec.regularization = l.at("regularization").get<double>();
  bank.spec.rounds = l.at("rounds").get<int>();
  bank.spec.learning_rate = l.at("learning_rate").get<double>();
  bank.spec.propensity_regularization =
      l.at("propensity_regularization").get<double>();
  bank.spec.min_outcome_records = l.value("min_outcome_records", 1);
  bank.clip_floor = j.at("clip_floor").get<double>();
  bank.ad_size_groups = j.at("ad_size_groups").get<int>();
  for (const auto& pj : j.at("propensity")) {
    PropensityModel p;
    p.feature_mean = pj.at("feature_mean").get<std::vector<double>>();
    p.feature_scale = pj.at("feature_scale").get<std::vector<double>>();
    p.weights = pj.at("weights").get<std::vector<std::vector<double>>>();
    const auto active = pj.at("active").get<std::vector<bool>>();
    if (active.size() != kNumStates) {
      throw std::invalid_argument("propensity 'active' needs 8 entries");
    }
    std::array<bool, kNumStates> a{};
    for (int k = 0; k < kNumStates; ++k) a[k] = active[k];
    p.set_state(a, bank.clip_floor, pj.at("fitted").get<bool>());
    bank.propensity.push_back(std::move(p));
  }
  for (const auto& mj : j.at("impressed_cvr")) {
    ImpressedCvrModel m;
    m.ad_size = AdSize(mj.at("ad_size").get<int>());
    m.regressor = regressor_from_json(mj.at("model"));
    bank.impressed_cvr.push_back(std::move(m));
  }
  for (const auto& oj : j.at("outcome")) {
    OutcomePredictor f;
    f.state = ExposureState(oj.at("state").get<int>());
    f.ad_size = AdSize(oj.at("ad_size").get<int>());
    f.training_mode = training_mode_from_string(oj.at("mode").get<std::string>());
    f.regressor = regressor_from_json(oj.at("model"));
    bank.outcome.emplace(
        ModelBank::Key{f.state.index(), f.ad_size.id(), f.training_mode}, f);
  }
  bank.warnings = j.value("warnings", std::vector<std::string>{});
  return bank;
}

void write_lift_table(const fs::path& path, const LiftTable& table) {
  std::ofstream out = open_out(path);
  out << "key,s,raw,floored,smoothed\n";
  for (const auto& row : table.rows()) {
    for (int k = 0; k < kNumLiftStates; ++k) {
      out << row.key << ',' << k + 1 << ',' << format_double(row.raw[k]) << ','
          << format_double(row.floored[k]) << ','
          << format_double(row.smoothed[k]) << '\n';
    }
  }
}

void write_hourly_csv(const fs::path& path, std::span<const ArmRun> arms) {
  std::ofstream out = open_out(path);
  out << "hour,arm,spend,alpha,err,mean_bid,win_rate\n";
  for (const auto& arm : arms) {
    for (const auto& h : arm.run->hourly) {
      out << h.hour << ',' << arm.arm << ',' << format_double(h.spend) << ','
          << format_double(h.alpha) << ',' << format_double(h.err) << ','
          << format_double(h.mean_bid) << ',' << format_double(h.win_rate)
          << '\n';
    }
  }
}

void write_bids_csv(const fs::path& path, std::span<const ArmRun> arms) {
  std::ofstream out = open_out(path);
  out << "hour,arm,user_id,strategy,bid,signal,alpha\n";
  for (const auto& arm : arms) {
    for (const auto& b : arm.run->trace) {
      out << b.hour << ',' << arm.arm << ',' << b.user_id << ','
          << to_string(b.strategy) << ',' << format_double(b.bid) << ','
          << format_double(b.signal) << ',' << format_double(b.alpha) << '\n';
    }
  }
}

void write_unbiasedness_csv(const fs::path& path,
                            std::span<const UnbiasednessReport> reports) {
  std::ofstream out = open_out(path);
  out << "state,replicate,n_state,ips_loss,erm_loss,oracle\n";
  for (const auto& rep : reports) {
    for (std::size_t r = 0; r < rep.replicates.size(); ++r) {
      const auto& x = rep.replicates[r];
      out << rep.state.label() << ',' << r << ',' << x.n_state << ','
          << format_double(x.ips) << ',' << format_double(x.erm) << ','
          << format_double(rep.oracle) << '\n';
    }
  }
}

namespace {

json opt(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json metrics_to_json(const MetricsReport& m) {
  return {{"users", m.users},
          {"impressions", m.impressions},
          {"reached_users", m.reached_users},
          {"visitors", m.visitors},
          {"spend", m.spend},
          {"impressions_per_user", opt(m.impressions_per_user)},
          {"reach_rate", opt(m.reach_rate)},
          {"visits_per_user", opt(m.visits_per_user)},
          {"share_of_visitors", opt(m.share_of_visitors)},
          {"cost_per_impression", opt(m.cost_per_impression)},
          {"cost_per_reach", opt(m.cost_per_reach)},
          {"cost_per_visit", opt(m.cost_per_visit)},
          {"incremental_conversions", m.incremental_conversions},
          {"incremental_conversions_per_spend",
           opt(m.incremental_conversions_per_spend)},
          {"mean_bid", opt(m.mean_bid)},
          {"hourly_mean_bid_cv", opt(m.hourly_mean_bid_cv)}};
}

json ab_test_to_json(const AbTestResult& r) {
  json ratio = json::object();
  for (const auto& [k, v] : r.ratio) ratio[k] = opt(v);
  return {{"treatment", r.treatment_name},
          {"control", r.control_name},
          {"arms",
           {{r.treatment_name,
             {{"strategy", to_string(r.treatment_run.strategy)},
              {"budget", r.treatment_run.budget},
              {"metrics", metrics_to_json(r.treatment)}}},
            {r.control_name,
             {{"strategy", to_string(r.control_run.strategy)},
              {"budget", r.control_run.budget},
              {"metrics", metrics_to_json(r.control)}}}}},
          {"ratio", ratio}};
}

json read_json(const fs::path& path) {
  std::ifstream in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace liftbid::io
