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

#include "liftbid/learners.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace liftbid {

std::string_view to_string(LearnerKind kind) {
  return kind == LearnerKind::kWeightedRidge ? "weighted_ridge"
                                             : "weighted_boosted_stumps";
}

LearnerKind learner_kind_from_string(std::string_view name) {
  if (name == "weighted_ridge") return LearnerKind::kWeightedRidge;
  if (name == "weighted_boosted_stumps") {
    return LearnerKind::kWeightedBoostedStumps;
  }
  throw std::invalid_argument("unknown learner_kind: " + std::string(name));
}

std::string_view to_string(TrainingMode mode) {
  return mode == TrainingMode::kErm ? "ERM" : "IPS";
}

TrainingMode training_mode_from_string(std::string_view name) {
  if (name == "ERM" || name == "erm") return TrainingMode::kErm;
  if (name == "IPS" || name == "ips") return TrainingMode::kIps;
  throw std::invalid_argument("unknown training mode: " + std::string(name));
}

void WeightedLearnerSpec::validate() const {
  if (!(regularization >= 0.0)) {
    throw std::invalid_argument("regularization must be >= 0");
  }
  if (!(propensity_regularization > 0.0)) {
    throw std::invalid_argument("propensity_regularization must be > 0");
  }
  if (min_outcome_records < 1) {
    throw std::invalid_argument("min_outcome_records must be >= 1");
  }
  if (learner_kind == LearnerKind::kWeightedBoostedStumps) {
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
      throw std::invalid_argument("learning_rate must lie in (0, 1]");
    }
  }
}

namespace {

void check_training_inputs(std::span<const FeatureVector> xs,
                           std::span<const double> ys,
                           std::span<const double> weights) {
  if (xs.empty()) throw std::invalid_argument("no training samples");
  if (ys.size() != xs.size() || weights.size() != xs.size()) {
    throw std::invalid_argument("xs, ys and weights must have equal length");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("sample weights must be positive and finite");
    }
  }
}

std::vector<double> normalized_weights(std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double scale = static_cast<double>(weights.size()) / total;
  std::vector<double> out(weights.begin(), weights.end());
  for (double& w : out) w *= scale;
  return out;
}

std::string state_name(ExposureState s) {
  return "exposure state " + std::string(s.label());
}

}  // namespace

// ---------------------------------------------------------------- ridge ---

double RidgeRegressor::predict(std::span<const double> x) const {
  if (x.size() != coef.size()) {
    throw std::invalid_argument("feature dimension mismatch");
  }
  double out = intercept;
  for (std::size_t j = 0; j < coef.size(); ++j) out += coef[j] * x[j];
  return out;
}

RidgeRegressor fit_weighted_ridge(std::span<const FeatureVector> xs,
                                  std::span<const double> ys,
                                  std::span<const double> weights,
                                  double lambda) {
  check_training_inputs(xs, ys, weights);
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  const std::size_t n = xs.size();
  const std::size_t d = xs.front().size();

  // Probability weights: w_i / sum w.
  Eigen::VectorXd w(n);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) w[i] = weights[i] / total;

  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (xs[i].size() != d) throw std::invalid_argument("ragged feature rows");
    for (std::size_t j = 0; j < d; ++j) x(i, j) = xs[i][j];
    y[i] = ys[i];
  }
  const Eigen::RowVectorXd x_mean = w.transpose() * x;
  const double y_mean = w.dot(y);
  x.rowwise() -= x_mean;
  y.array() -= y_mean;

  Eigen::MatrixXd gram = x.transpose() * w.asDiagonal() * x;
  gram.diagonal().array() += lambda;
  const Eigen::VectorXd rhs = x.transpose() * (w.array() * y.array()).matrix();
  const Eigen::VectorXd beta = gram.completeOrthogonalDecomposition().solve(rhs);

  RidgeRegressor model;
  model.coef.assign(beta.data(), beta.data() + d);
  model.intercept = y_mean - x_mean.dot(beta);
  return model;
}

// -------------------------------------------------------------- stumps ---

double BoostedStumps::predict(std::span<const double> x) const {
  double out = base;
  for (const auto& s : stumps) {
    if (s.feature >= x.size()) {
      throw std::invalid_argument("feature dimension mismatch");
    }
    out += x[s.feature] <= s.threshold ? s.left : s.right;
  }
  return out;
}

BoostedStumps fit_weighted_boosted_stumps(std::span<const FeatureVector> xs,
                                          std::span<const double> ys,
                                          std::span<const double> weights,
                                          const WeightedLearnerSpec& spec) {
  check_training_inputs(xs, ys, weights);
  spec.validate();
  const std::size_t n = xs.size();
  const std::size_t d = xs.front().size();
  const auto w = normalized_weights(weights);
  const double lambda = spec.regularization;

  BoostedStumps model;
  double wy = 0.0;
  for (std::size_t i = 0; i < n; ++i) wy += w[i] * ys[i];
  model.base = wy / static_cast<double>(n);

  std::vector<std::vector<std::size_t>> order(d);
  for (std::size_t j = 0; j < d; ++j) {
    order[j].resize(n);
    std::iota(order[j].begin(), order[j].end(), 0);
    std::stable_sort(order[j].begin(), order[j].end(),
                     [&](std::size_t a, std::size_t b) {
                       return xs[a][j] < xs[b][j];
                     });
  }

  std::vector<double> fitted(n, model.base);
  std::vector<double> residual(n);
  for (int round = 0; round < spec.rounds; ++round) {
    double total_wr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual[i] = ys[i] - fitted[i];
      total_wr += w[i] * residual[i];
    }
    const double total_w = static_cast<double>(n);

    double best_gain = 0.0;
    Stump best;
    bool found = false;
    for (std::size_t j = 0; j < d; ++j) {
      double left_w = 0.0, left_wr = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::size_t i = order[j][k];
        left_w += w[i];
        left_wr += w[i] * residual[i];
        const double here = xs[i][j];
        const double next = xs[order[j][k + 1]][j];
        if (here == next) continue;
        const double right_w = total_w - left_w;
        const double right_wr = total_wr - left_wr;
        const double gain = left_wr * left_wr / (left_w + lambda) +
                            right_wr * right_wr / (right_w + lambda) -
                            total_wr * total_wr / (total_w + lambda);
        if (gain > best_gain) {
          best_gain = gain;
          best.feature = j;
          best.threshold = 0.5 * (here + next);
          best.left = spec.learning_rate * left_wr / (left_w + lambda);
          best.right = spec.learning_rate * right_wr / (right_w + lambda);
          found = true;
        }
      }
    }
    if (!found) break;
    for (std::size_t i = 0; i < n; ++i) {
      fitted[i] += xs[i][best.feature] <= best.threshold ? best.left
                                                         : best.right;
    }
    model.stumps.push_back(best);
  }
  return model;
}

Regressor fit_regressor(std::span<const FeatureVector> xs,
                        std::span<const double> ys,
                        std::span<const double> weights,
                        const WeightedLearnerSpec& spec) {
  if (spec.learner_kind == LearnerKind::kWeightedRidge) {
    return fit_weighted_ridge(xs, ys, weights, spec.regularization);
  }
  return fit_weighted_boosted_stumps(xs, ys, weights, spec);
}

double predict_unclamped(const Regressor& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

double OutcomePredictor::predict(std::span<const double> x) const {
  return std::clamp(predict_unclamped(regressor, x), 0.0, 1.0);
}

double ImpressedCvrModel::predict(std::span<const double> x) const {
  return std::clamp(predict_unclamped(regressor, x), 0.0, 1.0);
}

// ----------------------------------------------------------- propensity ---

namespace {

std::vector<double> propensity_features(std::span<const double> x,
                                        double est_cvr,
                                        std::int64_t pre_impressions) {
  std::vector<double> f(x.begin(), x.end());
  f.push_back(std::log(est_cvr + 1e-3));
  f.push_back(std::log1p(static_cast<double>(pre_impressions)));
  return f;
}

}  // namespace

void PropensityModel::set_state(std::array<bool, kNumStates> active,
                                double clip_floor, bool fitted) {
  active_ = active;
  clip_floor_ = clip_floor;
  fitted_ = fitted;
}

std::array<double, kNumStates> PropensityModel::predict_raw(
    std::span<const double> x, double est_cvr,
    std::int64_t pre_impressions) const {
  if (!fitted_) throw std::logic_error("propensity model is not fitted");
  const auto f = propensity_features(x, est_cvr, pre_impressions);
  if (f.size() != feature_mean.size()) {
    throw std::invalid_argument("propensity feature dimension mismatch");
  }
  std::array<double, kNumStates> scores{};
  double max_score = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kNumStates; ++k) {
    if (!active_[k]) continue;
    const auto& row = weights[k];
    double s = row[0];
    for (std::size_t j = 0; j < f.size(); ++j) {
      s += row[j + 1] * (f[j] - feature_mean[j]) / feature_scale[j];
    }
    scores[k] = s;
    max_score = std::max(max_score, s);
  }
  std::array<double, kNumStates> probs{};
  double total = 0.0;
  for (int k = 0; k < kNumStates; ++k) {
    if (!active_[k]) continue;
    probs[k] = std::exp(scores[k] - max_score);
    total += probs[k];
  }
  for (double& p : probs) p /= total;
  return probs;
}

std::array<double, kNumStates> PropensityModel::predict(
    std::span<const double> x, double est_cvr,
    std::int64_t pre_impressions) const {
  return clip_to_simplex(predict_raw(x, est_cvr, pre_impressions), clip_floor_);
}

std::array<double, kNumStates> clip_to_simplex(
    const std::array<double, kNumStates>& probs, double floor) {
  if (!(floor > 0.0 && floor * kNumStates < 1.0)) {
    throw std::invalid_argument("clip floor must lie in (0, 1/8)");
  }
  std::array<bool, kNumStates> pinned{};
  std::array<double, kNumStates> out = probs;
  for (;;) {
    int n_pinned = 0;
    double free_mass = 0.0;
    for (int k = 0; k < kNumStates; ++k) {
      if (pinned[k]) {
        ++n_pinned;
      } else {
        free_mass += probs[k];
      }
    }
    const double target = 1.0 - floor * n_pinned;
    const int n_free = kNumStates - n_pinned;
    for (int k = 0; k < kNumStates; ++k) {
      if (pinned[k]) {
        out[k] = floor;
      } else {
        out[k] = free_mass > 0.0 ? probs[k] * target / free_mass
                                 : target / n_free;
      }
    }
    bool changed = false;
    for (int k = 0; k < kNumStates; ++k) {
      if (!pinned[k] && out[k] < floor) {
        pinned[k] = true;
        changed = true;
      }
    }
    if (!changed) return out;
  }
}

PropensityModel fit_propensity(const TrainingLog& log,
                               const WeightedLearnerSpec& spec,
                               double clip_floor) {
  spec.validate();
  if (log.n() == 0) throw std::invalid_argument("empty training log");
  if (!(clip_floor > 0.0 && clip_floor * kNumStates < 1.0)) {
    throw std::invalid_argument("clip floor must lie in (0, 1/8)");
  }

  std::array<bool, kNumStates> active{};
  std::vector<int> classes;
  for (int k = 0; k < kNumStates; ++k) {
    active[k] = log.n_state(ExposureState(k)) >= 2;
    if (active[k]) classes.push_back(k);
  }
  if (classes.empty()) {
    throw std::invalid_argument("no exposure state has two or more records");
  }

  std::vector<std::vector<double>> rows;
  std::vector<int> label;  // position in classes
  for (const auto& r : log.records()) {
    if (!active[r.s_obs.index()]) continue;
    rows.push_back(propensity_features(r.x, r.est_cvr,
                                       r.pre_campaign_impressions));
    label.push_back(static_cast<int>(
        std::find(classes.begin(), classes.end(), r.s_obs.index()) -
        classes.begin()));
  }
  const std::size_t n = rows.size();
  const std::size_t nf = rows.front().size();
  const std::size_t p = nf + 1;

  PropensityModel model;
  model.feature_mean.assign(nf, 0.0);
  model.feature_scale.assign(nf, 1.0);
  for (std::size_t j = 0; j < nf; ++j) {
    double m = 0.0;
    for (const auto& row : rows) m += row[j];
    m /= static_cast<double>(n);
    double v = 0.0;
    for (const auto& row : rows) v += (row[j] - m) * (row[j] - m);
    v /= static_cast<double>(n);
    model.feature_mean[j] = m;
    model.feature_scale[j] = v > 1e-24 ? std::sqrt(v) : 1.0;
  }

  Eigen::MatrixXd z(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    z(i, 0) = 1.0;
    for (std::size_t j = 0; j < nf; ++j) {
      z(i, j + 1) = (rows[i][j] - model.feature_mean[j]) / model.feature_scale[j];
    }
  }

  // Free classes: every active class but the first, which is the reference.
  const std::size_t m = classes.size() - 1;
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(p, m);
  const double lambda = spec.propensity_regularization;
  const double inv_n = 1.0 / static_cast<double>(n);

  auto probabilities = [&](const Eigen::MatrixXd& th) {
    Eigen::MatrixXd eta(n, m + 1);
    eta.col(0).setZero();
    if (m > 0) eta.rightCols(m) = z * th;
    Eigen::VectorXd row_max = eta.rowwise().maxCoeff();
    Eigen::MatrixXd e = (eta.colwise() - row_max).array().exp().matrix();
    Eigen::VectorXd sums = e.rowwise().sum();
    Eigen::MatrixXd probs = e.array().colwise() / sums.array();
    double nll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nll -= eta(i, label[i]) - row_max[i] - std::log(sums[i]);
    }
    return std::pair{probs, nll * inv_n};
  };
  auto objective = [&](const Eigen::MatrixXd& th, double nll) {
    return nll + 0.5 * lambda * th.bottomRows(p - 1).squaredNorm();
  };

  if (m > 0) {
    auto [probs, nll] = probabilities(theta);
    double obj = objective(theta, nll);
    for (int iter = 0; iter < 100; ++iter) {
      Eigen::MatrixXd resid = probs.rightCols(m);
      for (std::size_t i = 0; i < n; ++i) {
        if (label[i] > 0) resid(i, label[i] - 1) -= 1.0;
      }
      Eigen::MatrixXd grad = z.transpose() * resid * inv_n;
      grad.bottomRows(p - 1) += lambda * theta.bottomRows(p - 1);

      const std::size_t dim = m * p;
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(dim, dim);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
          Eigen::VectorXd w = probs.col(a + 1).array() *
                              ((a == b ? 1.0 : 0.0) - probs.col(b + 1).array());
          Eigen::MatrixXd block = z.transpose() * w.asDiagonal() * z * inv_n;
          hess.block(a * p, b * p, p, p) = block;
          if (a != b) hess.block(b * p, a * p, p, p) = block.transpose();
        }
        for (std::size_t j = 1; j < p; ++j) hess(a * p + j, a * p + j) += lambda;
      }
      Eigen::VectorXd g = Eigen::Map<Eigen::VectorXd>(grad.data(), dim);
      Eigen::VectorXd step = -hess.ldlt().solve(g);
      if (!step.allFinite()) {
        step = -hess.completeOrthogonalDecomposition().solve(g);
      }

      double t = 1.0;
      bool improved = false;
      for (int ls = 0; ls < 30; ++ls) {
        Eigen::MatrixXd candidate =
            theta + t * Eigen::Map<Eigen::MatrixXd>(step.data(), p, m);
        auto [cp, cnll] = probabilities(candidate);
        const double cobj = objective(candidate, cnll);
        if (cobj <= obj + 1e-4 * t * g.dot(step)) {
          theta = candidate;
          probs = cp;
          improved = obj - cobj > 1e-13;
          obj = cobj;
          break;
        }
        t *= 0.5;
      }
      if (!improved || t * step.lpNorm<Eigen::Infinity>() < 1e-9) break;
    }
  }

  model.weights.assign(kNumStates, std::vector<double>(p, 0.0));
  for (std::size_t c = 1; c < classes.size(); ++c) {
    for (std::size_t j = 0; j < p; ++j) {
      model.weights[classes[c]][j] = theta(j, c - 1);
    }
  }
  model.set_state(active, clip_floor, true);
  return model;
}

std::array<double, kNumStates> predict_propensity(const PropensityModel& model,
                                                  std::span<const double> x,
                                                  double est_cvr,
                                                  std::int64_t pre_impressions) {
  if (!model.fitted()) throw std::logic_error("propensity model is not fitted");
  return model.predict(x, est_cvr, pre_impressions);
}

std::vector<double> record_propensities(const PropensityModel& model,
                                        const TrainingLog& log) {
  std::vector<double> out;
  out.reserve(log.n());
  for (const auto& r : log.records()) {
    out.push_back(predict_propensity(model, r.x, r.est_cvr,
                                     r.pre_campaign_impressions)[r.s_obs.index()]);
  }
  return out;
}

// --------------------------------------------------------------- losses ---

double ips_loss(std::span<const double> predictions, const TrainingLog& log,
                std::span<const double> propensity_of_record, ExposureState s) {
  if (predictions.size() != log.n() || propensity_of_record.size() != log.n()) {
    throw std::invalid_argument("one prediction and propensity per record");
  }
  if (log.n_state(s) == 0) {
    throw std::invalid_argument("no records for " + state_name(s));
  }
  double total = 0.0;
  const auto& records = log.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].s_obs != s) continue;
    const double gap = static_cast<double>(records[i].y_obs) - predictions[i];
    total += gap * gap / propensity_of_record[i];
  }
  return total / static_cast<double>(log.n());
}

double ips_loss(const OutcomePredictor& f, const TrainingLog& log,
                std::span<const double> propensity_of_record, ExposureState s) {
  std::vector<double> predictions;
  predictions.reserve(log.n());
  for (const auto& r : log.records()) predictions.push_back(f.predict(r.x));
  return ips_loss(predictions, log, propensity_of_record, s);
}

double ips_loss(const OutcomePredictor& f, const TrainingLog& log,
                const PropensityModel& model, ExposureState s) {
  return ips_loss(f, log, record_propensities(model, log), s);
}

double erm_loss(std::span<const double> predictions, const TrainingLog& log,
                ExposureState s) {
  if (predictions.size() != log.n()) {
    throw std::invalid_argument("one prediction per record");
  }
  if (log.n_state(s) == 0) {
    throw std::invalid_argument("no records for " + state_name(s));
  }
  double total = 0.0;
  const auto& records = log.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].s_obs != s) continue;
    const double gap = static_cast<double>(records[i].y_obs) - predictions[i];
    total += gap * gap;
  }
  return total / static_cast<double>(log.n_state(s));
}

// ------------------------------------------------------------- fitting ---

OutcomePredictor fit_outcome(const TrainingLog& log, ExposureState s,
                             AdSize ad_size, TrainingMode mode,
                             const PropensityModel* propensity,
                             const WeightedLearnerSpec& spec) {
  if (mode == TrainingMode::kIps && propensity == nullptr) {
    throw std::invalid_argument("IPS training requires a propensity model");
  }
  std::vector<FeatureVector> xs;
  std::vector<double> ys;
  std::vector<double> ws;
  for (const auto& r : log.records()) {
    if (r.s_obs != s || r.ad_size != ad_size) continue;
    xs.push_back(r.x);
    ys.push_back(static_cast<double>(r.y_obs));
    double w = 1.0;
    if (mode == TrainingMode::kIps) {
      w = 1.0 / predict_propensity(*propensity, r.x, r.est_cvr,
                                   r.pre_campaign_impressions)[s.index()];
    }
    ws.push_back(w);
  }
  if (xs.empty()) {
    throw std::invalid_argument("no training records for " + state_name(s));
  }
  OutcomePredictor f;
  f.state = s;
  f.ad_size = ad_size;
  f.training_mode = mode;
  f.regressor = fit_regressor(xs, ys, ws, spec);
  return f;
}

ImpressedCvrModel fit_impressed_cvr(const TrainingLog& log, AdSize ad_size,
                                    const WeightedLearnerSpec& spec) {
  std::vector<FeatureVector> xs;
  std::vector<double> ys;
  for (const auto& r : log.records()) {
    if (r.s_obs.index() == 0 || r.ad_size != ad_size) continue;
    xs.push_back(r.x);
    ys.push_back(static_cast<double>(r.y_obs));
  }
  if (xs.empty()) {
    throw std::invalid_argument("no impressed users to train the CVR model");
  }
  const std::vector<double> ws(xs.size(), 1.0);
  return ImpressedCvrModel{ad_size, fit_regressor(xs, ys, ws, spec)};
}

bool ModelBank::contains(ExposureState s, AdSize size,
                         TrainingMode mode) const {
  return outcome.contains(Key{s.index(), size.id(), mode});
}

const OutcomePredictor& ModelBank::at(ExposureState s, AdSize size,
                                      TrainingMode mode) const {
  const auto it = outcome.find(Key{s.index(), size.id(), mode});
  if (it == outcome.end()) {
    throw std::out_of_range("no " + std::string(to_string(mode)) +
                            " outcome predictor for " + state_name(s) +
                            " (ad size " + std::to_string(size.id()) + ")");
  }
  return it->second;
}

ModelBank train_model_bank(const TrainingLog& log,
                           const WeightedLearnerSpec& spec, int ad_size_groups,
                           double clip_floor) {
  spec.validate();
  if (ad_size_groups < 1 || ad_size_groups > kMaxAdSizeGroups) {
    throw std::invalid_argument("ad_size_groups must lie in [1, 4]");
  }
  ModelBank bank;
  bank.spec = spec;
  bank.clip_floor = clip_floor;
  bank.ad_size_groups = ad_size_groups;
  for (int g = 0; g < ad_size_groups; ++g) {
    const AdSize size(g);
    const TrainingLog sub = log.for_ad_size(size);
    PropensityModel propensity = fit_propensity(sub, spec, clip_floor);
    for (int k = 0; k < kNumStates; ++k) {
      const ExposureState s(k);
      if (!propensity.active(s)) {
        bank.warnings.push_back(state_name(s) + " has " +
                                std::to_string(sub.n_state(s)) +
                                " records for ad size " + std::to_string(g) +
                                "; excluded from propensity classes and lift");
        continue;
      }
      if (sub.n_state(s) < static_cast<std::size_t>(spec.min_outcome_records)) {
        bank.warnings.push_back(state_name(s) + " has " +
                                std::to_string(sub.n_state(s)) +
                                " records for ad size " + std::to_string(g) +
                                "; no outcome predictor, lift set to zero");
        continue;
      }
      for (auto mode : {TrainingMode::kErm, TrainingMode::kIps}) {
        bank.outcome.emplace(ModelBank::Key{k, g, mode},
                             fit_outcome(sub, s, size, mode, &propensity, spec));
      }
    }
    bank.impressed_cvr.push_back(fit_impressed_cvr(sub, size, spec));
    bank.propensity.push_back(std::move(propensity));
  }
  return bank;
}

}  // namespace liftbid
