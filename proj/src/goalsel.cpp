// Copyright 2026 The mgopt Authors.
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

#include "goalsel.hpp"

#include <cmath>
#include <stdexcept>

namespace mgopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int GoalSet::feasible_count() const {
  int count = 0;
  for (std::uint8_t f : feasible) count += (f != 0);
  return count;
}

Distribution uniform_distribution(const GoalSet& goals) {
  const int m = goals.size();
  const int feas = goals.feasible_count();
  if (feas == 0) throw std::runtime_error("no feasible goal");
  Distribution p = Distribution::Zero(m);
  for (int i = 0; i < m; ++i) {
    if (goals.is_feasible(i)) p[i] = 1.0 / feas;
  }
  return p;
}

Eigen::VectorXd estimate_goal_costs(const Trajectory& traj, int iteration, int horizon,
                                    const GoalSet& goals, const SceneSdf& scene,
                                    const SerialChain& chain,
                                    const std::vector<BodyPoint>& body_points,
                                    double lambda) {
  if (iteration < 0 || iteration >= horizon)
    throw std::invalid_argument("iteration must lie in [0, horizon)");
  if (goals.feasible_count() == 0) throw std::runtime_error("no feasible goal");

  const int n = traj.n();
  // Time i/N maps onto the node grid; the tail starts at that node.
  const int k = std::min(static_cast<int>(iteration * (n + 1) / horizon), n);
  const Config tail_start = traj.node(k);
  const int tail_len = std::max(n - k, 2);

  Eigen::VectorXd costs = Eigen::VectorXd::Constant(goals.size(), kInf);
  for (int g = 0; g < goals.size(); ++g) {
    if (!goals.is_feasible(g)) continue;
    Trajectory tail;
    tail.start = tail_start;
    tail.waypoints.resize(tail_len, traj.dof());
    const Config step = (goals.goals[g] - tail_start) / tail_len;
    for (int j = 1; j <= tail_len; ++j) {
      tail.waypoints.row(j - 1) = (tail_start + j * step).transpose();
    }
    const TargetPolicy policy = TargetPolicy::near_goal(
        chain.end_effector_pose(goals.goals[g]).p, scene.approach_radius);
    costs[g] = motion_cost(tail, scene, chain, body_points, lambda, policy);
  }

  double norm_sq = 0.0;
  for (int g = 0; g < goals.size(); ++g) {
    if (std::isfinite(costs[g])) norm_sq += costs[g] * costs[g];
  }
  if (norm_sq > 0.0) {
    const double norm = std::sqrt(norm_sq);
    for (int g = 0; g < goals.size(); ++g) {
      if (std::isfinite(costs[g])) costs[g] /= norm;
    }
  }
  return costs;
}

static int argmin_finite(const Eigen::VectorXd& c) {
  int best = -1;
  for (int i = 0; i < c.size(); ++i) {
    if (!std::isfinite(c[i])) continue;
    if (best < 0 || c[i] < c[best]) best = i;
  }
  if (best < 0) throw std::runtime_error("cost vector has no finite entry");
  return best;
}

Distribution ftc_update(const Eigen::VectorXd& c) {
  if (c.size() == 0) throw std::invalid_argument("empty cost vector");
  Distribution p = Distribution::Zero(c.size());
  p[argmin_finite(c)] = 1.0;
  return p;
}

Distribution ftl_update(const CostHistory& history) {
  if (history.size() == 0) throw std::invalid_argument("empty history");
  Eigen::VectorXd total = history.costs.front();
  for (int i = 1; i < history.size(); ++i) total += history.costs[i];
  return ftc_update(total);
}

Distribution exp_update(const Distribution& p, const Eigen::VectorXd& c, double eta) {
  if (p.size() != c.size()) throw std::invalid_argument("distribution/cost size mismatch");
  // Shift by the smallest active cost; exp_update is invariant to constant
  // offsets and this keeps the exponentials in range.
  double shift = kInf;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && std::isfinite(c[i])) shift = std::min(shift, c[i]);
  }
  Distribution out = Distribution::Zero(p.size());
  double z = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double w = std::isfinite(c[i]) ? p[i] * std::exp(-eta * (c[i] - shift)) : 0.0;
    out[i] = w;
    z += w;
  }
  if (z <= 0.0) throw std::runtime_error("exp update collapsed to zero mass");
  out /= z;
  return out;
}

Distribution md_update(const Distribution& p, const Eigen::VectorXd& c, double eta) {
  if (p.size() != c.size()) throw std::invalid_argument("distribution/cost size mismatch");
  // Stationarity of eta <c,q> + KL(q || p) on the simplex gives
  // log q_i = log p_i - eta c_i - log Z; solved here entirely in log space.
  std::vector<double> logq(p.size(), -kInf);
  double max_log = -kInf;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && std::isfinite(c[i])) {
      logq[i] = std::log(p[i]) - eta * c[i];
      max_log = std::max(max_log, logq[i]);
    }
  }
  if (!std::isfinite(max_log)) throw std::runtime_error("md update collapsed to zero mass");
  double z = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (std::isfinite(logq[i])) z += std::exp(logq[i] - max_log);
  }
  const double log_z = max_log + std::log(z);
  Distribution out = Distribution::Zero(p.size());
  for (int i = 0; i < p.size(); ++i) {
    if (std::isfinite(logq[i])) out[i] = std::exp(logq[i] - log_z);
  }
  return out;
}

MdEnsemble::MdEnsemble(const GoalSet& goals, int horizon, std::vector<int> exponents) {
  const double log_n = std::log(std::max(horizon, 2));
  for (int k : exponents) rates_.push_back(std::pow(2.0, k) * log_n);
  experts_.assign(rates_.size(), uniform_distribution(goals));
  losses_.assign(rates_.size(), 0.0);
}

Distribution MdEnsemble::update(const Eigen::VectorXd& c) {
  for (std::size_t k = 0; k < experts_.size(); ++k) {
    losses_[k] += expected_cost(c, experts_[k]);
    experts_[k] = md_update(experts_[k], c, rates_[k]);
  }
  return experts_[best_expert()];
}

int MdEnsemble::best_expert() const {
  int best = 0;
  for (std::size_t k = 1; k < losses_.size(); ++k) {
    if (losses_[k] < losses_[best]) best = static_cast<int>(k);
  }
  return best;
}

int select_goal(const Distribution& p) {
  if (p.size() == 0) throw std::invalid_argument("empty distribution");
  int best = -1;
  for (int i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i]) || p[i] < 0.0)
      throw std::invalid_argument("distribution entries must be finite and nonnegative");
    if (best < 0 || p[i] > p[best]) best = i;
  }
  if (p[best] <= 0.0) throw std::invalid_argument("distribution has no mass");
  return best;
}

double expected_cost(const Eigen::VectorXd& c, const Distribution& p) {
  double sum = 0.0;
  for (int i = 0; i < c.size(); ++i) {
    if (p[i] > 0.0) sum += p[i] * c[i];
  }
  return sum;
}

double regret(const CostHistory& history) {
  if (history.size() == 0) return 0.0;
  double incurred = 0.0;
  Eigen::VectorXd total = Eigen::VectorXd::Zero(history.costs.front().size());
  for (int i = 0; i < history.size(); ++i) {
    incurred += expected_cost(history.costs[i], history.distributions[i]);
    total += history.costs[i];
  }
  return incurred - total[argmin_finite(total)];
}

double exp_learning_rate(int goal_count, int horizon) {
  return std::sqrt(std::log(std::max(goal_count, 2)) / std::max(horizon, 1));
}

}  // namespace mgopt
