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

#ifndef MGOPT_GOALSEL_HPP
#define MGOPT_GOALSEL_HPP

#include <vector>

#include "trajopt.hpp"

namespace mgopt {

struct GoalSet {
  std::vector<Config> goals;
  std::vector<std::uint8_t> feasible;  // parallel to goals

  int size() const { return static_cast<int>(goals.size()); }
  int feasible_count() const;
  bool is_feasible(int i) const { return feasible[i] != 0; }
};

using Distribution = Eigen::VectorXd;

/// Uniform over feasible goals, zero elsewhere.
Distribution uniform_distribution(const GoalSet& goals);

/// Per-iteration record of the cost vectors shown to the learner and the
/// distributions it played.
struct CostHistory {
  std::vector<Eigen::VectorXd> costs;
  std::vector<Distribution> distributions;

  void push(const Eigen::VectorXd& c, const Distribution& p) {
    costs.push_back(c);
    distributions.push_back(p);
  }
  void push_cost(const Eigen::VectorXd& c) { costs.push_back(c); }
  void push_distribution(const Distribution& p) { distributions.push_back(p); }
  int size() const { return static_cast<int>(costs.size()); }
};

/// Tail-based surrogate of the per-goal objective: the constant-velocity
/// interpolation from the trajectory's time-i/N node to each feasible goal,
/// scored with the motion objective and normalized to unit Euclidean norm
/// over the finite entries. Infeasible goals cost +infinity.
Eigen::VectorXd estimate_goal_costs(const Trajectory& traj, int iteration, int horizon,
                                    const GoalSet& goals, const SceneSdf& scene,
                                    const SerialChain& chain,
                                    const std::vector<BodyPoint>& body_points,
                                    double lambda);

/// Point mass on the cheapest entry of the latest cost vector.
Distribution ftc_update(const Eigen::VectorXd& c);

/// Point mass on the lowest cumulative cost over the history.
Distribution ftl_update(const CostHistory& history);

/// Multiplicative-weights step p'(g) proportional to p(g) exp(-eta c(g)).
Distribution exp_update(const Distribution& p, const Eigen::VectorXd& c, double eta);

/// KL mirror-descent step solved through its Lagrangian in log space. Agrees
/// with exp_update analytically; kept as an independent code path.
Distribution md_update(const Distribution& p, const Eigen::VectorXd& c, double eta);

/// Bank of mirror-descent learners at rates 2^k log(N); reports the
/// distribution of the expert with the lowest cumulative estimated loss.
class MdEnsemble {
 public:
  MdEnsemble(const GoalSet& goals, int horizon,
             std::vector<int> exponents = {-2, -1, 0, 2, 4});

  Distribution update(const Eigen::VectorXd& c);
  const Distribution& expert(int k) const { return experts_[k]; }
  int expert_count() const { return static_cast<int>(experts_.size()); }
  int best_expert() const;

 private:
  std::vector<double> rates_;
  std::vector<Distribution> experts_;
  std::vector<double> losses_;
};

/// Mode of the distribution; ties to the lowest index.
int select_goal(const Distribution& p);

/// Cumulative expected loss minus the best fixed goal in hindsight.
double regret(const CostHistory& history);

/// Dot product treating 0 * inf as 0, the convention for goals that carry
/// zero probability and infinite cost.
double expected_cost(const Eigen::VectorXd& c, const Distribution& p);

double exp_learning_rate(int goal_count, int horizon);

}  // namespace mgopt

#endif  // MGOPT_GOALSEL_HPP
