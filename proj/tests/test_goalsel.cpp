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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "goalsel.hpp"
#include "oracles.hpp"

using namespace mgopt;
using namespace mgopt::testing;

namespace {

SerialChain planar2() {
  std::vector<Joint> joints(2);
  joints[0].axis = joints[1].axis = Vec3::UnitZ();
  joints[0].to_next.p = Vec3(1, 0, 0);
  joints[1].to_next.p = Vec3(1, 0, 0);
  std::vector<JointLimits> limits(2, JointLimits{-M_PI, M_PI});
  std::vector<Primitive> geom{Capsule{Vec3(-1, 0, 0), Vec3::Zero(), 0.05},
                              Capsule{Vec3(-1, 0, 0), Vec3::Zero(), 0.05}};
  return SerialChain(joints, limits, geom, Transform::identity());
}

std::vector<BodyPoint> tip_points(const SerialChain& chain) {
  std::vector<BodyPoint> pts;
  for (int l = 1; l <= chain.dof(); ++l) {
    BodyPoint u;
    u.link_index = l;
    pts.push_back(u);
  }
  return pts;
}

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Distribution random_simplex(Rng& rng, int m) {
  Distribution p(m);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    p[i] = -std::log(std::max(rng.uniform(), 1e-300));
    sum += p[i];
  }
  return p / sum;
}

bool is_simplex(const Distribution& p) {
  if ((p.array() < 0.0).any()) return false;
  return std::abs(p.sum() - 1.0) < 1e-9;
}

GoalSet two_goal_set(const Config& a, const Config& b) {
  GoalSet goals;
  goals.goals = {a, b};
  goals.feasible = {1, 1};
  return goals;
}

}  // namespace

TEST_CASE("tail estimates grow with goal distance on a free straight line") {
  const SerialChain chain = planar2();
  const auto pts = tip_points(chain);
  SceneSdf scene;  // empty: pure prior scoring
  Trajectory traj = Trajectory::constant(Eigen::Vector2d(0.0, 0.0), 10);
  GoalSet goals;
  for (double scale : {0.2, 0.5, 0.9, 1.4}) {
    goals.goals.push_back(Eigen::Vector2d(scale, scale));
    goals.feasible.push_back(1);
  }
  const Eigen::VectorXd c = estimate_goal_costs(traj, 0, 100, goals, scene, chain, pts, 0.1);
  for (int g = 0; g + 1 < goals.size(); ++g) CHECK(c[g] < c[g + 1]);

  // Against a direct evaluation of the same tails.
  const int k = 0;
  const int tail_len = 10;
  Eigen::VectorXd reference(goals.size());
  for (int g = 0; g < goals.size(); ++g) {
    Trajectory tail;
    tail.start = traj.node(k);
    tail.waypoints.resize(tail_len, 2);
    for (int j = 1; j <= tail_len; ++j) {
      tail.waypoints.row(j - 1) =
          (tail.start + (goals.goals[g] - tail.start) * j / tail_len).transpose();
    }
    reference[g] = motion_cost(tail, scene, chain, pts, 0.1);
  }
  reference /= reference.norm();
  CHECK((c - reference).norm() < 1e-12);
}

TEST_CASE("tail at the final iteration is the last segment") {
  const SerialChain chain = planar2();
  const auto pts = tip_points(chain);
  SceneSdf scene;
  Rng rng(51);
  Trajectory traj = random_trajectory(rng, 10, 2);
  const int horizon = 10;
  const int i = horizon - 1;  // maps to node n - 1
  GoalSet goals = two_goal_set(traj.endpoint(), Eigen::Vector2d(2.0, 2.0));
  const Eigen::VectorXd c =
      estimate_goal_costs(traj, i, horizon, goals, scene, chain, pts, 0.1);
  // Direct tail: two waypoints from node n-1 toward the endpoint.
  Trajectory tail;
  tail.start = traj.node(9);
  tail.waypoints.resize(2, 2);
  const Config g = traj.endpoint();
  tail.waypoints.row(0) = (tail.start + (g - tail.start) * 0.5).transpose();
  tail.waypoints.row(1) = g.transpose();
  const double direct = motion_cost(tail, scene, chain, pts, 0.1);
  // Recover the normalization and compare.
  Trajectory tail_far;
  tail_far.start = traj.node(9);
  tail_far.waypoints.resize(2, 2);
  const Config far = goals.goals[1];
  tail_far.waypoints.row(0) = (tail_far.start + (far - tail_far.start) * 0.5).transpose();
  tail_far.waypoints.row(1) = far.transpose();
  const double direct_far = motion_cost(tail_far, scene, chain, pts, 0.1);
  const double norm = std::hypot(direct, direct_far);
  CHECK(c[0] == doctest::Approx(direct / norm).epsilon(1e-12));
}

TEST_CASE("tail estimates are unit norm over finite entries") {
  const SerialChain chain = planar2();
  const auto pts = tip_points(chain);
  SceneSdf scene;
  Trajectory traj = Trajectory::constant(Eigen::Vector2d(0.1, -0.2), 8);
  GoalSet goals;
  goals.goals = {Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(1.0, -0.3),
                 Eigen::Vector2d(0.4, 1.2)};
  goals.feasible = {1, 0, 1};
  const Eigen::VectorXd c = estimate_goal_costs(traj, 3, 50, goals, scene, chain, pts, 0.1);
  CHECK(std::isinf(c[1]));
  CHECK(std::abs(std::hypot(c[0], c[2]) - 1.0) < 1e-9);
}

TEST_CASE("estimation with no feasible goal fails") {
  const SerialChain chain = planar2();
  const auto pts = tip_points(chain);
  SceneSdf scene;
  Trajectory traj = Trajectory::constant(Eigen::Vector2d(0, 0), 5);
  GoalSet goals;
  goals.goals = {Eigen::Vector2d(1, 1)};
  goals.feasible = {0};
  CHECK_THROWS(estimate_goal_costs(traj, 0, 10, goals, scene, chain, pts, 0.1));
}

TEST_CASE("follow the cheapest takes the argmin with low-index ties") {
  CHECK(select_goal(ftc_update(vec({3, 1, 2}))) == 1);
  const Distribution p = ftc_update(vec({3, 1, 2}));
  CHECK(p[1] == 1.0);
  CHECK(is_simplex(p));
  CHECK(select_goal(ftc_update(vec({0.5, 0.5, 0.5}))) == 0);
}

TEST_CASE("follow the leader accumulates history") {
  CostHistory history;
  history.push(vec({1, 0}), vec({0.5, 0.5}));
  CHECK(select_goal(ftl_update(history)) == 1);  // single step = ftc
  history.push(vec({0, 0.5}), vec({0, 1}));
  // Cumulative (1, 0.5): the second goal leads.
  CHECK(select_goal(ftl_update(history)) == 1);
  history.push(vec({2, 0}), vec({0, 1}));
  // Cumulative (3, 0.5).
  CHECK(select_goal(ftl_update(history)) == 1);
  CHECK_THROWS(ftl_update(CostHistory{}));
}

TEST_CASE("follow the leader finds the best mean under noise") {
  int hits = 0;
  const int seeds = 100;
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(1000 + seed);
    const std::vector<double> means{0.55, 0.4, 0.62, 0.5};
    CostHistory history;
    Distribution p = Distribution::Constant(4, 0.25);
    for (int step = 0; step < 500; ++step) {
      Eigen::VectorXd c(4);
      for (int g = 0; g < 4; ++g) {
        c[g] = std::clamp(means[g] + 0.25 * rng.normal(), 0.0, 1.0);
      }
      history.push_cost(c);
      p = ftl_update(history);
      history.push_distribution(p);
    }
    if (select_goal(p) == 1) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("exponential weighting closed form") {
  const Distribution p = vec({0.5, 0.5});
  const Distribution out = exp_update(p, vec({0, 1}), 1.0);
  const double z = 1.0 + std::exp(-1.0);
  CHECK(out[0] == doctest::Approx(1.0 / z).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(std::exp(-1.0) / z).epsilon(1e-12));
}

TEST_CASE("exponential weighting limits and invariances") {
  Rng rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = rng.uniform_int(2, 8);
    const Distribution p = random_simplex(rng, m);
    Eigen::VectorXd c(m);
    for (int i = 0; i < m; ++i) c[i] = rng.uniform(0, 1);
    // Constant cost vectors change nothing.
    CHECK((exp_update(p, Eigen::VectorXd::Constant(m, 0.7), 2.0) - p).lpNorm<Eigen::Infinity>() <
          1e-12);
    // Tiny learning rates change almost nothing.
    CHECK((exp_update(p, c, 1e-8) - p).lpNorm<Eigen::Infinity>() < 1e-6);
    // Invariance to constant shifts.
    const Distribution a = exp_update(p, c, 1.3);
    const Distribution b = exp_update(p, vec({}).size() ? c : (c.array() + 5.0).matrix(), 1.3);
    CHECK((a - exp_update(p, (c.array() + 5.0).matrix(), 1.3)).lpNorm<Eigen::Infinity>() <
          1e-10);
    CHECK(is_simplex(a));
    (void)b;
  }
}

TEST_CASE("zero-probability goals never regain mass") {
  Rng rng(53);
  Distribution p = vec({0.0, 0.6, 0.4});
  for (int step = 0; step < 30; ++step) {
    Eigen::VectorXd c(3);
    for (int i = 0; i < 3; ++i) c[i] = rng.uniform(0, 1);
    p = (step % 2 == 0) ? exp_update(p, c, 0.8) : md_update(p, c, 0.8);
    CHECK(p[0] == 0.0);
    CHECK(is_simplex(p));
  }
}

TEST_CASE("mirror descent agrees with exponential weighting analytically") {
  Rng rng(54);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = rng.uniform_int(2, 10);
    const Distribution p = random_simplex(rng, m);
    Eigen::VectorXd c(m);
    for (int i = 0; i < m; ++i) c[i] = rng.uniform(0, 2);
    const double eta = rng.uniform(0.01, 5.0);
    const Distribution a = exp_update(p, c, eta);
    const Distribution b = md_update(p, c, eta);
    CHECK((a - b).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("mirror descent limits") {
  const Distribution p = vec({0.3, 0.3, 0.4});
  CHECK((md_update(p, vec({0, 0, 0}), 1.0) - p).lpNorm<Eigen::Infinity>() < 1e-12);
  const Distribution sharp = md_update(p, vec({0.5, 0.1, 0.9}), 1e6);
  CHECK(sharp[1] > 1.0 - 1e-9);
}

TEST_CASE("ensemble with one expert tracks the plain mirror chain") {
  GoalSet goals = two_goal_set(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1));
  MdEnsemble single(goals, 50, {0});
  Distribution manual = uniform_distribution(goals);
  Rng rng(55);
  const double eta = std::log(50);
  for (int step = 0; step < 20; ++step) {
    Eigen::VectorXd c(2);
    c << rng.uniform(0, 1), rng.uniform(0, 1);
    const Distribution ens = single.update(c);
    manual = md_update(manual, c, eta);
    CHECK((ens - manual).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("ensemble experts agree on steady costs") {
  GoalSet goals;
  goals.goals = {Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1), Eigen::Vector2d(2, 0)};
  goals.feasible = {1, 1, 1};
  MdEnsemble ensemble(goals, 100);
  const Eigen::VectorXd c = vec({0.9, 0.2, 0.6});
  Distribution p;
  for (int step = 0; step < 25; ++step) p = ensemble.update(c);
  CHECK(select_goal(p) == 1);
  for (int k = 0; k < ensemble.expert_count(); ++k) {
    CHECK(select_goal(ensemble.expert(k)) == 1);
  }
}

TEST_CASE("ensemble stays close to its best expert under adversarial costs") {
  double total_gap = 0.0;
  const int seeds = 100;
  const int horizon = 150;
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(7000 + seed);
    GoalSet goals;
    for (int g = 0; g < 5; ++g) {
      goals.goals.push_back(Eigen::Vector2d(g, 0));
      goals.feasible.push_back(1);
    }
    MdEnsemble ensemble(goals, horizon);
    std::vector<MdEnsemble> experts;  // shadow copies for per-rate accounting
    std::vector<Distribution> chains(5, uniform_distribution(goals));
    const std::vector<double> rates = {std::pow(2, -2) * std::log(horizon),
                                       std::pow(2, -1) * std::log(horizon),
                                       std::log(horizon),
                                       std::pow(2, 2) * std::log(horizon),
                                       std::pow(2, 4) * std::log(horizon)};
    Distribution played = uniform_distribution(goals);
    double ensemble_loss = 0.0;
    std::vector<double> expert_losses(5, 0.0);
    for (int step = 0; step < horizon; ++step) {
      Eigen::VectorXd c(5);
      // Oscillating adversary: alternates which half is expensive.
      for (int g = 0; g < 5; ++g) {
        c[g] = ((step + g) % 2 == 0) ? rng.uniform(0.6, 1.0) : rng.uniform(0.0, 0.4);
      }
      ensemble_loss += expected_cost(c, played);
      for (int k = 0; k < 5; ++k) {
        expert_losses[k] += expected_cost(c, chains[k]);
        chains[k] = md_update(chains[k], c, rates[k]);
      }
      played = ensemble.update(c);
    }
    const double best = *std::min_element(expert_losses.begin(), expert_losses.end());
    total_gap += ensemble_loss - best;
  }
  // Sublinear excess over the best expert in hindsight.
  CHECK(total_gap / seeds < 0.15 * horizon);
}

TEST_CASE("goal selection is the mode with deterministic ties") {
  CHECK(select_goal(vec({0.2, 0.5, 0.3})) == 1);
  CHECK(select_goal(vec({0, 1, 0})) == 1);
  CHECK(select_goal(vec({0.25, 0.25, 0.25, 0.25})) == 0);
  CHECK_THROWS(select_goal(vec({0, 0})));
  CHECK_THROWS(select_goal(Distribution{}));
}

TEST_CASE("regret of the hindsight-best point mass is zero") {
  CostHistory history;
  history.push(vec({0.1, 0.9}), vec({1, 0}));
  history.push(vec({0.2, 0.8}), vec({1, 0}));
  CHECK(regret(history) == doctest::Approx(0.0));
  CHECK(regret(CostHistory{}) == 0.0);
}

TEST_CASE("single-step uniform regret example") {
  CostHistory history;
  history.push(vec({0, 1}), vec({0.5, 0.5}));
  CHECK(regret(history) == doctest::Approx(0.5));
}

TEST_CASE("ftc and ftl selections are invariant to positive rescaling") {
  Rng rng(56);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = rng.uniform_int(2, 6);
    CostHistory a, b;
    const double scale = rng.uniform(0.1, 10.0);
    Eigen::VectorXd last_a, last_b;
    for (int step = 0; step < 5; ++step) {
      Eigen::VectorXd c(m);
      for (int i = 0; i < m; ++i) c[i] = rng.uniform(0, 1);
      a.push(c, Distribution::Constant(m, 1.0 / m));
      b.push(scale * c, Distribution::Constant(m, 1.0 / m));
      last_a = c;
      last_b = scale * c;
    }
    CHECK(select_goal(ftc_update(last_a)) == select_goal(ftc_update(last_b)));
    CHECK(select_goal(ftl_update(a)) == select_goal(ftl_update(b)));
  }
}

TEST_CASE("exp regret is empirically sublinear") {
  auto run = [](int horizon, int seed) {
    Rng rng(9000 + seed);
    const int m = 10;
    CostHistory history;
    Distribution p = Distribution::Constant(m, 1.0 / m);
    const double eta = exp_learning_rate(m, horizon);
    for (int step = 0; step < horizon; ++step) {
      Eigen::VectorXd c(m);
      for (int i = 0; i < m; ++i) c[i] = rng.uniform(0, 1);
      c /= c.norm();
      history.push_cost(c);
      p = exp_update(p, c, eta);
      history.push_distribution(p);
    }
    return regret(history);
  };
  double short_rate = 0.0, long_rate = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    short_rate += run(100, seed) / 100.0;
    long_rate += run(200, seed) / 200.0;
  }
  CHECK(long_rate < short_rate);
}
