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

#ifndef MGOPT_SCENE_HPP
#define MGOPT_SCENE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kdtree.hpp"
#include "primitives.hpp"

namespace mgopt {

/// Regular grid of signed distances with trilinear interpolation. Queries
/// outside the grid are clamped to the boundary and flagged.
struct GridSdf {
  Vec3 origin = Vec3::Zero();  // center of cell (0,0,0)
  double cell_size = 0.0;
  std::array<int, 3> dims = {0, 0, 0};
  std::vector<double> values;  // row-major: ((ix * ny) + iy) * nz + iz

  double& at(int ix, int iy, int iz);
  double at(int ix, int iy, int iz) const;

  struct Eval {
    double distance = 0.0;
    Vec3 gradient = Vec3::Zero();
    bool clamped = false;
  };
  Eval evaluate(const Vec3& p) const;

  std::vector<std::uint8_t> serialize() const;
  static GridSdf deserialize(const std::vector<std::uint8_t>& bytes);
};

/// Samples the exact min-over-primitives SDF at cell centers covering
/// [lo, hi]. An empty primitive list fills the grid with the bounds diagonal.
GridSdf grid_from_primitives(const std::vector<Primitive>& primitives,
                             const Vec3& lo, const Vec3& hi, double cell_size);

/// Point cloud of a target surface with outward normals and a spatial index.
struct ObjectSurface {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  KdTree index;

  void build_index() { index.build(points); }
};

ObjectSurface sample_surface(const Primitive& shape, int count, std::uint64_t seed);
ObjectSurface sample_surface(const TriMesh& mesh, int count, std::uint64_t seed);

using SdfField = std::variant<Primitive, GridSdf>;

struct FieldEval {
  double distance = std::numeric_limits<double>::infinity();
  Vec3 gradient = Vec3::Zero();
  bool clamped = false;
};

FieldEval evaluate_field(const SdfField& field, const Vec3& p);

/// Obstacle fields plus a designated target object with its sampled surface.
/// epsilon is the cost padding, clearance the collision-free gate; the
/// approach radius controls where gripper points ignore the target (grasps
/// must make contact there).
struct SceneSdf {
  std::vector<SdfField> obstacles;
  std::optional<Primitive> target_shape;
  ObjectSurface target_surface;
  double epsilon = 0.2;
  double clearance = 0.05;
  double approach_radius = 0.3;

  SceneSdf() = default;

  /// Min over the selected fields; gradient of the first minimizing field.
  FieldEval signed_distance(const Vec3& p, bool include_target) const;
};

/// CHOMP workspace cost of a signed distance: -d + eps/2 inside, quadratic
/// ramp (d - eps)^2 / (2 eps) in the padding band, zero beyond.
double obstacle_cost(double d, double eps);
double obstacle_cost_derivative(double d, double eps);

struct WorkspaceCost {
  double cost = 0.0;
  Vec3 gradient = Vec3::Zero();
  bool clamped = false;
};

WorkspaceCost workspace_cost_and_gradient(const SceneSdf& scene, const Vec3& p,
                                          bool include_target = true);

}  // namespace mgopt

#endif  // MGOPT_SCENE_HPP
