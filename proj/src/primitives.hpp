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

#ifndef MGOPT_PRIMITIVES_HPP
#define MGOPT_PRIMITIVES_HPP

#include <variant>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace mgopt {

struct Sphere {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};

struct OrientedBox {
  Vec3 center = Vec3::Zero();
  Vec3 half_extents = Vec3::Zero();
  Mat3 orientation = Mat3::Identity();
};

struct Capsule {
  Vec3 a = Vec3::Zero();  // segment endpoints, meters
  Vec3 b = Vec3::Zero();
  double radius = 0.0;
};

using Primitive = std::variant<Sphere, OrientedBox, Capsule>;

/// Throws std::invalid_argument for non-positive radii/extents.
void validate(const Primitive& prim);

double signed_distance(const Primitive& prim, const Vec3& p);

/// Unit-norm gradient of the signed distance where differentiable; a fixed
/// deterministic subgradient on the medial axis.
Vec3 signed_distance_gradient(const Primitive& prim, const Vec3& p);

double surface_area(const Primitive& prim);

struct SurfacePoint {
  Vec3 position;
  Vec3 normal;  // outward, unit
};

/// Uniform-by-area sample of the primitive surface.
SurfacePoint sample_on_surface(const Primitive& prim, Rng& rng);

/// Transformed copy (rotates orientations/segment endpoints, moves centers).
Primitive transformed(const Primitive& prim, const Transform& t);

/// Loose axis-aligned bounds, inflated by pad.
void bounding_box(const Primitive& prim, Vec3& lo, Vec3& hi, double pad);

/// Indexed triangle mesh, used for surface sampling of non-primitive targets.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
};

}  // namespace mgopt

#endif  // MGOPT_PRIMITIVES_HPP
