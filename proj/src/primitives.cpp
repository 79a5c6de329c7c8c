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

#include "primitives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgopt {

void validate(const Primitive& prim) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          if (!(s.radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
        } else if constexpr (std::is_same_v<T, OrientedBox>) {
          if (!(s.half_extents.minCoeff() > 0.0))
            throw std::invalid_argument("box half extents must be positive");
        } else {
          if (!(s.radius > 0.0)) throw std::invalid_argument("capsule radius must be positive");
        }
      },
      prim);
}

static double sphere_sdf(const Sphere& s, const Vec3& p) {
  return (p - s.center).norm() - s.radius;
}

static Vec3 sphere_grad(const Sphere& s, const Vec3& p) {
  const Vec3 d = p - s.center;
  const double n = d.norm();
  if (n < 1e-12) return Vec3::UnitX();
  return d / n;
}

static double box_sdf(const OrientedBox& b, const Vec3& p) {
  const Vec3 q = b.orientation.transpose() * (p - b.center);
  const Vec3 a = q.cwiseAbs() - b.half_extents;
  const Vec3 outside = a.cwiseMax(0.0);
  return outside.norm() + std::min(a.maxCoeff(), 0.0);
}

static Vec3 box_grad(const OrientedBox& b, const Vec3& p) {
  const Vec3 q = b.orientation.transpose() * (p - b.center);
  const Vec3 a = q.cwiseAbs() - b.half_extents;
  Vec3 g_local;
  if (a.maxCoeff() > 0.0) {
    const Vec3 outside = a.cwiseMax(0.0);
    g_local = outside / outside.norm();
    for (int i = 0; i < 3; ++i) g_local[i] *= (q[i] < 0.0 ? -1.0 : 1.0);
  } else {
    int k = 0;
    a.maxCoeff(&k);
    g_local = Vec3::Zero();
    g_local[k] = (q[k] < 0.0 ? -1.0 : 1.0);
  }
  return b.orientation * g_local;
}

static Vec3 capsule_closest(const Capsule& c, const Vec3& p) {
  const Vec3 ab = c.b - c.a;
  const double len2 = ab.squaredNorm();
  if (len2 < 1e-18) return c.a;
  const double t = std::clamp((p - c.a).dot(ab) / len2, 0.0, 1.0);
  return c.a + t * ab;
}

static double capsule_sdf(const Capsule& c, const Vec3& p) {
  return (p - capsule_closest(c, p)).norm() - c.radius;
}

static Vec3 capsule_grad(const Capsule& c, const Vec3& p) {
  const Vec3 d = p - capsule_closest(c, p);
  const double n = d.norm();
  if (n < 1e-12) {
    // On the axis: any perpendicular direction is a subgradient.
    const Vec3 ab = c.b - c.a;
    Vec3 perp = ab.cross(Vec3::UnitX());
    if (perp.squaredNorm() < 1e-12) perp = ab.cross(Vec3::UnitY());
    if (perp.squaredNorm() < 1e-12) return Vec3::UnitX();
    return perp.normalized();
  }
  return d / n;
}

double signed_distance(const Primitive& prim, const Vec3& p) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) return sphere_sdf(s, p);
        else if constexpr (std::is_same_v<T, OrientedBox>) return box_sdf(s, p);
        else return capsule_sdf(s, p);
      },
      prim);
}

Vec3 signed_distance_gradient(const Primitive& prim, const Vec3& p) {
  return std::visit(
      [&](const auto& s) -> Vec3 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) return sphere_grad(s, p);
        else if constexpr (std::is_same_v<T, OrientedBox>) return box_grad(s, p);
        else return capsule_grad(s, p);
      },
      prim);
}

double surface_area(const Primitive& prim) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          return 4.0 * M_PI * s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, OrientedBox>) {
          const Vec3& h = s.half_extents;
          return 8.0 * (h.x() * h.y() + h.y() * h.z() + h.x() * h.z());
        } else {
          const double len = (s.b - s.a).norm();
          return 2.0 * M_PI * s.radius * len + 4.0 * M_PI * s.radius * s.radius;
        }
      },
      prim);
}

static SurfacePoint sample_sphere(const Sphere& s, Rng& rng) {
  const Vec3 n = rng.unit_vector();
  return {s.center + s.radius * n, n};
}

static SurfacePoint sample_box(const OrientedBox& b, Rng& rng) {
  const Vec3& h = b.half_extents;
  // Face areas for +-x, +-y, +-z.
  const double ax = 4.0 * h.y() * h.z();
  const double ay = 4.0 * h.x() * h.z();
  const double az = 4.0 * h.x() * h.y();
  const double total = 2.0 * (ax + ay + az);
  double r = rng.uniform() * total;
  int axis = 0;
  double sign = 1.0;
  for (int i = 0; i < 3; ++i) {
    const double a = (i == 0 ? ax : i == 1 ? ay : az);
    if (r < a) { axis = i; sign = 1.0; break; }
    r -= a;
    if (r < a) { axis = i; sign = -1.0; break; }
    r -= a;
  }
  Vec3 q;
  q[axis] = sign * h[axis];
  const int u = (axis + 1) % 3;
  const int v = (axis + 2) % 3;
  q[u] = rng.uniform(-h[u], h[u]);
  q[v] = rng.uniform(-h[v], h[v]);
  Vec3 n_local = Vec3::Zero();
  n_local[axis] = sign;
  return {b.orientation * q + b.center, b.orientation * n_local};
}

static SurfacePoint sample_capsule(const Capsule& c, Rng& rng) {
  const Vec3 ab = c.b - c.a;
  const double len = ab.norm();
  const double side_area = 2.0 * M_PI * c.radius * len;
  const double cap_area = 4.0 * M_PI * c.radius * c.radius;
  // Orthonormal frame around the axis.
  Vec3 w = len > 1e-12 ? Vec3(ab / len) : Vec3::UnitZ();
  Vec3 u = w.cross(Vec3::UnitX());
  if (u.squaredNorm() < 1e-8) u = w.cross(Vec3::UnitY());
  u.normalize();
  const Vec3 v = w.cross(u);
  const double pick = rng.uniform() * (side_area + cap_area);
  if (pick < side_area) {
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    const double t = rng.uniform();
    const Vec3 n = std::cos(theta) * u + std::sin(theta) * v;
    return {c.a + t * ab + c.radius * n, n};
  }
  // Spherical caps: a uniform sphere direction, assigned to the matching end.
  const Vec3 n = rng.unit_vector();
  const Vec3 end = n.dot(w) >= 0.0 ? c.b : c.a;
  return {end + c.radius * n, n};
}

SurfacePoint sample_on_surface(const Primitive& prim, Rng& rng) {
  return std::visit(
      [&](const auto& s) -> SurfacePoint {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) return sample_sphere(s, rng);
        else if constexpr (std::is_same_v<T, OrientedBox>) return sample_box(s, rng);
        else return sample_capsule(s, rng);
      },
      prim);
}

Primitive transformed(const Primitive& prim, const Transform& t) {
  return std::visit(
      [&](const auto& s) -> Primitive {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          return Sphere{t.apply(s.center), s.radius};
        } else if constexpr (std::is_same_v<T, OrientedBox>) {
          return OrientedBox{t.apply(s.center), s.half_extents, t.R * s.orientation};
        } else {
          return Capsule{t.apply(s.a), t.apply(s.b), s.radius};
        }
      },
      prim);
}

void bounding_box(const Primitive& prim, Vec3& lo, Vec3& hi, double pad) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          lo = s.center.array() - s.radius;
          hi = s.center.array() + s.radius;
        } else if constexpr (std::is_same_v<T, OrientedBox>) {
          const Vec3 ext = s.orientation.cwiseAbs() * s.half_extents;
          lo = s.center - ext;
          hi = s.center + ext;
        } else {
          lo = s.a.cwiseMin(s.b).array() - s.radius;
          hi = s.a.cwiseMax(s.b).array() + s.radius;
        }
      },
      prim);
  lo.array() -= pad;
  hi.array() += pad;
}

}  // namespace mgopt
