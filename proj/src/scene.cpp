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

#include "scene.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace mgopt {

static_assert(std::endian::native == std::endian::little,
              "grid serialization assumes a little-endian host");

double& GridSdf::at(int ix, int iy, int iz) {
  return values[(static_cast<std::size_t>(ix) * dims[1] + iy) * dims[2] + iz];
}

double GridSdf::at(int ix, int iy, int iz) const {
  return values[(static_cast<std::size_t>(ix) * dims[1] + iy) * dims[2] + iz];
}

GridSdf::Eval GridSdf::evaluate(const Vec3& p) const {
  Eval out;
  Vec3 local = (p - origin) / cell_size;
  for (int i = 0; i < 3; ++i) {
    const double hi = static_cast<double>(dims[i] - 1);
    if (local[i] < 0.0 || local[i] > hi) {
      out.clamped = true;
      local[i] = std::clamp(local[i], 0.0, hi);
    }
  }
  int idx[3];
  double frac[3];
  for (int i = 0; i < 3; ++i) {
    // Snap to the lattice so cell-center queries reproduce stored values
    // exactly despite roundoff in (p - origin) / cell_size.
    const double nearest = std::round(local[i]);
    if (std::abs(local[i] - nearest) < 1e-9) local[i] = nearest;
    idx[i] = std::min(static_cast<int>(local[i]), dims[i] - 2);
    idx[i] = std::max(idx[i], 0);
    frac[i] = local[i] - idx[i];
  }
  // Trilinear value and its analytic derivative in grid coordinates.
  double c[2][2][2];
  for (int dx = 0; dx < 2; ++dx)
    for (int dy = 0; dy < 2; ++dy)
      for (int dz = 0; dz < 2; ++dz)
        c[dx][dy][dz] = at(std::min(idx[0] + dx, dims[0] - 1),
                           std::min(idx[1] + dy, dims[1] - 1),
                           std::min(idx[2] + dz, dims[2] - 1));
  const double fx = frac[0], fy = frac[1], fz = frac[2];
  auto lerp = [](double a, double b, double t) { return a + (b - a) * t; };
  const double c00 = lerp(c[0][0][0], c[1][0][0], fx);
  const double c01 = lerp(c[0][0][1], c[1][0][1], fx);
  const double c10 = lerp(c[0][1][0], c[1][1][0], fx);
  const double c11 = lerp(c[0][1][1], c[1][1][1], fx);
  const double c0 = lerp(c00, c10, fy);
  const double c1 = lerp(c01, c11, fy);
  out.distance = lerp(c0, c1, fz);

  const double dx00 = c[1][0][0] - c[0][0][0];
  const double dx01 = c[1][0][1] - c[0][0][1];
  const double dx10 = c[1][1][0] - c[0][1][0];
  const double dx11 = c[1][1][1] - c[0][1][1];
  out.gradient.x() = lerp(lerp(dx00, dx10, fy), lerp(dx01, dx11, fy), fz);
  const double dy0 = lerp(c[0][1][0] - c[0][0][0], c[1][1][0] - c[1][0][0], fx);
  const double dy1 = lerp(c[0][1][1] - c[0][0][1], c[1][1][1] - c[1][0][1], fx);
  out.gradient.y() = lerp(dy0, dy1, fz);
  const double dz0 = lerp(c[0][0][1] - c[0][0][0], c[1][0][1] - c[1][0][0], fx);
  const double dz1 = lerp(c[0][1][1] - c[0][1][0], c[1][1][1] - c[1][1][0], fx);
  out.gradient.z() = lerp(dz0, dz1, fy);
  out.gradient /= cell_size;
  return out;
}

std::vector<std::uint8_t> GridSdf::serialize() const {
  const std::size_t header = 4 * sizeof(double) + 3 * sizeof(std::int64_t);
  std::vector<std::uint8_t> bytes(header + values.size() * sizeof(double));
  std::uint8_t* out = bytes.data();
  auto put = [&out](const void* src, std::size_t len) {
    std::memcpy(out, src, len);
    out += len;
  };
  for (int i = 0; i < 3; ++i) put(&origin[i], sizeof(double));
  put(&cell_size, sizeof(double));
  for (int i = 0; i < 3; ++i) {
    const std::int64_t d = dims[i];
    put(&d, sizeof(d));
  }
  put(values.data(), values.size() * sizeof(double));
  return bytes;
}

GridSdf GridSdf::deserialize(const std::vector<std::uint8_t>& bytes) {
  GridSdf g;
  const std::size_t header = 4 * sizeof(double) + 3 * sizeof(std::int64_t);
  if (bytes.size() < header) throw std::invalid_argument("grid block too short");
  const std::uint8_t* in = bytes.data();
  auto get = [&in](void* dst, std::size_t len) {
    std::memcpy(dst, in, len);
    in += len;
  };
  for (int i = 0; i < 3; ++i) get(&g.origin[i], sizeof(double));
  get(&g.cell_size, sizeof(double));
  std::size_t count = 1;
  for (int i = 0; i < 3; ++i) {
    std::int64_t d = 0;
    get(&d, sizeof(d));
    if (d < 2) throw std::invalid_argument("grid dims must be >= 2");
    g.dims[i] = static_cast<int>(d);
    count *= static_cast<std::size_t>(d);
  }
  if (bytes.size() != header + count * sizeof(double))
    throw std::invalid_argument("grid block size does not match dims");
  g.values.resize(count);
  get(g.values.data(), count * sizeof(double));
  return g;
}

GridSdf grid_from_primitives(const std::vector<Primitive>& primitives,
                             const Vec3& lo, const Vec3& hi, double cell_size) {
  if (!(cell_size > 0.0)) throw std::invalid_argument("cell_size must be positive");
  GridSdf g;
  g.origin = lo;
  g.cell_size = cell_size;
  for (int i = 0; i < 3; ++i) {
    g.dims[i] = std::max(2, static_cast<int>(std::ceil((hi[i] - lo[i]) / cell_size)) + 1);
  }
  g.values.resize(static_cast<std::size_t>(g.dims[0]) * g.dims[1] * g.dims[2]);
  const double empty_value = (hi - lo).norm();
  for (int ix = 0; ix < g.dims[0]; ++ix) {
    for (int iy = 0; iy < g.dims[1]; ++iy) {
      for (int iz = 0; iz < g.dims[2]; ++iz) {
        const Vec3 p = lo + cell_size * Vec3(ix, iy, iz);
        double d = empty_value;
        for (const Primitive& prim : primitives) {
          d = std::min(d, signed_distance(prim, p));
        }
        g.at(ix, iy, iz) = d;
      }
    }
  }
  return g;
}

ObjectSurface sample_surface(const Primitive& shape, int count, std::uint64_t seed) {
  validate(shape);
  if (count < 1) throw std::invalid_argument("surface sample count must be >= 1");
  Rng rng(seed);
  ObjectSurface surf;
  surf.points.reserve(count);
  surf.normals.reserve(count);
  for (int i = 0; i < count; ++i) {
    const SurfacePoint s = sample_on_surface(shape, rng);
    surf.points.push_back(s.position);
    surf.normals.push_back(s.normal);
  }
  surf.build_index();
  return surf;
}

ObjectSurface sample_surface(const TriMesh& mesh, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("surface sample count must be >= 1");
  std::vector<double> cumulative;
  cumulative.reserve(mesh.triangles.size());
  std::vector<Vec3> face_normals;
  double total = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3 e1 = mesh.vertices[tri[1]] - a;
    const Vec3 e2 = mesh.vertices[tri[2]] - a;
    const Vec3 cr = e1.cross(e2);
    total += 0.5 * cr.norm();
    cumulative.push_back(total);
    face_normals.push_back(cr.norm() > 1e-18 ? Vec3(cr.normalized()) : Vec3::UnitZ());
  }
  if (total <= 0.0) throw std::invalid_argument("mesh has zero surface area");

  Rng rng(seed);
  ObjectSurface surf;
  surf.points.reserve(count);
  surf.normals.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double pick = rng.uniform() * total;
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), pick);
    const std::size_t f = std::min<std::size_t>(it - cumulative.begin(),
                                                mesh.triangles.size() - 1);
    const auto& tri = mesh.triangles[f];
    double r1 = std::sqrt(rng.uniform());
    double r2 = rng.uniform();
    const Vec3 p = (1.0 - r1) * mesh.vertices[tri[0]] +
                   r1 * (1.0 - r2) * mesh.vertices[tri[1]] +
                   r1 * r2 * mesh.vertices[tri[2]];
    surf.points.push_back(p);
    surf.normals.push_back(face_normals[f]);
  }
  surf.build_index();
  return surf;
}

FieldEval evaluate_field(const SdfField& field, const Vec3& p) {
  FieldEval out;
  if (const Primitive* prim = std::get_if<Primitive>(&field)) {
    out.distance = signed_distance(*prim, p);
    out.gradient = signed_distance_gradient(*prim, p);
  } else {
    const GridSdf::Eval e = std::get<GridSdf>(field).evaluate(p);
    out.distance = e.distance;
    out.gradient = e.gradient;
    out.clamped = e.clamped;
  }
  return out;
}

FieldEval SceneSdf::signed_distance(const Vec3& p, bool include_target) const {
  FieldEval best;
  for (const SdfField& field : obstacles) {
    const FieldEval e = evaluate_field(field, p);
    if (e.distance < best.distance) best = e;
    best.clamped = best.clamped || e.clamped;
  }
  if (include_target && target_shape) {
    FieldEval e;
    e.distance = mgopt::signed_distance(*target_shape, p);
    e.gradient = signed_distance_gradient(*target_shape, p);
    if (e.distance < best.distance) {
      e.clamped = best.clamped;
      best = e;
    }
  }
  return best;
}

double obstacle_cost(double d, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("obstacle padding must be positive");
  if (d < 0.0) return -d + 0.5 * eps;
  if (d <= eps) {
    const double r = d - eps;
    return r * r / (2.0 * eps);
  }
  return 0.0;
}

double obstacle_cost_derivative(double d, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("obstacle padding must be positive");
  if (d < 0.0) return -1.0;
  if (d <= eps) return (d - eps) / eps;
  return 0.0;
}

WorkspaceCost workspace_cost_and_gradient(const SceneSdf& scene, const Vec3& p,
                                          bool include_target) {
  const FieldEval e = scene.signed_distance(p, include_target);
  WorkspaceCost out;
  out.clamped = e.clamped;
  if (std::isinf(e.distance)) return out;
  out.cost = obstacle_cost(e.distance, scene.epsilon);
  out.gradient = obstacle_cost_derivative(e.distance, scene.epsilon) * e.gradient;
  return out;
}

}  // namespace mgopt
