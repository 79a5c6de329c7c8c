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

#include "report.hpp"

#include <sstream>

#include "csvio.hpp"

namespace mgopt {

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "# d=" << traj.dof() << " dt=" << format_double(traj.dt()) << "\n";
  for (int i = 1; i <= traj.dof(); ++i) out << (i > 1 ? "," : "") << "q_" << i;
  out << "\n";
  for (int r = 0; r < traj.n(); ++r) {
    for (int c = 0; c < traj.dof(); ++c) {
      out << (c > 0 ? "," : "") << format_double(traj.waypoints(r, c));
    }
    out << "\n";
  }
  return out.str();
}

std::string iteration_log_csv(const PlanResult& result) {
  std::ostringstream out;
  out << "iteration,motion_cost,selected_goal,distribution_entropy,grasp_cost\n";
  for (const IterationLog& row : result.log) {
    out << row.iteration << ',' << format_double(row.motion_cost) << ','
        << row.selected_goal << ',' << format_double(row.distribution_entropy) << ','
        << format_double(row.grasp_cost) << "\n";
  }
  return out.str();
}

std::string selector_trace_csv(const PlanResult& result) {
  std::ostringstream out;
  out << "iteration,goal,cost,probability,selected\n";
  for (int i = 0; i < result.history.size(); ++i) {
    const Eigen::VectorXd& c = result.history.costs[i];
    const Distribution& p = result.history.distributions[i];
    const int selected = select_goal(p);
    for (int g = 0; g < c.size(); ++g) {
      out << i << ',' << g << ','
          << (std::isfinite(c[g]) ? format_double(c[g]) : "inf") << ','
          << format_double(p[g]) << ',' << (g == selected ? 1 : 0) << "\n";
    }
  }
  return out.str();
}

std::string metrics_csv(const MetricsReport& report, bool include_timing) {
  std::ostringstream out;
  out << "collision,smoothness,planning_success,grasp_cost";
  if (include_timing) out << ",time";
  out << "\n";
  out << format_double(report.collision) << ',' << format_double(report.smoothness) << ','
      << (report.planning_success ? 1 : 0) << ',' << format_double(report.grasp_cost);
  if (include_timing) out << ',' << format_double(report.time);
  out << "\n";
  return out.str();
}

std::string selector_table_csv(const std::vector<SelectorRow>& rows, bool include_timing) {
  std::ostringstream out;
  out << "selector,planning_rate,smoothness,collision,grasp_cost,runs";
  if (include_timing) out << ",time";
  out << "\n";
  for (const SelectorRow& r : rows) {
    out << r.selector << ',' << format_double(r.planning_rate) << ','
        << format_double(r.smoothness) << ',' << format_double(r.collision) << ','
        << format_double(r.grasp_cost) << ',' << r.runs;
    if (include_timing) out << ',' << format_double(r.time);
    out << "\n";
  }
  return out.str();
}

std::string ablation_table_csv(const std::string& parameter,
                               const std::vector<AblationRow>& rows, bool include_timing) {
  std::ostringstream out;
  out << parameter << ",planning_rate,smoothness,collision";
  if (include_timing) out << ",time";
  out << "\n";
  for (const AblationRow& r : rows) {
    out << format_double(r.value) << ',' << format_double(r.planning_rate) << ','
        << format_double(r.smoothness) << ',' << format_double(r.collision);
    if (include_timing) out << ',' << format_double(r.time);
    out << "\n";
  }
  return out.str();
}

std::string refine_trace_csv(const std::vector<RefineTraceRow>& rows) {
  std::ostringstream out;
  out << "step,grasp_cost,point_match,normal_align,hand_collision,arm_collision\n";
  for (const RefineTraceRow& r : rows) {
    out << r.step << ',' << format_double(r.grasp_cost) << ','
        << format_double(r.point_match) << ',' << format_double(r.normal_align) << ','
        << format_double(r.hand_collision) << ',' << format_double(r.arm_collision)
        << "\n";
  }
  return out.str();
}

std::string config_csv(const Config& q) {
  std::ostringstream out;
  for (int i = 1; i <= q.size(); ++i) out << (i > 1 ? "," : "") << "q_" << i;
  out << "\n";
  for (int i = 0; i < q.size(); ++i) out << (i > 0 ? "," : "") << format_double(q[i]);
  out << "\n";
  return out.str();
}

namespace {

constexpr double kPixelsPerMeter = 100.0;

struct SvgCanvas {
  std::ostringstream body;
  double min_x = -1.5, max_x = 1.5, min_y = -1.5, max_y = 1.5;

  double px(double x) const { return (x - min_x) * kPixelsPerMeter; }
  double py(double y) const { return (max_y - y) * kPixelsPerMeter; }  // y up

  void circle(const Vec3& c, double r, const std::string& style) {
    body << "<circle cx=\"" << format_double(px(c.x())) << "\" cy=\""
         << format_double(py(c.y())) << "\" r=\"" << format_double(r * kPixelsPerMeter)
         << "\" " << style << "/>\n";
  }
  void line(const Vec3& a, const Vec3& b, const std::string& style) {
    body << "<line x1=\"" << format_double(px(a.x())) << "\" y1=\""
         << format_double(py(a.y())) << "\" x2=\"" << format_double(px(b.x()))
         << "\" y2=\"" << format_double(py(b.y())) << "\" " << style << "/>\n";
  }
  void polyline(const std::vector<Vec3>& pts, const std::string& style) {
    body << "<polyline points=\"";
    for (const Vec3& p : pts) {
      body << format_double(px(p.x())) << ',' << format_double(py(p.y())) << ' ';
    }
    body << "\" " << style << "/>\n";
  }
  void polygon(const std::vector<Vec3>& pts, const std::string& style) {
    body << "<polygon points=\"";
    for (const Vec3& p : pts) {
      body << format_double(px(p.x())) << ',' << format_double(py(p.y())) << ' ';
    }
    body << "\" " << style << "/>\n";
  }
};

void draw_primitive(SvgCanvas& svg, const Primitive& prim, const std::string& style) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          svg.circle(s.center, s.radius, style);
        } else if constexpr (std::is_same_v<T, OrientedBox>) {
          std::vector<Vec3> corners;
          for (int sx : {-1, 1}) {
            for (int sy : {-1, 1}) {
              corners.push_back(
                  s.center + s.orientation * Vec3(sx * s.half_extents.x(),
                                                  sy * s.half_extents.y(), 0.0));
            }
          }
          std::swap(corners[2], corners[3]);  // draw order around the rectangle
          svg.polygon(corners, style);
        } else {
          svg.line(s.a, s.b,
                   style + " stroke-width=\"" +
                       format_double(2.0 * s.radius * kPixelsPerMeter) +
                       "\" stroke-linecap=\"round\"");
        }
      },
      prim);
}

std::vector<Vec3> ee_path(const SerialChain& chain, const Trajectory& traj, int steps) {
  std::vector<Vec3> path;
  for (const Config& q : interpolate(traj, steps)) {
    path.push_back(chain.end_effector_pose(q).p);
  }
  return path;
}

void draw_arm(SvgCanvas& svg, const SerialChain& chain, const Config& q,
              const std::string& style) {
  const auto frames = chain.forward_kinematics(q);
  std::vector<Vec3> pts;
  for (const Transform& f : frames) pts.push_back(f.p);
  svg.polyline(pts, style);
}

}  // namespace

std::string render_scene_svg(const ProblemInstance& inst, const PlanResult* result,
                             const PlannerConfig& cfg) {
  SvgCanvas svg;
  const double reach = [&] {
    double r = 0.2;
    for (const Joint& j : inst.chain.joints()) r += j.to_next.p.norm();
    return r;
  }();
  svg.min_x = -reach;
  svg.max_x = reach;
  svg.min_y = -reach;
  svg.max_y = reach;

  for (const SdfField& f : inst.scene.obstacles) {
    if (const Primitive* prim = std::get_if<Primitive>(&f)) {
      draw_primitive(svg, *prim, "fill=\"#8a8a8a\" stroke=\"#444\"");
    }
  }
  if (inst.scene.target_shape) {
    draw_primitive(svg, *inst.scene.target_shape, "fill=\"#4a90d9\" stroke=\"#1b4f8a\"");
  }
  for (int g = 0; g < inst.goals.size(); ++g) {
    const Vec3 ee = inst.chain.end_effector_pose(inst.goals.goals[g]).p;
    svg.circle(ee, 0.012, "fill=\"#e6b800\" stroke=\"none\"");
  }

  draw_arm(svg, inst.chain, inst.q_start,
           "fill=\"none\" stroke=\"#333\" stroke-width=\"4\"");
  if (result != nullptr && result->selected_goal_index >= 0) {
    const Trajectory init = init_trajectory(
        result->trajectory.start,
        inst.goals.goals[std::min(result->selected_goal_index, inst.goals.size() - 1)],
        result->trajectory.n());
    svg.polyline(ee_path(inst.chain, init, 120),
                 "fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" "
                 "stroke-dasharray=\"6,4\"");
    svg.polyline(ee_path(inst.chain, result->trajectory, 120),
                 "fill=\"none\" stroke=\"#27ae60\" stroke-width=\"2\"");
    draw_arm(svg, inst.chain,
             result->refined_goals.goals[result->selected_goal_index],
             "fill=\"none\" stroke=\"#27ae60\" stroke-width=\"3\"");
  }
  (void)cfg;

  const int width = static_cast<int>((svg.max_x - svg.min_x) * kPixelsPerMeter);
  const int height = static_cast<int>((svg.max_y - svg.min_y) * kPixelsPerMeter);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << svg.body.str() << "</svg>\n";
  return out.str();
}

}  // namespace mgopt
