// Copyright 2026 The traymotion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent trajectory auditor. Re-derives object stability from the
// torque balance inversion (never through the forward acceleration-limit
// formula), audits the robot motion limits, and verifies the endpoint
// contract. Together with the planner this gives two independent routes
// through the same contact model.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "traymotion/physics.hpp"
#include "traymotion/planner.hpp"

namespace traymotion {

/// Sampling slack on the center-of-pressure bound, absorbing the
/// discretization of a 1 kHz sample grid.
inline constexpr double kCopTolerance = 1e-4;  // m

/// Per-sample center-of-pressure audit of a trajectory.
struct StabilityReport {
  std::vector<double> cop_offset;  // m, per sample; NaN where singular
  std::vector<double> margin;      // m, base_radius - |cop_offset|
  double min_margin = 0.0;
  double min_margin_t = 0.0;
  bool stable = false;
  bool has_violation = false;
  double first_violation_t = 0.0;
  int singular_samples = 0;
};

/// Re-derives the required center of pressure at every sample from the
/// recorded tray state and commanded acceleration; stable iff every offset
/// stays within the base disc plus kCopTolerance.
inline StabilityReport stability_audit(const Trajectory& traj,
                                       const ObjectParams& obj) {
  StabilityReport rep;
  const double elevation = traj.request.elevation;
  const std::size_t n = traj.samples.size();
  rep.cop_offset.resize(n);
  rep.margin.resize(n);
  rep.min_margin = obj.base_radius;
  bool first_set = false;
  for (std::size_t i = 0; i < n; ++i) {
    const KinematicSample& s = traj.samples[i];
    const TrayState tray{s.tilt, s.tilt_rate, s.tilt_accel};
    double margin;
    try {
      const double cop = required_cop_offset(tray, s.accel, elevation, obj);
      rep.cop_offset[i] = cop;
      margin = obj.base_radius - std::abs(cop);
    } catch (const SingularConfiguration&) {
      rep.cop_offset[i] = std::numeric_limits<double>::quiet_NaN();
      margin = -obj.base_radius;  // reported, not thrown
      ++rep.singular_samples;
    }
    rep.margin[i] = margin;
    if (i == 0 || margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.min_margin_t = s.t;
    }
    if (margin < -kCopTolerance && !first_set) {
      rep.has_violation = true;
      rep.first_violation_t = s.t;
      first_set = true;
    }
  }
  rep.stable = !rep.has_violation;
  return rep;
}

/// Audit of one motion limit.
struct LimitCheck {
  std::string name;
  double observed = 0.0;  // max observed magnitude (velocity: signed range)
  double limit = 0.0;
  double slack = 0.0;
  bool pass = true;
  double worst_t = 0.0;
};

/// Audit of all six motion limits over a trajectory.
struct ConstraintAudit {
  std::vector<LimitCheck> checks;
  bool pass = true;
};

/// Checks acceleration, velocity, tray accel/rate/jerk, and the
/// finite-difference translational jerk against the limits. Tray rate is
/// audited by magnitude (the tray swings back through negative rates when
/// it re-levels and while braking).
inline ConstraintAudit audit_constraints(const Trajectory& traj,
                                         const MotionLimits& limits) {
  if (traj.samples.size() < 2) {
    throw InvalidParameter("audit_constraints: need at least 2 samples");
  }
  const double dt = traj.request.sample_dt;
  ConstraintAudit audit;
  const auto scan = [&](const std::string& name, auto&& value, double limit,
                        double slack) {
    LimitCheck chk;
    chk.name = name;
    chk.limit = limit;
    chk.slack = slack;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
      const double v = value(i);
      if (i == 0 || v > chk.observed) {
        chk.observed = v;
        chk.worst_t = traj.samples[i].t;
      }
    }
    chk.pass = chk.observed <= limit + slack;
    audit.checks.push_back(chk);
    if (!chk.pass) audit.pass = false;
  };
  const auto& smp = traj.samples;
  scan("accel", [&](std::size_t i) { return std::abs(smp[i].accel); },
       limits.accel_max, 1e-9);
  scan("velocity", [&](std::size_t i) { return smp[i].vel; }, limits.vel_max,
       1e-9);
  scan("velocity_nonneg", [&](std::size_t i) { return -smp[i].vel; }, 0.0, 1e-9);
  scan("tilt_accel", [&](std::size_t i) { return std::abs(smp[i].tilt_accel); },
       limits.tilt_accel_max, 1e-9);
  scan("tilt_rate", [&](std::size_t i) { return std::abs(smp[i].tilt_rate); },
       limits.tilt_rate_max, 1e-9);
  scan("tilt_jerk", [&](std::size_t i) { return std::abs(smp[i].tilt_jerk); },
       limits.tilt_jerk_max, 1e-9);
  scan("jerk_fd",
       [&](std::size_t i) {
         if (i == 0 || i + 1 >= smp.size()) return 0.0;
         return std::abs(smp[i + 1].accel - smp[i - 1].accel) / (2.0 * dt);
       },
       limits.jerk_max, 10.0 * limits.accel_max * dt);
  return audit;
}

/// One endpoint criterion.
struct EndpointCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

/// Endpoint audit result.
struct EndpointAudit {
  std::vector<EndpointCheck> checks;
  bool pass = true;
};

/// Verifies the terminal state: displacement equals the requested distance,
/// terminal velocity/acceleration/tilt/tray rates vanish, and the path
/// position never overshoots the target.
inline EndpointAudit endpoint_audit(const Trajectory& traj) {
  if (traj.samples.empty()) {
    throw InvalidParameter("endpoint_audit: empty trajectory");
  }
  EndpointAudit audit;
  const KinematicSample& last = traj.samples.back();
  const auto push = [&](const std::string& name, double value, double tol) {
    EndpointCheck chk{name, value, tol, std::abs(value) <= tol};
    audit.checks.push_back(chk);
    if (!chk.pass) audit.pass = false;
  };
  push("displacement_error", last.path_pos - traj.request.distance, 1e-6);
  push("terminal_velocity", last.vel, 1e-6);
  push("terminal_accel", last.accel, 1e-6);
  push("terminal_tilt", last.tilt, 1e-6);
  push("terminal_tilt_rate", last.tilt_rate, 1e-6);
  push("terminal_tilt_accel", last.tilt_accel, 1e-6);
  double overshoot = 0.0;
  for (const KinematicSample& s : traj.samples) {
    overshoot = std::max(overshoot, s.path_pos - traj.request.distance);
  }
  push("overshoot", overshoot, 1e-9);
  return audit;
}

}  // namespace traymotion
