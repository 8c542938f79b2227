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

// Transport planner for an unstable cylinder on a tilting tray.
//
// A transport plan is three phases: an acceleration phase that tilts the
// tray into the motion while riding the tipping-limited acceleration, a
// constant-velocity cruise, and a deceleration phase that tilts the tray
// the other way and rides the braking-side tipping limit. Each phase is a
// first half ending at half the peak velocity plus its exact sample
// mirror, so the phase ends at the peak velocity with the tray level
// again. The deceleration phase is the acceleration pipeline run at the
// reversed elevation and emitted time-reversed; at zero elevation the two
// phases are exact mirrors of each other.
//
// Emitted trajectories are uniform-dt sample arrays. Velocity and path
// position are defined as the trapezoidal sums of the emitted acceleration
// samples, and the free plan parameters (a sub-sample start delay per
// phase, cruise length, peak velocity and a shallow cruise velocity dip)
// are solved against those discrete sums, so the midpoint and endpoint
// contracts hold to solver precision rather than to O(dt).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "traymotion/errors.hpp"
#include "traymotion/physics.hpp"
#include "traymotion/scurve.hpp"

namespace traymotion {

/// Tray tilts beyond this are never planned; the quasi-static contact
/// assumptions degrade and the tipping balance can lose its sign.
inline constexpr double kTiltCap = std::numbers::pi / 3.0;

/// Robot motion constraints. Translational speed is non-negative by
/// convention; rotational limits bound magnitudes.
struct MotionLimits {
  double jerk_max = 0.0;        // m/s^3
  double accel_max = 0.0;       // m/s^2
  double vel_max = 0.0;         // m/s
  double tilt_jerk_max = 0.0;   // rad/s^3
  double tilt_accel_max = 0.0;  // rad/s^2
  double tilt_rate_max = 0.0;   // rad/s

  bool valid() const {
    return jerk_max > 0.0 && accel_max > 0.0 && vel_max > 0.0 &&
           tilt_jerk_max > 0.0 && tilt_accel_max > 0.0 && tilt_rate_max > 0.0;
  }
};

/// Straight-line transport request. The line starts at the origin, rises
/// at `elevation` above the horizontal inside the vertical plane whose
/// heading about the world vertical is `azimuth`.
struct PlanRequest {
  double distance = 0.0;   // m, > 0
  double elevation = 0.0;  // rad, in [-pi/2, pi/2]
  double azimuth = 0.0;    // rad
  ObjectParams object;
  MotionLimits limits;
  double sample_dt = 1e-3;  // s
};

/// One emitted trajectory sample.
struct KinematicSample {
  double t = 0.0;           // s
  double tilt = 0.0;        // rad, signed tray tilt in the motion plane
  double tilt_rate = 0.0;   // rad/s
  double tilt_accel = 0.0;  // rad/s^2
  double tilt_jerk = 0.0;   // rad/s^3
  double accel = 0.0;       // m/s^2, along the line
  double vel = 0.0;         // m/s
  double path_pos = 0.0;    // m, arc length along the line
  std::array<double, 3> position{0.0, 0.0, 0.0};  // m, world x,y,z
  double pitch = 0.0;       // rad, tray pitch of the pose (= tilt)
};

/// Uniformly sampled transport trajectory plus phase metadata.
struct Trajectory {
  std::vector<KinematicSample> samples;
  double t_total = 0.0;
  double t_accel = 0.0;
  double t_cruise = 0.0;
  double t_decel = 0.0;
  double peak_velocity = 0.0;
  double accel_peak_tilt = 0.0;     // fitted tilt of the acceleration phase
  double decel_peak_tilt = 0.0;     // fitted tilt magnitude of the braking phase
  double accel_rotation_end = 0.0;  // time the accel-phase rotation completes
  PlanRequest request;
};

/// Timing comparison between the tilting planner and the level-tray baseline.
struct ComparisonReport {
  double time_with_rotation = 0.0;
  double time_without_rotation = 0.0;
  double improvement = 0.0;  // 1 - with/without
};

/// One grid point of an efficiency sweep.
struct SweepRow {
  double x = 0.0;  // horizontal displacement, m
  double y = 0.0;  // vertical displacement, m
  double time_with_rotation = 0.0;
  double time_without_rotation = 0.0;
  double improvement = 0.0;
  bool skipped = false;
  std::string note;
};

namespace detail {

/// Clamped trailing-edge tipping limit. An inactive constraint means the
/// cap alone; a negative balance numerator means no forward acceleration.
inline double ride_level(const RotationSample& rs, double elevation,
                         const ObjectParams& obj, double accel_cap) {
  const TippingAccel tip = max_translational_accel(
      TrayState{rs.tilt, rs.rate, rs.accel}, elevation, obj);
  if (!tip.constrained) return accel_cap;
  if (tip.clamped_negative) return 0.0;
  return std::min(tip.value, accel_cap);
}

/// Trailing-edge tipping limit at rest with the tray level; the level-tray
/// planning cap used by the baseline comparator.
inline double static_level_cap(double elevation, const ObjectParams& obj,
                               double accel_max) {
  return ride_level(RotationSample{}, elevation, obj, accel_max);
}

/// Largest acceleration whose center of pressure stays inside the whole
/// base. The required offset is monotone in the acceleration (up to the
/// contact pole), so the admissible accelerations form an interval whose
/// upper end is the crossing of the edge the offset moves toward; for
/// ordinary states that is the trailing edge and the value coincides with
/// the classic tipping limit. The leading edge takes over when the
/// angular acceleration is large at small tilt or the heading points
/// steeply down. A contact-normal-force floor keeps the balance inversion
/// away from the zero-normal-force pole.
inline double stable_ride_level(const RotationSample& rs, double elevation,
                                const ObjectParams& obj, double accel_cap) {
  const double h2 = obj.height / 2.0;
  const double r = obj.base_radius;
  const double sf = std::sin(rs.tilt), cf = std::cos(rs.tilt);
  const double d1 = kGravity * cf - rs.rate * rs.rate * obj.height / 2.0;
  if (d1 <= 0.0) return 0.0;  // no contact margin even at rest acceleration
  const double stf = std::sin(elevation + rs.tilt);
  const double ctf = std::cos(elevation + rs.tilt);
  // required offset = (n1 + n2 a) / (d1 + d2 a)
  const double n1 = -(h2 * kGravity * sf + obj.inertia * rs.accel / obj.mass);
  const double n2 = h2 * ctf;
  const double d2 = stf;
  const double slope = n2 * d1 - n1 * d2;  // sign of d(offset)/da
  double bound = std::numeric_limits<double>::infinity();
  if (std::abs(slope) <= 1e-15 * kGravity) {
    if (std::abs(n1 / d1) > r) return 0.0;  // pinned outside the base
  } else {
    const double exit_edge = (slope > 0.0) ? 1.0 : -1.0;
    const double den = n2 - exit_edge * r * d2;
    if (std::abs(den) > 1e-15) {
      const double a_exit = (exit_edge * r * d1 - n1) / den;
      if (a_exit < 0.0) return 0.0;  // already past the exit edge at rest
      if (d1 + d2 * a_exit > 0.0) bound = a_exit;
      // Otherwise the crossing sits beyond the contact pole; the pole
      // bound below governs.
    }
  }
  if (stf < -1e-12) {
    // Keep at least 5% of the resting normal force so the balance
    // inversion stays well conditioned.
    const double pole = (d1 - 0.05 * kGravity) / (-stf);
    bound = std::min(bound, std::max(pole, 0.0));
  }
  if (!std::isfinite(bound)) return accel_cap;
  return std::min(bound, accel_cap);
}

/// Rotation to `peak_tilt` that the transport can ride stably: at every
/// profile state the acceleration the plan would command there keeps the
/// center of pressure inside the base. Scales the rotational accel/rate
/// caps down until that holds; only small tilts with aggressive caps or
/// steep headings trigger the scaling.
inline RotationProfile safe_rotation(double peak_tilt, const MotionLimits& limits,
                                     const ObjectParams& obj, double elevation) {
  double accel_scale = 1.0;
  double rate_scale = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    RotationProfile rot = rotation_half_profile(
        limits.tilt_jerk_max, limits.tilt_accel_max * accel_scale,
        limits.tilt_rate_max * rate_scale, peak_tilt);
    bool ok = true;
    const auto state_ok = [&](const RotationSample& rs, double tau) {
      const double d1 = kGravity * std::cos(rs.tilt) -
                        rs.rate * rs.rate * obj.height / 2.0;
      if (d1 < 0.05 * kGravity) return false;
      const double aw = std::min(
          limits.jerk_max * tau,
          stable_ride_level(rs, elevation, obj, limits.accel_max));
      double cop;
      try {
        cop = required_cop_offset(TrayState{rs.tilt, rs.rate, rs.accel}, aw,
                                  elevation, obj);
      } catch (const SingularConfiguration&) {
        return false;
      }
      return std::abs(cop) <= obj.base_radius * (1.0 + 1e-9);
    };
    double seg_start = 0.0;
    for (int s = 0; s < 7 && ok; ++s) {
      const double seg_end = rot.breakpoints[static_cast<std::size_t>(s)];
      if (seg_end > seg_start) {
        for (int i = 0; i <= 24 && ok; ++i) {
          const double t = seg_start + (seg_end - seg_start) * i / 24.0;
          if (!state_ok(sample_rotation(rot, t), t)) ok = false;
        }
      }
      seg_start = seg_end;
    }
    // Hold state after the rotation completes.
    if (ok && !state_ok(sample_rotation(rot, rot.total_time() + 1.0),
                        rot.total_time() + 1.0)) {
      ok = false;
    }
    if (ok) return rot;
    accel_scale *= 0.7;
    rate_scale *= 0.85;
  }
  throw InfeasiblePhase("safe_rotation: no stable rotation profile found");
}

/// Composite Simpson integral of f over [a, b].
template <typename F>
double simpson(F&& f, double a, double b, int n_half = 24) {
  if (!(b > a)) return 0.0;
  const double h = (b - a) / (2.0 * n_half);
  double acc = f(a) + f(b);
  for (int i = 1; i < 2 * n_half; ++i) {
    acc += f(a + h * i) * ((i % 2) ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

/// Velocity accumulated while the tray rotation runs, riding the clamped
/// tipping limit. Continuous-domain quadrature used by the tilt fit.
inline double rotation_velocity_budget(const RotationProfile& rot, double elevation,
                                       const ObjectParams& obj,
                                       const MotionLimits& limits) {
  double v = 0.0;
  double seg_start = 0.0;
  for (int s = 0; s < 7; ++s) {
    const double seg_end = rot.breakpoints[static_cast<std::size_t>(s)];
    v += simpson(
        [&](double t) {
          return stable_ride_level(sample_rotation(rot, t), elevation, obj,
                                   limits.accel_max);
        },
        seg_start, seg_end);
    seg_start = seg_end;
  }
  return v;
}

struct TiltFit {
  double tilt = 0.0;         // fitted tilt
  double cap_limited = 0.0;  // largest tilt keeping the static limit <= accel cap
  double vel_limited = 0.0;  // largest tilt keeping the rotation budget <= target
};

/// Largest tray tilt such that (a) the raw static tipping limit at full
/// tilt does not exceed the robot acceleration cap and (b) the velocity
/// gained while rotating stays within `vel_target`.
inline TiltFit fit_tilt(double elevation, const ObjectParams& obj,
                        const MotionLimits& limits, double vel_target) {
  const auto cap_ok = [&](double tilt) {
    const TippingAccel tip =
        max_translational_accel(TrayState{tilt, 0.0, 0.0}, elevation, obj);
    if (!tip.constrained) return false;  // inactive constraint: tilting is useless
    if (tip.clamped_negative) return false;
    return tip.value <= limits.accel_max;
  };
  const auto vel_ok = [&](double tilt) {
    try {
      const RotationProfile rot = safe_rotation(tilt, limits, obj, elevation);
      return rotation_velocity_budget(rot, elevation, obj, limits) <= vel_target;
    } catch (const InfeasiblePhase&) {
      return false;  // tilt too large to hold within the motion limits
    }
  };
  const auto largest = [&](auto&& pred) {
    if (!pred(0.0)) return 0.0;
    if (pred(kTiltCap)) return kTiltCap;
    double lo = 0.0, hi = kTiltCap;
    for (int i = 0; i < 40; ++i) {
      const double mid = 0.5 * (lo + hi);
      (pred(mid) ? lo : hi) = mid;
    }
    return lo;
  };
  TiltFit fit;
  fit.cap_limited = largest(cap_ok);
  fit.vel_limited = largest(vel_ok);
  fit.tilt = std::min(fit.cap_limited, fit.vel_limited);
  return fit;
}

/// One transport phase: a first half of `half_steps` samples ending exactly
/// at half the phase peak velocity, plus its sample mirror. Sample arrays
/// have 2*half_steps + 1 entries.
struct Phase {
  int half_steps = 0;
  double delay = 0.0;  // rest dwell before the ramp
  double peak_tilt = 0.0;
  RotationProfile rotation;
  double rotation_end = 0.0;  // delay + rotation duration
  std::vector<double> accel;
  std::vector<double> tilt, tilt_rate, tilt_accel, tilt_jerk;
  std::vector<double> vel;
  double distance = 0.0;
  double peak_velocity = 0.0;
};

/// Waveform sample: jerk-limited ramp into the clamped tipping-limit ride,
/// shifted right by the start delay.
inline double phase_waveform(double t, double delay, const RotationProfile& rot,
                             double elevation, const ObjectParams& obj,
                             const MotionLimits& limits) {
  const double tp = t - delay;
  if (tp <= 0.0) return 0.0;
  const double level = stable_ride_level(sample_rotation(rot, tp), elevation,
                                         obj, limits.accel_max);
  return std::min(level, limits.jerk_max * tp);
}

/// First-half acceleration samples (indices 0..m) for a given start delay,
/// with a discrete forward jerk guard; returns the trapezoidal velocity at
/// sample m.
inline double first_half_velocity(int m, double delay, const RotationProfile& rot,
                                  double elevation, const ObjectParams& obj,
                                  const MotionLimits& limits, double dt,
                                  std::vector<double>* out_accel = nullptr) {
  if (out_accel) out_accel->assign(static_cast<std::size_t>(m) + 1, 0.0);
  double v = 0.0;
  double prev = 0.0;
  for (int k = 1; k <= m; ++k) {
    double a = phase_waveform(k * dt, delay, rot, elevation, obj, limits);
    a = std::min(a, prev + limits.jerk_max * dt);
    v += 0.5 * (prev + a) * dt;
    if (out_accel) (*out_accel)[static_cast<std::size_t>(k)] = a;
    prev = a;
  }
  return v;
}

/// Builds one phase at the given elevation: fits the tilt, sizes the first
/// half, and solves the start delay so the discrete midpoint velocity is
/// exactly `vel_target`.
inline Phase build_phase(double elevation, double vel_target,
                         const ObjectParams& obj, const MotionLimits& limits,
                         double dt) {
  if (!(vel_target > 0.0)) {
    throw InvalidParameter("build_phase: velocity target must be > 0");
  }
  const TiltFit fit = fit_tilt(elevation, obj, limits, vel_target);

  // Discrete refit: largest tilt whose rotation, ending exactly on a grid
  // sample, keeps the discrete velocity at or below the target.
  const auto budget_at = [&](double tilt) {
    try {
      const RotationProfile rot = safe_rotation(tilt, limits, obj, elevation);
      const int m =
          static_cast<int>(std::ceil(rot.total_time() / dt - 1e-12)) + 1;
      const double delay = m * dt - rot.total_time();
      return first_half_velocity(m, delay, rot, elevation, obj, limits, dt);
    } catch (const InfeasiblePhase&) {
      return std::numeric_limits<double>::infinity();  // over any budget
    }
  };
  double tilt = fit.tilt;
  if (budget_at(tilt) > vel_target) {
    double lo = 0.0, hi = tilt;
    for (int i = 0; i < 40; ++i) {
      const double mid = 0.5 * (lo + hi);
      (budget_at(mid) <= vel_target ? lo : hi) = mid;
    }
    tilt = lo;
  }

  Phase ph;
  ph.peak_tilt = tilt;
  ph.rotation = safe_rotation(tilt, limits, obj, elevation);
  const double t_rot = ph.rotation.total_time();

  // Extend the full-tilt hold sample by sample until the zero-delay
  // velocity reaches the target.
  int m = static_cast<int>(std::ceil(t_rot / dt - 1e-12)) + 1;
  {
    double v = 0.0, prev = 0.0;
    int k = 1;
    for (;; ++k) {
      double a = phase_waveform(k * dt, 0.0, ph.rotation, elevation, obj, limits);
      a = std::min(a, prev + limits.jerk_max * dt);
      v += 0.5 * (prev + a) * dt;
      prev = a;
      if (k >= m && v >= vel_target) {
        m = k;
        break;
      }
      if (k > 20000000) {
        throw InfeasiblePhase("build_phase: velocity target unreachable");
      }
    }
  }

  const auto v_at = [&](double delay) {
    return first_half_velocity(m, delay, ph.rotation, elevation, obj, limits, dt);
  };
  double lo = 0.0, hi = m * dt - t_rot;
  if (v_at(hi) > vel_target) {
    ++m;  // one extra hold step gives the delay room; value is shift-invariant
    hi = m * dt - t_rot;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (v_at(mid) >= vel_target ? lo : hi) = mid;
  }
  const double delay = 0.5 * (lo + hi);

  ph.half_steps = m;
  ph.delay = delay;
  ph.rotation_end = delay + t_rot;
  std::vector<double> half;
  first_half_velocity(m, delay, ph.rotation, elevation, obj, limits, dt, &half);

  const std::size_t n = 2 * static_cast<std::size_t>(m) + 1;
  ph.accel.assign(n, 0.0);
  ph.tilt.assign(n, 0.0);
  ph.tilt_rate.assign(n, 0.0);
  ph.tilt_accel.assign(n, 0.0);
  ph.tilt_jerk.assign(n, 0.0);
  for (int k = 0; k <= m; ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    ph.accel[i] = half[i];
    if (k * dt <= delay) {
      ph.tilt[i] = 0.0;
      continue;  // tray at rest during the dwell
    }
    const RotationSample rs = sample_rotation(ph.rotation, k * dt - delay);
    ph.tilt[i] = rs.tilt;
    ph.tilt_rate[i] = rs.rate;
    ph.tilt_accel[i] = rs.accel;
    ph.tilt_jerk[i] = rs.jerk;
  }
  for (int k = m + 1; k <= 2 * m; ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    const std::size_t j = static_cast<std::size_t>(2 * m - k);
    ph.accel[i] = ph.accel[j];
    ph.tilt[i] = ph.tilt[j];
    ph.tilt_rate[i] = -ph.tilt_rate[j];
    ph.tilt_accel[i] = ph.tilt_accel[j];
    ph.tilt_jerk[i] = -ph.tilt_jerk[j];
  }

  ph.vel.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    ph.vel[i] = ph.vel[i - 1] + 0.5 * (ph.accel[i - 1] + ph.accel[i]) * dt;
  }
  ph.peak_velocity = ph.vel[n - 1];
  double d = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    d += 0.5 * (ph.vel[i - 1] + ph.vel[i]) * dt;
  }
  ph.distance = d;
  return ph;
}

/// Shallow velocity dip inserted in the cruise to absorb the sub-sample
/// distance residual left by the integer phase and cruise durations.
struct Dimple {
  int ramp_steps = 0;
  int flat_steps = 0;
  double amplitude_cap = 0.0;  // bound on the dip acceleration magnitude
  int min_cruise_steps = 0;
};

inline Dimple size_dimple(double peak_vel, double elevation,
                          const ObjectParams& obj, const MotionLimits& limits,
                          double dt) {
  Dimple d;
  const double fwd = static_level_cap(elevation, obj, limits.accel_max);
  const double brk = static_level_cap(-elevation, obj, limits.accel_max);
  d.amplitude_cap = std::min(0.45 * std::min({fwd, brk, limits.accel_max}),
                             0.9 * limits.jerk_max * dt);
  const double needed = 1.3 * peak_vel * dt;  // one distance quantum plus margin
  int ramp = 4;
  for (int iter = 0; iter < 24; ++iter) {
    const int flat = std::max(2, ramp / 8);
    const double amp = std::min(d.amplitude_cap, 0.5 * peak_vel / (ramp * dt));
    // Unit dip removes exactly amp * ramp * (ramp + flat) * dt^2 of distance.
    const double capacity = amp * ramp * (ramp + flat) * dt * dt;
    d.ramp_steps = ramp;
    d.flat_steps = flat;
    if (capacity >= needed || ramp >= (1 << 18)) break;
    ramp *= 2;
  }
  d.min_cruise_steps = 2 * d.ramp_steps + d.flat_steps + 6;
  return d;
}

/// Cruise acceleration samples (length steps+1, zero at both ends) whose
/// trapezoidal double sum removes exactly `deficit` of distance.
inline std::vector<double> dimple_samples(const Dimple& d, int steps,
                                          double deficit, double dt,
                                          double* amplitude_out = nullptr) {
  std::vector<double> a(static_cast<std::size_t>(steps) + 1, 0.0);
  if (amplitude_out) *amplitude_out = 0.0;
  if (deficit <= 0.0) return a;
  if (steps < 2 * d.ramp_steps + d.flat_steps + 4) {
    throw InfeasiblePhase("dimple_samples: cruise too short for the absorber");
  }
  const int s0 = 2;
  for (int k = 0; k < d.ramp_steps; ++k) {
    a[static_cast<std::size_t>(s0 + k)] = -1.0;
    a[static_cast<std::size_t>(s0 + d.ramp_steps + d.flat_steps + k)] = 1.0;
  }
  double v = 0.0, unit = 0.0;
  for (int k = 1; k <= steps; ++k) {
    v += 0.5 *
         (a[static_cast<std::size_t>(k - 1)] + a[static_cast<std::size_t>(k)]) *
         dt;
    unit += -v * dt;  // v deviation is zero at both window ends
  }
  const double lam = deficit / unit;
  for (auto& x : a) x *= lam;
  if (amplitude_out) *amplitude_out = lam;
  return a;
}

inline void check_request(const PlanRequest& req, const char* where) {
  if (!(req.distance > 0.0) || !std::isfinite(req.distance)) {
    throw InvalidParameter(std::string(where) + ": distance must be > 0");
  }
  if (!(req.elevation >= -std::numbers::pi / 2 &&
        req.elevation <= std::numbers::pi / 2)) {
    throw InvalidParameter(std::string(where) +
                           ": elevation out of [-pi/2, pi/2]");
  }
  if (!std::isfinite(req.azimuth)) {
    throw InvalidParameter(std::string(where) + ": azimuth must be finite");
  }
  if (!(req.sample_dt > 0.0)) {
    throw InvalidParameter(std::string(where) + ": sample_dt must be > 0");
  }
  if (!req.object.valid()) {
    throw InvalidParameter(std::string(where) + ": invalid object");
  }
  if (!req.limits.valid()) {
    throw InvalidParameter(std::string(where) + ": invalid limits");
  }
}

/// Glue the two phases and the cruise into the emitted sample array.
inline Trajectory emit(const PlanRequest& req, const Phase& acc, const Phase& dec,
                       int cruise_steps, const std::vector<double>& cruise_accel) {
  const double dt = req.sample_dt;
  const int na = 2 * acc.half_steps;
  const int nd = 2 * dec.half_steps;
  const int n_total = na + cruise_steps + nd;

  Trajectory traj;
  traj.request = req;
  traj.t_accel = na * dt;
  traj.t_cruise = cruise_steps * dt;
  traj.t_decel = nd * dt;
  traj.t_total = n_total * dt;
  traj.peak_velocity = acc.peak_velocity;
  traj.accel_peak_tilt = acc.peak_tilt;
  traj.decel_peak_tilt = dec.peak_tilt;
  traj.accel_rotation_end = acc.rotation_end;

  const double ce = std::cos(req.elevation), se = std::sin(req.elevation);
  const double cz = std::cos(req.azimuth), sz = std::sin(req.azimuth);
  const std::array<double, 3> dir{ce * cz, ce * sz, se};

  traj.samples.resize(static_cast<std::size_t>(n_total) + 1);
  double v = 0.0, s = 0.0, prev_a = 0.0, prev_v = 0.0;
  for (int k = 0; k <= n_total; ++k) {
    double a, tl, tr, ta, tj;
    if (k <= na) {
      const std::size_t i = static_cast<std::size_t>(k);
      a = acc.accel[i];
      tl = acc.tilt[i];
      tr = acc.tilt_rate[i];
      ta = acc.tilt_accel[i];
      tj = acc.tilt_jerk[i];
    } else if (k < na + cruise_steps) {
      a = cruise_accel[static_cast<std::size_t>(k - na)];
      tl = tr = ta = tj = 0.0;
    } else {
      const std::size_t j = static_cast<std::size_t>(nd - (k - na - cruise_steps));
      a = -dec.accel[j];
      tl = -dec.tilt[j];
      tr = dec.tilt_rate[j];
      ta = -dec.tilt_accel[j];
      tj = dec.tilt_jerk[j];
    }
    if (k > 0) {
      v += 0.5 * (prev_a + a) * dt;
      s += 0.5 * (prev_v + v) * dt;
    }
    prev_a = a;
    prev_v = v;
    KinematicSample& smp = traj.samples[static_cast<std::size_t>(k)];
    smp.t = k * dt;
    smp.accel = a;
    smp.vel = v;
    smp.path_pos = s;
    smp.tilt = tl;
    smp.tilt_rate = tr;
    smp.tilt_accel = ta;
    smp.tilt_jerk = tj;
    smp.pitch = tl;
    smp.position = {s * dir[0], s * dir[1], s * dir[2]};
  }
  return traj;
}

}  // namespace detail

/// Largest tray tilt for the acceleration phase satisfying both the
/// acceleration-cap condition at full tilt and the half-peak-velocity
/// budget for the rotation.
inline double fit_peak_tilt(double elevation, const ObjectParams& obj,
                            const MotionLimits& limits) {
  if (!limits.valid()) throw InvalidParameter("fit_peak_tilt: invalid limits");
  check_object(obj, "fit_peak_tilt");
  return detail::fit_tilt(elevation, obj, limits, limits.vel_max / 2.0).tilt;
}

/// Clamped tipping-limit acceleration sampled on the dt grid over the
/// rotation [0, t_rot]. An inactive tipping constraint maps to the cap.
inline std::vector<double> accel_limit_samples(const RotationProfile& rot,
                                               double elevation,
                                               const ObjectParams& obj,
                                               const MotionLimits& limits,
                                               double dt) {
  if (!(dt > 0.0)) throw InvalidParameter("accel_limit_samples: dt must be > 0");
  const int n = static_cast<int>(std::ceil(rot.total_time() / dt - 1e-12));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    out.push_back(detail::ride_level(sample_rotation(rot, k * dt), elevation,
                                     obj, limits.accel_max));
  }
  return out;
}

/// Acceleration phase for a transport at `elevation`: the tray tilts to
/// the fitted angle, acceleration rides the clamped tipping limit, holds
/// until the discrete velocity reaches `vel_target` at the midpoint
/// sample, then mirrors. Exposed for tests; assemble_trajectory drives it.
inline detail::Phase build_accel_phase(double elevation, double vel_target,
                                       const ObjectParams& obj,
                                       const MotionLimits& limits, double dt) {
  return detail::build_phase(elevation, vel_target, obj, limits, dt);
}

/// Full transport plan: tilt-assisted acceleration phase, cruise, and
/// braking-side deceleration phase, covering exactly `distance`.
inline Trajectory assemble_trajectory(const PlanRequest& req) {
  detail::check_request(req, "assemble_trajectory");
  const double dt = req.sample_dt;

  detail::Phase acc, dec;
  detail::Dimple dim;
  int cruise_steps = 0;
  double deficit = 0.0;
  const auto try_peak = [&](double v_pk) {
    acc = detail::build_phase(req.elevation, v_pk / 2.0, req.object, req.limits, dt);
    dec = detail::build_phase(-req.elevation, v_pk / 2.0, req.object, req.limits, dt);
    dim = detail::size_dimple(v_pk, req.elevation, req.object, req.limits, dt);
    const double cruise_vel = acc.peak_velocity;
    const double need = req.distance - acc.distance - dec.distance;
    if (need < dim.min_cruise_steps * cruise_vel * dt) return false;
    cruise_steps =
        static_cast<int>(std::ceil(need / (cruise_vel * dt) - 1e-12));
    cruise_steps = std::max(cruise_steps, dim.min_cruise_steps);
    deficit = acc.distance + dec.distance + cruise_steps * cruise_vel * dt -
              req.distance;
    return true;
  };

  if (!try_peak(req.limits.vel_max)) {
    // Short transport: shrink the peak velocity until the phases plus the
    // minimal cruise fit inside the distance.
    const double floor = req.limits.vel_max * 1e-4;
    if (!try_peak(floor)) {
      throw InfeasibleDistance(
          "assemble_trajectory: distance below the minimal achievable "
          "displacement");
    }
    double lo = floor, hi = req.limits.vel_max;
    for (int i = 0; i < 20; ++i) {
      const double mid = 0.5 * (lo + hi);
      (try_peak(mid) ? lo : hi) = mid;
    }
    try_peak(lo);
  }

  double amplitude = 0.0;
  const std::vector<double> cruise =
      detail::dimple_samples(dim, cruise_steps, deficit, dt, &amplitude);
  if (amplitude > dim.amplitude_cap * 1.0001) {
    throw InfeasiblePhase("assemble_trajectory: cruise absorber out of range");
  }
  return detail::emit(req, acc, dec, cruise_steps, cruise);
}

/// Level-tray comparator: a seven-segment S-curve whose acceleration cap
/// is the lesser of the robot cap and the static tipping limit, with
/// segment durations snapped up to the sample grid and the jerk re-solved
/// so the discrete sums land exactly on the distance.
inline Trajectory plan_baseline(const PlanRequest& req) {
  detail::check_request(req, "plan_baseline");
  const double dt = req.sample_dt;
  const double cap =
      detail::static_level_cap(req.elevation, req.object, req.limits.accel_max);
  const SevenSegmentProfile cont = plan_seven_segment(
      req.distance, req.limits.jerk_max, cap, req.limits.vel_max);
  const auto& seg = cont.segments();
  const int r =
      std::max(1, static_cast<int>(std::ceil(seg[0].duration / dt - 1e-9)));
  const int p = static_cast<int>(std::ceil(seg[1].duration / dt - 1e-9));
  const int c = static_cast<int>(std::ceil(seg[3].duration / dt - 1e-9));
  const double jerk = req.distance / (static_cast<double>(r) * (r + p) *
                                      (2.0 * r + p + c) * dt * dt * dt);

  const int counts[7] = {r, p, r, c, r, p, r};
  const double sign[7] = {+1.0, 0.0, -1.0, 0.0, -1.0, 0.0, +1.0};
  const int n_total = 2 * (2 * r + p) + c;

  Trajectory traj;
  traj.request = req;
  traj.t_accel = (2 * r + p) * dt;
  traj.t_cruise = c * dt;
  traj.t_decel = (2 * r + p) * dt;
  traj.t_total = n_total * dt;
  traj.peak_velocity = jerk * r * (r + p) * dt * dt;

  const double ce = std::cos(req.elevation), se = std::sin(req.elevation);
  const double cz = std::cos(req.azimuth), sz = std::sin(req.azimuth);
  const std::array<double, 3> dir{ce * cz, ce * sz, se};

  traj.samples.resize(static_cast<std::size_t>(n_total) + 1);
  double a = 0.0, v = 0.0, s = 0.0;
  int k = 0;
  const auto put = [&](int idx) {
    KinematicSample& smp = traj.samples[static_cast<std::size_t>(idx)];
    smp.t = idx * dt;
    smp.accel = a;
    smp.vel = v;
    smp.path_pos = s;
    smp.position = {s * dir[0], s * dir[1], s * dir[2]};
  };
  put(0);
  for (int si = 0; si < 7; ++si) {
    for (int i = 0; i < counts[si]; ++i) {
      const double a_next = a + sign[si] * jerk * dt;
      const double v_next = v + 0.5 * (a + a_next) * dt;
      s += 0.5 * (v + v_next) * dt;
      a = a_next;
      v = v_next;
      put(++k);
    }
  }
  return traj;
}

/// Plans both approaches and reports the timing gain. The optional second
/// object plans the baseline with a different cylinder.
inline ComparisonReport compare(const PlanRequest& req,
                                const ObjectParams* baseline_object = nullptr) {
  const Trajectory with_rot = assemble_trajectory(req);
  PlanRequest base_req = req;
  if (baseline_object) base_req.object = *baseline_object;
  const Trajectory without = plan_baseline(base_req);
  ComparisonReport rep;
  rep.time_with_rotation = with_rot.t_total;
  rep.time_without_rotation = without.t_total;
  rep.improvement = 1.0 - rep.time_with_rotation / rep.time_without_rotation;
  return rep;
}

/// Grid sweep over (x, y) target displacements; each point converts to a
/// straight-line request and runs compare. Rows come out in row-major
/// order (y outer, x inner); grid points at the origin are skipped with a
/// note.
inline std::vector<SweepRow> efficiency_sweep(double x0, double x1, int nx,
                                              double y0, double y1, int ny,
                                              const ObjectParams& obj,
                                              const MotionLimits& limits,
                                              double dt = 1e-3) {
  if (nx < 1 || ny < 1) {
    throw InvalidParameter("efficiency_sweep: grid counts must be >= 1");
  }
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int iy = 0; iy < ny; ++iy) {
    const double y = (ny == 1) ? y0 : y0 + (y1 - y0) * iy / (ny - 1);
    for (int ix = 0; ix < nx; ++ix) {
      const double x = (nx == 1) ? x0 : x0 + (x1 - x0) * ix / (nx - 1);
      SweepRow row;
      row.x = x;
      row.y = y;
      const double dist = std::hypot(x, y);
      if (dist < 1e-9) {
        row.skipped = true;
        row.note = "origin: zero distance";
        rows.push_back(row);
        continue;
      }
      PlanRequest req;
      req.distance = dist;
      req.elevation = std::atan2(y, x);
      req.azimuth = 0.0;
      req.object = obj;
      req.limits = limits;
      req.sample_dt = dt;
      const ComparisonReport rep = compare(req);
      row.time_with_rotation = rep.time_with_rotation;
      row.time_without_rotation = rep.time_without_rotation;
      row.improvement = rep.improvement;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace traymotion
