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

// Jerk-limited motion profile primitives.
//
// One rest-to-rest solver serves two roles: the classic seven-segment
// translational S-curve, and the tray rotation half-profile whose jerk
// pattern is [+j, 0, -j, 0, -j, 0, +j]. Profiles are stored analytically
// as a segment list and sampled on demand; there is no internal grid.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "traymotion/errors.hpp"

namespace traymotion {

/// One constant-jerk piece of a profile.
struct JerkSegment {
  double duration = 0.0;
  double jerk = 0.0;
};

/// Kinematic state at a profile time.
struct ProfileSample {
  double pos = 0.0;
  double vel = 0.0;
  double acc = 0.0;
  double jerk = 0.0;
};

/// Symmetric rest-to-rest seven-segment profile: jerk ramp, acceleration
/// plateau, jerk ramp down, cruise, then the mirrored deceleration half.
/// Plateaus degenerate to zero duration for short moves. Zero boundary
/// velocity and acceleration at both ends.
class SevenSegmentProfile {
 public:
  SevenSegmentProfile() = default;

  /// Minimum-time profile covering `distance` >= 0 under the caps.
  static SevenSegmentProfile plan(double distance, double jerk_max,
                                  double accel_max, double vel_max) {
    if (!(distance >= 0.0) || !std::isfinite(distance)) {
      throw InvalidParameter("SevenSegmentProfile: distance must be >= 0");
    }
    if (!(jerk_max > 0.0) || !(accel_max > 0.0) || !(vel_max > 0.0)) {
      throw InvalidParameter("SevenSegmentProfile: caps must be > 0");
    }
    SevenSegmentProfile p;
    double tj = 0.0, ta = 0.0, tv = 0.0;
    if (distance > 0.0) {
      // Fastest ramp to the velocity cap.
      tj = accel_max / jerk_max;
      if (vel_max * jerk_max < accel_max * accel_max) {
        tj = std::sqrt(vel_max / jerk_max);  // accel plateau unreachable
        ta = 0.0;
      } else {
        ta = vel_max / accel_max - tj;
      }
      const double d_no_cruise = vel_max * (2.0 * tj + ta);
      if (distance >= d_no_cruise) {
        tv = (distance - d_no_cruise) / vel_max;
      } else {
        // Peak velocity below the cap. With the accel plateau present the
        // covered distance is a_max (tj+ta)(2 tj+ta); otherwise triangular.
        tv = 0.0;
        tj = accel_max / jerk_max;
        const double d_tri_at_amax = 2.0 * jerk_max * tj * tj * tj;
        if (distance >= d_tri_at_amax) {
          ta = 0.5 * (-3.0 * tj +
                      std::sqrt(tj * tj + 4.0 * distance / accel_max));
          if (ta < 0.0) ta = 0.0;
        } else {
          tj = std::cbrt(distance / (2.0 * jerk_max));
          ta = 0.0;
        }
      }
    }
    p.set_segments(tj, ta, tv, distance > 0.0 ? jerk_max : 0.0);
    return p;
  }

  double total_time() const { return knot_t_[7]; }
  double peak_velocity() const { return knot_[3].vel; }
  double peak_accel() const { return knot_[1].acc; }
  double distance() const { return knot_[7].pos; }

  const std::array<JerkSegment, 7>& segments() const { return seg_; }
  /// Segment end times; the last entry is the total duration.
  const std::array<double, 7>& knot_times() const { return knots_out_; }

  /// Closed-form piecewise-cubic evaluation. Clamps to the boundary states
  /// outside [0, total_time()].
  ProfileSample at(double t) const {
    if (t <= 0.0) return ProfileSample{0.0, 0.0, 0.0, seg_[0].jerk};
    if (t >= knot_t_[7]) return ProfileSample{knot_[7].pos, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    while (i < 6 && t >= knot_t_[i + 1]) ++i;
    const double u = t - knot_t_[i];
    const ProfileSample& k = knot_[i];
    const double j = seg_[i].jerk;
    ProfileSample s;
    s.jerk = j;
    s.acc = k.acc + j * u;
    s.vel = k.vel + k.acc * u + 0.5 * j * u * u;
    s.pos = k.pos + k.vel * u + 0.5 * k.acc * u * u + j * u * u * u / 6.0;
    return s;
  }

 private:
  void set_segments(double tj, double ta, double tv, double j) {
    const double d[7] = {tj, ta, tj, tv, tj, ta, tj};
    const double sign[7] = {+1.0, 0.0, -1.0, 0.0, -1.0, 0.0, +1.0};
    knot_t_[0] = 0.0;
    knot_[0] = ProfileSample{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < 7; ++i) {
      seg_[i] = JerkSegment{d[i], sign[i] * j};
      const ProfileSample& k = knot_[i];
      const double u = d[i];
      const double jj = seg_[i].jerk;
      knot_t_[i + 1] = knot_t_[i] + u;
      knot_[i + 1].acc = k.acc + jj * u;
      knot_[i + 1].vel = k.vel + k.acc * u + 0.5 * jj * u * u;
      knot_[i + 1].pos = k.pos + k.vel * u + 0.5 * k.acc * u * u + jj * u * u * u / 6.0;
      knot_[i + 1].jerk = 0.0;
      knots_out_[i] = knot_t_[i + 1];
    }
  }

  std::array<JerkSegment, 7> seg_{};
  std::array<double, 8> knot_t_{};
  std::array<ProfileSample, 8> knot_{};
  std::array<double, 7> knots_out_{};
};

/// Minimum-time jerk-limited point-to-point profile over `distance` > 0.
inline SevenSegmentProfile plan_seven_segment(double distance, double jerk_max,
                                              double accel_max, double vel_max) {
  if (!(distance > 0.0)) {
    throw InvalidParameter("plan_seven_segment: distance must be > 0");
  }
  return SevenSegmentProfile::plan(distance, jerk_max, accel_max, vel_max);
}

/// Tray rotation sample: tilt angle and its derivatives.
struct RotationSample {
  double tilt = 0.0;   // rad
  double rate = 0.0;   // rad/s
  double accel = 0.0;  // rad/s^2
  double jerk = 0.0;   // rad/s^3
};

/// Tilt half-profile: rotates the tray from level to `peak_tilt` with zero
/// boundary rate and angular acceleration, then holds. Breakpoints follow
/// the seven-segment schedule; rate stays non-negative throughout.
struct RotationProfile {
  SevenSegmentProfile profile;
  double peak_tilt = 0.0;
  /// Segment end times t1..t6 plus the completion time as the last entry.
  std::array<double, 7> breakpoints{};

  double total_time() const { return profile.total_time(); }
  bool empty() const { return !(total_time() > 0.0); }
};

/// Minimum-time rotation to `peak_tilt` >= 0 under the rotational caps,
/// degenerating the plateaus for small angles.
inline RotationProfile rotation_half_profile(double tilt_jerk_max,
                                             double tilt_accel_max,
                                             double tilt_rate_max,
                                             double peak_tilt) {
  if (peak_tilt < 0.0 || !std::isfinite(peak_tilt)) {
    throw InvalidParameter("rotation_half_profile: peak tilt must be >= 0");
  }
  if (!(tilt_jerk_max > 0.0) || !(tilt_accel_max > 0.0) || !(tilt_rate_max > 0.0)) {
    throw InvalidParameter("rotation_half_profile: caps must be > 0");
  }
  RotationProfile r;
  r.profile = SevenSegmentProfile::plan(peak_tilt, tilt_jerk_max,
                                        tilt_accel_max, tilt_rate_max);
  r.peak_tilt = peak_tilt;
  r.breakpoints = r.profile.knot_times();
  return r;
}

/// Closed-form evaluation of the rotation at time t; for t past the
/// completion time the tray holds the terminal tilt at rest.
inline RotationSample sample_rotation(const RotationProfile& rot, double t) {
  const ProfileSample s = rot.profile.at(t);
  return RotationSample{s.pos, s.vel, s.acc, s.jerk};
}

}  // namespace traymotion
