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

// Rigid contact model between an upright cylinder and a tilting tray.
//
// All force/torque arithmetic is planar, carried out in the vertical plane
// containing the motion direction. Tray-frame axes: e1 along the tray
// surface toward the motion direction, e2 along the tray normal. The tray
// tilts by `tilt` about the horizontal axis perpendicular to the plane;
// positive tilt turns the tray normal toward the motion direction. The
// line of travel makes angle `elevation` with the horizontal.
//
// The candidate center of pressure C sits on the base diameter at signed
// offset `cop_offset` from the base center R, positive toward the trailing
// edge. Stability requires |cop_offset| <= base_radius.

#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "traymotion/errors.hpp"

namespace traymotion {

/// Gravitational acceleration, m/s^2. Fixed project constant.
inline constexpr double kGravity = 9.81;

/// Below this value of the tipping-balance denominator the tipping
/// constraint is reported inactive instead of producing huge or negative
/// acceleration limits.
inline constexpr double kDenominatorGuard = 1e-6;

/// Transported object: a uniform solid cylinder standing on its base.
struct ObjectParams {
  double mass = 0.0;         // kg
  double base_radius = 0.0;  // m
  double height = 0.0;       // m
  double inertia = 0.0;      // kg m^2, transverse axis through the base center

  bool valid() const {
    return mass > 0.0 && base_radius > 0.0 && height > 0.0 && inertia > 0.0 &&
           std::isfinite(mass) && std::isfinite(base_radius) &&
           std::isfinite(height) && std::isfinite(inertia);
  }
};

/// Moment of inertia of a uniform solid cylinder about a transverse axis
/// through the center of its base: m (h^2/3 + r^2/4).
inline double cylinder_inertia(double mass, double base_radius, double height) {
  if (!(mass > 0.0) || !(base_radius >= 0.0) || !(height >= 0.0)) {
    throw InvalidParameter("cylinder_inertia: mass must be > 0 and geometry >= 0");
  }
  return mass * (height * height / 3.0 + base_radius * base_radius / 4.0);
}

/// Convenience constructor computing the inertia from the geometry.
inline ObjectParams make_cylinder(double mass, double base_radius, double height) {
  if (!(mass > 0.0) || !(base_radius > 0.0) || !(height > 0.0)) {
    throw InvalidParameter("make_cylinder: mass, radius, height must be > 0");
  }
  return ObjectParams{mass, base_radius, height,
                      cylinder_inertia(mass, base_radius, height)};
}

/// Instantaneous rotational state of the tray.
struct TrayState {
  double tilt = 0.0;    // rad, positive toward the motion direction
  double rate = 0.0;    // rad/s
  double accel = 0.0;   // rad/s^2
};

/// Planar force system acting on the object, expressed in the tray frame
/// (e1 along the surface toward the motion, e2 along the normal).
struct ForceBalance {
  double f_obj[2];          // N, resultant of gravity and inertial force, at O
  double f_tray[2];         // N, tray reaction at C, equals -f_obj
  double f_centrifugal[2];  // N, magnitude m w^2 h/2, at C
  double torque;            // N m, I * tilt_accel about the axis through R
};

inline void check_object(const ObjectParams& obj, const char* where) {
  if (!obj.valid()) throw InvalidParameter(std::string(where) + ": invalid object");
}

/// Forces entering the tray/object torque balance for commanded
/// translational acceleration `accel` along the travel direction.
inline ForceBalance contact_forces(const TrayState& tray, double accel,
                                   double elevation, const ObjectParams& obj) {
  check_object(obj, "contact_forces");
  const double m = obj.mass;
  const double h = obj.height;
  const double sf = std::sin(tray.tilt);
  const double cf = std::cos(tray.tilt);
  const double a1 = accel * std::cos(elevation + tray.tilt);  // along e1
  const double a2 = accel * std::sin(elevation + tray.tilt);  // along e2
  // Gravity in tray coordinates.
  const double g1 = kGravity * sf;
  const double g2 = -kGravity * cf;
  ForceBalance fb;
  fb.f_obj[0] = m * (g1 - a1);
  fb.f_obj[1] = m * (g2 - a2);
  fb.f_tray[0] = -fb.f_obj[0];
  fb.f_tray[1] = -fb.f_obj[1];
  fb.f_centrifugal[0] = 0.0;
  fb.f_centrifugal[1] = -m * tray.rate * tray.rate * h / 2.0;
  fb.torque = obj.inertia * tray.accel;
  return fb;
}

/// Result of the tipping-limited acceleration computation. When the
/// denominator of the balance is at or below kDenominatorGuard the
/// constraint is inactive and no finite limit exists; callers clamp to
/// their own acceleration cap. The sentinel is this tagged state, never a
/// raw infinity.
struct TippingAccel {
  bool constrained = true;
  double value = 0.0;           // m/s^2, valid when constrained
  bool clamped_negative = false;  // raw quotient was negative, clamped to 0

  double value_or(double fallback) const {
    return constrained ? value : fallback;
  }
};

/// Maximum translational acceleration along the travel direction for which
/// the center of pressure can stay on the base boundary (offset +r).
///
/// numerator   = I a/m + (h g/2) sin(tilt) + r g cos(tilt) - r w^2 h/2
/// denominator = (h/2) cos(elevation+tilt) - r sin(elevation+tilt)
inline TippingAccel max_translational_accel(const TrayState& tray,
                                            double elevation,
                                            const ObjectParams& obj) {
  check_object(obj, "max_translational_accel");
  if (!(elevation >= -std::numbers::pi / 2 && elevation <= std::numbers::pi / 2)) {
    throw InvalidParameter("max_translational_accel: elevation out of [-pi/2, pi/2]");
  }
  const double h2 = obj.height / 2.0;
  const double r = obj.base_radius;
  const double den = h2 * std::cos(elevation + tray.tilt) -
                     r * std::sin(elevation + tray.tilt);
  if (den <= kDenominatorGuard) {
    return TippingAccel{false, 0.0, false};
  }
  const double num = obj.inertia * tray.accel / obj.mass +
                     h2 * kGravity * std::sin(tray.tilt) +
                     r * kGravity * std::cos(tray.tilt) -
                     r * tray.rate * tray.rate * obj.height / 2.0;
  if (num < 0.0) {
    return TippingAccel{true, 0.0, true};
  }
  return TippingAccel{true, num / den, false};
}

/// Residual of the torque balance about the base center R for commanded
/// acceleration `accel` and a candidate center of pressure at `cop_offset`:
///
///   residual = torque - [ RO x f_obj + RC x f_tray + RC x f_centrifugal ]
///
/// with RO = (0, h/2) and RC = (-cop_offset, 0) in tray coordinates.
/// Exactly zero when (accel, cop_offset) satisfy the balance. This is the
/// independent check for max_translational_accel.
inline double torque_residual(const TrayState& tray, double accel,
                              double elevation, double cop_offset,
                              const ObjectParams& obj) {
  check_object(obj, "torque_residual");
  if (std::abs(cop_offset) > obj.base_radius * (1.0 + 1e-12)) {
    throw InvalidParameter("torque_residual: |cop_offset| exceeds base radius");
  }
  const ForceBalance fb = contact_forces(tray, accel, elevation, obj);
  const double ro[2] = {0.0, obj.height / 2.0};
  const double rc[2] = {-cop_offset, 0.0};
  auto cross2 = [](const double u[2], const double v[2]) {
    return u[0] * v[1] - u[1] * v[0];
  };
  const double applied = cross2(ro, fb.f_obj) + cross2(rc, fb.f_tray) +
                         cross2(rc, fb.f_centrifugal);
  return fb.torque - applied;
}

/// Center-of-pressure offset required for the torque balance to hold at the
/// commanded acceleration. May return values with |offset| > base_radius,
/// meaning the object tips. Throws SingularConfiguration when the force
/// component normal to the tray vanishes.
inline double required_cop_offset(const TrayState& tray, double accel,
                                  double elevation, const ObjectParams& obj) {
  check_object(obj, "required_cop_offset");
  const double h2 = obj.height / 2.0;
  const double cf = std::cos(tray.tilt);
  const double sf = std::sin(tray.tilt);
  const double a1 = accel * std::cos(elevation + tray.tilt);
  const double a2 = accel * std::sin(elevation + tray.tilt);
  // Solve residual(cop_offset) = 0; the offset multiplies the tray-normal
  // force component (tray reaction plus centrifugal term).
  const double num = h2 * (a1 - kGravity * sf) - obj.inertia * tray.accel / obj.mass;
  const double den = kGravity * cf + a2 - tray.rate * tray.rate * obj.height / 2.0;
  if (std::abs(den) <= 1e-9 * kGravity) {
    throw SingularConfiguration(
        "required_cop_offset: contact force normal to the tray vanishes");
  }
  return num / den;
}

}  // namespace traymotion
