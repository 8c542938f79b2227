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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "traymotion/planner.hpp"
#include "traymotion/validator.hpp"

using namespace traymotion;

namespace {

constexpr double kPi = std::numbers::pi;

MotionLimits reference_limits() {
  return MotionLimits{6500.0, 13.0, 0.6, 6000.0, 9.0, 2.61};
}

ObjectParams cylinder_r8() { return make_cylinder(0.4, 0.008, 0.2); }
ObjectParams cylinder_r4() { return make_cylinder(0.4, 0.004, 0.2); }
ObjectParams cylinder_r3() { return make_cylinder(0.4, 0.003, 0.2); }

PlanRequest reference_request(double distance = 0.5, double elevation = kPi / 8) {
  PlanRequest req;
  req.distance = distance;
  req.elevation = elevation;
  req.azimuth = 0.0;
  req.object = cylinder_r8();
  req.limits = reference_limits();
  req.sample_dt = 1e-3;
  return req;
}

// Re-integration of emitted acceleration must reproduce the emitted
// velocity and position bit-for-bit up to rounding.
void check_integration_consistency(const Trajectory& traj) {
  const double dt = traj.request.sample_dt;
  double v = 0.0, s = 0.0;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    if (i > 0) {
      v += 0.5 * (traj.samples[i - 1].accel + traj.samples[i].accel) * dt;
      s += 0.5 * (traj.samples[i - 1].vel + traj.samples[i].vel) * dt;
    }
    CHECK(std::abs(v - traj.samples[i].vel) < 1e-9);
    CHECK(std::abs(s - traj.samples[i].path_pos) < 1e-9);
  }
}

}  // namespace

TEST_CASE("accel limit samples: no rotation gives the flat static limit") {
  const RotationProfile empty = rotation_half_profile(6000.0, 9.0, 2.61, 0.0);
  const auto samples =
      accel_limit_samples(empty, 0.0, cylinder_r8(), reference_limits(), 1e-3);
  REQUIRE(!samples.empty());
  for (double a : samples) {
    CHECK(a == doctest::Approx(0.7848).epsilon(1e-9));
  }
}

TEST_CASE("accel limit samples: tail equals the static formula at full tilt") {
  const ObjectParams obj = cylinder_r8();
  const MotionLimits lim = reference_limits();
  const RotationProfile rot = rotation_half_profile(6000.0, 9.0, 2.61, 0.3);
  const auto samples = accel_limit_samples(rot, 0.1, obj, lim, 1e-3);
  const TippingAccel stat =
      max_translational_accel(TrayState{0.3, 0.0, 0.0}, 0.1, obj);
  REQUIRE(stat.constrained);
  CHECK(samples.back() ==
        doctest::Approx(std::min(stat.value, lim.accel_max)).epsilon(1e-6));
  for (double a : samples) CHECK(a <= lim.accel_max + 1e-12);
}

TEST_CASE("fit_peak_tilt: zero when the cap binds at level tray") {
  MotionLimits lim = reference_limits();
  lim.accel_max = 0.5;  // below the level-tray static limit 0.7848
  CHECK(fit_peak_tilt(0.0, cylinder_r8(), lim) == doctest::Approx(0.0));
}

TEST_CASE("fit_peak_tilt: reference setup tilts and respects both conditions") {
  const ObjectParams obj = cylinder_r8();
  const MotionLimits lim = reference_limits();
  const double tilt = fit_peak_tilt(kPi / 8, obj, lim);
  CHECK(tilt > 0.0);
  CHECK(tilt <= kTiltCap);
  // Condition a: static limit at full tilt within the cap.
  const TippingAccel stat =
      max_translational_accel(TrayState{tilt, 0.0, 0.0}, kPi / 8, obj);
  REQUIRE(stat.constrained);
  CHECK(stat.value <= lim.accel_max + 1e-6);
  // Condition b: rotation velocity budget within half the velocity cap,
  // verified by re-simulating the fitted rotation.
  const RotationProfile rot = detail::safe_rotation(tilt, lim, obj, kPi / 8);
  const double v =
      detail::rotation_velocity_budget(rot, kPi / 8, obj, lim);
  CHECK(v <= lim.vel_max / 2.0 + 1e-6);
}

TEST_CASE("fit_peak_tilt: doubling the velocity cap never reduces the tilt") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> elev_d(-0.8, 0.8);
  std::uniform_real_distribution<double> r_d(0.003, 0.03);
  std::uniform_real_distribution<double> h_d(0.1, 0.35);
  std::uniform_real_distribution<double> v_d(0.2, 1.5);
  for (int i = 0; i < 25; ++i) {
    const ObjectParams obj = make_cylinder(0.5, r_d(rng), h_d(rng));
    MotionLimits lim = reference_limits();
    lim.vel_max = v_d(rng);
    const double elev = elev_d(rng);
    const double t1 = fit_peak_tilt(elev, obj, lim);
    lim.vel_max *= 2.0;
    const double t2 = fit_peak_tilt(elev, obj, lim);
    CHECK(t2 >= t1 - 1e-9);
  }
}

TEST_CASE("accel phase: midpoint velocity and mirror symmetry") {
  const ObjectParams obj = cylinder_r8();
  const MotionLimits lim = reference_limits();
  const auto ph = build_accel_phase(kPi / 8, lim.vel_max / 2.0, obj, lim, 1e-3);
  const std::size_t n = ph.accel.size();
  REQUIRE(n == 2 * static_cast<std::size_t>(ph.half_steps) + 1);

  // Midpoint velocity is exactly half the phase peak.
  CHECK(ph.vel[static_cast<std::size_t>(ph.half_steps)] ==
        doctest::Approx(lim.vel_max / 2.0).epsilon(1e-9));
  // Phase ends at the full peak with zero acceleration and level tray.
  CHECK(ph.peak_velocity == doctest::Approx(lim.vel_max).epsilon(1e-9));
  CHECK(ph.accel.front() == doctest::Approx(0.0));
  CHECK(ph.accel.back() == doctest::Approx(0.0));
  CHECK(ph.tilt.front() == doctest::Approx(0.0));
  CHECK(ph.tilt.back() == doctest::Approx(0.0));
  // Velocity mirror: v(t) + v(t_acc - t) = v_peak.
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(ph.vel[i] + ph.vel[n - 1 - i] ==
          doctest::Approx(ph.peak_velocity).epsilon(1e-9));
  }
  // Rotation completes by the midpoint and the tray holds the fitted tilt.
  CHECK(ph.rotation_end <= ph.half_steps * 1e-3 + 1e-12);
  CHECK(ph.tilt[static_cast<std::size_t>(ph.half_steps)] ==
        doctest::Approx(ph.peak_tilt).epsilon(1e-9));
}

TEST_CASE("accel phase rides the cap when the velocity budget is loose") {
  const ObjectParams obj = cylinder_r8();
  MotionLimits lim = reference_limits();
  lim.vel_max = 20.0;  // Eq-3-style regime: the cap condition binds
  const auto ph = build_accel_phase(0.0, lim.vel_max / 2.0, obj, lim, 1e-3);
  // At full tilt the plan holds the robot acceleration cap.
  double peak = 0.0;
  for (double a : ph.accel) peak = std::max(peak, a);
  CHECK(peak == doctest::Approx(lim.accel_max).epsilon(1e-6));
}

TEST_CASE("assemble: reference transport meets the endpoint contract") {
  const Trajectory traj = assemble_trajectory(reference_request());
  const KinematicSample& last = traj.samples.back();
  CHECK(last.path_pos == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(last.vel) < 1e-6);
  CHECK(std::abs(last.accel) < 1e-6);
  CHECK(std::abs(last.tilt) < 1e-6);
  CHECK(traj.t_total == doctest::Approx(traj.samples.back().t));
  check_integration_consistency(traj);
  // No overshoot at any sample.
  for (const auto& s : traj.samples) CHECK(s.path_pos <= 0.5 + 1e-9);
}

TEST_CASE("assemble: long transport cruises at the velocity cap") {
  PlanRequest req = reference_request(3.0, 0.1);
  const Trajectory traj = assemble_trajectory(req);
  CHECK(traj.t_cruise > 0.0);
  CHECK(traj.peak_velocity == doctest::Approx(req.limits.vel_max).epsilon(1e-9));
  CHECK(traj.samples.back().path_pos == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("assemble: short transport shrinks the peak velocity") {
  PlanRequest req = reference_request(0.12, 0.2);
  const Trajectory traj = assemble_trajectory(req);
  CHECK(traj.peak_velocity < req.limits.vel_max);
  CHECK(traj.samples.back().path_pos == doctest::Approx(0.12).epsilon(1e-9));
  check_integration_consistency(traj);
}

TEST_CASE("assemble: infeasible distance raises") {
  PlanRequest req = reference_request(1e-9, 0.0);
  CHECK_THROWS_AS(assemble_trajectory(req), InfeasibleDistance);
}

TEST_CASE("assemble: vertical transport needs no tilt") {
  PlanRequest req = reference_request(0.4, kPi / 2);
  const Trajectory traj = assemble_trajectory(req);
  CHECK(traj.accel_peak_tilt == doctest::Approx(0.0));
  CHECK(traj.samples.back().path_pos == doctest::Approx(0.4).epsilon(1e-9));
  // Acceleration phase rides the robot cap.
  double peak = 0.0;
  for (const auto& s : traj.samples) peak = std::max(peak, s.accel);
  CHECK(peak == doctest::Approx(req.limits.accel_max).epsilon(1e-6));
}

TEST_CASE("baseline: accel cap at level elevation") {
  PlanRequest req = reference_request(0.5, 0.0);
  const Trajectory traj = plan_baseline(req);
  double peak = 0.0;
  for (const auto& s : traj.samples) peak = std::max(peak, std::abs(s.accel));
  CHECK(peak <= 0.7848 + 1e-9);
  CHECK(peak == doctest::Approx(0.7848).epsilon(2e-2));
  CHECK(traj.samples.back().path_pos == doctest::Approx(0.5).epsilon(1e-9));
  for (const auto& s : traj.samples) CHECK(s.tilt == 0.0);
  check_integration_consistency(traj);
}

TEST_CASE("baseline: vertical transport uses the robot cap") {
  PlanRequest req = reference_request(0.5, kPi / 2);
  const Trajectory traj = plan_baseline(req);
  double peak = 0.0;
  for (const auto& s : traj.samples) peak = std::max(peak, std::abs(s.accel));
  CHECK(peak <= 13.0 + 1e-9);
  CHECK(peak == doctest::Approx(13.0).epsilon(5e-2));
}

TEST_CASE("baseline endpoint lands exactly") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> d_d(0.02, 2.0);
  std::uniform_real_distribution<double> e_d(-1.2, 1.2);
  for (int i = 0; i < 30; ++i) {
    PlanRequest req = reference_request(d_d(rng), e_d(rng));
    const Trajectory traj = plan_baseline(req);
    CHECK(traj.samples.back().path_pos ==
          doctest::Approx(req.distance).epsilon(1e-9));
    CHECK(std::abs(traj.samples.back().vel) < 1e-9);
    CHECK(std::abs(traj.samples.back().accel) < 1e-9);
    check_integration_consistency(traj);
  }
}

TEST_CASE("rotation never loses to the baseline") {
  const ComparisonReport rep = compare(reference_request());
  CHECK(rep.improvement >= 0.0);
  CHECK(rep.time_with_rotation <= rep.time_without_rotation + 1e-9);
}

TEST_CASE("compare: unequal-radius pairing lands in the expected band") {
  PlanRequest req = reference_request(0.5, kPi / 8);
  req.object = cylinder_r4();
  const ObjectParams base = cylinder_r3();
  const ComparisonReport rep = compare(req, &base);
  CHECK(rep.improvement > 0.37);
  CHECK(rep.improvement < 0.57);
}

TEST_CASE("plans are invariant under object mass scaling") {
  PlanRequest req = reference_request();
  const Trajectory a = assemble_trajectory(req);
  req.object = make_cylinder(5.0 * req.object.mass, req.object.base_radius,
                             req.object.height);
  const Trajectory b = assemble_trajectory(req);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); i += 37) {
    CHECK(a.samples[i].accel == doctest::Approx(b.samples[i].accel).epsilon(1e-12));
    CHECK(a.samples[i].vel == doctest::Approx(b.samples[i].vel).epsilon(1e-12));
  }
  CHECK(a.t_total == b.t_total);
}

TEST_CASE("assemble respects every motion limit at every sample") {
  std::mt19937 rng(131);
  std::uniform_real_distribution<double> d_d(0.15, 2.0);
  std::uniform_real_distribution<double> e_d(-1.1, 1.1);
  for (int i = 0; i < 12; ++i) {
    PlanRequest req = reference_request(d_d(rng), e_d(rng));
    const Trajectory traj = assemble_trajectory(req);
    const ConstraintAudit audit = audit_constraints(traj, req.limits);
    for (const LimitCheck& c : audit.checks) {
      INFO(c.name, " observed ", c.observed, " limit ", c.limit);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("assembled plans stay stable by construction") {
  std::mt19937 rng(151);
  std::uniform_real_distribution<double> d_d(0.15, 1.5);
  std::uniform_real_distribution<double> e_d(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    PlanRequest req = reference_request(d_d(rng), e_d(rng));
    const Trajectory traj = assemble_trajectory(req);
    const StabilityReport rep = stability_audit(traj, req.object);
    INFO("elevation ", req.elevation, " distance ", req.distance,
         " min margin ", rep.min_margin);
    CHECK(rep.stable);
    CHECK(rep.min_margin >= -kCopTolerance);
  }
}

TEST_CASE("planning twice gives identical trajectories") {
  const PlanRequest req = reference_request();
  const Trajectory a = assemble_trajectory(req);
  const Trajectory b = assemble_trajectory(req);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].accel == b.samples[i].accel);
    CHECK(a.samples[i].vel == b.samples[i].vel);
    CHECK(a.samples[i].path_pos == b.samples[i].path_pos);
    CHECK(a.samples[i].tilt == b.samples[i].tilt);
  }
}

TEST_CASE("pose embedding follows the line direction") {
  PlanRequest req = reference_request(0.5, 0.3);
  req.azimuth = 1.1;
  const Trajectory traj = assemble_trajectory(req);
  const double ce = std::cos(0.3), se = std::sin(0.3);
  const double cz = std::cos(1.1), sz = std::sin(1.1);
  for (std::size_t i = 0; i < traj.samples.size(); i += 101) {
    const auto& s = traj.samples[i];
    CHECK(s.position[0] == doctest::Approx(s.path_pos * ce * cz).epsilon(1e-12));
    CHECK(s.position[1] == doctest::Approx(s.path_pos * ce * sz).epsilon(1e-12));
    CHECK(s.position[2] == doctest::Approx(s.path_pos * se).epsilon(1e-12));
  }
}

TEST_CASE("efficiency sweep skips the origin point") {
  const auto rows =
      efficiency_sweep(0.0, 0.4, 2, 0.0, 0.0, 1, cylinder_r8(), reference_limits());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].skipped);
  CHECK(!rows[0].note.empty());
  CHECK_FALSE(rows[1].skipped);
  CHECK(rows[1].improvement >= 0.0);
}

TEST_CASE("efficiency sweep matches single compare calls") {
  const ObjectParams obj = cylinder_r8();
  const MotionLimits lim = reference_limits();
  const auto rows = efficiency_sweep(0.3, 0.6, 2, 0.0, 0.25, 2, obj, lim);
  REQUIRE(rows.size() == 4);
  for (const SweepRow& row : rows) {
    REQUIRE_FALSE(row.skipped);
    PlanRequest req;
    req.distance = std::hypot(row.x, row.y);
    req.elevation = std::atan2(row.y, row.x);
    req.object = obj;
    req.limits = lim;
    req.sample_dt = 1e-3;
    const ComparisonReport rep = compare(req);
    CHECK(row.time_with_rotation == doctest::Approx(rep.time_with_rotation));
    CHECK(row.time_without_rotation ==
          doctest::Approx(rep.time_without_rotation));
    CHECK(row.improvement >= -1e-9);
  }
}

TEST_CASE("improvement stays in [0, 1) for equal objects over random requests") {
  // Draws follow the problem premise: slender objects (small base over a
  // tall body) on headings away from gravity-aligned.
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> d_d(0.2, 1.5);
  std::uniform_real_distribution<double> e_d(-1.0, 0.7);
  std::uniform_real_distribution<double> r_d(0.003, 0.012);
  std::uniform_real_distribution<double> h_d(0.15, 0.3);
  for (int i = 0; i < 100; ++i) {
    PlanRequest req = reference_request(d_d(rng), e_d(rng));
    req.object = make_cylinder(0.5, r_d(rng), h_d(rng));
    const ComparisonReport rep = compare(req);
    INFO("distance ", req.distance, " elevation ", req.elevation, " radius ",
         req.object.base_radius, " improvement ", rep.improvement);
    CHECK(rep.improvement >= 0.0);
    CHECK(rep.improvement < 1.0);
  }
}

TEST_CASE("straight-down transport caps below free fall and stays stable") {
  PlanRequest req = reference_request(0.4, -kPi / 2);
  const Trajectory traj = assemble_trajectory(req);
  double peak = 0.0;
  for (const auto& s : traj.samples) peak = std::max(peak, s.accel);
  // Pushing the object down faster than free fall would need adhesion; the
  // plan also keeps a sliver of contact normal force in reserve.
  CHECK(peak <= kGravity + 1e-9);
  CHECK(traj.samples.back().path_pos == doctest::Approx(0.4).epsilon(1e-9));
  const StabilityReport rep = stability_audit(traj, req.object);
  CHECK(rep.stable);
}

TEST_CASE("degenerate comparison: rotation cannot help, improvement near zero") {
  PlanRequest req = reference_request(2.0, 0.0);
  req.limits.accel_max = 0.5;  // below the static limit: no tilt fitted
  const ComparisonReport rep = compare(req);
  CHECK(rep.improvement >= -1e-9);
  CHECK(rep.improvement < 5e-3);
}

TEST_CASE("request validation") {
  PlanRequest req = reference_request();
  req.distance = -1.0;
  CHECK_THROWS_AS(assemble_trajectory(req), InvalidParameter);
  req = reference_request();
  req.elevation = 2.0;
  CHECK_THROWS_AS(assemble_trajectory(req), InvalidParameter);
  req = reference_request();
  req.sample_dt = 0.0;
  CHECK_THROWS_AS(assemble_trajectory(req), InvalidParameter);
}
