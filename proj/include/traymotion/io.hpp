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

// File formats: strict JSON run configuration, deterministic trajectory
// CSV (9 significant digits, comma separator, '\n' newlines, no
// timestamps), summary/comparison JSON, and sweep CSV.

#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "traymotion/errors.hpp"
#include "traymotion/planner.hpp"

namespace traymotion {

/// Parsed run configuration.
struct RunConfig {
  ObjectParams object;
  std::optional<ObjectParams> baseline_object;  // unequal-object comparisons
  MotionLimits limits;
  double distance = 0.0;
  double elevation = 0.0;
  double azimuth = 0.0;
  double sample_dt = 1e-3;
  std::string trajectory_csv;  // optional default output paths
  std::string summary_json;

  PlanRequest request() const {
    return PlanRequest{distance, elevation, azimuth, object, limits, sample_dt};
  }
};

namespace io_detail {

using nlohmann::json;

inline void reject_unknown(const json& j, std::initializer_list<const char*> keys,
                           const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw InvalidParameter("config: unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

inline double num(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) {
    throw InvalidParameter("config: missing \"" + std::string(key) + "\" in " + where);
  }
  if (!j[key].is_number()) {
    throw InvalidParameter("config: \"" + std::string(key) + "\" in " + where +
                           " must be a number");
  }
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) {
    throw InvalidParameter("config: \"" + std::string(key) + "\" in " + where +
                           " must be finite");
  }
  return v;
}

inline ObjectParams parse_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw InvalidParameter("config: " + where + " must be an object");
  reject_unknown(j, {"mass_kg", "radius_m", "height_m"}, where);
  return make_cylinder(num(j, "mass_kg", where), num(j, "radius_m", where),
                       num(j, "height_m", where));
}

}  // namespace io_detail

/// Parses and validates a strict-schema JSON configuration. Unknown keys
/// are rejected to surface unit mistakes early. The target is given either
/// as {distance_m, theta_rad, psi_rad} or as a displacement {x_m, y_m, z_m}.
inline RunConfig parse_config(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidParameter(std::string("config: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw InvalidParameter("config: top level must be an object");
  io_detail::reject_unknown(
      j, {"object", "baseline_object", "limits", "target", "sample_dt_s", "output"},
      "top level");

  RunConfig cfg;
  if (!j.contains("object")) throw InvalidParameter("config: missing \"object\"");
  cfg.object = io_detail::parse_object(j["object"], "object");
  if (j.contains("baseline_object")) {
    cfg.baseline_object = io_detail::parse_object(j["baseline_object"],
                                                  "baseline_object");
  }

  if (!j.contains("limits")) throw InvalidParameter("config: missing \"limits\"");
  {
    const json& jl = j["limits"];
    if (!jl.is_object()) throw InvalidParameter("config: limits must be an object");
    io_detail::reject_unknown(
        jl, {"j_max", "a_max", "v_max", "j_rm", "alpha_rm", "omega_rm"}, "limits");
    cfg.limits.jerk_max = io_detail::num(jl, "j_max", "limits");
    cfg.limits.accel_max = io_detail::num(jl, "a_max", "limits");
    cfg.limits.vel_max = io_detail::num(jl, "v_max", "limits");
    cfg.limits.tilt_jerk_max = io_detail::num(jl, "j_rm", "limits");
    cfg.limits.tilt_accel_max = io_detail::num(jl, "alpha_rm", "limits");
    cfg.limits.tilt_rate_max = io_detail::num(jl, "omega_rm", "limits");
    if (!cfg.limits.valid()) {
      throw InvalidParameter("config: all limits must be > 0");
    }
  }

  if (!j.contains("target")) throw InvalidParameter("config: missing \"target\"");
  {
    const json& jt = j["target"];
    if (!jt.is_object()) throw InvalidParameter("config: target must be an object");
    const bool polar = jt.contains("distance_m");
    const bool cart = jt.contains("x_m");
    if (polar == cart) {
      throw InvalidParameter(
          "config: target must use exactly one of {distance_m,theta_rad,psi_rad} "
          "or {x_m,y_m,z_m}");
    }
    if (polar) {
      io_detail::reject_unknown(jt, {"distance_m", "theta_rad", "psi_rad"}, "target");
      cfg.distance = io_detail::num(jt, "distance_m", "target");
      cfg.elevation = io_detail::num(jt, "theta_rad", "target");
      cfg.azimuth = jt.contains("psi_rad") ? io_detail::num(jt, "psi_rad", "target") : 0.0;
    } else {
      io_detail::reject_unknown(jt, {"x_m", "y_m", "z_m"}, "target");
      const double x = io_detail::num(jt, "x_m", "target");
      const double y = io_detail::num(jt, "y_m", "target");
      const double z = io_detail::num(jt, "z_m", "target");
      const double horiz = std::hypot(x, y);
      cfg.distance = std::sqrt(x * x + y * y + z * z);
      cfg.elevation = std::atan2(z, horiz);
      cfg.azimuth = (horiz > 0.0) ? std::atan2(y, x) : 0.0;
    }
    if (!(cfg.distance > 0.0)) {
      throw InvalidParameter("config: target distance must be > 0");
    }
  }

  if (j.contains("sample_dt_s")) {
    cfg.sample_dt = io_detail::num(j, "sample_dt_s", "top level");
    if (!(cfg.sample_dt > 0.0)) {
      throw InvalidParameter("config: sample_dt_s must be > 0");
    }
  }
  if (j.contains("output")) {
    const nlohmann::json& jo = j["output"];
    if (!jo.is_object()) throw InvalidParameter("config: output must be an object");
    io_detail::reject_unknown(jo, {"trajectory_csv", "summary_json"}, "output");
    if (jo.contains("trajectory_csv")) cfg.trajectory_csv = jo["trajectory_csv"];
    if (jo.contains("summary_json")) cfg.summary_json = jo["summary_json"];
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

/// Fixed 9-significant-digit number formatting shared by all emitted files.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline constexpr const char* kTrajectoryHeader =
    "t,phi,omega,alpha,jerk_rot,a,v,s,x,y,z,pitch";

/// Trajectory CSV: header plus one row per sample, deterministic bytes.
inline std::string trajectory_csv(const Trajectory& traj) {
  std::string out(kTrajectoryHeader);
  out.push_back('\n');
  for (const KinematicSample& s : traj.samples) {
    out += format_number(s.t);
    out.push_back(',');
    out += format_number(s.tilt);
    out.push_back(',');
    out += format_number(s.tilt_rate);
    out.push_back(',');
    out += format_number(s.tilt_accel);
    out.push_back(',');
    out += format_number(s.tilt_jerk);
    out.push_back(',');
    out += format_number(s.accel);
    out.push_back(',');
    out += format_number(s.vel);
    out.push_back(',');
    out += format_number(s.path_pos);
    out.push_back(',');
    out += format_number(s.position[0]);
    out.push_back(',');
    out += format_number(s.position[1]);
    out.push_back(',');
    out += format_number(s.position[2]);
    out.push_back(',');
    out += format_number(s.pitch);
    out.push_back('\n');
  }
  return out;
}

/// Reads a trajectory CSV back into sample form. Phase metadata is not
/// stored in the file; the caller supplies the request context.
inline Trajectory read_trajectory_csv(const std::string& text,
                                      const PlanRequest& req) {
  Trajectory traj;
  traj.request = req;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidParameter("trajectory csv: empty file");
  }
  if (line != kTrajectoryHeader) {
    throw InvalidParameter("trajectory csv: bad header row");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 12> f{};
    std::size_t pos = 0;
    for (int i = 0; i < 12; ++i) {
      const std::size_t next = line.find(',', pos);
      const std::string tok = line.substr(
          pos, next == std::string::npos ? std::string::npos : next - pos);
      try {
        f[static_cast<std::size_t>(i)] = std::stod(tok);
      } catch (...) {
        throw InvalidParameter("trajectory csv: bad number \"" + tok + "\"");
      }
      if (i < 11) {
        if (next == std::string::npos) {
          throw InvalidParameter("trajectory csv: short row");
        }
        pos = next + 1;
      }
    }
    KinematicSample s;
    s.t = f[0];
    s.tilt = f[1];
    s.tilt_rate = f[2];
    s.tilt_accel = f[3];
    s.tilt_jerk = f[4];
    s.accel = f[5];
    s.vel = f[6];
    s.path_pos = f[7];
    s.position = {f[8], f[9], f[10]};
    s.pitch = f[11];
    traj.samples.push_back(s);
  }
  if (traj.samples.empty()) {
    throw InvalidParameter("trajectory csv: no data rows");
  }
  traj.t_total = traj.samples.back().t;
  return traj;
}

/// Plan summary record.
inline std::string summary_json(const Trajectory& traj) {
  nlohmann::ordered_json j;
  j["t_total_s"] = traj.t_total;
  j["t_accel_s"] = traj.t_accel;
  j["t_cruise_s"] = traj.t_cruise;
  j["t_decel_s"] = traj.t_decel;
  j["peak_velocity_mps"] = traj.peak_velocity;
  j["accel_peak_tilt_rad"] = traj.accel_peak_tilt;
  j["decel_peak_tilt_rad"] = traj.decel_peak_tilt;
  j["accel_rotation_end_s"] = traj.accel_rotation_end;
  j["samples"] = traj.samples.size();
  j["distance_m"] = traj.request.distance;
  j["theta_rad"] = traj.request.elevation;
  j["psi_rad"] = traj.request.azimuth;
  j["sample_dt_s"] = traj.request.sample_dt;
  return j.dump(2) + "\n";
}

/// Comparison record.
inline std::string comparison_json(const ComparisonReport& rep) {
  nlohmann::ordered_json j;
  j["t_with_rotation_s"] = rep.time_with_rotation;
  j["t_without_rotation_s"] = rep.time_without_rotation;
  j["improvement"] = rep.improvement;
  return j.dump(2) + "\n";
}

/// Sweep CSV in row-major grid order; skipped grid points are annotated in
/// a trailing comment line each.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "x,y,t_rot,t_norot,improvement\n";
  std::string notes;
  for (const SweepRow& r : rows) {
    if (r.skipped) {
      notes += "# skipped " + format_number(r.x) + "," + format_number(r.y) +
               ": " + r.note + "\n";
      continue;
    }
    out += format_number(r.x);
    out.push_back(',');
    out += format_number(r.y);
    out.push_back(',');
    out += format_number(r.time_with_rotation);
    out.push_back(',');
    out += format_number(r.time_without_rotation);
    out.push_back(',');
    out += format_number(r.improvement);
    out.push_back('\n');
  }
  return out + notes;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParameter("cannot open for writing: " + path);
  out << content;
  if (!out) throw InvalidParameter("write failed: " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace traymotion
