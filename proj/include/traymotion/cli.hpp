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

// Command implementations behind the CLI front end. Exit codes:
//   0 success, 1 configuration error, 2 infeasible plan, 3 validation failure.

#pragma once

#include <iostream>
#include <optional>
#include <string>

#include "traymotion/errors.hpp"
#include "traymotion/io.hpp"
#include "traymotion/planner.hpp"
#include "traymotion/validator.hpp"

namespace traymotion {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitValidationFailure = 3;

struct CliOptions {
  std::string config_path;
  std::string out_path;        // trajectory/sweep/comparison output
  std::string trajectory_path; // input for validate
  std::optional<double> dt_override;
  // sweep grid: x0:x1:nx,y0:y1:ny
  double grid_x0 = 0.0, grid_x1 = 0.0;
  int grid_nx = 0;
  double grid_y0 = 0.0, grid_y1 = 0.0;
  int grid_ny = 0;
  bool has_grid = false;
};

namespace cli_detail {

inline RunConfig load(const CliOptions& opt) {
  RunConfig cfg = load_config(opt.config_path);
  if (opt.dt_override) {
    if (!(*opt.dt_override > 0.0)) {
      throw InvalidParameter("--dt must be > 0");
    }
    cfg.sample_dt = *opt.dt_override;
  }
  return cfg;
}

inline std::string out_or(const std::string& cli_path,
                          const std::string& cfg_path,
                          const std::string& fallback) {
  if (!cli_path.empty()) return cli_path;
  if (!cfg_path.empty()) return cfg_path;
  return fallback;
}

}  //  namespace cli_detail

/// Plans a tilt-assisted transport and writes the trajectory CSV plus a
/// summary record next to it.
inline int cmd_plan(const CliOptions& opt, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  RunConfig cfg;
  try {
    cfg = cli_detail::load(opt);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  try {
    const Trajectory traj = assemble_trajectory(cfg.request());
    const std::string csv_path =
        cli_detail::out_or(opt.out_path, cfg.trajectory_csv, "trajectory.csv");
    write_file(csv_path, trajectory_csv(traj));
    const std::string summary = summary_json(traj);
    if (!cfg.summary_json.empty()) write_file(cfg.summary_json, summary);
    out << summary;
    return kExitOk;
  } catch (const InfeasibleDistance& e) {
    err << "infeasible plan: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

/// Plans the level-tray baseline and writes the same artifacts.
inline int cmd_baseline(const CliOptions& opt, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  RunConfig cfg;
  try {
    cfg = cli_detail::load(opt);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  try {
    PlanRequest req = cfg.request();
    if (cfg.baseline_object) req.object = *cfg.baseline_object;
    const Trajectory traj = plan_baseline(req);
    const std::string csv_path =
        cli_detail::out_or(opt.out_path, cfg.trajectory_csv, "baseline.csv");
    write_file(csv_path, trajectory_csv(traj));
    const std::string summary = summary_json(traj);
    if (!cfg.summary_json.empty()) write_file(cfg.summary_json, summary);
    out << summary;
    return kExitOk;
  } catch (const InfeasibleDistance& e) {
    err << "infeasible plan: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

/// Runs both planners and writes/prints the comparison record. The
/// optional baseline_object block in the config plans the baseline with a
/// different cylinder.
inline int cmd_compare(const CliOptions& opt, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  RunConfig cfg;
  try {
    cfg = cli_detail::load(opt);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  try {
    const ObjectParams* base =
        cfg.baseline_object ? &*cfg.baseline_object : nullptr;
    const ComparisonReport rep = compare(cfg.request(), base);
    const std::string doc = comparison_json(rep);
    if (!opt.out_path.empty()) write_file(opt.out_path, doc);
    out << doc;
    return kExitOk;
  } catch (const InfeasibleDistance& e) {
    err << "infeasible plan: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

/// Sweeps a displacement grid and writes the sweep CSV.
inline int cmd_sweep(const CliOptions& opt, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
  RunConfig cfg;
  try {
    cfg = cli_detail::load(opt);
    if (!opt.has_grid) {
      throw InvalidParameter("sweep requires --grid x0:x1:nx,y0:y1:ny");
    }
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  try {
    const std::vector<SweepRow> rows = efficiency_sweep(
        opt.grid_x0, opt.grid_x1, opt.grid_nx, opt.grid_y0, opt.grid_y1,
        opt.grid_ny, cfg.object, cfg.limits, cfg.sample_dt);
    const std::string doc = sweep_csv(rows);
    const std::string path =
        cli_detail::out_or(opt.out_path, "", "sweep.csv");
    write_file(path, doc);
    double best = 0.0;
    for (const SweepRow& r : rows) {
      if (!r.skipped) best = std::max(best, r.improvement);
    }
    out << "rows: " << rows.size() << "\n";
    out << "max improvement: " << format_number(best) << "\n";
    return kExitOk;
  } catch (const InfeasibleDistance& e) {
    err << "infeasible plan: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

/// Audits a trajectory file: stability, motion limits, endpoint contract.
/// Prints one verdict line per check; exits 3 on any failure.
inline int cmd_validate(const CliOptions& opt, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  RunConfig cfg;
  std::string csv;
  try {
    cfg = cli_detail::load(opt);
    if (opt.trajectory_path.empty()) {
      throw InvalidParameter("validate requires a trajectory file argument");
    }
    csv = read_file(opt.trajectory_path);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  try {
    const Trajectory traj = read_trajectory_csv(csv, cfg.request());
    bool all_pass = true;

    const StabilityReport stab = stability_audit(traj, cfg.object);
    out << (stab.stable ? "PASS" : "FAIL") << " stability: min margin "
        << format_number(stab.min_margin) << " m at t="
        << format_number(stab.min_margin_t) << " s";
    if (!stab.stable) {
      out << ", first violation at t=" << format_number(stab.first_violation_t)
          << " s";
    }
    if (stab.singular_samples > 0) {
      out << ", singular samples: " << stab.singular_samples;
    }
    out << "\n";
    all_pass = all_pass && stab.stable;

    const ConstraintAudit cons = audit_constraints(traj, cfg.limits);
    for (const LimitCheck& c : cons.checks) {
      out << (c.pass ? "PASS" : "FAIL") << " limit " << c.name << ": observed "
          << format_number(c.observed) << " vs " << format_number(c.limit)
          << " (worst at t=" << format_number(c.worst_t) << " s)\n";
    }
    all_pass = all_pass && cons.pass;

    const EndpointAudit ep = endpoint_audit(traj);
    for (const EndpointCheck& c : ep.checks) {
      out << (c.pass ? "PASS" : "FAIL") << " endpoint " << c.name << ": "
          << format_number(c.value) << " (tol " << format_number(c.tolerance)
          << ")\n";
    }
    all_pass = all_pass && ep.pass;

    return all_pass ? kExitOk : kExitValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace traymotion
