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

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "traymotion/cli.hpp"

namespace {

bool parse_grid(const std::string& spec, traymotion::CliOptions& opt) {
  // x0:x1:nx,y0:y1:ny
  double x0, x1, y0, y1;
  int nx, ny;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d,%lf:%lf:%d", &x0, &x1, &nx, &y0,
                  &y1, &ny) != 6) {
    return false;
  }
  opt.grid_x0 = x0;
  opt.grid_x1 = x1;
  opt.grid_nx = nx;
  opt.grid_y0 = y0;
  opt.grid_y1 = y1;
  opt.grid_ny = ny;
  opt.has_grid = true;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "traymotion: time-optimized straight-line transport planning for an "
      "unstable cylinder on a robot-held tray"};
  app.require_subcommand(1);

  traymotion::CliOptions opt;
  std::string grid_spec;
  double dt = 0.0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON run configuration")
        ->required();
    sub->add_option("--out", opt.out_path, "output file path");
    sub->add_option("--dt", dt, "sample period override, seconds");
  };

  CLI::App* plan = app.add_subcommand("plan", "plan a tilt-assisted transport");
  add_common(plan);
  CLI::App* baseline =
      app.add_subcommand("baseline", "plan the level-tray comparator");
  add_common(baseline);
  CLI::App* cmp =
      app.add_subcommand("compare", "time both planners on one target");
  add_common(cmp);
  CLI::App* sweep =
      app.add_subcommand("sweep", "compare across a displacement grid");
  add_common(sweep);
  sweep->add_option("--grid", grid_spec, "grid spec x0:x1:nx,y0:y1:ny")
      ->required();
  CLI::App* validate =
      app.add_subcommand("validate", "audit a trajectory CSV file");
  add_common(validate);
  std::string traj_path;
  validate->add_option("trajectory", traj_path, "trajectory CSV to audit")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : traymotion::kExitConfigError;
  }

  if (dt > 0.0) opt.dt_override = dt;
  opt.trajectory_path = traj_path;
  if (!grid_spec.empty() && !parse_grid(grid_spec, opt)) {
    std::fprintf(stderr, "config error: bad --grid spec \"%s\"\n",
                 grid_spec.c_str());
    return traymotion::kExitConfigError;
  }

  if (plan->parsed()) return traymotion::cmd_plan(opt);
  if (baseline->parsed()) return traymotion::cmd_baseline(opt);
  if (cmp->parsed()) return traymotion::cmd_compare(opt);
  if (sweep->parsed()) return traymotion::cmd_sweep(opt);
  if (validate->parsed()) return traymotion::cmd_validate(opt);
  return traymotion::kExitConfigError;
}
