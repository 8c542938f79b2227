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

#pragma once

#include <stdexcept>
#include <string>

namespace traymotion {

/// A precondition on a numeric input was violated (non-positive mass,
/// out-of-range angle, malformed request, ...).
struct InvalidParameter : std::invalid_argument {
  explicit InvalidParameter(const std::string& what)
      : std::invalid_argument(what) {}
};

/// The contact geometry admits no center-of-pressure solution (the force
/// component normal to the tray vanishes).
struct SingularConfiguration : std::runtime_error {
  explicit SingularConfiguration(const std::string& what)
      : std::runtime_error(what) {}
};

/// A phase of the transport plan could not be completed from the fitted
/// tilt angle. Indicates an internal contract violation.
struct InfeasiblePhase : std::runtime_error {
  explicit InfeasiblePhase(const std::string& what)
      : std::runtime_error(what) {}
};

/// The requested travel distance is below the minimal displacement the
/// fully degenerate profile can realize.
struct InfeasibleDistance : std::runtime_error {
  explicit InfeasibleDistance(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace traymotion
