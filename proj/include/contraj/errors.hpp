// Copyright 2026 Contraj Authors
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

#pragma once

#include <stdexcept>

namespace contraj {

// Query point left the domain of a bounded distance-field provider.
struct OutOfBoundsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed scene or weight file.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested allocation above a configured ceiling.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geometrically degenerate input, e.g. a waypoint list with zero total length.
struct DegenerateInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Loss became non-finite while fitting a network.
struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No global waypoint lies inside the local window.
struct WindowEmptyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every in-window waypoint is below the safety threshold.
struct NoSafeGoalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace contraj
