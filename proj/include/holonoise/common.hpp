// Copyright 2026 The holonoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string_view>

namespace holonoise {

/// Control-manifold plane at theta1 = 0: (x, r1) or (y, r1).
enum class Plane { x, y };

inline constexpr std::string_view to_string(Plane p) { return p == Plane::x ? "x" : "y"; }

class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class GridMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace holonoise
