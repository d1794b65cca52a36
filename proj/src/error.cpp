// Copyright 2026 The circlaw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "circlaw/error.hpp"

namespace circlaw {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::shape: return "shape";
    case Errc::invalid_value: return "invalid-value";
    case Errc::budget_violation: return "budget-violation";
    case Errc::invalid_measure: return "invalid-measure";
    case Errc::domain: return "domain";
    case Errc::singular_support: return "singular-support";
    case Errc::insufficient_data: return "insufficient-data";
    case Errc::validation: return "validation";
    case Errc::io: return "io";
    case Errc::consistency: return "consistency";
  }
  return "unknown";
}

}  // namespace circlaw
