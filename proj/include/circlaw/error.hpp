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

#ifndef CIRCLAW_ERROR_HPP
#define CIRCLAW_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace circlaw {

enum class Errc {
  invalid_dimension,
  shape,
  invalid_value,
  budget_violation,
  invalid_measure,
  domain,
  singular_support,
  insufficient_data,
  validation,
  io,
  consistency,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (CLI, Python bindings) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace circlaw

#endif  // CIRCLAW_ERROR_HPP
