// Copyright 2026 The numguard Authors
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
#include <string>

namespace numguard {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The requested threshold cannot be met anywhere on the evaluated frequency span.
class GridExhausted : public Error {
 public:
  GridExhausted(const std::string& what, double deepest_level_db)
      : Error(what), deepest_level_db_(deepest_level_db) {}

  // Lowest tail level (dB) the span reached; the threshold asked for more.
  double deepest_level_db() const noexcept { return deepest_level_db_; }

 private:
  double deepest_level_db_;
};

// No roll-off on the search grid satisfies the interference threshold.
class Infeasible : public Error {
 public:
  Infeasible(const std::string& what, double best_effort_alpha)
      : Error(what), best_effort_alpha_(best_effort_alpha) {}

  // The roll-off whose spectrum came closest to the threshold.
  double best_effort_alpha() const noexcept { return best_effort_alpha_; }

 private:
  double best_effort_alpha_;
};

}  // namespace numguard
