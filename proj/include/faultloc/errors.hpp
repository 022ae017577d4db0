// Copyright 2026 The faultloc Authors
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

#ifndef FAULTLOC_ERRORS_HPP_
#define FAULTLOC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace faultloc {

/// Malformed input: file format violations, unknown names, out-of-range
/// probabilities, conflicting duplicate rows. Maps to process exit code 1.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Data that parses but cannot be explained under the deterministic-outcome
/// model: some failed test row has no candidate root cause at the configured
/// maximum combination order. Maps to process exit code 2.
class InconsistentData : public std::runtime_error {
 public:
  explicit InconsistentData(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace faultloc

#endif  // FAULTLOC_ERRORS_HPP_
