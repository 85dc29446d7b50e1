// Copyright 2026 The qwoa-sim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file error.hpp
 * Exception types shared by every module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qwoa {

/// Index, distance or parameter outside its admissible range.
class RangeError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Malformed solution, instance or circuit.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Inconsistent run or penalty configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical procedure failed to meet its tolerance.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested combination is not implemented.
class UnsupportedError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Unknown builtin or named entity.
class LookupError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

} // namespace qwoa
