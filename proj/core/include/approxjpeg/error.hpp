// Copyright 2026 The approxjpeg Authors
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

#ifndef APPROXJPEG_ERROR_HPP_
#define APPROXJPEG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ajpg {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed PNM, CSV or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Container or entropy payload that cannot be decoded.
class CorruptStreamError : public Error {
 public:
  using Error::Error;
};

/// A value outside the representable range of a stage.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A metric that is undefined for its inputs (zero reference, zero variance).
class MetricError : public Error {
 public:
  using Error::Error;
};

/// Invalid arguments or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ajpg

#endif  // APPROXJPEG_ERROR_HPP_
