// Copyright 2026 The gkpforge Authors
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

#ifndef GKPFORGE_TYPES_H
#define GKPFORGE_TYPES_H

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gkpforge {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Default GKP peak spacing 2*sqrt(pi).
inline const double kDefaultPeakSpacing = 2.0 * std::sqrt(kPi);

/// Base class for every error raised by the library. The CLI maps
/// `ConfigError` to exit code 2 and `ToleranceError` to exit code 3.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid user-facing parameters (bad dimensions, out-of-range values).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// A numerical invariant was violated beyond its tolerance.
class ToleranceError : public Error {
  public:
    using Error::Error;
};

class GridTooSmall : public ConfigError {
  public:
    using ConfigError::ConfigError;
};

class InsufficientCutoff : public ToleranceError {
  public:
    using ToleranceError::ToleranceError;
};

class GridMismatch : public ConfigError {
  public:
    using ConfigError::ConfigError;
};

}  // namespace gkpforge

#endif  // GKPFORGE_TYPES_H
