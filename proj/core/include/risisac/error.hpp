// SPDX-License-Identifier: Apache-2.0
//
// risisac: closed-form RIS phase design for integrated sensing and communication
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace risisac {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario or argument values (weights not normalized, alpha out of
/// range, missing keys, zero trials, ...).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg, std::string field = {})
      : Error(msg), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Coincident positions, nonpositive distances, zero beamforming channel.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// Vector/matrix dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Decomposition failure or a violated numerical guarantee.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The splitting solver hit its iteration limit.
class NonConvergence : public NumericalError {
 public:
  NonConvergence(int iterations, double primal_residual, double dual_residual);
  int iterations() const noexcept { return iterations_; }
  double primal_residual() const noexcept { return primal_; }
  double dual_residual() const noexcept { return dual_; }

 private:
  int iterations_;
  double primal_;
  double dual_;
};

/// The relaxed program has no feasible point (residuals stagnate with the
/// inequality slacks pinned at zero).
class Infeasible : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A method was requested above its size cap (SDR above sdr_cap elements).
class CapExceeded : public Error {
 public:
  using Error::Error;
};

void require_same_size(long a, long b, const char* what);

}  // namespace risisac
