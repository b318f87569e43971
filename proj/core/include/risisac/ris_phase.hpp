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

#include "risisac/linalg.hpp"

namespace risisac {

/// RIS phase-shift vector phi (radians, wrapped to (-pi, pi]) together with its
/// unit-modulus lift v = exp(j phi).
class RisPhase {
 public:
  RisPhase() = default;
  explicit RisPhase(const RealVector& phi);

  /// Phases of an arbitrary complex vector; exact zeros map to phase 0.
  static RisPhase from_complex(const ComplexVector& v);
  static RisPhase zeros(Eigen::Index n) { return RisPhase(RealVector::Zero(n)); }

  const RealVector& phases() const noexcept { return phi_; }
  const ComplexVector& vector() const noexcept { return v_; }
  Eigen::Index size() const noexcept { return phi_.size(); }

 private:
  RealVector phi_;
  ComplexVector v_;
};

}  // namespace risisac
