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

#include "risisac/error.hpp"

#include <sstream>

namespace risisac {

namespace {
std::string non_convergence_message(int iterations, double primal, double dual) {
  std::ostringstream os;
  os << "splitting solver did not converge after " << iterations
     << " iterations (primal residual " << primal << ", dual residual " << dual << ")";
  return os.str();
}
}  // namespace

NonConvergence::NonConvergence(int iterations, double primal_residual, double dual_residual)
    : NumericalError(non_convergence_message(iterations, primal_residual, dual_residual)),
      iterations_(iterations),
      primal_(primal_residual),
      dual_(dual_residual) {}

void require_same_size(long a, long b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": size mismatch (" << a << " vs " << b << ")";
    throw ShapeError(os.str());
  }
}

}  // namespace risisac
