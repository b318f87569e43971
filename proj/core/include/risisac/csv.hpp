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

#include <concepts>
#include <ostream>
#include <string>
#include <vector>

namespace risisac {

/// Floating-point text with 9 significant digits ("%.9g").
std::string format_number(double x);

/// Minimal comma-separated writer; fields are written verbatim, numbers with
/// format_number.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);

  CsvWriter& field(const std::string& s);
  CsvWriter& field(double x);
  template <std::integral T>
  CsvWriter& field(T x) {
    separator();
    out_ << x;
    return *this;
  }
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace risisac
