// Copyright 2026 The wtype Authors
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

#include "wtype/protocol.hpp"

#include <stdexcept>

#include "wtype/errors.hpp"
#include "wtype/tolerance.hpp"

namespace wtype {

std::string to_string(Disposition d) {
  switch (d) {
    case Disposition::kContinue:
      return "continue";
    case Disposition::kSuccess:
      return "success";
    case Disposition::kFail:
      return "fail";
  }
  return "unknown";
}

Disposition disposition_from_string(const std::string& s) {
  if (s == "continue") return Disposition::kContinue;
  if (s == "success") return Disposition::kSuccess;
  if (s == "fail") return Disposition::kFail;
  throw std::invalid_argument("unknown disposition '" + s + "'");
}

void Protocol::check(std::size_t parties) const {
  if (!(declared_success_probability >= 0.0 && declared_success_probability <= 1.0)) {
    throw DomainError("declared success probability outside [0, 1]");
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const ProtocolStep& step = steps[i];
    const std::string where = "step " + std::to_string(i) + ": ";
    if (step.party >= parties) throw DomainError(where + "party index out of range");
    if (step.ops.empty()) throw DomainError(where + "no operators");
    if (step.dispositions.size() != step.ops.size()) {
      throw DomainError(where + "one disposition per operator required");
    }
    if (!step.corrections.empty() && step.corrections.size() != step.ops.size()) {
      throw DomainError(where + "corrections must be absent or one list per operator");
    }
    if (completeness_defect(step.ops) > tol::kCompleteness) {
      throw DomainError(where + "operators violate completeness");
    }
    for (const auto& list : step.corrections) {
      for (const LocalCorrection& c : list) {
        if (c.party >= parties) throw DomainError(where + "correction party out of range");
        if (!c.unitary.is_unitary(tol::kCompleteness)) {
          throw DomainError(where + "correction is not unitary");
        }
      }
    }
  }
}

}  // namespace wtype
