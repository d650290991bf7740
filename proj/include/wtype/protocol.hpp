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

#ifndef WTYPE_PROTOCOL_HPP
#define WTYPE_PROTOCOL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "wtype/kraus.hpp"

namespace wtype {

enum class Disposition { kContinue, kSuccess, kFail };

std::string to_string(Disposition d);
Disposition disposition_from_string(const std::string& s);

/// Unitary applied by another party once an outcome is announced.
struct LocalCorrection {
  std::size_t party = 0;
  KrausOp unitary;
};

/// One local measurement. Outcome j applies ops[j] at `party`, then the
/// corrections listed in corrections[j] (when present), then follows
/// dispositions[j]: kContinue moves to the next step, the others end the
/// branch. A branch that runs past the last step ends in success.
struct ProtocolStep {
  std::size_t party = 0;
  std::vector<KrausOp> ops;
  std::vector<Disposition> dispositions;
  std::vector<std::vector<LocalCorrection>> corrections;  // empty or ops.size()
};

struct Protocol {
  std::vector<ProtocolStep> steps;
  double declared_success_probability = 1.0;

  /// Throws DomainError if a step is incomplete (tolerance
  /// tol::kCompleteness), has mismatched list sizes, names a party outside
  /// [0, parties), or has a non-unitary correction.
  void check(std::size_t parties) const;
};

}  // namespace wtype

#endif  // WTYPE_PROTOCOL_HPP
