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

// Whole-protocol layer: deterministic convertibility, distillation bounds
// and protocol compilation.

#ifndef WTYPE_TRANSFORM_HPP
#define WTYPE_TRANSFORM_HPP

#include <optional>
#include <vector>

#include "wtype/param_vector.hpp"
#include "wtype/protocol.hpp"
#include "wtype/tolerance.hpp"

namespace wtype {

struct ConversionWitness {
  ParamVector target_equivalent;  // y' ~ y with x >= y'
  std::vector<double> dominance;  // x_l - y'_l
};

/// x converts deterministically to y iff some y' ~ y satisfies x >= y'.
/// Returns the witness y' or nothing. Throws std::invalid_argument on a
/// party-count mismatch.
std::optional<ConversionWitness> can_convert(const ParamVector& x,
                                             const ParamVector& y,
                                             double slack = tol::kDominance);

/// One two-outcome step per party whose component must decrease.
/// Throws InfeasibleError when no witness exists.
Protocol compile_deterministic_protocol(const ParamVector& x,
                                        const ParamVector& y);

struct DistillBound {
  double value = 1.0;
  bool product_target = false;  // bound is trivially 1
};

/// Upper bound on the probability of reaching y from x.
DistillBound distill_bound(const ParamVector& x, const ParamVector& y);

struct DistillationPlan {
  Protocol protocol;
  double achieved_probability = 0.0;
  std::vector<std::size_t> operating_parties;  // in execution order
  std::vector<double> scale_factors;           // success scale per step
};

/// Optimal distillation on the x0 = 0 face. Requires x0(x) = x0(y) = 0 and
/// strictly positive components; throws InfeasibleError otherwise.
DistillationPlan compile_distillation_protocol(const ParamVector& x,
                                               const ParamVector& y);

}  // namespace wtype

#endif  // WTYPE_TRANSFORM_HPP
