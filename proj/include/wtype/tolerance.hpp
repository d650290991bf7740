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

#ifndef WTYPE_TOLERANCE_HPP
#define WTYPE_TOLERANCE_HPP

namespace wtype::tol {

/// A party component counts as nonzero iff it exceeds this value.
inline constexpr double kZero = 1e-10;
/// Party components may sum to at most 1 + kSimplex. A derived zeroth
/// component below this value is treated as exactly zero.
inline constexpr double kSimplex = 1e-12;
/// Ensemble checks: scale consistency, scale sum, polygon inequality.
inline constexpr double kValidation = 1e-10;
/// Measurement completeness, sum of M^dagger M against the identity.
inline constexpr double kCompleteness = 1e-12;
/// Dominance slack accepted by the deterministic-conversion test.
inline constexpr double kDominance = 1e-12;
/// Eigenvalues below kRank * trace count as zero.
inline constexpr double kRank = 1e-9;
/// Required overlap defect for a reconstructed W-type representation.
inline constexpr double kFidelity = 1e-8;
/// Branches whose probability falls below this are dropped by the simulator.
inline constexpr double kZeroProbability = 1e-14;

}  // namespace wtype::tol

#endif  // WTYPE_TOLERANCE_HPP
