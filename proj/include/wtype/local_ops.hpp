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

// Local operations carried out by a single party.
//
// A party k acting on x can produce outcomes x_l with probabilities P_l iff
// there are witnesses x'_l ~ x_l and scale factors s_l >= 0 with
//   (i)   x'_{l,j} = s_l x_j  for every party j != k,
//   (ii)  sum_l P_l s_l = 1,
//   (iii) sum_l P_l sqrt(s_l x'_{l,0}) >= sqrt(x0).
// Valid ensembles are realized by upper-triangular operators
//   M_l = [A_l B_l; 0 C_l].

#ifndef WTYPE_LOCAL_OPS_HPP
#define WTYPE_LOCAL_OPS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wtype/kraus.hpp"
#include "wtype/param_vector.hpp"
#include "wtype/tolerance.hpp"

namespace wtype {

struct OutcomeSpec {
  double probability = 0.0;
  ParamVector target;
  std::optional<double> witness_scale;
  std::optional<ParamVector> witness_target;
};

struct OutcomeEnsemble {
  std::size_t acting_party = 0;
  std::vector<OutcomeSpec> outcomes;
};

struct Witness {
  double scale = 0.0;
  ParamVector target;  // x'_l, equivalent to the outcome target
};

enum class Condition {
  kNone,
  kWitness,         // user-supplied witness is not equivalent to the target
  kScaleRelation,   // (i)
  kScaleSum,        // (ii)
  kPolygon,         // (iii)
};

std::string to_string(Condition c);

struct ValidationReport {
  bool valid = false;
  Condition violated = Condition::kNone;
  std::string detail;
  // Indices into the ensemble's outcome list that were kept; outcomes with
  // zero probability are dropped before validation.
  std::vector<std::size_t> kept;
  // One witness per kept outcome (filled when valid).
  std::vector<Witness> witnesses;
  double scale_sum = 0.0;    // sum P s
  double polygon_lhs = 0.0;  // sum P sqrt(s x'_0)
  double polygon_rhs = 0.0;  // sqrt(x0)
};

/// Decides whether party e.acting_party can produce the ensemble from x.
/// Throws std::invalid_argument for malformed ensembles and InfeasibleError
/// when a target needs a positive component where the source has none.
ValidationReport validate_ensemble(const ParamVector& x,
                                   const OutcomeEnsemble& e,
                                   double tolerance = tol::kValidation);

struct PhaseClosure {
  std::vector<double> phases;
  // Original modulus index of each entry. A split modulus occupies two
  // consecutive entries carrying half of its value each.
  std::vector<std::size_t> source_index;
};

/// Finds phases with sum_j m_j exp(i phi_j) = target. Throws InfeasibleError
/// when target exceeds the sum of the moduli.
PhaseClosure solve_phase_closure(std::span<const double> moduli, double target);

struct SynthesizedOp {
  std::size_t outcome = 0;  // index into the ensemble's outcome list
  KrausOp op;
  double phase = 0.0;       // phase attached to the |0...0> amplitude
};

/// Measurement operators realizing a validated ensemble. The result may
/// contain more operators than outcomes when the phase closure had to
/// split an outcome.
std::vector<SynthesizedOp> synthesize_kraus(const ParamVector& x,
                                            const OutcomeEnsemble& e,
                                            const ValidationReport& report);

/// Validates first; throws InfeasibleError for an invalid ensemble.
std::vector<SynthesizedOp> synthesize_kraus(const ParamVector& x,
                                            const OutcomeEnsemble& e);

struct SymbolicOutcome {
  double probability = 0.0;
  std::optional<ParamVector> result;  // empty for a zero-probability branch
  double result_x0 = 0.0;
};

/// Effect of party k applying M to |Phi(x)>, computed in parameter space.
/// A general M is first reduced to upper-triangular form by a unitary on
/// its left.
SymbolicOutcome apply_kraus_symbolic(const ParamVector& x, std::size_t k,
                                     const KrausOp& m);

}  // namespace wtype

#endif  // WTYPE_LOCAL_OPS_HPP
