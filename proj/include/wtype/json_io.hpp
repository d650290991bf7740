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

#ifndef WTYPE_JSON_IO_HPP
#define WTYPE_JSON_IO_HPP

#include "json.hpp"

#include "wtype/kraus.hpp"
#include "wtype/local_ops.hpp"
#include "wtype/param_vector.hpp"
#include "wtype/protocol.hpp"
#include "wtype/state_vector.hpp"
#include "wtype/transform.hpp"

// JSON encodings used by the command-line tool. Parsers throw
// std::invalid_argument on malformed input.
namespace wtype::io {

using nlohmann::json;

/// {"p": 3, "x": [x1, x2, x3]}; "p" is optional on input, and a bare
/// array is accepted too.
json to_json(const ParamVector& x);
ParamVector param_vector_from_json(const json& j);

/// {"p": 3, "amps": [[re, im], ...]}; real numbers are accepted as amplitudes.
json to_json(const PureState& s);
PureState pure_state_from_json(const json& j);

/// {"re": [[a, b], [c, d]], "im": [[...], [...]]}; "im" defaults to zero.
json to_json(const KrausOp& m);
KrausOp kraus_from_json(const json& j);

/// {"steps": [{"party", "ops", "disp", "corrections"?}], "p_success"}.
json to_json(const Protocol& protocol);
Protocol protocol_from_json(const json& j);

/// {"party": k, "outcomes": [{"probability", "target", "witness_scale"?,
/// "witness_target"?}]}.
json to_json(const OutcomeEnsemble& e);
OutcomeEnsemble ensemble_from_json(const json& j);

json to_json(const EntClass& c);
json to_json(const ValidationReport& r);
json to_json(const SynthesizedOp& op);
json to_json(const Extraction& e);
json to_json(const ExecutionReport& r);
json to_json(const ConversionWitness& w);
json to_json(const DistillationPlan& plan);

}  // namespace wtype::io

#endif  // WTYPE_JSON_IO_HPP
