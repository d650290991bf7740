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

#include "wtype/json_io.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace wtype::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw std::invalid_argument(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t index(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw std::invalid_argument(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  return j;
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], "real part"), number(j[1], "imaginary part")};
  throw std::invalid_argument("complex numbers are [re, im] pairs");
}

json matrix_part(const Eigen::Matrix2cd& m, bool imag) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    rows.push_back({imag ? m(r, 0).imag() : m(r, 0).real(), imag ? m(r, 1).imag() : m(r, 1).real()});
  }
  return rows;
}

json vector2(const Eigen::Vector2cd& v) {
  return json::array({{v(0).real(), v(0).imag()}, {v(1).real(), v(1).imag()}});
}

json components(std::span<const double> c) { return json(std::vector<double>(c.begin(), c.end())); }

json optional_vector(const std::optional<ParamVector>& x) {
  return x ? to_json(*x) : json(nullptr);
}

}  // namespace

json to_json(const ParamVector& x) {
  return {{"p", x.parties()}, {"x", components(x.components())}, {"x0", x.x0()}};
}

ParamVector param_vector_from_json(const json& j) {
  const json& xs = j.is_array() ? j : array(field(j, "x"), "\"x\"");
  std::vector<double> c;
  for (const json& v : xs) c.push_back(number(v, "component"));
  if (j.is_object() && j.contains("p") && index(j.at("p"), "\"p\"") != c.size()) {
    throw std::invalid_argument("\"p\" does not match the number of components");
  }
  return ParamVector(std::move(c));
}

json to_json(const PureState& s) {
  json amps = json::array();
  for (const cplx& a : s.amplitudes()) amps.push_back({a.real(), a.imag()});
  return {{"p", s.parties()}, {"amps", std::move(amps)}};
}

PureState pure_state_from_json(const json& j) {
  const json& amps = array(field(j, "amps"), "\"amps\"");
  std::vector<cplx> a;
  for (const json& v : amps) a.push_back(complex_from_json(v));
  if (a.empty() || !std::has_single_bit(a.size())) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  const std::size_t p = static_cast<std::size_t>(std::countr_zero(a.size()));
  if (j.contains("p") && index(j.at("p"), "\"p\"") != p) {
    throw std::invalid_argument("\"p\" does not match the amplitude count");
  }
  return PureState(p, std::move(a));
}

json to_json(const KrausOp& m) {
  return {{"re", matrix_part(m.matrix(), false)}, {"im", matrix_part(m.matrix(), true)}};
}

KrausOp kraus_from_json(const json& j) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  const json& re = array(field(j, "re"), "\"re\"");
  const json* im = j.contains("im") ? &array(j.at("im"), "\"im\"") : nullptr;
  if (re.size() != 2 || (im && im->size() != 2)) throw std::invalid_argument("operators are 2x2");
  for (int r = 0; r < 2; ++r) {
    if (!re[r].is_array() || re[r].size() != 2) throw std::invalid_argument("operators are 2x2");
    if (im && (!(*im)[r].is_array() || (*im)[r].size() != 2)) {
      throw std::invalid_argument("operators are 2x2");
    }
    for (int c = 0; c < 2; ++c) {
      m(r, c) = {number(re[r][c], "matrix entry"), im ? number((*im)[r][c], "matrix entry") : 0.0};
    }
  }
  return KrausOp(m);
}

json to_json(const Protocol& protocol) {
  json steps = json::array();
  for (const ProtocolStep& st : protocol.steps) {
    json ops = json::array();
    for (const KrausOp& op : st.ops) ops.push_back(to_json(op));
    json disp = json::array();
    for (Disposition d : st.dispositions) disp.push_back(to_string(d));
    json step = {{"party", st.party}, {"ops", std::move(ops)}, {"disp", std::move(disp)}};
    if (!st.corrections.empty()) {
      json corr = json::array();
      for (const auto& list : st.corrections) {
        json entries = json::array();
        for (const LocalCorrection& c : list) {
          entries.push_back({{"party", c.party}, {"op", to_json(c.unitary)}});
        }
        corr.push_back(std::move(entries));
      }
      step["corrections"] = std::move(corr);
    }
    steps.push_back(std::move(step));
  }
  return {{"steps", std::move(steps)}, {"p_success", protocol.declared_success_probability}};
}

Protocol protocol_from_json(const json& j) {
  Protocol protocol;
  for (const json& s : array(field(j, "steps"), "\"steps\"")) {
    ProtocolStep step;
    step.party = index(field(s, "party"), "\"party\"");
    for (const json& op : array(field(s, "ops"), "\"ops\"")) step.ops.push_back(kraus_from_json(op));
    for (const json& d : array(field(s, "disp"), "\"disp\"")) {
      if (!d.is_string()) throw std::invalid_argument("dispositions are strings");
      step.dispositions.push_back(disposition_from_string(d.get<std::string>()));
    }
    if (s.contains("corrections")) {
      for (const json& list : array(s.at("corrections"), "\"corrections\"")) {
        std::vector<LocalCorrection> entries;
        for (const json& c : array(list, "correction list")) {
          entries.push_back({index(field(c, "party"), "\"party\""), kraus_from_json(field(c, "op"))});
        }
        step.corrections.push_back(std::move(entries));
      }
    }
    protocol.steps.push_back(std::move(step));
  }
  protocol.declared_success_probability =
      j.contains("p_success") ? number(j.at("p_success"), "\"p_success\"") : 1.0;
  return protocol;
}

json to_json(const OutcomeEnsemble& e) {
  json outcomes = json::array();
  for (const OutcomeSpec& o : e.outcomes) {
    json entry = {{"probability", o.probability}, {"target", to_json(o.target)}};
    if (o.witness_scale) entry["witness_scale"] = *o.witness_scale;
    if (o.witness_target) entry["witness_target"] = to_json(*o.witness_target);
    outcomes.push_back(std::move(entry));
  }
  return {{"party", e.acting_party}, {"outcomes", std::move(outcomes)}};
}

OutcomeEnsemble ensemble_from_json(const json& j) {
  OutcomeEnsemble e;
  e.acting_party = index(field(j, "party"), "\"party\"");
  for (const json& o : array(field(j, "outcomes"), "\"outcomes\"")) {
    OutcomeSpec spec{number(field(o, "probability"), "\"probability\""),
                     param_vector_from_json(field(o, "target")), std::nullopt, std::nullopt};
    if (o.contains("witness_scale")) spec.witness_scale = number(o.at("witness_scale"), "\"witness_scale\"");
    if (o.contains("witness_target")) spec.witness_target = param_vector_from_json(o.at("witness_target"));
    e.outcomes.push_back(std::move(spec));
  }
  return e;
}

json to_json(const EntClass& c) {
  json j = {{"kind", to_string(c.kind)}};
  if (c.kind == EntClass::Kind::kBipartite) j["pair"] = {c.r, c.s};
  return j;
}

json to_json(const ValidationReport& r) {
  json j = {{"valid", r.valid},
            {"violated", to_string(r.violated)},
            {"detail", r.detail},
            {"kept", r.kept},
            {"scale_sum", r.scale_sum},
            {"polygon_lhs", r.polygon_lhs},
            {"polygon_rhs", r.polygon_rhs}};
  json witnesses = json::array();
  for (const Witness& w : r.witnesses) {
    witnesses.push_back({{"scale", w.scale}, {"target", to_json(w.target)}});
  }
  j["witnesses"] = std::move(witnesses);
  return j;
}

json to_json(const SynthesizedOp& op) {
  return {{"outcome", op.outcome}, {"op", to_json(op.op)}, {"phase", op.phase}};
}

json to_json(const Extraction& e) {
  json basis = json::array();
  for (const QubitBasis& b : e.basis) {
    basis.push_back({{"alpha", vector2(b.alpha)}, {"beta", vector2(b.beta)}});
  }
  json j = to_json(e.x);
  j["class"] = to_json(classify(e.x));
  j["basis"] = std::move(basis);
  j["overlap"] = e.overlap;
  return j;
}

json to_json(const ExecutionReport& r) {
  json leaves = json::array();
  for (const ExecutionLeaf& leaf : r.leaves) {
    json entry = {{"path", leaf.path},
                  {"disposition", to_string(leaf.disposition)},
                  {"probability", leaf.probability},
                  {"x", optional_vector(leaf.x)}};
    if (r.sampled) {
      entry["count"] = leaf.count;
      entry["standard_error"] = leaf.standard_error;
    }
    leaves.push_back(std::move(entry));
  }
  json j = {{"mode", r.sampled ? "sampled" : "exhaustive"},
            {"leaves", std::move(leaves)},
            {"success_probability", r.success_probability},
            {"fail_probability", r.fail_probability},
            {"audit",
             {{"averaged", r.audit.averaged}, {"slack", r.audit.slack}, {"ok", r.audit.ok}}}};
  if (r.sampled) {
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["success_standard_error"] = r.success_standard_error;
  }
  return j;
}

json to_json(const ConversionWitness& w) {
  return {{"target_equivalent", to_json(w.target_equivalent)}, {"dominance", w.dominance}};
}

json to_json(const DistillationPlan& plan) {
  return {{"protocol", to_json(plan.protocol)},
          {"achieved_probability", plan.achieved_probability},
          {"operating_parties", plan.operating_parties},
          {"scale_factors", plan.scale_factors}};
}

}  // namespace wtype::io
