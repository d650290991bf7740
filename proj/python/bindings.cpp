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

#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wtype/errors.hpp"
#include "wtype/local_ops.hpp"
#include "wtype/param_vector.hpp"
#include "wtype/state_vector.hpp"
#include "wtype/transform.hpp"

namespace py = pybind11;
using namespace wtype;

namespace {

PureState state_from(const std::vector<cplx>& amps) {
  std::size_t p = 0;
  while ((std::size_t{1} << p) < amps.size()) ++p;
  return PureState::normalized(p, amps);
}

std::vector<cplx> amplitudes(const PureState& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

py::dict report_dict(const ExecutionReport& r) {
  py::list leaves;
  for (const ExecutionLeaf& leaf : r.leaves) {
    py::dict d;
    d["path"] = leaf.path;
    d["disposition"] = to_string(leaf.disposition);
    d["probability"] = leaf.probability;
    d["count"] = leaf.count;
    d["standard_error"] = leaf.standard_error;
    d["x"] = leaf.x ? py::cast(*leaf.x) : py::none();
    leaves.append(d);
  }
  py::dict out;
  out["sampled"] = r.sampled;
  out["trials"] = r.trials;
  out["seed"] = r.seed;
  out["leaves"] = leaves;
  out["success_probability"] = r.success_probability;
  out["fail_probability"] = r.fail_probability;
  out["success_standard_error"] = r.success_standard_error;
  out["audit_ok"] = r.audit.ok;
  out["audit_slack"] = r.audit.slack;
  return out;
}

}  // namespace

PYBIND11_MODULE(_wtype, m) {
  m.doc() = "Transformations of W-type multipartite entangled states";

  auto& domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NotWTypeError>(m, "NotWTypeError", domain.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", domain.ptr());
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<ParamVector>(m, "ParamVector")
      .def(py::init<std::vector<double>>(), py::arg("components"))
      .def_static("w_state", &ParamVector::w_state, py::arg("parties"))
      .def_static("zero", &ParamVector::zero, py::arg("parties"))
      .def_property_readonly("parties", &ParamVector::parties)
      .def_property_readonly("x0", &ParamVector::x0)
      .def_property_readonly("components",
                             [](const ParamVector& x) {
                               return std::vector<double>(x.components().begin(),
                                                          x.components().end());
                             })
      .def("__len__", &ParamVector::parties)
      .def("__getitem__",
           [](const ParamVector& x, std::size_t k) {
             if (k >= x.parties()) throw py::index_error();
             return x[k];
           })
      .def(py::self == py::self)
      .def("__repr__", [](const ParamVector& x) {
        std::string s = "ParamVector([";
        for (std::size_t k = 0; k < x.parties(); ++k) {
          if (k) s += ", ";
          s += py::repr(py::float_(x[k])).cast<std::string>();
        }
        return s + "])";
      });

  m.def("classify", [](const ParamVector& x) {
    const EntClass c = classify(x);
    py::dict d;
    d["kind"] = to_string(c.kind);
    if (c.kind == EntClass::Kind::kBipartite) d["pair"] = py::make_tuple(c.r, c.s);
    return d;
  });
  m.def("concurrence_party", &concurrence_party, py::arg("x"), py::arg("k"));
  m.def("concurrence_subset",
        [](const ParamVector& x, const std::vector<std::size_t>& r) { return concurrence_subset(x, r); },
        py::arg("x"), py::arg("subset"));
  m.def("pair_product", &pair_product, py::arg("x"), py::arg("k"), py::arg("l"));
  m.def("pair_product_from_concurrences", &pair_product_from_concurrences, py::arg("x"),
        py::arg("k"), py::arg("l"));
  m.def("equivalent", &equivalent, py::arg("x"), py::arg("y"), py::arg("tolerance") = tol::kValidation);
  m.def("canonical", &canonical, py::arg("x"));

  py::class_<OutcomeSpec>(m, "OutcomeSpec")
      .def(py::init([](double p, const ParamVector& t, std::optional<double> s,
                       std::optional<ParamVector> w) { return OutcomeSpec{p, t, s, w}; }),
           py::arg("probability"), py::arg("target"), py::arg("witness_scale") = py::none(),
           py::arg("witness_target") = py::none())
      .def_readonly("probability", &OutcomeSpec::probability)
      .def_readonly("target", &OutcomeSpec::target);

  py::class_<Witness>(m, "Witness")
      .def_readonly("scale", &Witness::scale)
      .def_readonly("target", &Witness::target);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("valid", &ValidationReport::valid)
      .def_property_readonly("violated", [](const ValidationReport& r) { return to_string(r.violated); })
      .def_readonly("detail", &ValidationReport::detail)
      .def_readonly("kept", &ValidationReport::kept)
      .def_readonly("witnesses", &ValidationReport::witnesses)
      .def_readonly("scale_sum", &ValidationReport::scale_sum)
      .def_readonly("polygon_lhs", &ValidationReport::polygon_lhs)
      .def_readonly("polygon_rhs", &ValidationReport::polygon_rhs);

  m.def("validate_ensemble",
        [](const ParamVector& x, std::size_t party, const std::vector<OutcomeSpec>& outcomes,
           double tolerance) { return validate_ensemble(x, {party, outcomes}, tolerance); },
        py::arg("x"), py::arg("party"), py::arg("outcomes"), py::arg("tolerance") = tol::kValidation);

  m.def("solve_phase_closure",
        [](const std::vector<double>& moduli, double target) {
          const PhaseClosure c = solve_phase_closure(moduli, target);
          return py::make_tuple(c.phases, c.source_index);
        },
        py::arg("moduli"), py::arg("target"));

  m.def("synthesize_kraus",
        [](const ParamVector& x, std::size_t party, const std::vector<OutcomeSpec>& outcomes) {
          py::list out;
          for (const SynthesizedOp& op : synthesize_kraus(x, {party, outcomes})) {
            out.append(py::make_tuple(op.outcome, Eigen::Matrix2cd(op.op.matrix()), op.phase));
          }
          return out;
        },
        py::arg("x"), py::arg("party"), py::arg("outcomes"),
        "Returns (outcome index, 2x2 complex matrix, phase) triples.");

  m.def("apply_kraus_symbolic",
        [](const ParamVector& x, std::size_t k, const Eigen::Matrix2cd& mat) {
          const SymbolicOutcome s = apply_kraus_symbolic(x, k, KrausOp(mat));
          return py::make_tuple(s.probability, s.result);
        },
        py::arg("x"), py::arg("k"), py::arg("m"));

  m.def("build_state", [](const ParamVector& x) { return amplitudes(build_state(x)); }, py::arg("x"),
        "Amplitudes of |Phi(x)>, party 0 as the most significant bit.");
  m.def("extract_params",
        [](const std::vector<cplx>& amps) {
          const Extraction e = extract_params(state_from(amps));
          std::vector<std::pair<Eigen::Vector2cd, Eigen::Vector2cd>> basis;
          for (const QubitBasis& b : e.basis) basis.emplace_back(b.alpha, b.beta);
          return py::make_tuple(e.x, basis, e.overlap);
        },
        py::arg("amplitudes"), "Returns (ParamVector, [(alpha, beta)], overlap).");

  m.def("can_convert",
        [](const ParamVector& x, const ParamVector& y) -> std::optional<ParamVector> {
          const auto w = can_convert(x, y);
          if (!w) return std::nullopt;
          return w->target_equivalent;
        },
        py::arg("x"), py::arg("y"), "Witness y' ~ y with x >= y', or None.");
  m.def("distill_bound", [](const ParamVector& x, const ParamVector& y) { return distill_bound(x, y).value; },
        py::arg("x"), py::arg("y"));

  py::class_<Protocol>(m, "Protocol")
      .def_property_readonly("num_steps", [](const Protocol& p) { return p.steps.size(); })
      .def_property_readonly("parties",
                             [](const Protocol& p) {
                               std::vector<std::size_t> v;
                               for (const ProtocolStep& s : p.steps) v.push_back(s.party);
                               return v;
                             })
      .def_readonly("declared_success_probability", &Protocol::declared_success_probability);

  m.def("compile_deterministic_protocol", &compile_deterministic_protocol, py::arg("x"), py::arg("y"));
  m.def("compile_distillation_protocol",
        [](const ParamVector& x, const ParamVector& y) {
          const DistillationPlan plan = compile_distillation_protocol(x, y);
          return py::make_tuple(plan.protocol, plan.achieved_probability);
        },
        py::arg("x"), py::arg("y"), "Returns (Protocol, achieved probability).");

  m.def("run_protocol",
        [](const std::vector<cplx>& amps, const Protocol& p, const std::string& mode,
           std::size_t trials, std::uint64_t seed) {
          const PureState s = state_from(amps);
          if (mode == "exhaustive") return report_dict(run_protocol(s, p, Exhaustive{}));
          if (mode == "sampled") return report_dict(run_protocol(s, p, Sampled{trials, seed}));
          throw std::invalid_argument("mode must be 'exhaustive' or 'sampled'");
        },
        py::arg("amplitudes"), py::arg("protocol"), py::arg("mode") = "exhaustive",
        py::arg("trials") = 10000, py::arg("seed") = 0);
}
