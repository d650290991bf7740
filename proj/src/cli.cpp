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

#include "wtype/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "wtype/errors.hpp"
#include "wtype/json_io.hpp"

namespace wtype::cli {
namespace {

using io::json;

struct Options {
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
  std::string mode = "exhaustive";
  bool emit_protocol = false;
  bool pretty = false;
};

struct Result {
  json payload;
  std::vector<std::string> diagnostics;
  int code = kOk;
};

// An argument is inline JSON, "-" for standard input, or a file path.
json load(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    return json::parse(arg);
  }
  if (arg == "-") return json::parse(std::cin);
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open input file: " + arg);
  return json::parse(in);
}

PureState load_state(const std::string& arg) {
  const json j = load(arg);
  if (j.is_object() && j.contains("amps")) return io::pure_state_from_json(j);
  return build_state(io::param_vector_from_json(j));
}

Result cmd_param(const std::string& state_file) {
  return {io::to_json(extract_params(load_state(state_file))), {}, kOk};
}

Result cmd_equiv(const std::string& xf, const std::string& yf, const Options& opt) {
  const ParamVector x = io::param_vector_from_json(load(xf));
  const ParamVector y = io::param_vector_from_json(load(yf));
  const double tolerance = opt.tol.value_or(tol::kValidation);
  return {{{"equivalent", equivalent(x, y, tolerance)},
           {"tolerance", tolerance},
           {"class_x", io::to_json(classify(x))},
           {"class_y", io::to_json(classify(y))},
           {"canonical_x", io::to_json(canonical(x))},
           {"canonical_y", io::to_json(canonical(y))}},
          {},
          kOk};
}

Result cmd_convert(const std::string& xf, const std::string& yf, const Options& opt) {
  const ParamVector x = io::param_vector_from_json(load(xf));
  const ParamVector y = io::param_vector_from_json(load(yf));
  const auto witness = can_convert(x, y, opt.tol.value_or(tol::kDominance));
  Result r;
  r.payload["convertible"] = witness.has_value();
  if (!witness) {
    r.payload["distill_bound"] = distill_bound(x, y).value;
    return r;
  }
  r.payload["witness"] = io::to_json(*witness);
  if (opt.emit_protocol) r.payload["protocol"] = io::to_json(compile_deterministic_protocol(x, y));
  return r;
}

Result cmd_synth(const std::string& xf, const std::string& ef, const Options& opt) {
  const ParamVector x = io::param_vector_from_json(load(xf));
  const OutcomeEnsemble e = io::ensemble_from_json(load(ef));
  const ValidationReport report = validate_ensemble(x, e, opt.tol.value_or(tol::kValidation));
  Result r;
  r.payload["validation"] = io::to_json(report);
  if (!report.valid) {
    r.code = kDomain;
    r.diagnostics.push_back("ensemble violates condition " + to_string(report.violated));
    return r;
  }
  json ops = json::array();
  for (const SynthesizedOp& op : synthesize_kraus(x, e, report)) ops.push_back(io::to_json(op));
  r.payload["operators"] = std::move(ops);
  return r;
}

Result cmd_distill(const std::string& xf, const std::string& yf, const Options& opt) {
  const ParamVector x = io::param_vector_from_json(load(xf));
  const ParamVector y = io::param_vector_from_json(load(yf));
  const DistillBound bound = distill_bound(x, y);
  Result r;
  r.payload["bound"] = bound.value;
  if (bound.product_target) r.diagnostics.push_back("product target: the bound is trivially 1");
  if (opt.emit_protocol) {
    try {
      r.payload["plan"] = io::to_json(compile_distillation_protocol(x, y));
    } catch (const DomainError& e) {
      r.payload["plan"] = nullptr;
      r.diagnostics.push_back(std::string("no protocol: ") + e.what());
    }
  }
  return r;
}

Result cmd_simulate(const std::string& sf, const std::string& pf, const Options& opt) {
  const PureState state = load_state(sf);
  const Protocol protocol = io::protocol_from_json(load(pf));
  ExecutionReport report;
  if (opt.mode == "exhaustive") {
    report = run_protocol(state, protocol, Exhaustive{});
  } else if (opt.mode == "sampled") {
    report = run_protocol(state, protocol, Sampled{opt.trials, opt.seed});
  } else {
    throw std::invalid_argument("--mode must be exhaustive or sampled");
  }
  Result r{io::to_json(report), {}, kOk};
  if (!report.audit.ok) r.diagnostics.push_back("averaged outcome vector exceeds the source");
  return r;
}

struct Check {
  std::string name;
  std::function<bool()> run;
};

bool near(double a, double b, double eps) { return std::abs(a - b) <= eps; }

std::vector<Check> self_checks() {
  return {
      {"w3 concurrence",
       [] { return near(concurrence_party(ParamVector::w_state(3), 0), 0.9428090415820634, 1e-12); }},
      {"party concurrence of (0.5,0.2,0.1)",
       [] { return near(concurrence_party(ParamVector({0.5, 0.2, 0.1}), 0), 0.7745966692414834, 1e-12); }},
      {"pair product from concurrences",
       [] {
         const ParamVector x({0.5, 0.2, 0.1});
         return near(pair_product_from_concurrences(x, 0, 1), 0.1, 1e-12);
       }},
      {"bipartite equivalence",
       [] { return equivalent(ParamVector({0.3, 0.3, 0.0}), ParamVector({0.45, 0.2, 0.0})); }},
      {"two-outcome ensemble is valid",
       [] {
         const ParamVector x({0.5, 0.2, 0.1});
         const OutcomeEnsemble e{0,
                                 {{0.5, ParamVector({0.2, 0.32, 0.16}), std::nullopt, std::nullopt},
                                  {0.5, ParamVector({0.3, 0.08, 0.04}), std::nullopt, std::nullopt}}};
         return validate_ensemble(x, e).valid;
       }},
      {"polygon condition rejects (0.35,0.35,0)",
       [] {
         const OutcomeEnsemble e{0, {{1.0, ParamVector({0.35, 0.35, 0.0}), std::nullopt, std::nullopt}}};
         const ValidationReport r = validate_ensemble(ParamVector({0.4, 0.3, 0.0}), e);
         return !r.valid && r.violated == Condition::kPolygon;
       }},
      {"deterministic conversion runs with probability 1",
       [] {
         const ParamVector x({0.5, 0.2, 0.1});
         const ParamVector y({0.3, 0.3, 0.0});
         const ExecutionReport r = run_protocol(build_state(x), compile_deterministic_protocol(x, y));
         bool ok = near(r.success_probability, 1.0, 1e-10);
         for (const ExecutionLeaf& l : r.leaves) ok = ok && l.x && equivalent(*l.x, y, 1e-8);
         return ok;
       }},
      {"w3 does not dominate (0.4,0.3,0.3)",
       [] { return !can_convert(ParamVector::w_state(3), ParamVector({0.4, 0.3, 0.3})); }},
      {"distillation reaches 0.75",
       [] {
         const ParamVector x({0.4, 0.35, 0.25});
         const DistillationPlan plan = compile_distillation_protocol(x, ParamVector::w_state(3));
         const ExecutionReport r = run_protocol(build_state(x), plan.protocol);
         return near(r.success_probability, 0.75, 1e-10) &&
                near(distill_bound(x, ParamVector::w_state(3)).value, 0.75, 1e-12);
       }},
      {"GHZ is not W-type",
       [] {
         std::vector<cplx> amps(8, 0.0);
         amps[0] = amps[7] = std::sqrt(0.5);
         try {
           extract_params(PureState(3, amps));
         } catch (const NotWTypeError&) {
           return true;
         }
         return false;
       }},
  };
}

Result cmd_selftest() {
  Result r;
  json checks = json::array();
  std::size_t failed = 0;
  for (const Check& c : self_checks()) {
    bool ok = false;
    std::string error;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    if (!ok) ++failed;
    json entry = {{"name", c.name}, {"ok", ok}};
    if (!error.empty()) entry["error"] = error;
    checks.push_back(std::move(entry));
  }
  r.payload = {{"checks", std::move(checks)}, {"failed", failed}};
  if (failed > 0) r.code = kNumeric;
  return r;
}

void emit(std::ostream& out, const json& j, bool pretty) {
  out << j.dump(pretty ? 2 : -1) << '\n';
}

int emit_error(std::ostream& out, int code, const std::string& kind, const std::string& message,
               bool pretty) {
  emit(out, {{"status", "error"}, {"code", kind}, {"exit", code}, {"message", message}}, pretty);
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"W-type state transformations: parameters, equivalence, local operations, "
               "conversion and distillation"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--tol", opt.tol, "Comparison tolerance override");
  app.add_option("--seed", opt.seed, "Seed for sampled simulation");
  app.add_option("--trials", opt.trials, "Trials for sampled simulation");
  app.add_option("--mode", opt.mode, "Simulation mode: exhaustive or sampled");
  app.add_flag("--emit-protocol", opt.emit_protocol, "Include compiled protocols in the output");
  bool json_flag = false;
  app.add_flag("--json", json_flag, "Compact JSON output (default)");
  app.add_flag("--pretty", opt.pretty, "Indented JSON output");
  app.fallthrough();

  std::string a;
  std::string b;
  std::function<Result()> action;
  auto add = [&](const char* name, const char* help, int files, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (files >= 1) sub->add_option("first", a, "Input JSON (file, '-' or inline)")->required();
    if (files >= 2) sub->add_option("second", b, "Input JSON (file, '-' or inline)")->required();
    sub->callback([&action, fn] { action = fn; });
  };
  add("param", "Extract the parameter vector and local basis of a state", 1,
      [&] { return cmd_param(a); });
  add("equiv", "Decide local-unitary equivalence of two parameter vectors", 2,
      [&] { return cmd_equiv(a, b, opt); });
  add("convert", "Decide deterministic convertibility x -> y", 2,
      [&] { return cmd_convert(a, b, opt); });
  add("synth", "Validate an outcome ensemble and synthesize its operators", 2,
      [&] { return cmd_synth(a, b, opt); });
  add("distill", "Distillation bound and optimal face protocol", 2,
      [&] { return cmd_distill(a, b, opt); });
  add("simulate", "Run a protocol on a state", 2, [&] { return cmd_simulate(a, b, opt); });
  add("selftest", "Run built-in reference checks", 0, [] { return cmd_selftest(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (opt.tol && !(*opt.tol >= 0.0 && std::isfinite(*opt.tol))) {
      throw std::invalid_argument("--tol must be a nonnegative number");
    }
    Result r = action();
    json envelope = {{"status", r.code == kOk ? "ok" : "error"},
                     {"payload", std::move(r.payload)},
                     {"diagnostics", r.diagnostics}};
    if (r.code != kOk) envelope["exit"] = r.code;
    emit(out, envelope, opt.pretty);
    return r.code;
  } catch (const NotWTypeError& e) {
    return emit_error(out, kDomain, "not_w_type", e.what(), opt.pretty);
  } catch (const InfeasibleError& e) {
    return emit_error(out, kDomain, "infeasible", e.what(), opt.pretty);
  } catch (const DomainError& e) {
    return emit_error(out, kDomain, "domain", e.what(), opt.pretty);
  } catch (const NumericError& e) {
    return emit_error(out, kNumeric, "numeric", e.what(), opt.pretty);
  } catch (const json::exception& e) {
    return emit_error(out, kUsage, "bad_json", e.what(), opt.pretty);
  } catch (const std::invalid_argument& e) {
    return emit_error(out, kUsage, "usage", e.what(), opt.pretty);
  } catch (const std::exception& e) {
    return emit_error(out, kNumeric, "internal", e.what(), opt.pretty);
  }
}

}  // namespace wtype::cli
