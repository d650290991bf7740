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

#include "wtype/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wtype/errors.hpp"
#include "wtype/local_ops.hpp"

namespace wtype {
namespace {

constexpr double kPhaseEpsilon = 1e-15;
constexpr double kRatioTie = 1e-12;

void require_same_parties(const ParamVector& x, const ParamVector& y) {
  if (x.parties() != y.parties()) {
    throw std::invalid_argument("parameter vectors have different party counts");
  }
}

std::vector<double> with_component(const ParamVector& x, std::size_t k, double value) {
  std::vector<double> c(x.components().begin(), x.components().end());
  c[k] = value;
  return c;
}

// Turns a validated ensemble into one protocol step. Each operator gets a
// phase correction when its post-state carries a relative phase on the
// all-zero amplitude.
ProtocolStep make_step(const ParamVector& x, const OutcomeEnsemble& e,
                       const std::vector<Disposition>& per_outcome) {
  const ValidationReport report = validate_ensemble(x, e);
  if (!report.valid) throw NumericError("internal ensemble failed validation: " + report.detail);
  const std::vector<SynthesizedOp> ops = synthesize_kraus(x, e, report);

  ProtocolStep step;
  step.party = e.acting_party;
  bool phased = false;
  for (const SynthesizedOp& op : ops) {
    step.ops.push_back(op.op);
    step.dispositions.push_back(per_outcome[op.outcome]);
    phased = phased || std::abs(op.phase) > kPhaseEpsilon;
  }
  if (phased) {
    for (const SynthesizedOp& op : ops) {
      std::vector<LocalCorrection> fix;
      if (std::abs(op.phase) > kPhaseEpsilon) {
        const KrausOp rot = KrausOp::diagonal(1.0, std::polar(1.0, op.phase));
        for (std::size_t l = 0; l < x.parties(); ++l) fix.push_back({l, rot});
      }
      step.corrections.push_back(std::move(fix));
    }
  }
  return step;
}

}  // namespace

std::optional<ConversionWitness> can_convert(const ParamVector& x, const ParamVector& y,
                                             double slack) {
  require_same_parties(x, y);
  const std::size_t p = x.parties();
  const EntClass cy = classify(y);

  std::optional<ParamVector> target;
  switch (cy.kind) {
    case EntClass::Kind::kTrulyMultipartite:
      target = y;
      break;
    case EntClass::Kind::kBipartite: {
      const double need = pair_product(y, cy.r, cy.s);
      const double xr = x[cy.r];
      if (x[cy.r] * x[cy.s] < need - slack || xr <= 0.0) return std::nullopt;
      // Keep party r untouched and lower party s to the required product.
      std::vector<double> c(p, 0.0);
      c[cy.r] = xr;
      c[cy.s] = std::min(need / xr, x[cy.s]);
      target.emplace(std::move(c));
      break;
    }
    case EntClass::Kind::kProduct:
      target = ParamVector::zero(p);
      break;
  }

  std::vector<double> dominance(p);
  for (std::size_t l = 0; l < p; ++l) {
    dominance[l] = x[l] - (*target)[l];
    if (dominance[l] < -slack) return std::nullopt;
  }
  return ConversionWitness{std::move(*target), std::move(dominance)};
}

Protocol compile_deterministic_protocol(const ParamVector& x, const ParamVector& y) {
  const std::optional<ConversionWitness> w = can_convert(x, y);
  if (!w) throw InfeasibleError("no deterministic conversion exists");

  Protocol protocol;
  protocol.declared_success_probability = 1.0;
  ParamVector current = x;
  std::vector<std::size_t> lowered;
  for (std::size_t k = 0; k < x.parties(); ++k) {
    if (x[k] - w->target_equivalent[k] > tol::kDominance) lowered.push_back(k);
  }
  for (std::size_t idx = 0; idx < lowered.size(); ++idx) {
    const std::size_t k = lowered[idx];
    ParamVector next(with_component(current, k, w->target_equivalent[k]));
    // Two equal outcomes close the phase polygon whenever x'_0 >= x_0.
    OutcomeEnsemble e{k, {}};
    for (int i = 0; i < 2; ++i) e.outcomes.push_back({0.5, next, 1.0, next});
    const Disposition d = idx + 1 == lowered.size() ? Disposition::kSuccess : Disposition::kContinue;
    protocol.steps.push_back(make_step(current, e, {d, d}));
    current = std::move(next);
  }
  return protocol;
}

DistillBound distill_bound(const ParamVector& x, const ParamVector& y) {
  require_same_parties(x, y);
  const EntClass cy = classify(y);
  switch (cy.kind) {
    case EntClass::Kind::kProduct:
      return {1.0, true};
    case EntClass::Kind::kBipartite: {
      const double c = 2.0 * std::sqrt(y[cy.r] * y[cy.s]);
      return {std::min(2.0 * std::sqrt(x[cy.r] * x[cy.s]) / c, 1.0), false};
    }
    case EntClass::Kind::kTrulyMultipartite:
      break;
  }
  double bound = 1.0;
  for (std::size_t l = 0; l < x.parties(); ++l) {
    if (y[l] > tol::kZero) bound = std::min(bound, x[l] / y[l]);
  }
  return {bound, false};
}

DistillationPlan compile_distillation_protocol(const ParamVector& x, const ParamVector& y) {
  require_same_parties(x, y);
  const std::size_t p = x.parties();
  if (x.x0() > 0.0 || y.x0() > 0.0) {
    throw DomainError("distillation protocol requires both vectors on the x0 = 0 face");
  }
  for (std::size_t l = 0; l < p; ++l) {
    if (x[l] <= tol::kZero || y[l] <= tol::kZero) {
      throw DomainError("distillation protocol requires every component to be positive");
    }
  }

  std::vector<double> ratio(p);
  for (std::size_t l = 0; l < p; ++l) ratio[l] = x[l] / y[l];
  const double r1 = *std::min_element(ratio.begin(), ratio.end());

  DistillationPlan plan;
  plan.achieved_probability = 1.0;
  // Party order: minimal-ratio parties first, then the operating parties.
  std::vector<double> scaled(p);  // unnormalized components
  for (std::size_t l = 0; l < p; ++l) {
    const bool minimal = ratio[l] <= r1 * (1.0 + kRatioTie);
    scaled[l] = minimal ? r1 * y[l] : x[l];
    if (!minimal) plan.operating_parties.push_back(l);
  }

  for (std::size_t idx = 0; idx < plan.operating_parties.size(); ++idx) {
    const std::size_t k = plan.operating_parties[idx];
    const double before = std::accumulate(scaled.begin(), scaled.end(), 0.0);
    std::vector<double> next = scaled;
    next[k] = r1 * y[k];
    const double after = std::accumulate(next.begin(), next.end(), 0.0);
    const double s = before / after;
    const double prob = 1.0 / s;

    std::vector<double> cur_c(p);
    std::vector<double> next_c(p);
    for (std::size_t l = 0; l < p; ++l) {
      cur_c[l] = scaled[l] / before;
      next_c[l] = next[l] / after;
    }
    const ParamVector current(std::move(cur_c));
    const ParamVector target(std::move(next_c));
    OutcomeEnsemble e{k, {}};
    e.outcomes.push_back({prob, target, s, target});
    e.outcomes.push_back({1.0 - prob, ParamVector::zero(p), 0.0, std::nullopt});
    const Disposition ok = idx + 1 == plan.operating_parties.size() ? Disposition::kSuccess
                                                                    : Disposition::kContinue;
    plan.protocol.steps.push_back(make_step(current, e, {ok, Disposition::kFail}));
    plan.scale_factors.push_back(s);
    plan.achieved_probability *= prob;
    scaled = std::move(next);
  }
  plan.protocol.declared_success_probability = plan.achieved_probability;
  return plan;
}

}  // namespace wtype
