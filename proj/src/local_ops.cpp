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

#include "wtype/local_ops.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "wtype/errors.hpp"

namespace wtype {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kGridPoints = 1024;

// Witness choices for one outcome: a fixed (s, x') pair, or a one-parameter
// family s in [lo, hi] with x'(s).
struct WitnessFamily {
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> x0_of;         // x'_0(s)
  std::function<ParamVector(double)> witness;  // x'(s)

  bool fixed() const { return lo == hi; }
  double value(double s) const { return std::sqrt(std::max(0.0, s * x0_of(s))); }
};

WitnessFamily fixed_family(double s, const ParamVector& w) {
  const double w0 = w.x0();
  return {s, s, [w0](double) { return w0; }, [w](double) { return w; }};
}

struct Rejection {
  Condition condition;
  std::string detail;
};

class FamilyBuilder {
 public:
  FamilyBuilder(const ParamVector& x, std::size_t k, double tolerance)
      : x_(x), k_(k), tolerance_(tolerance) {
    for (std::size_t j = 0; j < x.parties(); ++j) {
      if (j != k && x[j] > tol::kZero) others_.push_back(j);
    }
  }

  // Returns false and fills `rejection` when condition (i) cannot hold.
  bool build(const OutcomeSpec& o, WitnessFamily& family, Rejection& rejection) const {
    if (o.witness_target) {
      if (!equivalent(*o.witness_target, o.target, tolerance_)) {
        rejection = {Condition::kWitness, "witness target is not equivalent to the target"};
        return false;
      }
      if (!from_vector(*o.witness_target, family, rejection)) return false;
    } else if (!from_target(o.target, family, rejection)) {
      return false;
    }
    if (o.witness_scale) {
      const double s = *o.witness_scale;
      if (!(s >= family.lo - tolerance_ && s <= family.hi + tolerance_)) {
        rejection = {Condition::kScaleRelation,
                     "witness scale " + std::to_string(s) + " is not admissible"};
        return false;
      }
      const double clamped = std::clamp(s, family.lo, family.hi);
      family.lo = family.hi = clamped;
    }
    return true;
  }

 private:
  void require_positive_source(std::size_t j) const {
    if (x_[j] <= tol::kZero) {
      throw InfeasibleError("source component " + std::to_string(j) +
                            " is zero but the target needs it positive");
    }
  }

  // Condition (i) fixes s through any party j != k with x_j > 0.
  bool from_vector(const ParamVector& w, WitnessFamily& family, Rejection& rejection) const {
    for (std::size_t j = 0; j < x_.parties(); ++j) {
      if (j != k_ && w[j] > tol::kZero) require_positive_source(j);
    }
    if (others_.empty()) {
      const double w0 = w.x0();
      family = {0.0, kInf, [w0](double) { return w0; }, [w](double) { return w; }};
      return true;
    }
    const std::size_t ref = *std::max_element(
        others_.begin(), others_.end(), [&](std::size_t a, std::size_t b) { return x_[a] < x_[b]; });
    const double s = w[ref] / x_[ref];
    for (std::size_t j = 0; j < x_.parties(); ++j) {
      if (j == k_) continue;
      if (std::abs(w[j] - s * x_[j]) > tolerance_) {
        rejection = {Condition::kScaleRelation,
                     "component " + std::to_string(j) + " is not scaled by s = " + std::to_string(s)};
        return false;
      }
    }
    family = fixed_family(s, w);
    return true;
  }

  bool from_target(const ParamVector& y, WitnessFamily& family, Rejection& rejection) const {
    const std::size_t p = x_.parties();
    const EntClass c = classify(y);
    switch (c.kind) {
      case EntClass::Kind::kTrulyMultipartite:
        return from_vector(y, family, rejection);

      case EntClass::Kind::kBipartite: {
        const double product = y[c.r] * y[c.s];
        if (c.r != k_ && c.s != k_) {
          require_positive_source(c.r);
          require_positive_source(c.s);
          for (std::size_t j : others_) {
            if (j != c.r && j != c.s) {
              rejection = {Condition::kScaleRelation,
                           "party " + std::to_string(j) + " stays entangled in every witness"};
              return false;
            }
          }
          const double s = std::sqrt(product / (x_[c.r] * x_[c.s]));
          if (s * (x_[c.r] + x_[c.s]) > 1.0 + tol::kSimplex) {
            rejection = {Condition::kScaleRelation, "forced witness leaves the simplex"};
            return false;
          }
          std::vector<double> w(p, 0.0);
          w[c.r] = s * x_[c.r];
          w[c.s] = s * x_[c.s];
          family = fixed_family(s, ParamVector(std::move(w)));
          return true;
        }
        // The pair contains the acting party: x'_j = s x_j, x'_k = c / x'_j.
        const std::size_t j = c.r == k_ ? c.s : c.r;
        require_positive_source(j);
        for (std::size_t m : others_) {
          if (m != j) {
            rejection = {Condition::kScaleRelation,
                         "party " + std::to_string(m) + " stays entangled in every witness"};
            return false;
          }
        }
        const double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * product));
        const double u_lo = product / ((1.0 + root) / 2.0);  // stable small root
        const double u_hi = (1.0 + root) / 2.0;
        const double xj = x_[j];
        const std::size_t k = k_;
        family.lo = u_lo / xj;
        family.hi = u_hi / xj;
        family.x0_of = [xj, product](double s) {
          const double u = s * xj;
          return u > 0.0 ? 1.0 - u - product / u : 0.0;
        };
        family.witness = [p, j, k, xj, product](double s) {
          std::vector<double> w(p, 0.0);
          const double u = s * xj;
          w[j] = u;
          w[k] = product / u;
          // Rounding at the ends of the range can overshoot the simplex.
          const double sum = w[j] + w[k];
          if (sum > 1.0) {
            w[j] /= sum;
            w[k] /= sum;
          }
          return ParamVector(std::move(w));
        };
        return true;
      }

      case EntClass::Kind::kProduct: {
        if (others_.size() >= 2) {
          family = fixed_family(0.0, ParamVector::zero(p));
          return true;
        }
        if (others_.size() == 1) {
          // x' = s x_j e_j stays a product vector for any admissible s.
          const std::size_t j = others_.front();
          const double xj = x_[j];
          family.lo = 0.0;
          family.hi = 1.0 / xj;
          family.x0_of = [xj](double s) { return 1.0 - s * xj; };
          family.witness = [p, j, xj](double s) {
            std::vector<double> w(p, 0.0);
            w[j] = std::min(1.0, s * xj);
            return ParamVector(std::move(w));
          };
          return true;
        }
        const ParamVector zero = ParamVector::zero(p);
        family = {0.0, kInf, [](double) { return 1.0; }, [zero](double) { return zero; }};
        return true;
      }
    }
    return false;
  }

  const ParamVector& x_;
  std::size_t k_;
  double tolerance_;
  std::vector<std::size_t> others_;
};

// argmax over [lo, hi] of f by grid scan plus golden-section refinement.
double maximize_1d(const std::function<double(double)>& f, double lo, double hi) {
  if (!(hi > lo)) return lo;
  const double step = (hi - lo) / kGridPoints;
  int best = 0;
  double best_value = -kInf;
  for (int i = 0; i <= kGridPoints; ++i) {
    const double v = f(lo + step * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = lo + step * std::max(0, best - 1);
  double b = std::min(hi, lo + step * std::min(kGridPoints, best + 1));
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 80; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  const double candidate = (a + b) / 2.0;
  return f(candidate) >= best_value ? candidate : lo + step * best;
}

// Chooses scales for the free outcomes so that sum P s = budget while
// maximizing sum P value(s). Objective terms are concave in s, so the
// optimum is found by bisection on the multiplier of the budget constraint.
void allocate_scales(const std::vector<double>& probs, std::vector<WitnessFamily>& families,
                     const std::vector<std::size_t>& free_idx, double budget,
                     std::vector<double>& scales) {
  if (free_idx.size() == 1) {
    const std::size_t i = free_idx.front();
    scales[i] = std::clamp(budget / probs[i], families[i].lo, families[i].hi);
    return;
  }
  double floor_sum = 0.0;
  for (std::size_t i : free_idx) floor_sum += probs[i] * families[i].lo;
  std::vector<double> cap(families.size(), 0.0);
  for (std::size_t i : free_idx) {
    cap[i] = std::min(families[i].hi,
                      families[i].lo + std::max(0.0, budget - floor_sum) / probs[i]);
  }
  auto respond = [&](double mu) {
    double total = 0.0;
    for (std::size_t i : free_idx) {
      const WitnessFamily& fam = families[i];
      scales[i] = maximize_1d([&](double s) { return fam.value(s) - mu * s; }, fam.lo, cap[i]);
      total += probs[i] * scales[i];
    }
    return total;
  };
  double mu_lo = -1e8;
  double mu_hi = 1e8;
  for (int it = 0; it < 200 && mu_hi - mu_lo > 1e-13 * std::max(1.0, std::abs(mu_lo)); ++it) {
    const double mid = 0.5 * (mu_lo + mu_hi);
    if (respond(mid) > budget) {
      mu_lo = mid;
    } else {
      mu_hi = mid;
    }
  }
  respond(mu_hi);
  // Absorb the remaining budget mismatch in whichever outcomes have room.
  double residual = budget;
  for (std::size_t i : free_idx) residual -= probs[i] * scales[i];
  for (std::size_t i : free_idx) {
    if (residual == 0.0) break;
    const double target = std::clamp(scales[i] + residual / probs[i], families[i].lo, cap[i]);
    residual -= probs[i] * (target - scales[i]);
    scales[i] = target;
  }
}

}  // namespace

std::string to_string(Condition c) {
  switch (c) {
    case Condition::kNone:
      return "none";
    case Condition::kWitness:
      return "witness";
    case Condition::kScaleRelation:
      return "scale_relation";
    case Condition::kScaleSum:
      return "scale_sum";
    case Condition::kPolygon:
      return "polygon";
  }
  return "unknown";
}

ValidationReport validate_ensemble(const ParamVector& x, const OutcomeEnsemble& e,
                                   double tolerance) {
  const std::size_t p = x.parties();
  const std::size_t k = e.acting_party;
  if (k >= p) throw std::invalid_argument("acting party out of range");
  if (e.outcomes.empty()) throw std::invalid_argument("ensemble has no outcomes");

  double total = 0.0;
  for (const OutcomeSpec& o : e.outcomes) {
    if (!std::isfinite(o.probability) || o.probability < 0.0 || o.probability > 1.0) {
      throw std::invalid_argument("outcome probabilities must lie in [0, 1]");
    }
    if (o.target.parties() != p ||
        (o.witness_target && o.witness_target->parties() != p)) {
      throw std::invalid_argument("outcome target has a different party count");
    }
    total += o.probability;
  }
  if (std::abs(total - 1.0) > tol::kSimplex) {
    throw std::invalid_argument("outcome probabilities sum to " + std::to_string(total));
  }

  ValidationReport report;
  report.polygon_rhs = std::sqrt(x.x0());
  std::vector<double> probs;
  for (std::size_t i = 0; i < e.outcomes.size(); ++i) {
    if (e.outcomes[i].probability > 0.0) {
      report.kept.push_back(i);
      probs.push_back(e.outcomes[i].probability);
    }
  }

  const FamilyBuilder builder(x, k, tolerance);
  std::vector<WitnessFamily> families(report.kept.size());
  for (std::size_t i = 0; i < report.kept.size(); ++i) {
    Rejection rejection;
    if (!builder.build(e.outcomes[report.kept[i]], families[i], rejection)) {
      report.violated = rejection.condition;
      report.detail = "outcome " + std::to_string(report.kept[i]) + ": " + rejection.detail;
      return report;
    }
  }

  std::vector<double> scales(families.size(), 0.0);
  std::vector<std::size_t> free_idx;
  double budget = 1.0;
  double floor_sum = 0.0;
  double ceil_sum = 0.0;
  for (std::size_t i = 0; i < families.size(); ++i) {
    if (families[i].fixed()) {
      scales[i] = families[i].lo;
      budget -= probs[i] * scales[i];
    } else {
      free_idx.push_back(i);
      floor_sum += probs[i] * families[i].lo;
      ceil_sum += probs[i] * families[i].hi;
    }
  }
  const bool sum_ok = free_idx.empty()
                          ? std::abs(budget) <= tolerance
                          : budget >= floor_sum - tolerance && budget <= ceil_sum + tolerance;
  if (!sum_ok) {
    report.violated = Condition::kScaleSum;
    report.detail = "no admissible scales satisfy sum P s = 1";
    return report;
  }
  if (!free_idx.empty()) allocate_scales(probs, families, free_idx, budget, scales);

  report.scale_sum = 0.0;
  report.polygon_lhs = 0.0;
  for (std::size_t i = 0; i < families.size(); ++i) {
    report.scale_sum += probs[i] * scales[i];
    report.polygon_lhs += probs[i] * families[i].value(scales[i]);
  }
  if (std::abs(report.scale_sum - 1.0) > tolerance) {
    report.violated = Condition::kScaleSum;
    report.detail = "sum P s = " + std::to_string(report.scale_sum);
    return report;
  }
  if (report.polygon_lhs < report.polygon_rhs - tolerance) {
    report.violated = Condition::kPolygon;
    report.detail = "sum P sqrt(s x'0) = " + std::to_string(report.polygon_lhs) +
                    " < sqrt(x0) = " + std::to_string(report.polygon_rhs);
    return report;
  }
  report.valid = true;
  for (std::size_t i = 0; i < families.size(); ++i) {
    report.witnesses.push_back({scales[i], families[i].witness(scales[i])});
  }
  return report;
}

std::vector<SynthesizedOp> synthesize_kraus(const ParamVector& x, const OutcomeEnsemble& e,
                                            const ValidationReport& report) {
  if (!report.valid) throw InfeasibleError("ensemble is not valid: " + report.detail);
  const std::size_t k = e.acting_party;
  const double xk = x[k];
  std::vector<SynthesizedOp> out;

  if (xk <= tol::kZero) {
    for (std::size_t i : report.kept) {
      if (!equivalent(e.outcomes[i].target, x)) {
        throw InfeasibleError("acting party is unentangled; only trivial outcomes are possible");
      }
    }
    for (std::size_t i : report.kept) {
      const double a = std::sqrt(e.outcomes[i].probability);
      out.push_back({i, KrausOp::diagonal(a, a), 0.0});
    }
    return out;
  }

  const double x0 = x.x0();
  std::vector<double> moduli;
  for (std::size_t i = 0; i < report.kept.size(); ++i) {
    const Witness& w = report.witnesses[i];
    moduli.push_back(e.outcomes[report.kept[i]].probability * std::sqrt(w.scale * w.target.x0()));
  }
  const double sum = std::accumulate(moduli.begin(), moduli.end(), 0.0);
  const PhaseClosure closure = solve_phase_closure(moduli, std::min(std::sqrt(x0), sum));

  std::vector<int> fragments(report.kept.size(), 0);
  for (std::size_t src : closure.source_index) ++fragments[src];

  Eigen::Matrix2cd gram = Eigen::Matrix2cd::Zero();
  for (std::size_t f = 0; f < closure.phases.size(); ++f) {
    const std::size_t i = closure.source_index[f];
    const Witness& w = report.witnesses[i];
    const double prob = e.outcomes[report.kept[i]].probability / fragments[i];
    const double phi = closure.phases[f];
    const double a = std::sqrt(prob * w.scale);
    const cplx b = std::sqrt(prob / xk) *
                   (std::polar(std::sqrt(w.target.x0()), phi) - std::sqrt(w.scale * x0));
    const double c = std::sqrt(prob * w.target[k] / xk);
    KrausOp op(a, b, 0.0, c);
    gram += op.matrix().adjoint() * op.matrix();
    out.push_back({report.kept[i], op, phi});
  }

  // Remove the residual completeness error left by tolerance-level slack in
  // the witnesses: with gram = U^dagger U (U upper triangular), M U^{-1} is
  // still upper triangular and sums exactly to the identity.
  const Eigen::LLT<Eigen::Matrix2cd> llt(gram);
  if (llt.info() != Eigen::Success) throw NumericError("synthesized operators are degenerate");
  const Eigen::Matrix2cd upper = llt.matrixU();
  const Eigen::Matrix2cd upper_inv = upper.inverse();
  for (SynthesizedOp& s : out) s.op = KrausOp(s.op.matrix() * upper_inv);
  return out;
}

std::vector<SynthesizedOp> synthesize_kraus(const ParamVector& x, const OutcomeEnsemble& e) {
  return synthesize_kraus(x, e, validate_ensemble(x, e));
}

SymbolicOutcome apply_kraus_symbolic(const ParamVector& x, std::size_t k, const KrausOp& m) {
  if (k >= x.parties()) throw std::invalid_argument("party index out of range");
  // Reduce to M = [A B; 0 C] with A, C >= 0 by a unitary on the left.
  const Eigen::Vector2cd col0 = m.matrix().col(0);
  const Eigen::Vector2cd col1 = m.matrix().col(1);
  double a = col0.norm();
  cplx b;
  double c;
  if (a > 0.0) {
    const Eigen::Vector2cd unit = col0 / a;
    b = unit.dot(col1);
    c = (col1 - b * unit).norm();
  } else {
    b = col1(0);
    c = std::abs(col1(1));
  }

  const double x0 = x.x0();
  const double xk = x[k];
  double others = 0.0;
  for (std::size_t j = 0; j < x.parties(); ++j) {
    if (j != k) others += x[j];
  }
  const double head = std::norm(a * std::sqrt(x0) + b * std::sqrt(xk));
  const double prob = head + a * a * others + c * c * xk;
  if (prob <= tol::kZeroProbability) return {prob, std::nullopt, 0.0};

  std::vector<double> next(x.parties());
  for (std::size_t j = 0; j < x.parties(); ++j) next[j] = a * a * x[j] / prob;
  next[k] = c * c * xk / prob;
  return {prob, ParamVector(std::move(next)), head / prob};
}

}  // namespace wtype
