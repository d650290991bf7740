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

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ensembles.hpp"
#include "oracle.hpp"
#include "wtype/errors.hpp"
#include "wtype/kraus.hpp"
#include "wtype/local_ops.hpp"
#include "wtype/state_vector.hpp"

namespace wtype {
namespace {

OutcomeSpec outcome(double p, std::vector<double> target) {
  return {p, ParamVector(std::move(target)), std::nullopt, std::nullopt};
}

TEST(KrausOpTest, Basics) {
  EXPECT_TRUE(KrausOp().is_unitary(1e-15));
  EXPECT_TRUE(KrausOp::diagonal(0.5, 0.2).is_upper_triangular(0.0));
  EXPECT_FALSE(KrausOp(0.0, 0.0, 1.0, 0.0).is_upper_triangular(1e-12));
  EXPECT_THROW(KrausOp(NAN, 0.0, 0.0, 1.0), std::invalid_argument);
  const KrausOp ops[] = {KrausOp::diagonal(std::sqrt(0.3), 1.0), KrausOp::diagonal(std::sqrt(0.7), 0.0)};
  EXPECT_LE(completeness_defect(ops), 1e-15);
}

TEST(ValidateTest, CorollaryStep) {
  const ParamVector x({0.5, 0.2, 0.1});
  const OutcomeEnsemble e{0, {outcome(1.0, {0.4, 0.2, 0.1})}};
  const ValidationReport r = validate_ensemble(x, e);
  ASSERT_TRUE(r.valid) << r.detail;
  EXPECT_NEAR(r.witnesses[0].scale, 1.0, 1e-12);
}

TEST(ValidateTest, IdentityOnW) {
  const ParamVector w = ParamVector::w_state(3);
  const OutcomeEnsemble e{1, {outcome(1.0, {w.components().begin(), w.components().end()})}};
  const ValidationReport r = validate_ensemble(w, e);
  ASSERT_TRUE(r.valid) << r.detail;
  EXPECT_NEAR(r.witnesses[0].scale, 1.0, 1e-12);
}

TEST(ValidateTest, ScaledTwoOutcomeEnsemble) {
  const ParamVector x({0.5, 0.2, 0.1});
  const OutcomeEnsemble e{0, {outcome(0.5, {0.2, 0.32, 0.16}), outcome(0.5, {0.3, 0.08, 0.04})}};
  const ValidationReport r = validate_ensemble(x, e);
  ASSERT_TRUE(r.valid) << r.detail;
  EXPECT_NEAR(r.witnesses[0].scale, 1.6, 1e-12);
  EXPECT_NEAR(r.witnesses[1].scale, 0.4, 1e-12);
  EXPECT_NEAR(r.scale_sum, 1.0, 1e-12);
  // Independent evaluation of the polygon inequality.
  const double lhs = 0.5 * std::sqrt(1.6 * 0.32) + 0.5 * std::sqrt(0.4 * 0.58);
  EXPECT_NEAR(r.polygon_lhs, lhs, 1e-12);
  EXPECT_GE(lhs, std::sqrt(0.2));
}

TEST(ValidateTest, FirstViolatedCondition) {
  const ParamVector x({0.5, 0.2, 0.1});
  // Other components not proportional to the source.
  ValidationReport r = validate_ensemble(x, {0, {outcome(1.0, {0.2, 0.3, 0.1})}});
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.violated, Condition::kScaleRelation);
  // Proportional, but the single scale is 0.5.
  r = validate_ensemble(x, {0, {outcome(1.0, {0.3, 0.1, 0.05})}});
  EXPECT_EQ(r.violated, Condition::kScaleSum);
  // Raising the acting party's component breaks the polygon inequality.
  r = validate_ensemble(x, {0, {outcome(1.0, {0.6, 0.2, 0.1})}});
  EXPECT_EQ(r.violated, Condition::kPolygon);
}

TEST(ValidateTest, UnderdeterminedPair) {
  const ParamVector x({0.4, 0.3, 0.0});
  ValidationReport r = validate_ensemble(x, {0, {outcome(1.0, {0.2, 0.5, 0.0})}});
  EXPECT_TRUE(r.valid) << r.detail;
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_TRUE(equivalent(r.witnesses[0].target, ParamVector({0.2, 0.5, 0.0})));
  EXPECT_NEAR(r.witnesses[0].target[1], r.witnesses[0].scale * 0.3, 1e-12);

  r = validate_ensemble(x, {0, {outcome(1.0, {0.35, 0.35, 0.0})}});
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.violated, Condition::kPolygon);
}

TEST(ValidateTest, WitnessChecks) {
  const ParamVector x({0.5, 0.2, 0.1});
  OutcomeSpec o = outcome(1.0, {0.4, 0.2, 0.1});
  o.witness_target = ParamVector({0.4, 0.25, 0.1});
  EXPECT_EQ(validate_ensemble(x, {0, {o}}).violated, Condition::kWitness);
  o = outcome(1.0, {0.4, 0.2, 0.1});
  o.witness_scale = 0.9;
  EXPECT_EQ(validate_ensemble(x, {0, {o}}).violated, Condition::kScaleRelation);
}

TEST(ValidateTest, DropsZeroProbabilityOutcomes) {
  const ParamVector x({0.5, 0.2, 0.1});
  const OutcomeEnsemble e{0, {outcome(0.0, {0.9, 0.0, 0.0}), outcome(1.0, {0.4, 0.2, 0.1})}};
  const ValidationReport r = validate_ensemble(x, e);
  ASSERT_TRUE(r.valid);
  EXPECT_EQ(r.kept, std::vector<std::size_t>{1});
}

TEST(ValidateTest, Errors) {
  const ParamVector x({0.5, 0.2, 0.1});
  EXPECT_THROW(validate_ensemble(x, {0, {outcome(0.7, {0.4, 0.2, 0.1})}}), std::invalid_argument);
  EXPECT_THROW(validate_ensemble(x, {3, {outcome(1.0, {0.4, 0.2, 0.1})}}), std::invalid_argument);
  EXPECT_THROW(validate_ensemble(x, {0, {outcome(1.0, {0.4, 0.2, 0.1, 0.0})}}),
               std::invalid_argument);
  // Party 2 is unentangled in the source but entangled in the target.
  const ParamVector y({0.5, 0.2, 0.0});
  EXPECT_THROW(validate_ensemble(y, {0, {outcome(1.0, {0.4, 0.2, 0.1})}}), InfeasibleError);
}

TEST(SynthesizeTest, DeterministicStep) {
  const ParamVector x({0.5, 0.2, 0.1});
  const ParamVector y({0.4, 0.2, 0.1});
  const OutcomeEnsemble e{0, {{0.5, y, 1.0, y}, {0.5, y, 1.0, y}}};
  const std::vector<SynthesizedOp> ops = synthesize_kraus(x, e);
  ASSERT_EQ(ops.size(), 2u);
  EXPECT_NEAR(std::abs(ops[0].phase), 0.6154797086703874, 1e-12);
  EXPECT_NEAR(ops[0].phase, -ops[1].phase, 1e-12);
  for (const SynthesizedOp& op : ops) {
    EXPECT_NEAR(op.op(0, 0).real(), std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(op.op(1, 1).real(), 0.6324555320336759, 1e-12);
    EXPECT_TRUE(op.op.is_upper_triangular(0.0));
    const SymbolicOutcome s = apply_kraus_symbolic(x, 0, op.op);
    EXPECT_NEAR(s.probability, 0.5, 1e-12);
    ASSERT_TRUE(s.result);
    for (std::size_t l = 0; l < 3; ++l) EXPECT_NEAR((*s.result)[l], y[l], 1e-12);
  }
}

TEST(SynthesizeTest, IdentityEnsembleGivesIdentity) {
  const ParamVector x({0.5, 0.2, 0.1});
  const std::vector<SynthesizedOp> ops = synthesize_kraus(x, {1, {outcome(1.0, {0.5, 0.2, 0.1})}});
  ASSERT_EQ(ops.size(), 1u);
  EXPECT_LE((ops[0].op.matrix() - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
}

TEST(SynthesizeTest, UnentangledActingParty) {
  const ParamVector x({0.5, 0.2, 0.0});
  const std::vector<SynthesizedOp> ops = synthesize_kraus(x, {2, {outcome(1.0, {0.5, 0.2, 0.0})}});
  ASSERT_EQ(ops.size(), 1u);
  EXPECT_LE((ops[0].op.matrix() - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
  EXPECT_THROW(synthesize_kraus(x, {2, {outcome(1.0, {0.0, 0.0, 0.0})}}), DomainError);
}

TEST(SynthesizeTest, RefusesInvalidEnsemble) {
  const ParamVector x({0.5, 0.2, 0.1});
  EXPECT_THROW(synthesize_kraus(x, {0, {outcome(1.0, {0.6, 0.2, 0.1})}}), InfeasibleError);
}

TEST(SynthesizeTest, FaceDistillationStep) {
  // x on the x0 = 0 face; party 2 lowers itself with success scale 1/0.85.
  const ParamVector x({0.4, 0.35, 0.25});
  const double s = 1.0 / 0.85;
  const ParamVector t({0.4 * s, 0.35 * s, 1.0 - 0.75 * s});
  const OutcomeEnsemble e{2, {{1.0 / s, t, s, t}, {1.0 - 1.0 / s, ParamVector::zero(3), 0.0, std::nullopt}}};
  const std::vector<SynthesizedOp> ops = synthesize_kraus(x, e);
  const PureState psi = build_state(x);
  double total = 0.0;
  for (const SynthesizedOp& op : ops) {
    const LocalOutcome o = apply_local(psi, 2, op.op);
    const double expected = e.outcomes[op.outcome].probability;
    EXPECT_NEAR(o.probability, expected, 1e-12);
    total += o.probability;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(ApplySymbolicTest, Examples) {
  const ParamVector x({0.5, 0.2, 0.1});
  SymbolicOutcome s = apply_kraus_symbolic(x, 0, KrausOp());
  EXPECT_NEAR(s.probability, 1.0, 1e-15);
  ASSERT_TRUE(s.result);
  EXPECT_EQ(*s.result, x);

  s = apply_kraus_symbolic(x, 0, KrausOp::diagonal(1.0, 0.0));
  EXPECT_NEAR(s.probability, 0.5, 1e-15);
  ASSERT_TRUE(s.result);
  EXPECT_NEAR((*s.result)[0], 0.0, 1e-15);
  EXPECT_NEAR((*s.result)[1], 0.4, 1e-15);
  EXPECT_NEAR((*s.result)[2], 0.2, 1e-15);

  s = apply_kraus_symbolic(ParamVector({1.0, 0.0, 0.0}), 0, KrausOp::diagonal(1.0, 0.0));
  EXPECT_FALSE(s.result);
  EXPECT_NEAR(s.probability, 0.0, 1e-15);
}

TEST(ApplySymbolicTest, AgreesWithKroneckerOracle) {
  std::mt19937_64 gen(77);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t p = 3 + trial % 3;
    const ParamVector x(oracle::random_simplex(gen, p));
    const std::size_t k = gen() % p;
    // Random upper-triangular operator scaled to be a contraction.
    Eigen::Matrix2cd m;
    m << std::abs(n(gen)), std::complex<double>(n(gen), n(gen)), 0.0, std::abs(n(gen));
    m /= m.operatorNorm() * 1.01;
    const SymbolicOutcome s = apply_kraus_symbolic(x, k, KrausOp(m));
    const Eigen::VectorXcd image = oracle::embed(m, p, k) * oracle::phi(x);
    ASSERT_NEAR(s.probability, image.squaredNorm(), 1e-12);
    ASSERT_TRUE(s.result);
    const Eigen::VectorXcd post = image / image.norm();
    for (std::size_t l = 0; l < p; ++l) {
      ASSERT_NEAR((*s.result)[l], std::norm(post(Eigen::Index{1} << (p - 1 - l))), 1e-12);
    }
    ASSERT_NEAR(s.result_x0, std::norm(post(0)), 1e-12);
  }
}

// Synthesized operators reproduce every witness and obey the averaging laws.
TEST(SynthesizeTest, RandomEnsemblesRoundTrip) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto [x, e] = oracle::sample_ensemble(gen);
    const ValidationReport report = validate_ensemble(x, e);
    ASSERT_TRUE(report.valid) << "trial " << trial << ": " << report.detail;
    const std::vector<SynthesizedOp> ops = synthesize_kraus(x, e, report);
    std::vector<KrausOp> list;
    for (const SynthesizedOp& op : ops) {
      list.push_back(op.op);
      ASSERT_TRUE(op.op.is_upper_triangular(1e-14));
    }
    ASSERT_LE(completeness_defect(list), 1e-12);

    std::map<std::size_t, double> merged;
    const std::size_t p = x.parties();
    const std::size_t k = e.acting_party;
    std::vector<double> avg(p, 0.0);
    double avg0 = 0.0;
    for (const SynthesizedOp& op : ops) {
      const SymbolicOutcome s = apply_kraus_symbolic(x, k, op.op);
      merged[op.outcome] += s.probability;
      if (!s.result) continue;
      ASSERT_TRUE(equivalent(*s.result, e.outcomes[op.outcome].target, 1e-10));
      for (std::size_t l = 0; l < p; ++l) avg[l] += s.probability * (*s.result)[l];
      avg0 += s.probability * s.result_x0;
    }
    for (const auto& [i, prob] : merged) ASSERT_NEAR(prob, e.outcomes[i].probability, 1e-10);
    for (std::size_t l = 0; l < p; ++l) {
      if (l == k) {
        ASSERT_LE(avg[l], x[l] + 1e-10);
      } else {
        ASSERT_NEAR(avg[l], x[l], 1e-10);
      }
    }
    ASSERT_GE(avg0, x.x0() - 1e-10);
  }
}

}  // namespace
}  // namespace wtype
