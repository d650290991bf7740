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
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "wtype/errors.hpp"
#include "wtype/local_ops.hpp"

namespace wtype {
namespace {

// Recomputes sum m e^{i phi} from the split map: each fragment carries the
// original modulus divided by the number of fragments sharing its index.
std::complex<double> closure_sum(const std::vector<double>& moduli, const PhaseClosure& c) {
  std::vector<int> count(moduli.size(), 0);
  for (std::size_t src : c.source_index) ++count[src];
  std::complex<double> sum = 0.0;
  for (std::size_t f = 0; f < c.phases.size(); ++f) {
    const std::size_t src = c.source_index[f];
    sum += std::polar(moduli[src] / count[src], c.phases[f]);
  }
  return sum;
}

TEST(PhaseClosureTest, TwoEqualEdges) {
  const std::vector<double> m = {0.5, 0.5};
  const PhaseClosure c = solve_phase_closure(m, 0.6);
  ASSERT_EQ(c.phases.size(), 2u);
  EXPECT_NEAR(std::abs(c.phases[0]), 0.9272952180016122, 1e-12);
  EXPECT_NEAR(c.phases[0], -c.phases[1], 1e-12);
  EXPECT_NEAR(std::abs(closure_sum(m, c) - 0.6), 0.0, 1e-12);
}

TEST(PhaseClosureTest, SingleAlignedEdge) {
  const std::vector<double> m = {0.7};
  const PhaseClosure c = solve_phase_closure(m, 0.7);
  ASSERT_EQ(c.phases.size(), 1u);
  EXPECT_NEAR(c.phases[0], 0.0, 1e-12);
}

TEST(PhaseClosureTest, SplitsDominantModulus) {
  const std::vector<double> m = {1.0};
  const PhaseClosure c = solve_phase_closure(m, 0.5);
  ASSERT_EQ(c.phases.size(), 2u);
  EXPECT_EQ(c.source_index[0], 0u);
  EXPECT_EQ(c.source_index[1], 0u);
  EXPECT_NEAR(std::abs(c.phases[0]), std::acos(0.5), 1e-12);
  EXPECT_NEAR(std::abs(closure_sum(m, c) - 0.5), 0.0, 1e-12);
}

TEST(PhaseClosureTest, RejectsUnreachableTarget) {
  const std::vector<double> m = {0.2, 0.3};
  EXPECT_THROW(solve_phase_closure(m, 0.6), InfeasibleError);
  const std::vector<double> bad = {-0.1, 0.3};
  EXPECT_THROW(solve_phase_closure(bad, 0.1), std::invalid_argument);
}

TEST(PhaseClosureTest, ZeroModuliAndZeroTarget) {
  const std::vector<double> m = {0.0, 0.0};
  const PhaseClosure c = solve_phase_closure(m, 0.0);
  EXPECT_EQ(c.phases.size(), 2u);
}

TEST(PhaseClosureTest, Deterministic) {
  const std::vector<double> m = {0.3, 0.1, 0.3, 0.2};
  const PhaseClosure a = solve_phase_closure(m, 0.25);
  const PhaseClosure b = solve_phase_closure(m, 0.25);
  EXPECT_EQ(a.phases, b.phases);
  EXPECT_EQ(a.source_index, b.source_index);
}

TEST(PhaseClosureTest, RandomFeasibleInstancesClose) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int split_cases = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + gen() % 7;
    std::vector<double> m(n);
    for (double& v : m) v = u(gen) * (trial % 5 == 0 ? 1e-6 : 1.0);
    if (trial % 4 == 0) m[gen() % n] *= 50.0;  // force a dominant edge
    const double total = std::accumulate(m.begin(), m.end(), 0.0);
    const double t = u(gen) * total;
    const double largest = *std::max_element(m.begin(), m.end());
    if (largest > t + (total - largest)) ++split_cases;
    const PhaseClosure c = solve_phase_closure(m, t);
    ASSERT_LE(std::abs(closure_sum(m, c) - t), 1e-10) << "trial " << trial;
  }
  EXPECT_GT(split_cases, 500);
}

}  // namespace
}  // namespace wtype
