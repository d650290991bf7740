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

#include "wtype/kraus.hpp"

#include <cmath>
#include <stdexcept>

namespace wtype {

KrausOp::KrausOp(const Eigen::Matrix2cd& m) : m_(m) {
  if (!m_.allFinite()) throw std::invalid_argument("Kraus operator has non-finite entries");
}

KrausOp::KrausOp(cplx a, cplx b, cplx c, cplx d) {
  m_ << a, b, c, d;
  if (!m_.allFinite()) throw std::invalid_argument("Kraus operator has non-finite entries");
}

bool KrausOp::is_upper_triangular(double tolerance) const {
  return std::abs(m_(1, 0)) <= tolerance;
}

bool KrausOp::is_unitary(double tolerance) const {
  const Eigen::Matrix2cd g = m_.adjoint() * m_ - Eigen::Matrix2cd::Identity();
  return g.cwiseAbs().maxCoeff() <= tolerance;
}

double completeness_defect(std::span<const KrausOp> ops) {
  Eigen::Matrix2cd sum = -Eigen::Matrix2cd::Identity();
  for (const KrausOp& op : ops) sum += op.matrix().adjoint() * op.matrix();
  return sum.cwiseAbs().maxCoeff();
}

}  // namespace wtype
