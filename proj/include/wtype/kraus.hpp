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

#ifndef WTYPE_KRAUS_HPP
#define WTYPE_KRAUS_HPP

#include <complex>
#include <span>

#include <Eigen/Core>

namespace wtype {

using cplx = std::complex<double>;

/// A 2x2 single-qubit measurement operator in the computational basis.
class KrausOp {
 public:
  KrausOp() : m_(Eigen::Matrix2cd::Identity()) {}
  explicit KrausOp(const Eigen::Matrix2cd& m);
  KrausOp(cplx a, cplx b, cplx c, cplx d);

  static KrausOp identity() { return KrausOp(); }
  static KrausOp diagonal(cplx d0, cplx d1) { return KrausOp(d0, 0.0, 0.0, d1); }

  const Eigen::Matrix2cd& matrix() const { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

  bool is_upper_triangular(double tolerance = 0.0) const;
  bool is_unitary(double tolerance) const;

  bool operator==(const KrausOp& other) const { return m_ == other.m_; }

 private:
  Eigen::Matrix2cd m_;
};

/// max |(sum M^dagger M - 1)_ij|
double completeness_defect(std::span<const KrausOp> ops);

}  // namespace wtype

#endif  // WTYPE_KRAUS_HPP
