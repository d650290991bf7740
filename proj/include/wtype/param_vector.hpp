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

// Parameter vectors of W-type states.
//
// Every W-type state of p qubits is LU-equivalent to
//
//   |Phi(x)> = sqrt(x0) |0...0> + sum_k sqrt(x_k) |0..1_k..0>,
//
// with x = (x_1, ..., x_p) in the simplex {x_k >= 0, sum x_k <= 1} and
// x0 = 1 - sum x_k. Parties are indexed from 0 throughout the library.

#ifndef WTYPE_PARAM_VECTOR_HPP
#define WTYPE_PARAM_VECTOR_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wtype/tolerance.hpp"

namespace wtype {

class ParamVector {
 public:
  /// Throws std::invalid_argument unless p >= 3, every component is finite
  /// and nonnegative, and the components sum to at most 1 + tol::kSimplex.
  explicit ParamVector(std::vector<double> components);

  /// Standard W state (1/p, ..., 1/p).
  static ParamVector w_state(std::size_t parties);
  static ParamVector zero(std::size_t parties);

  std::size_t parties() const { return components_.size(); }
  double operator[](std::size_t k) const { return components_[k]; }
  std::span<const double> components() const { return components_; }

  /// Zeroth component 1 - sum x_k; values below tol::kSimplex snap to 0.
  double x0() const;

  bool operator==(const ParamVector&) const = default;

 private:
  std::vector<double> components_;
};

inline double x0(const ParamVector& x) { return x.x0(); }

struct EntClass {
  enum class Kind { kProduct, kBipartite, kTrulyMultipartite };

  Kind kind = Kind::kProduct;
  // Party pair for kBipartite (r < s); unused otherwise.
  std::size_t r = 0;
  std::size_t s = 0;

  bool operator==(const EntClass&) const = default;
};

std::string to_string(EntClass::Kind kind);

/// Classification by the number of components above tol::kZero.
EntClass classify(const ParamVector& x);

/// Nonzero party indices (components above tol::kZero), ascending.
std::vector<std::size_t> support(const ParamVector& x);

double concurrence_party(const ParamVector& x, std::size_t k);

/// Concurrence between the party subset R and its complement. R must be a
/// nonempty proper subset without repeats.
double concurrence_subset(const ParamVector& x,
                          std::span<const std::size_t> subset);

/// x_k * x_l for distinct parties.
double pair_product(const ParamVector& x, std::size_t k, std::size_t l);

/// The same invariant computed from concurrences,
/// (C_k^2 + C_l^2 - C_kl^2) / 8.
double pair_product_from_concurrences(const ParamVector& x, std::size_t k,
                                      std::size_t l);

/// LU equivalence. Throws std::invalid_argument on a party-count mismatch.
bool equivalent(const ParamVector& x, const ParamVector& y,
                double tolerance = tol::kValidation);

/// Class representative: x itself when truly multipartite, the balanced
/// vector x_r = x_s = sqrt(x_r x_s) for bipartite states, zero for products.
ParamVector canonical(const ParamVector& x);

}  // namespace wtype

#endif  // WTYPE_PARAM_VECTOR_HPP
