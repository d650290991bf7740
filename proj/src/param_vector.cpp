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

#include "wtype/param_vector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wtype {
namespace {

// Neumaier summation; x0 is a difference of nearly equal numbers on the face.
double accurate_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

double concurrence_of_aggregate(double aggregate, double total) {
  return 2.0 * std::sqrt(std::max(0.0, aggregate * (total - aggregate)));
}

void check_party(const ParamVector& x, std::size_t k) {
  if (k >= x.parties()) {
    throw std::invalid_argument("party index " + std::to_string(k) +
                                " out of range for p = " +
                                std::to_string(x.parties()));
  }
}

}  // namespace

ParamVector::ParamVector(std::vector<double> components)
    : components_(std::move(components)) {
  if (components_.size() < 3) {
    throw std::invalid_argument("a parameter vector needs at least 3 parties");
  }
  for (double c : components_) {
    if (!std::isfinite(c) || c < 0.0) {
      throw std::invalid_argument("parameter components must be finite and nonnegative");
    }
  }
  if (accurate_sum(components_) > 1.0 + tol::kSimplex) {
    throw std::invalid_argument("parameter components sum to more than 1");
  }
}

ParamVector ParamVector::w_state(std::size_t parties) {
  return ParamVector(std::vector<double>(parties, 1.0 / static_cast<double>(parties)));
}

ParamVector ParamVector::zero(std::size_t parties) {
  return ParamVector(std::vector<double>(parties, 0.0));
}

double ParamVector::x0() const {
  const double rest = 1.0 - accurate_sum(components_);
  return rest < tol::kSimplex ? 0.0 : std::min(rest, 1.0);
}

std::string to_string(EntClass::Kind kind) {
  switch (kind) {
    case EntClass::Kind::kProduct:
      return "product";
    case EntClass::Kind::kBipartite:
      return "bipartite";
    case EntClass::Kind::kTrulyMultipartite:
      return "truly_multipartite";
  }
  return "unknown";
}

std::vector<std::size_t> support(const ParamVector& x) {
  std::vector<std::size_t> nonzero;
  for (std::size_t k = 0; k < x.parties(); ++k) {
    if (x[k] > tol::kZero) nonzero.push_back(k);
  }
  return nonzero;
}

EntClass classify(const ParamVector& x) {
  const auto nonzero = support(x);
  if (nonzero.size() >= 3) return {EntClass::Kind::kTrulyMultipartite, 0, 0};
  if (nonzero.size() == 2) return {EntClass::Kind::kBipartite, nonzero[0], nonzero[1]};
  return {};
}

double concurrence_party(const ParamVector& x, std::size_t k) {
  check_party(x, k);
  return concurrence_of_aggregate(x[k], 1.0 - x.x0());
}

double concurrence_subset(const ParamVector& x, std::span<const std::size_t> subset) {
  if (subset.empty() || subset.size() >= x.parties()) {
    throw std::invalid_argument("subset must be a nonempty proper subset of the parties");
  }
  std::vector<bool> seen(x.parties(), false);
  double aggregate = 0.0;
  for (std::size_t k : subset) {
    check_party(x, k);
    if (seen[k]) throw std::invalid_argument("subset lists a party twice");
    seen[k] = true;
    aggregate += x[k];
  }
  return concurrence_of_aggregate(aggregate, 1.0 - x.x0());
}

double pair_product(const ParamVector& x, std::size_t k, std::size_t l) {
  check_party(x, k);
  check_party(x, l);
  if (k == l) throw std::invalid_argument("pair_product needs two distinct parties");
  return x[k] * x[l];
}

double pair_product_from_concurrences(const ParamVector& x, std::size_t k, std::size_t l) {
  if (k == l) throw std::invalid_argument("pair_product needs two distinct parties");
  const std::size_t pair[] = {k, l};
  const double ck = concurrence_party(x, k);
  const double cl = concurrence_party(x, l);
  const double ckl = concurrence_subset(x, pair);
  return (ck * ck + cl * cl - ckl * ckl) / 8.0;
}

bool equivalent(const ParamVector& x, const ParamVector& y, double tolerance) {
  if (x.parties() != y.parties()) {
    throw std::invalid_argument("cannot compare parameter vectors with different party counts");
  }
  const EntClass cx = classify(x);
  const EntClass cy = classify(y);
  if (cx != cy) return false;
  switch (cx.kind) {
    case EntClass::Kind::kProduct:
      return true;
    case EntClass::Kind::kBipartite:
      return std::abs(x[cx.r] * x[cx.s] - y[cy.r] * y[cy.s]) <= tolerance;
    case EntClass::Kind::kTrulyMultipartite:
      for (std::size_t k = 0; k < x.parties(); ++k) {
        if (std::abs(x[k] - y[k]) > tolerance) return false;
      }
      return true;
  }
  return false;
}

ParamVector canonical(const ParamVector& x) {
  const EntClass c = classify(x);
  switch (c.kind) {
    case EntClass::Kind::kTrulyMultipartite:
      return x;
    case EntClass::Kind::kBipartite: {
      std::vector<double> v(x.parties(), 0.0);
      v[c.r] = v[c.s] = std::sqrt(x[c.r] * x[c.s]);
      return ParamVector(std::move(v));
    }
    case EntClass::Kind::kProduct:
      break;
  }
  return ParamVector::zero(x.parties());
}

}  // namespace wtype
