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

#include "wtype/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "wtype/errors.hpp"
#include "wtype/tolerance.hpp"

namespace wtype {
namespace {

constexpr double kNormTolerance = 1e-12;
// Largest pair invariant D_rs of a product state after rounding.
constexpr double kEntanglementFloor = 1e-15;

void check_shape(std::size_t parties, std::size_t size) {
  if (parties < 3 || parties > kMaxParties) {
    throw std::invalid_argument("state must have between 3 and " +
                                std::to_string(kMaxParties) + " parties");
  }
  if (size != (std::size_t{1} << parties)) {
    throw std::invalid_argument("state needs 2^p amplitudes");
  }
}

double squared_norm(std::span<const cplx> amps) {
  double n = 0.0;
  for (const cplx& a : amps) n += std::norm(a);
  return n;
}

Eigen::Vector2cd perp(const Eigen::Vector2cd& v) {
  return Eigen::Vector2cd(-std::conj(v(1)), std::conj(v(0)));
}

Eigen::Matrix2cd columns(const QubitBasis& b) {
  Eigen::Matrix2cd u;
  u.col(0) = b.alpha;
  u.col(1) = b.beta;
  return u;
}

// Dominant eigenvector of a single-qubit reduced state.
Eigen::Vector2cd pure_direction(const PureState& state, std::size_t k) {
  const std::size_t sub[] = {k};
  const Eigen::Matrix2cd rho = reduced_density(state, sub);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(rho);
  return eig.eigenvectors().col(1);
}

// (U_1^dagger (x) ... (x) U_p^dagger) on the listed parties.
std::vector<cplx> rotate_into(const PureState& state, const LocalBasis& basis,
                              std::span<const std::size_t> parties) {
  std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t k : parties) {
    amps = apply_local_raw(amps, state.parties(), k, columns(basis[k]).adjoint());
  }
  return amps;
}

double overlap_with_representative(const PureState& state, const ParamVector& x,
                                   const LocalBasis& basis) {
  const PureState phi = build_state(x);
  std::vector<cplx> amps(phi.amplitudes().begin(), phi.amplitudes().end());
  for (std::size_t k = 0; k < state.parties(); ++k) {
    amps = apply_local_raw(amps, state.parties(), k, columns(basis[k]));
  }
  cplx inner = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) inner += std::conj(state[i]) * amps[i];
  return std::abs(inner);
}

LocalBasis product_basis(const PureState& state) {
  LocalBasis basis(state.parties());
  for (std::size_t k = 0; k < state.parties(); ++k) {
    basis[k].alpha = pure_direction(state, k);
    basis[k].beta = perp(basis[k].alpha);
  }
  return basis;
}

// Fix the first party's phase so the all-alpha coefficient is real positive.
void absorb_global_phase(QubitBasis& first, double phase) {
  const cplx rot = std::polar(1.0, phase);
  first.alpha *= rot;
  first.beta *= rot;
}

LocalBasis multipartite_basis(const PureState& state, const ParamVector& x) {
  const std::size_t p = state.parties();
  LocalBasis basis(p);
  for (std::size_t k = 0; k < p; ++k) {
    if (x[k] <= tol::kZero) {
      basis[k].alpha = pure_direction(state, k);
      basis[k].beta = perp(basis[k].alpha);
      continue;
    }
    std::size_t partner = k == 0 ? 1 : 0;
    for (std::size_t l = 0; l < p; ++l) {
      if (l != k && x[l] > x[partner]) partner = l;
    }
    const std::size_t pair[] = {k, partner};
    const Eigen::Matrix4cd rho = reduced_density(state, pair);
    basis[k].beta = find_product_in_kernel(rho).left;
    basis[k].alpha = perp(basis[k].beta);
  }

  std::vector<std::size_t> all(p);
  std::iota(all.begin(), all.end(), std::size_t{0});
  const std::vector<cplx> z = rotate_into(state, basis, all);
  double reference;
  if (std::abs(z[0]) > 1e-8) {
    reference = std::arg(z[0]);
  } else {
    std::size_t best = 0;
    for (std::size_t k = 1; k < p; ++k) {
      if (std::abs(z[state.party_mask(k)]) > std::abs(z[state.party_mask(best)])) best = k;
    }
    reference = std::arg(z[state.party_mask(best)]);
  }
  for (std::size_t k = 0; k < p; ++k) {
    if (x[k] > tol::kZero) {
      basis[k].beta *= std::polar(1.0, std::arg(z[state.party_mask(k)]) - reference);
    }
  }
  absorb_global_phase(basis[0], reference);
  return basis;
}

LocalBasis bipartite_basis(const PureState& state, const ParamVector& x, std::size_t r,
                           std::size_t s) {
  const std::size_t p = state.parties();
  LocalBasis basis = product_basis(state);
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < p; ++k) {
    if (k != r && k != s) rest.push_back(k);
  }
  const std::vector<cplx> z = rotate_into(state, basis, rest);
  Eigen::Matrix2cd actual;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      actual(a, b) = z[a * state.party_mask(r) + b * state.party_mask(s)];
    }
  }
  const double shared = x[r];  // balanced: x_r = x_s
  Eigen::Matrix2cd model;
  model << std::sqrt(std::max(0.0, 1.0 - 2.0 * shared)), std::sqrt(shared),
      std::sqrt(shared), 0.0;

  // actual = U_r model U_s^T via matching singular value decompositions.
  const Eigen::JacobiSVD<Eigen::Matrix2cd> sa(actual, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::JacobiSVD<Eigen::Matrix2cd> sm(model, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix2cd ur = sa.matrixU() * sm.matrixU().adjoint();
  const Eigen::Matrix2cd us = sa.matrixV().conjugate() * sm.matrixV().transpose();
  basis[r] = {ur.col(0), ur.col(1)};
  basis[s] = {us.col(0), us.col(1)};
  return basis;
}

}  // namespace

PureState::PureState(std::size_t parties, std::vector<cplx> amplitudes)
    : parties_(parties), amps_(std::move(amplitudes)) {
  check_shape(parties_, amps_.size());
  for (const cplx& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("state has non-finite amplitudes");
    }
  }
  if (std::abs(squared_norm(amps_) - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
}

PureState PureState::normalized(std::size_t parties, std::vector<cplx> amplitudes) {
  check_shape(parties, amplitudes.size());
  const double n = std::sqrt(squared_norm(amplitudes));
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("cannot normalize state");
  for (cplx& a : amplitudes) a /= n;
  return PureState(parties, std::move(amplitudes));
}

PureState build_state(const ParamVector& x) {
  const std::size_t p = x.parties();
  if (p > kMaxParties) throw std::invalid_argument("too many parties for the simulator");
  std::vector<cplx> amps(std::size_t{1} << p, 0.0);
  amps[0] = std::sqrt(x.x0());
  for (std::size_t k = 0; k < p; ++k) amps[std::size_t{1} << (p - 1 - k)] = std::sqrt(x[k]);
  // Snapping x0 to zero can leave the norm off by up to tol::kSimplex.
  return PureState::normalized(p, std::move(amps));
}

std::vector<cplx> apply_local_raw(std::span<const cplx> amps, std::size_t parties,
                                  std::size_t k, const Eigen::Matrix2cd& m) {
  if (k >= parties) throw std::invalid_argument("party index out of range");
  const std::size_t mask = std::size_t{1} << (parties - 1 - k);
  std::vector<cplx> out(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const cplx a0 = amps[i];
    const cplx a1 = amps[i | mask];
    out[i] = m(0, 0) * a0 + m(0, 1) * a1;
    out[i | mask] = m(1, 0) * a0 + m(1, 1) * a1;
  }
  return out;
}

LocalOutcome apply_local(const PureState& state, std::size_t k, const KrausOp& m) {
  std::vector<cplx> image = apply_local_raw(state.amplitudes(), state.parties(), k, m.matrix());
  const double prob = squared_norm(image);
  if (prob <= tol::kZeroProbability) return {prob, std::nullopt};
  return {prob, PureState::normalized(state.parties(), std::move(image))};
}

Eigen::MatrixXcd reduced_density(const PureState& state, std::span<const std::size_t> subset) {
  const std::size_t p = state.parties();
  std::vector<bool> inside(p, false);
  for (std::size_t k : subset) {
    if (k >= p) throw std::invalid_argument("party index out of range");
    if (inside[k]) throw std::invalid_argument("subset lists a party twice");
    inside[k] = true;
  }
  const std::size_t rows = std::size_t{1} << subset.size();
  const std::size_t cols = std::size_t{1} << (p - subset.size());
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows),
                                                static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < state.amplitudes().size(); ++i) {
    std::size_t row = 0;
    for (std::size_t k : subset) row = (row << 1) | ((i & state.party_mask(k)) ? 1 : 0);
    std::size_t col = 0;
    for (std::size_t k = 0; k < p; ++k) {
      if (!inside[k]) col = (col << 1) | ((i & state.party_mask(k)) ? 1 : 0);
    }
    psi(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = state[i];
  }
  return psi * psi.adjoint();
}

double concurrence_from_state(const PureState& state, std::span<const std::size_t> subset) {
  const std::size_t p = state.parties();
  if (subset.empty() || subset.size() >= p) {
    throw std::invalid_argument("subset must be a nonempty proper subset of the parties");
  }
  // The nonzero spectrum is shared with the complement; trace out the larger side.
  std::vector<std::size_t> side(subset.begin(), subset.end());
  if (2 * side.size() > p) {
    std::vector<std::size_t> complement;
    for (std::size_t k = 0; k < p; ++k) {
      if (std::find(side.begin(), side.end(), k) == side.end()) complement.push_back(k);
    }
    side = std::move(complement);
  }
  const Eigen::MatrixXcd rho = reduced_density(state, side);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = eig.eigenvalues();  // ascending
  const Eigen::Index n = ev.size();
  const double trace = ev.sum();
  if (n > 2 && ev(n - 3) > tol::kRank * trace) {
    throw NotWTypeError("reduced state has rank above two");
  }
  return 2.0 * std::sqrt(std::max(0.0, ev(n - 1)) * std::max(0.0, ev(n - 2)));
}

ProductInKernel find_product_in_kernel(const Eigen::Matrix4cd& rho) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho);
  const Eigen::Vector4d& ev = eig.eigenvalues();
  const double trace = std::max(ev.sum(), 0.0);
  int kernel = 0;
  for (int i = 0; i < 4; ++i) {
    if (ev(i) <= tol::kRank * trace) ++kernel;
  }
  if (kernel != 2) {
    throw NotWTypeError("two-qubit kernel has dimension " + std::to_string(kernel) +
                        ", expected 2");
  }
  const Eigen::Vector4cd v1 = eig.eigenvectors().col(0);
  const Eigen::Vector4cd v2 = eig.eigenvectors().col(1);

  // v = alpha v1 + beta v2 is a product vector iff its 2x2 coefficient
  // matrix is singular: c0 alpha^2 + c1 alpha beta + c2 beta^2 = 0.
  const cplx c0 = v1(0) * v1(3) - v1(1) * v1(2);
  const cplx c2 = v2(0) * v2(3) - v2(1) * v2(2);
  const cplx c1 = v1(0) * v2(3) + v1(3) * v2(0) - v1(1) * v2(2) - v1(2) * v2(1);
  const double scale = std::abs(c0) + std::abs(c1) + std::abs(c2);

  auto factor = [](const Eigen::Vector4cd& v) {
    Eigen::Matrix2cd coeff;
    coeff << v(0), v(1), v(2), v(3);
    const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);
    ProductInKernel out;
    out.left = svd.matrixU().col(0);
    out.right = svd.matrixV().col(0).conjugate();
    out.vector << out.left(0) * out.right(0), out.left(0) * out.right(1),
        out.left(1) * out.right(0), out.left(1) * out.right(1);
    const Eigen::Vector2d sv = svd.singularValues();
    return std::pair{out, sv(0) * sv(0) - sv(1) * sv(1)};
  };

  if (scale <= 1e-12) {
    // Every vector of the kernel is a product vector.
    auto [out, gap] = factor(v1);
    out.degenerate = true;
    return out;
  }

  const cplx disc = c1 * c1 - 4.0 * c0 * c2;
  const cplx root = std::sqrt(disc);
  const cplx q = std::abs(c1 + root) >= std::abs(c1 - root) ? -(c1 + root) / 2.0
                                                             : -(c1 - root) / 2.0;
  // Homogeneous roots (alpha, beta) = (q, c0) and (c2, q).
  const Eigen::Vector4cd r1 = q * v1 + c0 * v2;
  const Eigen::Vector4cd r2 = c2 * v1 + q * v2;

  if (std::abs(disc) <= 1e-8 * scale * scale) {
    // Double root: a single product direction.
    const Eigen::Vector4cd& r = r1.norm() >= r2.norm() ? r1 : r2;
    return factor(r.normalized()).first;
  }
  auto [p1, gap1] = factor(r1.normalized());
  auto [p2, gap2] = factor(r2.normalized());
  ProductInKernel out = gap1 >= gap2 ? p1 : p2;
  out.degenerate = true;
  return out;
}

Extraction extract_params(const PureState& state) {
  const std::size_t p = state.parties();

  std::vector<double> single(p);
  for (std::size_t k = 0; k < p; ++k) {
    const std::size_t sub[] = {k};
    const Eigen::Matrix2cd rho = reduced_density(state, sub);
    single[k] = 4.0 * std::max(0.0, (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real());
  }

  // D_kl = (C_k^2 + C_l^2 - C_kl^2) / 8 = x_k x_l for W-type states.
  Eigen::MatrixXd pair_inv = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                                   static_cast<Eigen::Index>(p));
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t l = k + 1; l < p; ++l) {
      const std::size_t sub[] = {k, l};
      const Eigen::Matrix4cd rho = reduced_density(state, sub);
      const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho, Eigen::EigenvaluesOnly);
      const Eigen::Vector4d& ev = eig.eigenvalues();
      if (ev(1) > tol::kRank * ev.sum()) {
        throw NotWTypeError("reduced state of parties " + std::to_string(k) + "," +
                            std::to_string(l) + " has rank above two");
      }
      const double c2 = 4.0 * std::max(0.0, ev(3)) * std::max(0.0, ev(2));
      const double d = std::max(0.0, (single[k] + single[l] - c2) / 8.0);
      pair_inv(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = d;
      pair_inv(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = d;
    }
  }
  auto D = [&](std::size_t a, std::size_t b) {
    return pair_inv(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  };

  std::size_t r = 0;
  std::size_t s = 1;
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t l = k + 1; l < p; ++l) {
      if (D(k, l) > D(r, s)) {
        r = k;
        s = l;
      }
    }
  }

  std::vector<double> comps(p, 0.0);
  EntClass::Kind kind = EntClass::Kind::kProduct;
  if (D(r, s) > kEntanglementFloor) {
    std::size_t third = p;
    double third_value = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      if (k == r || k == s) continue;
      comps[k] = std::sqrt(D(k, r) * D(k, s) / D(r, s));
      if (comps[k] > third_value) {
        third_value = comps[k];
        third = k;
      }
    }
    if (third_value > tol::kZero) {
      kind = EntClass::Kind::kTrulyMultipartite;
      comps[r] = std::sqrt(D(r, s) * D(r, third) / D(s, third));
      comps[s] = D(r, s) / comps[r];
    } else {
      kind = EntClass::Kind::kBipartite;
      std::fill(comps.begin(), comps.end(), 0.0);
      comps[r] = comps[s] = std::sqrt(D(r, s));
    }
  }

  std::optional<ParamVector> x;
  try {
    x.emplace(std::move(comps));
  } catch (const std::invalid_argument&) {
    throw NotWTypeError("reconstructed parameters leave the simplex");
  }

  LocalBasis basis;
  switch (kind) {
    case EntClass::Kind::kTrulyMultipartite:
      basis = multipartite_basis(state, *x);
      break;
    case EntClass::Kind::kBipartite:
      basis = bipartite_basis(state, *x, r, s);
      break;
    case EntClass::Kind::kProduct: {
      basis = product_basis(state);
      const std::vector<std::size_t> all = [&] {
        std::vector<std::size_t> v(p);
        std::iota(v.begin(), v.end(), std::size_t{0});
        return v;
      }();
      const std::vector<cplx> z = rotate_into(state, basis, all);
      absorb_global_phase(basis[0], std::arg(z[0]));
      break;
    }
  }

  const double overlap = overlap_with_representative(state, *x, basis);
  if (overlap < 1.0 - tol::kFidelity) {
    throw NotWTypeError("no W-type representation reproduces the state (overlap " +
                        std::to_string(overlap) + ")");
  }
  return {std::move(*x), std::move(basis), overlap};
}

}  // namespace wtype
