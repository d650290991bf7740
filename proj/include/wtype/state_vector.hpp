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

// Exact pure-state simulator used as an oracle for the parameter-space
// calculus. Party 0 is the most significant bit of an amplitude index.

#ifndef WTYPE_STATE_VECTOR_HPP
#define WTYPE_STATE_VECTOR_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wtype/kraus.hpp"
#include "wtype/param_vector.hpp"
#include "wtype/protocol.hpp"

namespace wtype {

inline constexpr std::size_t kMaxParties = 14;

class PureState {
 public:
  /// Throws std::invalid_argument unless 3 <= parties <= kMaxParties, the
  /// amplitude count is 2^parties, and the norm is 1 within 1e-12.
  PureState(std::size_t parties, std::vector<cplx> amplitudes);

  /// Same checks, but rescales any nonzero vector to unit norm.
  static PureState normalized(std::size_t parties, std::vector<cplx> amplitudes);

  std::size_t parties() const { return parties_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx operator[](std::size_t index) const { return amps_[index]; }

  /// Bit mask of party k inside an amplitude index.
  std::size_t party_mask(std::size_t k) const {
    return std::size_t{1} << (parties_ - 1 - k);
  }

 private:
  PureState() = default;

  std::size_t parties_ = 0;
  std::vector<cplx> amps_;
};

PureState build_state(const ParamVector& x);

struct LocalOutcome {
  double probability = 0.0;
  std::optional<PureState> state;  // empty for a zero-probability branch
};

LocalOutcome apply_local(const PureState& state, std::size_t k, const KrausOp& m);

/// Unnormalized image (M_k (x) 1)|state>.
std::vector<cplx> apply_local_raw(std::span<const cplx> amps, std::size_t parties,
                                  std::size_t k, const Eigen::Matrix2cd& m);

/// Partial trace onto the listed parties. The first listed party is the most
/// significant bit of the reduced index.
Eigen::MatrixXcd reduced_density(const PureState& state,
                                 std::span<const std::size_t> subset);

/// 2 sqrt(l1 l2) from the two largest eigenvalues of the reduced state.
/// Throws NotWTypeError if the reduced state has rank above two.
double concurrence_from_state(const PureState& state,
                              std::span<const std::size_t> subset);

struct QubitBasis {
  Eigen::Vector2cd alpha;
  Eigen::Vector2cd beta;
};

using LocalBasis = std::vector<QubitBasis>;

struct Extraction {
  ParamVector x;
  LocalBasis basis;
  double overlap = 0.0;  // |<state| U_1 (x) ... (x) U_p |Phi(x)>|
};

/// Parameter vector and local bases of a W-type state. Bipartite states get
/// the balanced representative. Throws NotWTypeError.
Extraction extract_params(const PureState& state);

struct ProductInKernel {
  Eigen::Vector4cd vector;  // normalized product vector in the kernel
  Eigen::Vector2cd left;    // vector = left (x) right
  Eigen::Vector2cd right;
  bool degenerate = false;  // the kernel holds more than one product direction
};

/// Product vector inside the two-dimensional kernel of a two-qubit density
/// matrix. Throws NotWTypeError when the kernel dimension is not two.
ProductInKernel find_product_in_kernel(const Eigen::Matrix4cd& rho);

struct ExecutionLeaf {
  std::vector<std::size_t> path;  // operator index chosen at each step
  Disposition disposition = Disposition::kSuccess;
  double probability = 0.0;       // exact (exhaustive) or observed frequency
  std::size_t count = 0;          // sampled mode only
  double standard_error = 0.0;    // sampled mode only
  std::optional<ParamVector> x;   // empty if extraction failed
};

struct MonotoneAudit {
  std::vector<double> averaged;  // sum P x'
  std::vector<double> slack;     // x - averaged
  bool ok = false;
};

struct ExecutionReport {
  bool sampled = false;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<ExecutionLeaf> leaves;
  double success_probability = 0.0;
  double fail_probability = 0.0;
  double success_standard_error = 0.0;
  MonotoneAudit audit;
};

struct Exhaustive {};
struct Sampled {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

/// Runs a protocol on the state. Exhaustive mode enumerates every branch
/// depth-first; sampled mode draws independent trajectories, trial i from a
/// generator seeded by (seed, i). Throws DomainError for malformed protocols.
ExecutionReport run_protocol(const PureState& state, const Protocol& protocol,
                             Exhaustive mode = {});
ExecutionReport run_protocol(const PureState& state, const Protocol& protocol,
                             Sampled mode);

}  // namespace wtype

#endif  // WTYPE_STATE_VECTOR_HPP
