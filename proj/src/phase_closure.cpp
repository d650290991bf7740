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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wtype/errors.hpp"
#include "wtype/local_ops.hpp"

namespace wtype {

// Chain closure: edges are laid down in descending order of length. Before
// placing edge j the walk sits at distance d from the target with
// d <= R_j (length still to place) and m_j <= d + R_{j+1}. The new distance
// d' = max(|d - m_j|, m_{j+1} - R_{j+2}) keeps both invariants, so the last
// edge lands exactly on the target.
PhaseClosure solve_phase_closure(std::span<const double> moduli, double target) {
  if (!std::isfinite(target) || target < 0.0) {
    throw std::invalid_argument("closure target must be finite and nonnegative");
  }
  for (double m : moduli) {
    if (!std::isfinite(m) || m < 0.0) {
      throw std::invalid_argument("moduli must be finite and nonnegative");
    }
  }
  const double total = std::accumulate(moduli.begin(), moduli.end(), 0.0);
  if (target > total * (1.0 + 1e-14)) {
    throw InfeasibleError("closure target " + std::to_string(target) +
                          " exceeds the sum of moduli " + std::to_string(total));
  }
  target = std::min(target, total);

  std::vector<double> length(moduli.begin(), moduli.end());
  std::vector<std::size_t> source(moduli.size());
  std::iota(source.begin(), source.end(), std::size_t{0});

  // Split the longest edge while it cannot be closed by the others.
  for (int guard = 0; guard < 64 && !length.empty(); ++guard) {
    const auto longest = std::max_element(length.begin(), length.end());
    const double rest = total - *longest;
    if (*longest <= target + rest) break;
    const auto pos = static_cast<std::size_t>(longest - length.begin());
    const double half = *longest / 2.0;
    length[pos] = half;
    length.insert(length.begin() + static_cast<std::ptrdiff_t>(pos) + 1, half);
    source.insert(source.begin() + static_cast<std::ptrdiff_t>(pos) + 1, source[pos]);
  }

  const std::size_t n = length.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return length[a] > length[b]; });

  // remaining[j] = sum of sorted lengths from position j on.
  std::vector<double> remaining(n + 1, 0.0);
  for (std::size_t j = n; j-- > 0;) remaining[j] = remaining[j + 1] + length[order[j]];

  std::vector<double> phases(n, 0.0);
  cplx position = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double m = length[order[j]];
    const cplx gap = cplx(target, 0.0) - position;
    const double d = std::abs(gap);
    if (m == 0.0) continue;
    cplx edge;
    if (j + 1 == n) {
      edge = d > 0.0 ? gap * (m / d) : cplx(m, 0.0);
    } else if (d == 0.0) {
      edge = cplx(m, 0.0);
    } else {
      const double next = length[order[j + 1]];
      double d_new = std::max(std::abs(d - m), next - remaining[j + 2]);
      d_new = std::min({d_new, remaining[j + 1], d + m});
      // Intersection of |z| = m with |gap - z| = d_new, in gap-aligned frame.
      // Factored so that a vanishing d_new - |d - m| gives across = 0 exactly
      // instead of the square root of a rounding error.
      const double deficit =
          std::clamp((d_new - d + m) * (d_new + d - m) / (2.0 * d), 0.0, 2.0 * m);  // m - along
      const double along = m - deficit;
      const double across = std::sqrt(deficit * (2.0 * m - deficit));
      edge = cplx(along, across) * (gap / d);
    }
    phases[order[j]] = std::arg(edge);
    position += std::polar(m, phases[order[j]]);
  }

  if (std::abs(position - target) > 1e-10 * std::max(1.0, total)) {
    throw NumericError("phase closure missed its target by " +
                       std::to_string(std::abs(position - target)));
  }
  return {std::move(phases), std::move(source)};
}

}  // namespace wtype
