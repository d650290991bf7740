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
#include <utility>

#include "wtype/errors.hpp"
#include "wtype/state_vector.hpp"
#include "wtype/tolerance.hpp"

namespace wtype {
namespace {

constexpr double kAuditSlack = 1e-10;
constexpr double kSampledSigmas = 4.0;

using Path = std::vector<std::size_t>;

PureState apply_corrections(PureState state, const ProtocolStep& step, std::size_t j) {
  if (step.corrections.empty()) return state;
  for (const LocalCorrection& c : step.corrections[j]) {
    std::vector<cplx> amps =
        apply_local_raw(state.amplitudes(), state.parties(), c.party, c.unitary.matrix());
    state = PureState::normalized(state.parties(), std::move(amps));
  }
  return state;
}

std::optional<ParamVector> try_extract(const PureState& s) {
  try {
    return extract_params(s).x;
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// Children of one protocol node: conditional probability and post-state.
struct Branch {
  double probability = 0.0;
  std::optional<PureState> state;
};

std::vector<Branch> expand(const PureState& s, const ProtocolStep& step) {
  std::vector<Branch> out;
  out.reserve(step.ops.size());
  for (std::size_t j = 0; j < step.ops.size(); ++j) {
    LocalOutcome o = apply_local(s, step.party, step.ops[j]);
    if (o.state) o.state = apply_corrections(std::move(*o.state), step, j);
    out.push_back({o.probability, std::move(o.state)});
  }
  return out;
}

void descend(const PureState& s, const Protocol& protocol, std::size_t step, Path& path,
             double prob, std::vector<ExecutionLeaf>& leaves) {
  if (step == protocol.steps.size()) {
    leaves.push_back({path, Disposition::kSuccess, prob, 0, 0.0, try_extract(s)});
    return;
  }
  const ProtocolStep& st = protocol.steps[step];
  std::vector<Branch> branches = expand(s, st);
  for (std::size_t j = 0; j < branches.size(); ++j) {
    if (!branches[j].state) continue;
    const double p = prob * branches[j].probability;
    path.push_back(j);
    if (st.dispositions[j] == Disposition::kContinue) {
      descend(*branches[j].state, protocol, step + 1, path, p, leaves);
    } else {
      std::optional<ParamVector> x;
      if (st.dispositions[j] == Disposition::kSuccess) x = try_extract(*branches[j].state);
      leaves.push_back({path, st.dispositions[j], p, 0, 0.0, std::move(x)});
    }
    path.pop_back();
  }
}

// Representative x' of each leaf for the monotone audit. Bipartite leaves
// on a common pair are placed on the source's remaining budget.
MonotoneAudit audit(const std::optional<ParamVector>& source,
                    const std::vector<ExecutionLeaf>& leaves, std::size_t trials) {
  MonotoneAudit a;
  if (!source) return a;
  const std::size_t p = source->parties();
  a.averaged.assign(p, 0.0);
  std::vector<double> second(p, 0.0);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<double, double>>> pairs;
  for (const ExecutionLeaf& leaf : leaves) {
    if (!leaf.x) continue;
    const EntClass c = classify(*leaf.x);
    if (c.kind == EntClass::Kind::kTrulyMultipartite) {
      for (std::size_t k = 0; k < p; ++k) {
        a.averaged[k] += leaf.probability * (*leaf.x)[k];
        second[k] += leaf.probability * (*leaf.x)[k] * (*leaf.x)[k];
      }
    } else if (c.kind == EntClass::Kind::kBipartite) {
      pairs[{c.r, c.s}].emplace_back(leaf.probability, pair_product(*leaf.x, c.r, c.s));
    }
  }
  for (const auto& [rs, group] : pairs) {
    const auto [r, s] = rs;
    const double br = (*source)[r] - a.averaged[r];
    const double bs = (*source)[s] - a.averaged[s];
    const double kappa = br > 0.0 && bs > 0.0 ? std::sqrt(br / bs) : 1.0;
    for (const auto& [prob, product] : group) {
      const double root = std::sqrt(product);
      a.averaged[r] += prob * kappa * root;
      a.averaged[s] += prob * root / kappa;
      second[r] += prob * kappa * kappa * product;
      second[s] += prob * product / (kappa * kappa);
    }
  }
  a.slack.resize(p);
  a.ok = true;
  for (std::size_t k = 0; k < p; ++k) {
    a.slack[k] = (*source)[k] - a.averaged[k];
    double allowed = kAuditSlack;
    if (trials > 0) {
      const double var = std::max(0.0, second[k] - a.averaged[k] * a.averaged[k]);
      allowed += kSampledSigmas * std::sqrt(var / static_cast<double>(trials));
    }
    if (a.slack[k] < -allowed) a.ok = false;
  }
  return a;
}

void summarize(ExecutionReport& report, const std::optional<ParamVector>& source) {
  for (const ExecutionLeaf& leaf : report.leaves) {
    if (leaf.disposition == Disposition::kSuccess) report.success_probability += leaf.probability;
    if (leaf.disposition == Disposition::kFail) report.fail_probability += leaf.probability;
  }
  if (report.sampled && report.trials > 0) {
    const double f = report.success_probability;
    report.success_standard_error = std::sqrt(f * (1.0 - f) / static_cast<double>(report.trials));
  }
  report.audit = audit(source, report.leaves, report.sampled ? report.trials : 0);
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

ExecutionReport run_protocol(const PureState& state, const Protocol& protocol, Exhaustive) {
  protocol.check(state.parties());
  ExecutionReport report;
  Path path;
  descend(state, protocol, 0, path, 1.0, report.leaves);
  summarize(report, try_extract(state));
  return report;
}

ExecutionReport run_protocol(const PureState& state, const Protocol& protocol, Sampled mode) {
  if (mode.trials == 0) throw std::invalid_argument("sampled mode needs at least one trial");
  protocol.check(state.parties());

  struct Node {
    std::vector<Branch> branches;
  };
  std::map<Path, Node> nodes;
  struct Tally {
    Disposition disposition = Disposition::kSuccess;
    std::size_t count = 0;
    const PureState* state = nullptr;
  };
  std::map<Path, Tally> tallies;

  for (std::size_t t = 0; t < mode.trials; ++t) {
    std::mt19937_64 gen = trial_engine(mode.seed, t);
    Path path;
    const PureState* current = &state;
    Disposition outcome = Disposition::kSuccess;
    for (std::size_t step = 0; step < protocol.steps.size(); ++step) {
      const ProtocolStep& st = protocol.steps[step];
      auto it = nodes.find(path);
      if (it == nodes.end()) it = nodes.emplace(path, Node{expand(*current, st)}).first;
      const std::vector<Branch>& br = it->second.branches;
      double total = 0.0;
      for (const Branch& b : br) total += b.state ? b.probability : 0.0;
      if (!(total > 0.0)) throw NumericError("protocol node has no reachable outcome");
      const double u = uniform01(gen) * total;
      std::size_t pick = br.size();
      double acc = 0.0;
      for (std::size_t j = 0; j < br.size(); ++j) {
        if (!br[j].state) continue;
        pick = j;
        acc += br[j].probability;
        if (u < acc) break;
      }
      path.push_back(pick);
      current = &*br[pick].state;
      outcome = st.dispositions[pick];
      if (outcome != Disposition::kContinue) break;
      outcome = Disposition::kSuccess;
    }
    Tally& tally = tallies[path];
    tally.disposition = outcome;
    tally.state = current;
    ++tally.count;
  }

  ExecutionReport report;
  report.sampled = true;
  report.trials = mode.trials;
  report.seed = mode.seed;
  const double n = static_cast<double>(mode.trials);
  for (const auto& [path, tally] : tallies) {
    const double f = static_cast<double>(tally.count) / n;
    std::optional<ParamVector> x;
    if (tally.disposition == Disposition::kSuccess) x = try_extract(*tally.state);
    report.leaves.push_back(
        {path, tally.disposition, f, tally.count, std::sqrt(f * (1.0 - f) / n), std::move(x)});
  }
  summarize(report, try_extract(state));
  return report;
}

}  // namespace wtype
