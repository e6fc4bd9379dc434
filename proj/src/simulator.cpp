// Copyright 2026 The qsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsched/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "qsched/error.hpp"
#include "qsched/rng.hpp"

namespace qsched {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr Amplitude kI{0.0, 1.0};

void check_capacity(const Circuit& circuit, std::size_t max_qubits) {
  if (circuit.num_qubits > max_qubits) {
    throw Error(ErrorCode::CapacityExceeded,
                "circuit '" + circuit.name + "' needs " + std::to_string(circuit.num_qubits) +
                    " qubits, simulator maximum is " + std::to_string(max_qubits),
                std::to_string(max_qubits));
  }
}

struct MeasureMap {
  // (qubit, clbit) pairs in program order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Validates terminal measurement and collects the qubit -> clbit map.
MeasureMap measure_map(const Circuit& circuit) {
  MeasureMap map;
  std::vector<bool> measured(circuit.num_qubits, false);
  for (const Instruction& ins : circuit.instructions) {
    if (ins.kind == GateKind::MEASURE) {
      measured[ins.qubits[0]] = true;
      map.pairs.emplace_back(ins.qubits[0], *ins.clbit);
    } else if (is_unitary(ins.kind)) {
      for (std::size_t q : ins.qubits) {
        if (measured[q]) {
          throw Error(ErrorCode::Validation,
                      "circuit '" + circuit.name + "': gate " +
                          std::string(gate_name(ins.kind)) + " acts on qubit " +
                          std::to_string(q) + " after it was measured");
        }
      }
    }
  }
  return map;
}

std::string outcome_key(std::uint64_t basis, const MeasureMap& map, std::size_t num_clbits) {
  std::string key(num_clbits, '0');
  for (const auto& [q, c] : map.pairs) {
    if ((basis >> q) & 1u) key[c] = '1';
  }
  return key;
}

// Cumulative |amplitude|^2 over basis indices.
std::vector<double> cumulative(const StateVector& state) {
  std::vector<double> cdf;
  cdf.reserve(state.amplitudes().size());
  double acc = 0.0;
  for (const Amplitude& a : state.amplitudes()) {
    acc += std::norm(a);
    cdf.push_back(acc);
  }
  return cdf;
}

std::uint64_t pick(const std::vector<double>& cdf, double u) {
  const double x = u * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
      it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

void flip_readout(std::string& key, const MeasureMap& map, double prob, std::uint64_t seed,
                  std::uint64_t shot) {
  if (prob <= 0.0) return;
  rng::SplitMix64 gen(rng::derive(seed, rng::kReadoutStream, shot));
  for (const auto& [q, c] : map.pairs) {
    if (gen.uniform() < prob) key[c] = key[c] == '0' ? '1' : '0';
  }
}

// One Pauli insertion: after unitary number `step`, on `qubit`.
struct PauliError {
  std::size_t step;
  std::size_t qubit;
  int pauli;
  auto operator<=>(const PauliError&) const = default;
};

}  // namespace

void NoiseConfig::validate() const {
  auto bad = [](double p) { return !(p >= 0.0 && p <= 1.0); };
  if (bad(depolarizing_prob) || bad(readout_flip_prob)) {
    throw Error(ErrorCode::InvalidArgument, "noise probabilities must lie in [0, 1]");
  }
}

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0}) {
  amps_[0] = 1.0;
}

void StateVector::apply_matrix(std::size_t q, Amplitude m00, Amplitude m01, Amplitude m10,
                               Amplitude m11) {
  const std::size_t mask = std::size_t{1} << q;
  const std::size_t dim = amps_.size();
  for (std::size_t hi = 0; hi < dim; hi += 2 * mask) {
    for (std::size_t i0 = hi; i0 < hi + mask; ++i0) {
      const Amplitude a0 = amps_[i0];
      const Amplitude a1 = amps_[i0 + mask];
      amps_[i0] = m00 * a0 + m01 * a1;
      amps_[i0 + mask] = m10 * a0 + m11 * a1;
    }
  }
}

void StateVector::apply_phase(std::size_t q, Amplitude phase0, Amplitude phase1) {
  const std::size_t mask = std::size_t{1} << q;
  const std::size_t dim = amps_.size();
  const bool touch0 = phase0 != Amplitude{1.0, 0.0};
  for (std::size_t hi = 0; hi < dim; hi += 2 * mask) {
    for (std::size_t i0 = hi; i0 < hi + mask; ++i0) {
      if (touch0) amps_[i0] *= phase0;
      amps_[i0 + mask] *= phase1;
    }
  }
}

void StateVector::apply_pauli(std::size_t qubit, int pauli) {
  switch (pauli) {
    case 1: apply({GateKind::X, {qubit}, {}, std::nullopt}); break;
    case 2: apply({GateKind::Y, {qubit}, {}, std::nullopt}); break;
    case 3: apply({GateKind::Z, {qubit}, {}, std::nullopt}); break;
    default: throw Error(ErrorCode::Internal, "bad Pauli index");
  }
}

void StateVector::apply(const Instruction& ins) {
  const std::size_t dim = amps_.size();
  const auto& qs = ins.qubits;
  switch (ins.kind) {
    case GateKind::H:
      apply_matrix(qs[0], kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
      break;
    case GateKind::X: {
      const std::size_t mask = std::size_t{1} << qs[0];
      for (std::size_t i = 0; i < dim; ++i) {
        if (!(i & mask)) std::swap(amps_[i], amps_[i | mask]);
      }
      break;
    }
    case GateKind::Y:
      apply_matrix(qs[0], 0.0, -kI, kI, 0.0);
      break;
    case GateKind::Z:
      apply_phase(qs[0], 1.0, -1.0);
      break;
    case GateKind::S:
      apply_phase(qs[0], 1.0, kI);
      break;
    case GateKind::SDG:
      apply_phase(qs[0], 1.0, -kI);
      break;
    case GateKind::T:
      apply_phase(qs[0], 1.0, std::polar(1.0, std::numbers::pi / 4));
      break;
    case GateKind::TDG:
      apply_phase(qs[0], 1.0, std::polar(1.0, -std::numbers::pi / 4));
      break;
    case GateKind::RX: {
      const double c = std::cos(ins.params[0] / 2), s = std::sin(ins.params[0] / 2);
      apply_matrix(qs[0], c, -kI * s, -kI * s, c);
      break;
    }
    case GateKind::RY: {
      const double c = std::cos(ins.params[0] / 2), s = std::sin(ins.params[0] / 2);
      apply_matrix(qs[0], c, -s, s, c);
      break;
    }
    case GateKind::RZ:
      apply_phase(qs[0], std::polar(1.0, -ins.params[0] / 2), std::polar(1.0, ins.params[0] / 2));
      break;
    case GateKind::CX: {
      const std::size_t c = std::size_t{1} << qs[0], t = std::size_t{1} << qs[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
      }
      break;
    }
    case GateKind::CZ: {
      const std::size_t both = (std::size_t{1} << qs[0]) | (std::size_t{1} << qs[1]);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & both) == both) amps_[i] = -amps_[i];
      }
      break;
    }
    case GateKind::SWAP: {
      const std::size_t a = std::size_t{1} << qs[0], b = std::size_t{1} << qs[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & a) && !(i & b)) std::swap(amps_[i], amps_[(i ^ a) | b]);
      }
      break;
    }
    case GateKind::CCX: {
      const std::size_t c = (std::size_t{1} << qs[0]) | (std::size_t{1} << qs[1]);
      const std::size_t t = std::size_t{1} << qs[2];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) == c && !(i & t)) std::swap(amps_[i], amps_[i | t]);
      }
      break;
    }
    case GateKind::MEASURE:
    case GateKind::BARRIER:
      break;
  }
}

double StateVector::norm_squared() const noexcept {
  double acc = 0.0;
  for (const Amplitude& a : amps_) acc += std::norm(a);
  return acc;
}

std::map<std::string, double> ProbabilityVector::to_map(double cutoff) const {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > cutoff) out.emplace(index_to_key(i, num_bits), p[i]);
  }
  return out;
}

std::string index_to_key(std::uint64_t index, std::size_t num_bits) {
  std::string key(num_bits, '0');
  for (std::size_t i = 0; i < num_bits && i < 64; ++i) {
    if ((index >> i) & 1u) key[i] = '1';
  }
  return key;
}

std::uint64_t key_to_index(std::string_view key) {
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < key.size() && i < 64; ++i) {
    if (key[i] == '1') index |= std::uint64_t{1} << i;
  }
  return index;
}

StateVector statevector(const Circuit& circuit, std::size_t max_qubits) {
  check_capacity(circuit, max_qubits);
  StateVector state(circuit.num_qubits);
  for (const Instruction& ins : circuit.instructions) state.apply(ins);
  return state;
}

ProbabilityVector probabilities(const Circuit& circuit, std::size_t max_qubits) {
  check_capacity(circuit, max_qubits);
  if (circuit.num_clbits > max_qubits) {
    throw Error(ErrorCode::CapacityExceeded, "too many classical bits for a dense vector");
  }
  const MeasureMap map = measure_map(circuit);
  const StateVector state = statevector(circuit, max_qubits);
  ProbabilityVector out;
  out.num_bits = circuit.num_clbits;
  out.p.assign(std::size_t{1} << circuit.num_clbits, 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    std::size_t index = 0;
    for (const auto& [q, c] : map.pairs) {
      if ((b >> q) & 1u) index |= std::size_t{1} << c;
    }
    out.p[index] += std::norm(amps[b]);
  }
  return out;
}

CountsDistribution execute(const Circuit& circuit, std::uint64_t shots,
                           std::optional<std::uint64_t> seed, std::optional<NoiseConfig> noise,
                           std::size_t max_qubits) {
  if (shots == 0) throw Error(ErrorCode::InvalidShots, "shots must be at least 1");
  check_capacity(circuit, max_qubits);
  validate(circuit, max_qubits);
  if (noise) noise->validate();
  const MeasureMap map = measure_map(circuit);
  const std::uint64_t base = seed ? *seed : (std::uint64_t{std::random_device{}()} << 32) ^
                                                std::random_device{}();

  std::vector<const Instruction*> unitaries;
  for (const Instruction& ins : circuit.instructions) {
    if (is_unitary(ins.kind)) unitaries.push_back(&ins);
  }
  const double depol = noise ? noise->depolarizing_prob : 0.0;
  const double readout = noise ? noise->readout_flip_prob : 0.0;

  // Error pattern per shot, grouped so that each distinct pattern is simulated once.
  std::map<std::vector<PauliError>, std::vector<std::uint64_t>> groups;
  for (std::uint64_t k = 0; k < shots; ++k) {
    std::vector<PauliError> pattern;
    if (depol > 0.0) {
      rng::SplitMix64 gen(rng::derive(base, rng::kNoiseStream, k));
      for (std::size_t step = 0; step < unitaries.size(); ++step) {
        for (std::size_t q : unitaries[step]->qubits) {
          if (gen.uniform() < depol) {
            pattern.push_back({step, q, static_cast<int>(gen.below(3)) + 1});
          }
        }
      }
    }
    groups[std::move(pattern)].push_back(k);
  }

  // Noiseless checkpoints: snapshot i holds the state after i unitaries.
  // Snapshots are kept every `stride` steps within a fixed memory budget.
  constexpr std::size_t kCheckpointBudgetBytes = std::size_t{64} << 20;
  const std::size_t state_bytes = (std::size_t{1} << circuit.num_qubits) * sizeof(Amplitude);
  const std::size_t slots = std::max<std::size_t>(1, kCheckpointBudgetBytes / state_bytes);
  const std::size_t stride =
      groups.size() > 1 ? std::max<std::size_t>(1, (unitaries.size() + slots) / slots)
                        : unitaries.size() + 1;
  std::vector<std::pair<std::size_t, StateVector>> checkpoints;
  StateVector ideal(circuit.num_qubits);
  for (std::size_t step = 0; step <= unitaries.size(); ++step) {
    if (step % stride == 0) checkpoints.emplace_back(step, ideal);
    if (step < unitaries.size()) ideal.apply(*unitaries[step]);
  }

  CountsDistribution out;
  out.num_bits = circuit.num_clbits;
  out.total_shots = shots;
  for (const auto& [pattern, members] : groups) {
    const StateVector* final_state = &ideal;
    StateVector noisy(0);
    if (!pattern.empty()) {
      const std::size_t first = pattern.front().step;
      auto cp = std::upper_bound(checkpoints.begin(), checkpoints.end(), first,
                                 [](std::size_t v, const auto& c) { return v < c.first; });
      --cp;
      noisy = cp->second;
      auto err = pattern.begin();
      for (std::size_t step = cp->first; step < unitaries.size(); ++step) {
        noisy.apply(*unitaries[step]);
        for (; err != pattern.end() && err->step == step; ++err) {
          noisy.apply_pauli(err->qubit, err->pauli);
        }
      }
      final_state = &noisy;
    }
    const std::vector<double> cdf = cumulative(*final_state);
    for (std::uint64_t k : members) {
      rng::SplitMix64 gen(rng::derive(base, rng::kOutcomeStream, k));
      std::string key = outcome_key(pick(cdf, gen.uniform()), map, circuit.num_clbits);
      flip_readout(key, map, readout, base, k);
      ++out.counts[key];
    }
  }
  return out;
}

StatevectorSimulator::StatevectorSimulator(std::size_t max_qubits,
                                           std::optional<NoiseConfig> default_noise,
                                           std::string name)
    : descriptor_{std::move(name), max_qubits, default_noise, true} {
  if (max_qubits < 1) throw Error(ErrorCode::InvalidArgument, "max_qubits must be >= 1");
  if (default_noise) default_noise->validate();
}

BackendDescriptor StatevectorSimulator::descriptor() const { return descriptor_; }

CountsDistribution StatevectorSimulator::execute(const Circuit& circuit, std::uint64_t shots,
                                                 std::optional<std::uint64_t> seed,
                                                 std::optional<NoiseConfig> noise) const {
  return qsched::execute(circuit, shots, seed, noise ? noise : descriptor_.noise,
                         descriptor_.max_qubits);
}

}  // namespace qsched
