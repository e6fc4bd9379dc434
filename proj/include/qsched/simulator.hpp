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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsched/circuit.hpp"
#include "qsched/counts.hpp"

namespace qsched {

inline constexpr std::size_t kSimulatorMaxQubits = 24;

// Stochastic Pauli noise. After every unitary gate each touched qubit receives
// X, Y or Z (uniformly) with probability depolarizing_prob; every measured bit
// is flipped with probability readout_flip_prob.
struct NoiseConfig {
  double depolarizing_prob = 0.0;
  double readout_flip_prob = 0.0;

  bool is_zero() const noexcept { return depolarizing_prob == 0.0 && readout_flip_prob == 0.0; }
  // Throws Error(InvalidArgument) unless both probabilities lie in [0, 1].
  void validate() const;
};

struct BackendDescriptor {
  std::string name;
  std::size_t max_qubits = kSimulatorMaxQubits;
  std::optional<NoiseConfig> noise;
  bool seedable = true;
};

using Amplitude = std::complex<double>;

// Dense state over N qubits. Bit i of a basis index is qubit i.
class StateVector {
 public:
  explicit StateVector(std::size_t num_qubits);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::span<const Amplitude> amplitudes() const& noexcept { return amps_; }
  std::vector<Amplitude> amplitudes() && noexcept { return std::move(amps_); }

  // Applies the unitary of `ins`; MEASURE and BARRIER are no-ops here.
  void apply(const Instruction& ins);
  // pauli: 1 = X, 2 = Y, 3 = Z.
  void apply_pauli(std::size_t qubit, int pauli);
  double norm_squared() const noexcept;

 private:
  void apply_matrix(std::size_t q, Amplitude m00, Amplitude m01, Amplitude m10, Amplitude m11);
  void apply_phase(std::size_t q, Amplitude phase0, Amplitude phase1);

  std::size_t num_qubits_;
  std::vector<Amplitude> amps_;
};

// Probabilities over classical registers. Bit i of an index is clbit i;
// clbits that no MEASURE writes are always 0.
struct ProbabilityVector {
  std::size_t num_bits = 0;
  std::vector<double> p;

  // Keyed by bitstring (clbit 0 leftmost); entries <= cutoff are dropped.
  std::map<std::string, double> to_map(double cutoff = 0.0) const;
};

// Renders an index with bit i as character i.
std::string index_to_key(std::uint64_t index, std::size_t num_bits);
std::uint64_t key_to_index(std::string_view key);

// Evolves |0...0> through every unitary instruction in order.
// Throws Error(CapacityExceeded) above max_qubits.
StateVector statevector(const Circuit& circuit, std::size_t max_qubits = kSimulatorMaxQubits);

// Exact outcome distribution of the measured clbits. Measurements must be
// terminal on their qubit (no later gate may touch a measured qubit).
ProbabilityVector probabilities(const Circuit& circuit,
                                std::size_t max_qubits = kSimulatorMaxQubits);

// Samples `shots` outcomes. Shot k draws its outcome from the stream
// derive(seed, kOutcomeStream, k), its Pauli insertions from kNoiseStream and
// its readout flips from kReadoutStream, so results do not depend on how the
// work is grouped and a zero noise config reproduces the noiseless counts.
// Without a seed one is taken from std::random_device.
CountsDistribution execute(const Circuit& circuit, std::uint64_t shots,
                           std::optional<std::uint64_t> seed = std::nullopt,
                           std::optional<NoiseConfig> noise = std::nullopt,
                           std::size_t max_qubits = kSimulatorMaxQubits);

// Contract for anything that can run a circuit. Adapters for remote providers
// must return keys in this library's bit order (clbit 0 leftmost).
class Backend {
 public:
  virtual ~Backend() = default;
  virtual BackendDescriptor descriptor() const = 0;
  virtual CountsDistribution execute(const Circuit& circuit, std::uint64_t shots,
                                     std::optional<std::uint64_t> seed,
                                     std::optional<NoiseConfig> noise) const = 0;
};

class StatevectorSimulator final : public Backend {
 public:
  explicit StatevectorSimulator(std::size_t max_qubits = kSimulatorMaxQubits,
                                std::optional<NoiseConfig> default_noise = std::nullopt,
                                std::string name = "statevector_simulator");

  BackendDescriptor descriptor() const override;
  // `noise` overrides the default noise given at construction.
  CountsDistribution execute(const Circuit& circuit, std::uint64_t shots,
                             std::optional<std::uint64_t> seed,
                             std::optional<NoiseConfig> noise) const override;

 private:
  BackendDescriptor descriptor_;
};

}  // namespace qsched
