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

// Reference implementations used as test oracles. None of them call into the
// library code they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qsched/circuit.hpp"
#include "qsched/counts.hpp"

namespace qtest {

using cplx = std::complex<double>;

// FIFO first-fit written as a fold over the queue.
inline std::vector<std::size_t> reference_pack(const std::vector<std::size_t>& widths,
                                               std::size_t capacity) {
  std::vector<std::size_t> taken;
  std::size_t used = 0;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (used + widths[i] <= capacity) {
      taken.push_back(i);
      used += widths[i];
    }
  }
  return taken;
}

// Number of batches needed to drain `widths` when every batch is a fresh
// first-fit pass over what is left.
inline std::size_t reference_batch_count(std::vector<std::size_t> widths, std::size_t capacity) {
  std::size_t batches = 0;
  while (!widths.empty()) {
    const auto taken = reference_pack(widths, capacity);
    if (taken.empty()) return std::numeric_limits<std::size_t>::max();
    for (auto it = taken.rbegin(); it != taken.rend(); ++it) {
      widths.erase(widths.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    ++batches;
  }
  return batches;
}

inline std::string bits_of(std::uint64_t value, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if ((value >> i) & 1U) s[i] = '1';
  }
  return s;
}

// Marginal over [offset, offset + count): walks all 2^n composed keys, looks
// each one up and credits its count to the window substring.
inline std::map<std::string, std::uint64_t> brute_marginal(
    const std::map<std::string, std::uint64_t>& composed, std::size_t n, std::size_t offset,
    std::size_t count) {
  std::map<std::string, std::uint64_t> out;
  for (std::uint64_t full = 0; full < (1ULL << n); ++full) {
    const std::string key = bits_of(full, n);
    auto it = composed.find(key);
    if (it == composed.end() || it->second == 0) continue;
    out[key.substr(offset, count)] += it->second;
  }
  return out;
}

// Optimal transport between two histograms on the integer line, solved as a
// min-cost flow (successive shortest paths, Bellman-Ford on the residual
// graph). Supplies are scaled so both sides carry P.total * Q.total units.
// Returns W1 / (2^n - 1) with keys read as binary, first character most
// significant.
inline double transport_lp(const qsched::CountsDistribution& p,
                           const qsched::CountsDistribution& q) {
  auto value_of = [](const std::string& key) {
    std::int64_t v = 0;
    for (char ch : key) v = v * 2 + (ch == '1');
    return v;
  };
  std::vector<std::pair<std::int64_t, std::int64_t>> src, dst;  // (position, units)
  for (const auto& [k, c] : p.counts) {
    src.emplace_back(value_of(k), static_cast<std::int64_t>(c * q.total_shots));
  }
  for (const auto& [k, c] : q.counts) {
    dst.emplace_back(value_of(k), static_cast<std::int64_t>(c * p.total_shots));
  }
  const std::size_t S = src.size(), D = dst.size();
  const std::size_t source = S + D, sink = S + D + 1, V = S + D + 2;
  struct Edge {
    std::size_t to;
    std::int64_t cap, cost;
    std::size_t rev;
  };
  std::vector<std::vector<Edge>> g(V);
  auto add = [&](std::size_t a, std::size_t b, std::int64_t cap, std::int64_t cost) {
    g[a].push_back({b, cap, cost, g[b].size()});
    g[b].push_back({a, 0, -cost, g[a].size() - 1});
  };
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  for (std::size_t i = 0; i < S; ++i) add(source, i, src[i].second, 0);
  for (std::size_t j = 0; j < D; ++j) add(S + j, sink, dst[j].second, 0);
  for (std::size_t i = 0; i < S; ++i) {
    for (std::size_t j = 0; j < D; ++j) add(i, S + j, inf, std::llabs(src[i].first - dst[j].first));
  }
  long double cost = 0;
  while (true) {
    std::vector<std::int64_t> dist(V, inf);
    std::vector<std::pair<std::size_t, std::size_t>> prev(V, {V, 0});
    dist[source] = 0;
    for (std::size_t round = 0; round < V; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < V; ++u) {
        if (dist[u] == inf) continue;
        for (std::size_t e = 0; e < g[u].size(); ++e) {
          const Edge& ed = g[u][e];
          if (ed.cap > 0 && dist[u] + ed.cost < dist[ed.to]) {
            dist[ed.to] = dist[u] + ed.cost;
            prev[ed.to] = {u, e};
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[sink] == inf) break;
    std::int64_t push = inf;
    for (std::size_t v = sink; v != source; v = prev[v].first) {
      push = std::min(push, g[prev[v].first][prev[v].second].cap);
    }
    for (std::size_t v = sink; v != source; v = prev[v].first) {
      Edge& ed = g[prev[v].first][prev[v].second];
      ed.cap -= push;
      g[v][ed.rev].cap += push;
    }
    cost += static_cast<long double>(push) * dist[sink];
  }
  const long double units = static_cast<long double>(p.total_shots) * q.total_shots;
  return static_cast<double>(cost / units / static_cast<long double>((1ULL << p.num_bits) - 1));
}

// Hellinger straight from its textbook form.
inline double reference_hellinger(const qsched::CountsDistribution& p,
                                  const qsched::CountsDistribution& q) {
  std::map<std::string, std::pair<double, double>> joint;
  for (const auto& [k, c] : p.counts) joint[k].first = double(c) / double(p.total_shots);
  for (const auto& [k, c] : q.counts) joint[k].second = double(c) / double(q.total_shots);
  double bc = 0;
  for (const auto& [k, pq] : joint) bc += std::sqrt(pq.first * pq.second);
  return std::sqrt(std::max(0.0, 1.0 - bc));
}

// Dense-matrix simulator: each gate becomes a full 2^n x 2^n matrix built
// from Kronecker products (qubit 0 is the least significant tensor factor).
class KronSimulator {
 public:
  using Matrix = std::vector<std::vector<cplx>>;

  static Matrix identity(std::size_t d) {
    Matrix m(d, std::vector<cplx>(d));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
    return m;
  }
  static Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t ra = a.size(), rb = b.size();
    Matrix m(ra * rb, std::vector<cplx>(ra * rb));
    for (std::size_t i = 0; i < ra; ++i)
      for (std::size_t j = 0; j < ra; ++j)
        for (std::size_t k = 0; k < rb; ++k)
          for (std::size_t l = 0; l < rb; ++l) m[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
    return m;
  }
  static Matrix single(const Matrix& u, std::size_t q, std::size_t n) {
    Matrix m = identity(1);
    for (std::size_t k = n; k-- > 0;) m = kron(m, k == q ? u : identity(2));
    return m;
  }
  static Matrix add(const Matrix& a, const Matrix& b) {
    Matrix m = a;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) m[i][j] += b[i][j];
    return m;
  }
  static Matrix mul(const Matrix& a, const Matrix& b) {
    const std::size_t d = a.size();
    Matrix m(d, std::vector<cplx>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        if (a[i][k] == cplx{}) continue;
        for (std::size_t j = 0; j < d; ++j) m[i][j] += a[i][k] * b[k][j];
      }
    return m;
  }
  // |1><1| on `ctrl` times (u - 1) on `tgt`, plus identity.
  static Matrix controlled(const Matrix& u, std::size_t ctrl, std::size_t tgt, std::size_t n) {
    const Matrix p1 = {{0, 0}, {0, 1}};
    Matrix diff = u;
    diff[0][0] -= 1;
    diff[1][1] -= 1;
    return add(identity(1ULL << n), mul(single(p1, ctrl, n), single(diff, tgt, n)));
  }

  static Matrix gate_matrix(const qsched::Instruction& ins, std::size_t n) {
    using qsched::GateKind;
    const double r = 1 / std::sqrt(2.0);
    const cplx i1{0, 1};
    auto one = [&](const Matrix& u) { return single(u, ins.qubits[0], n); };
    const Matrix X = {{0, 1}, {1, 0}};
    const Matrix Z = {{1, 0}, {0, -1}};
    switch (ins.kind) {
      case GateKind::H: return one({{r, r}, {r, -r}});
      case GateKind::X: return one(X);
      case GateKind::Y: return one({{0, -i1}, {i1, 0}});
      case GateKind::Z: return one(Z);
      case GateKind::S: return one({{1, 0}, {0, i1}});
      case GateKind::SDG: return one({{1, 0}, {0, -i1}});
      case GateKind::T: return one({{1, 0}, {0, std::exp(i1 * (std::numbers::pi / 4))}});
      case GateKind::TDG: return one({{1, 0}, {0, std::exp(-i1 * (std::numbers::pi / 4))}});
      case GateKind::RX: {
        const double t = ins.params[0];
        return one({{std::cos(t / 2), -i1 * std::sin(t / 2)}, {-i1 * std::sin(t / 2), std::cos(t / 2)}});
      }
      case GateKind::RY: {
        const double t = ins.params[0];
        return one({{std::cos(t / 2), -std::sin(t / 2)}, {std::sin(t / 2), std::cos(t / 2)}});
      }
      case GateKind::RZ: {
        const double t = ins.params[0];
        return one({{std::exp(-i1 * (t / 2)), 0}, {0, std::exp(i1 * (t / 2))}});
      }
      case GateKind::CX: return controlled(X, ins.qubits[0], ins.qubits[1], n);
      case GateKind::CZ: return controlled(Z, ins.qubits[0], ins.qubits[1], n);
      case GateKind::SWAP: {
        const std::size_t a = ins.qubits[0], b = ins.qubits[1];
        return mul(controlled(X, a, b, n), mul(controlled(X, b, a, n), controlled(X, a, b, n)));
      }
      case GateKind::CCX: {
        // Permutation matrix on the basis.
        const std::size_t d = 1ULL << n;
        Matrix m(d, std::vector<cplx>(d));
        for (std::size_t k = 0; k < d; ++k) {
          const bool on = ((k >> ins.qubits[0]) & 1U) && ((k >> ins.qubits[1]) & 1U);
          m[on ? k ^ (1ULL << ins.qubits[2]) : k][k] = 1;
        }
        return m;
      }
      default: return identity(1ULL << n);
    }
  }

  static std::vector<cplx> run(const qsched::Circuit& c) {
    const std::size_t d = 1ULL << c.num_qubits;
    std::vector<cplx> psi(d);
    psi[0] = 1;
    for (const auto& ins : c.instructions) {
      if (!qsched::is_unitary(ins.kind)) continue;
      const Matrix m = gate_matrix(ins, c.num_qubits);
      std::vector<cplx> next(d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) next[i] += m[i][j] * psi[j];
      psi = std::move(next);
    }
    return psi;
  }

  // Outcome probabilities keyed by clbit string (character i = clbit i).
  static std::map<std::string, double> probabilities(const qsched::Circuit& c) {
    const auto psi = run(c);
    std::map<std::string, double> out;
    for (std::size_t k = 0; k < psi.size(); ++k) {
      std::string key(c.num_clbits, '0');
      for (const auto& ins : c.instructions) {
        if (ins.kind == qsched::GateKind::MEASURE && ((k >> ins.qubits[0]) & 1U)) {
          key[*ins.clbit] = '1';
        }
      }
      out[key] += std::norm(psi[k]);
    }
    return out;
  }
};

// Random unitary body on n qubits followed by terminal measurements of a
// random subset of qubits into distinct random clbits.
inline qsched::Circuit random_circuit(std::mt19937_64& rng, std::size_t n, std::size_t gates,
                                      bool measure_all = false) {
  using qsched::GateKind;
  qsched::Circuit c;
  c.num_qubits = n;
  std::vector<GateKind> kinds = {GateKind::H,  GateKind::X,  GateKind::Y,   GateKind::Z,
                                 GateKind::S,  GateKind::SDG, GateKind::T,  GateKind::TDG,
                                 GateKind::RX, GateKind::RY, GateKind::RZ};
  if (n >= 2) {
    kinds.insert(kinds.end(), {GateKind::CX, GateKind::CZ, GateKind::SWAP});
  }
  if (n >= 3) kinds.push_back(GateKind::CCX);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (std::size_t g = 0; g < gates; ++g) {
    qsched::Instruction ins;
    ins.kind = kinds[rng() % kinds.size()];
    std::vector<std::size_t> qs(n);
    std::iota(qs.begin(), qs.end(), 0);
    std::shuffle(qs.begin(), qs.end(), rng);
    qs.resize(qsched::gate_arity(ins.kind));
    ins.qubits = qs;
    for (std::size_t p = 0; p < qsched::gate_param_count(ins.kind); ++p) {
      ins.params.push_back(angle(rng));
    }
    c.instructions.push_back(ins);
  }
  std::vector<std::size_t> measured(n);
  std::iota(measured.begin(), measured.end(), 0);
  std::shuffle(measured.begin(), measured.end(), rng);
  if (!measure_all) measured.resize(1 + rng() % n);
  c.num_clbits = measured.size() + (measure_all ? 0 : rng() % 2);
  std::vector<std::size_t> clbits(c.num_clbits);
  std::iota(clbits.begin(), clbits.end(), 0);
  std::shuffle(clbits.begin(), clbits.end(), rng);
  for (std::size_t i = 0; i < measured.size(); ++i) {
    qsched::Instruction m;
    m.kind = GateKind::MEASURE;
    m.qubits = {measured[i]};
    m.clbit = clbits[i];
    c.instructions.push_back(m);
  }
  return c;
}

// Random histogram over n bits with `support` distinct keys.
inline qsched::CountsDistribution random_counts(std::mt19937_64& rng, std::size_t n,
                                                std::size_t support, std::uint64_t max_count) {
  qsched::CountsDistribution d;
  d.num_bits = n;
  for (std::size_t s = 0; s < support; ++s) {
    const std::string key = bits_of(rng() % (1ULL << n), n);
    const std::uint64_t c = 1 + rng() % max_count;
    d.counts[key] += c;
    d.total_shots += c;
  }
  return d;
}

inline std::filesystem::path temp_dir(const std::string& tag) {
  std::random_device rd;
  auto dir = std::filesystem::temp_directory_path() /
             ("qsched-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace qtest
