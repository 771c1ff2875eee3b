// Copyright 2026 The scq Authors
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

// Exact propagation on the parity sectors of the Liouvillian.
//
// Every operator in the confinement model either preserves or flips photon
// parity, so the superoperator never mixes density-matrix elements rho_mn
// with different (m + n) mod 2. Each sector is about half of the full
// Liouville space; its dense generator fits comfortably in memory for the
// cutoffs used here, and exp(G dt) sidesteps the stiffness of long runs.

#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "generator.hpp"
#include "scq/lindblad.hpp"

namespace scq {

namespace {

constexpr std::size_t kMaxSectorDim = 4096;

struct Entry {
  int col;
  Complex value;
};

std::vector<std::vector<Entry>> row_entries(const Matrix& m) {
  std::vector<std::vector<Entry>> rows(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) != Complex(0.0)) rows[r].push_back({int(c), m(r, c)});
    }
  }
  return rows;
}

struct Pieces {
  Matrix h_eff;
  std::vector<Matrix> jumps;
  bool splits = true;
};

Pieces collect(const MasterEquation& me) {
  Pieces p;
  p.h_eff = detail::effective_hamiltonian(me);
  p.splits = detail::operator_parity(p.h_eff) == 1;
  for (const auto& d : me.dissipators) {
    if (d.rate == 0.0) continue;
    p.jumps.push_back(std::sqrt(d.rate) * d.jump.matrix());
    if (detail::operator_parity(p.jumps.back()) == 0) p.splits = false;
  }
  return p;
}

LiouvillianSector build_sector(const Pieces& p, int n, int parity) {
  LiouvillianSector sector;
  sector.parity = parity;
  std::vector<int> index(std::size_t(n) * n, -1);
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) {
      if (parity >= 0 && (row + col) % 2 != parity) continue;
      index[std::size_t(row) * n + col] = int(sector.elements.size());
      sector.elements.emplace_back(row, col);
    }
  }
  const auto at = [&](int row, int col) {
    return index[std::size_t(row) * n + col];
  };

  const auto h_rows = row_entries(p.h_eff);
  std::vector<std::vector<std::vector<Entry>>> jump_rows;
  for (const auto& j : p.jumps) jump_rows.push_back(row_entries(j));

  const int dim = int(sector.elements.size());
  sector.generator = Matrix::Zero(dim, dim);
  Matrix& g = sector.generator;
  for (int i = 0; i < dim; ++i) {
    const auto [m, k] = sector.elements[i];
    // -i H_eff rho
    for (const Entry& e : h_rows[m]) g(i, at(e.col, k)) += -kI * e.value;
    // +i rho H_eff^dag
    for (const Entry& e : h_rows[k]) {
      g(i, at(m, e.col)) += kI * std::conj(e.value);
    }
    // J rho J^dag
    for (const auto& rows : jump_rows) {
      for (const Entry& left : rows[m]) {
        for (const Entry& right : rows[k]) {
          g(i, at(left.col, right.col)) += left.value * std::conj(right.value);
        }
      }
    }
  }
  return sector;
}

// Parity sector an observable reads: 0, 1, or -1 for both.
int observable_sector(const Operator& op) {
  const int p = detail::operator_parity(op.matrix());
  if (p == 1) return 0;
  if (p == -1) return 1;
  return -1;
}

}  // namespace

std::vector<LiouvillianSector> liouvillian_sectors(const MasterEquation& me) {
  const Pieces p = collect(me);
  const int n = me.space().dim();
  std::vector<LiouvillianSector> out;
  if (p.splits) {
    out.push_back(build_sector(p, n, 0));
    out.push_back(build_sector(p, n, 1));
  } else {
    out.push_back(build_sector(p, n, -1));
  }
  return out;
}

std::size_t largest_sector_dim(const MasterEquation& me) {
  const std::size_t n = me.space().dim();
  return collect(me).splits ? (n * n + 1) / 2 : n * n;
}

Trajectory evolve_propagator(const MasterEquation& me, const DensityMatrix& rho0,
                             const EvolutionConfig& config,
                             const std::map<std::string, Operator>& observables,
                             const SampleCallback& on_sample) {
  const FockSpace space = me.space();
  const int n = space.dim();
  if (largest_sector_dim(me) > kMaxSectorDim) {
    throw IntegratorError("propagator: Liouvillian sector of dimension " +
                          std::to_string(largest_sector_dim(me)) +
                          " is too large to hold densely");
  }
  std::vector<LiouvillianSector> sectors = liouvillian_sectors(me);

  bool need[2] = {true, true};
  if (config.observed_sectors_only && sectors.size() == 2 && !on_sample) {
    need[0] = need[1] = false;
    for (const auto& [name, op] : observables) {
      const int s = observable_sector(op);
      if (s == -1) {
        need[0] = need[1] = true;
      } else {
        need[s] = true;
      }
    }
  }
  const bool partial = sectors.size() == 2 && !(need[0] && need[1]);
  const bool trace_tracked = sectors.size() == 1 || need[0];

  const std::vector<double> targets = detail::sample_times(config);
  const double dt = targets[1] - targets[0];

  struct Active {
    const LiouvillianSector* sector;
    Matrix propagator;
    Vector state;
  };
  std::vector<Active> active;
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    if (sectors.size() == 2 && !need[s]) continue;
    const LiouvillianSector& sec = sectors[s];
    Matrix prop = (sec.generator * dt).exp();
    if (!prop.allFinite()) {
      throw IntegratorError("propagator: non-finite matrix exponential");
    }
    Vector v(sec.elements.size());
    for (std::size_t i = 0; i < sec.elements.size(); ++i) {
      v[i] = rho0.matrix()(sec.elements[i].first, sec.elements[i].second);
    }
    active.push_back({&sec, std::move(prop), std::move(v)});
  }

  Trajectory traj(rho0);
  traj.method_used = Integrator::kPropagator;
  traj.partial_state = partial;
  if (!trace_tracked) {
    traj.max_trace_drift = std::numeric_limits<double>::quiet_NaN();
  }
  detail::Recorder recorder(observables, traj, on_sample, !partial);

  Matrix rho = Matrix::Zero(n, n);
  const auto scatter = [&]() {
    for (const Active& a : active) {
      const auto& el = a.sector->elements;
      for (std::size_t i = 0; i < el.size(); ++i) {
        rho(el[i].first, el[i].second) = a.state[i];
      }
    }
    rho = (0.5 * (rho + rho.adjoint())).eval();
    for (Active& a : active) {
      const auto& el = a.sector->elements;
      for (std::size_t i = 0; i < el.size(); ++i) {
        a.state[i] = rho(el[i].first, el[i].second);
      }
    }
  };

  scatter();
  const Complex trace0 = rho.trace();
  recorder.sample(0.0, rho, space);
  Vector next;
  for (std::size_t step = 1; step < targets.size(); ++step) {
    for (Active& a : active) {
      next.noalias() = a.propagator * a.state;
      a.state.swap(next);
    }
    scatter();
    ++traj.steps;
    if (trace_tracked) {
      const double drift = std::abs(rho.trace() - trace0);
      traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
      if (drift > config.trace_abort) {
        throw IntegratorError("trace drift " + std::to_string(drift) +
                              " at t=" + std::to_string(targets[step]));
      }
    }
    recorder.sample(targets[step], rho, space);
  }
  traj.final_state = DensityMatrix::unchecked(space, rho);
  return traj;
}

}  // namespace scq
