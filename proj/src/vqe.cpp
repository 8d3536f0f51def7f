// Copyright 2026 The permvqe Authors
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

#include "permvqe/vqe.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "permvqe/dense.hpp"
#include "permvqe/error.hpp"

namespace permvqe {

void VqeConfig::validate() const {
  ansatz.validate();
  if (max_evals < 1) throw std::invalid_argument("max_evals must be at least 1");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (!(energy_tol >= 0.0)) throw std::invalid_argument("energy_tol must be nonnegative");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (noise) noise->validate();
  if (noisy_objective && !noise) throw std::invalid_argument("noisy_objective requires a noise model");
}

std::string VqeResult::to_json() const {
  nlohmann::json j;
  j["energy"] = energy;
  j["params"] = params;
  j["evals_used"] = evals_used;
  j["trial_index"] = trial_index;
  j["trial_energies"] = trial_energies;
  if (noisy) j["noisy"] = {{"mean", noisy->mean}, {"standard_error", noisy->standard_error}};
  return j.dump();
}

StateVector prepare_state(const AnsatzSpec& spec, std::span<const double> params) {
  StateVector s(spec.n_qubits);
  const auto gates = build(spec, params);
  s.apply(gates);
  return s;
}

namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

struct TrialOutcome {
  OptimizeResult opt;
  bool hit = false;
};

TrialOutcome run_trial(const CompiledHamiltonian& ch, const PauliSum& h, const VqeConfig& cfg, int t) {
  auto rng = trial_rng(cfg.seed, t);
  ParameterVector x0 = random_parameters(cfg.ansatz, rng);
  if (t == 0 && cfg.warm_start && !cfg.warm_start->empty()) {
    if (cfg.warm_start->size() != x0.size()) throw DimensionError("warm start does not match the ansatz");
    x0 = *cfg.warm_start;
  }
  OptimizerOptions oo;
  oo.kind = cfg.optimizer;
  oo.max_evals = cfg.max_evals;
  oo.rho_begin = cfg.rho_begin;
  oo.rho_end = cfg.rho_end;
  if (cfg.target_energy) oo.f_target = *cfg.target_energy;

  std::uint64_t calls = 0;
  Objective f = [&](std::span<const double> x) {
    if (cfg.noisy_objective) {
      NoiseModel nm = *cfg.noise;
      nm.seed = cfg.noise->seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(t) + 1)) ^ calls++;
      return noisy_expectation(cfg.ansatz.n_qubits, build(cfg.ansatz, x), h, nm).mean;
    }
    return ch.expectation(prepare_state(cfg.ansatz, x));
  };
  TrialOutcome out;
  out.opt = minimize_local(f, std::move(x0), oo);
  if (cfg.noisy_objective) out.opt.fx = ch.expectation(prepare_state(cfg.ansatz, out.opt.x));
  out.hit = cfg.target_energy && out.opt.fx <= *cfg.target_energy;
  return out;
}

}  // namespace

VqeResult minimize(const PauliSum& h, const VqeConfig& cfg) {
  cfg.validate();
  if (h.n_qubits() != cfg.ansatz.n_qubits) {
    throw DimensionError("Hamiltonian has " + std::to_string(h.n_qubits()) + " qubits, ansatz " +
                         std::to_string(cfg.ansatz.n_qubits));
  }
  const CompiledHamiltonian ch(h);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
  std::vector<char> ran(outcomes.size(), 0);
  const int workers = std::min(cfg.threads, cfg.trials);
  if (workers == 1) {
    for (int t = 0; t < cfg.trials; ++t) {
      outcomes[static_cast<std::size_t>(t)] = run_trial(ch, h, cfg, t);
      ran[static_cast<std::size_t>(t)] = 1;
      if (outcomes[static_cast<std::size_t>(t)].hit) break;
    }
  } else {
    std::atomic<int> next{0};
    std::atomic<int> first_hit{cfg.trials};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int t = next++; t < cfg.trials; t = next++) {
          if (t > first_hit.load()) continue;
          try {
            outcomes[static_cast<std::size_t>(t)] = run_trial(ch, h, cfg, t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            continue;
          }
          ran[static_cast<std::size_t>(t)] = 1;
          if (outcomes[static_cast<std::size_t>(t)].hit) {
            int cur = first_hit.load();
            while (t < cur && !first_hit.compare_exchange_weak(cur, t)) {
            }
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  // Trials after the first one to reach the target are ignored, so the
  // result does not depend on the worker count.
  VqeResult r;
  r.energy = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    const auto& o = outcomes[static_cast<std::size_t>(t)];
    if (!ran[static_cast<std::size_t>(t)]) break;
    r.trial_energies.push_back(o.opt.fx);
    r.evals_used += o.opt.evals;
    if (o.opt.fx < r.energy) {
      r.energy = o.opt.fx;
      r.params = o.opt.x;
      r.trial_index = t;
    }
    if (o.hit) break;
  }
  if (cfg.noise) r.noisy = noisy_expectation(cfg.ansatz.n_qubits, build(cfg.ansatz, r.params), h, *cfg.noise);
  return r;
}

DepthScan min_depth_to_exact(const PauliSum& h, const VqeConfig& cfg, int max_depth) {
  DepthScan scan;
  scan.exact_energy = ground_state(h).energy;
  VqeConfig c = cfg;
  c.target_energy = scan.exact_energy + cfg.energy_tol;
  for (int depth = 1; depth <= max_depth; ++depth) {
    c.ansatz.depth = depth;
    const VqeResult r = minimize(h, c);
    scan.errors.push_back(r.energy - scan.exact_energy);
    if (r.energy - scan.exact_energy <= cfg.energy_tol) {
      scan.depth = depth;
      break;
    }
  }
  return scan;
}

Bitstring permute_bits(const Bitstring& bits, const Permutation& p) {
  if (static_cast<int>(bits.size()) != p.size()) throw DimensionError("bitstring width differs from permutation");
  Bitstring out(bits.size());
  for (int q = 0; q < p.size(); ++q) out[static_cast<std::size_t>(p(q))] = bits[static_cast<std::size_t>(q)];
  return out;
}

PermVqeResult permvqe(const PauliSum& h0, const VqeConfig& cfg, const PermVqeOptions& options) {
  if (options.max_outer < 1) throw std::invalid_argument("max_outer must be at least 1");
  const int n = h0.n_qubits();
  PermVqeResult res;
  PauliSum h = h0;
  VqeConfig c = cfg;
  Permutation labels = Permutation::identity(n);
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < options.max_outer; ++it) {
    PermVqeIteration rec;
    rec.vqe = minimize(h, c);
    rec.permutation = labels;
    rec.map = mutual_information_map(prepare_state(c.ansatz, rec.vqe.params));
    rec.proposal = find_ordering(rec.map, options.conn, options.method, options.brute_force_cap, c.threads);
    rec.cost = rec.proposal.cost_before;
    if (rec.vqe.energy < best) {
      best = rec.vqe.energy;
      res.best_iteration = res.iterations.size();
      res.final_hamiltonian = h;
      res.final_ansatz = c.ansatz;
      res.final_permutation = labels;
      res.final = rec.vqe;
    }
    const Permutation step = rec.proposal.permutation;
    const double gain = rec.proposal.cost_before - rec.proposal.cost_after;
    const VqeResult last = rec.vqe;
    res.iterations.push_back(std::move(rec));
    // a zero-cost map carries no ordering signal, so no gain counts as one
    if (step.is_identity() || !(gain > 0.0) || gain < options.min_relative_improvement * res.iterations.back().cost) {
      break;
    }
    if (it + 1 == options.max_outer) break;
    h = apply_permutation(h, step);
    labels = compose(step, labels);
    auto warm = permute_parameters(c.ansatz, last.params, step);
    if (c.ansatz.hf_bits) c.ansatz.hf_bits = permute_bits(*c.ansatz.hf_bits, step);
    if (warm.empty()) {
      c.warm_start.reset();
    } else {
      c.warm_start = std::move(warm);
    }
  }
  return res;
}

std::string PermVqeResult::to_json() const {
  nlohmann::json j;
  auto perm = [](const Permutation& p) { return std::vector<int>(p.map().begin(), p.map().end()); };
  nlohmann::json its = nlohmann::json::array();
  for (const auto& it : iterations) {
    nlohmann::json e;
    e["permutation"] = perm(it.permutation);
    e["map"] = nlohmann::json::parse(it.map.to_json());
    e["cost"] = it.cost;
    e["proposal"] = nlohmann::json::parse(it.proposal.to_json());
    e["vqe"] = nlohmann::json::parse(it.vqe.to_json());
    its.push_back(std::move(e));
  }
  j["iterations"] = std::move(its);
  j["best_iteration"] = best_iteration;
  j["final_permutation"] = perm(final_permutation);
  j["final_hamiltonian"] = to_pauli_string(final_hamiltonian);
  j["final"] = nlohmann::json::parse(final.to_json());
  return j.dump();
}

std::string to_string(CurveVariant v) {
  switch (v) {
    case CurveVariant::unpermuted: return "unpermuted";
    case CurveVariant::permuted_exact: return "permuted_exact";
    case CurveVariant::permvqe: return "permvqe";
  }
  return "?";
}

CurveVariant parse_curve_variant(const std::string& s) {
  if (s == "unpermuted") return CurveVariant::unpermuted;
  if (s == "permuted_exact") return CurveVariant::permuted_exact;
  if (s == "permvqe") return CurveVariant::permvqe;
  throw std::invalid_argument("unknown curve variant '" + s + "' (unpermuted|permuted_exact|permvqe)");
}

std::vector<CurveRow> delta_e_curve(const PauliSum& h, const VqeConfig& cfg, const CurveOptions& options) {
  const int n = h.n_qubits();
  PauliSum target = h;
  AnsatzSpec spec = cfg.ansatz;
  Permutation p = Permutation::identity(n);
  if (options.variant == CurveVariant::permuted_exact) {
    if (!options.exact_state) throw std::invalid_argument("permuted_exact curve requires the exact ground state");
    const auto map = mutual_information_map(*options.exact_state);
    p = find_ordering(map, options.permvqe.conn, options.permvqe.method, options.permvqe.brute_force_cap, cfg.threads)
            .permutation;
    target = apply_permutation(h, p);
    if (spec.hf_bits) spec.hf_bits = permute_bits(*spec.hf_bits, p);
  }
  std::vector<CurveRow> rows;
  for (int depth : options.depths) {
    VqeConfig c = cfg;
    // optimize noiselessly unless asked to optimize the noisy estimator
    if (!cfg.noisy_objective) c.noise.reset();
    c.ansatz = spec;
    c.ansatz.depth = depth;
    PauliSum used = target;
    AnsatzSpec used_spec = c.ansatz;
    VqeResult r;
    Permutation row_perm = p;
    std::optional<PermVqeResult> loop;
    if (options.variant == CurveVariant::permvqe) {
      PermVqeResult pr = permvqe(target, c, options.permvqe);
      r = pr.final;
      used = pr.final_hamiltonian;
      used_spec = pr.final_ansatz;
      row_perm = pr.final_permutation;
      loop = std::move(pr);
    } else {
      r = minimize(target, c);
    }
    CurveRow row;
    row.depth = depth;
    row.variant = options.variant;
    row.energy = r.energy;
    if (cfg.noise) {
      const int reps = std::max(1, options.noisy_repetitions);
      const auto gates = build(used_spec, r.params);
      std::vector<double> means;
      double single_err = 0.0;
      for (int k = 0; k < reps; ++k) {
        NoiseModel nm = *cfg.noise;
        nm.seed = cfg.noise->seed + 1000003ULL * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(depth);
        const auto est = noisy_expectation(n, gates, used, nm);
        means.push_back(est.mean);
        single_err = est.standard_error;
      }
      double mean = 0.0;
      for (double m : means) mean += m;
      mean /= static_cast<double>(reps);
      double err = single_err;
      if (reps > 1) {
        double var = 0.0;
        for (double m : means) var += (m - mean) * (m - mean);
        err = std::sqrt(var / static_cast<double>(reps - 1) / static_cast<double>(reps));
      }
      row.energy = mean;
      row.stderr_kcal = err * kKcalPerHartree;
    }
    row.delta_e_kcal = (row.energy - options.e_exact) * kKcalPerHartree;
    row.delta_e_pc_kcal = (options.e_hf - options.e_exact) * kKcalPerHartree;
    row.permutation.assign(row_perm.map().begin(), row_perm.map().end());
    row.loop = std::move(loop);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string curve_to_csv(const std::vector<CurveRow>& rows) {
  std::ostringstream out;
  out << "L,variant,delta_e_kcal_mol,stderr_kcal_mol,delta_e_pc_kcal_mol,energy\n";
  for (const auto& r : rows) {
    out << r.depth << ',' << to_string(r.variant) << ',' << shortest(r.delta_e_kcal) << ','
        << shortest(r.stderr_kcal) << ',' << shortest(r.delta_e_pc_kcal) << ',' << shortest(r.energy) << '\n';
  }
  return out.str();
}

}  // namespace permvqe
