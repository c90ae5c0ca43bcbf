#include "dicke/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "dicke/observables.hpp"

namespace dicke {

namespace {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

void SweepConfig::validate() const {
  if (!(gamma_start < gamma_end)) {
    throw std::invalid_argument("gamma_start must be < gamma_end");
  }
  if (!(dgamma > 0.0)) throw std::invalid_argument("dgamma must be > 0");
  // relative slack: spans like 0.6 - 0.4 are not exactly representable
  if (dgamma > (gamma_end - gamma_start) / 10.0 * (1.0 + 1e-9)) {
    throw std::invalid_argument("dgamma must be <= (gamma_end - gamma_start)/10");
  }
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  solver.validate();
}

int SweepConfig::point_count() const {
  return static_cast<int>(std::llround((gamma_end - gamma_start) / dgamma));
}

SweepResult run_sweep(const ModelParams& base, const SweepConfig& config) {
  base.validate();
  config.validate();

  const int points = config.point_count();
  const int solves = points + 1;  // the last point pairs gamma_end-dgamma with gamma_end
  std::vector<std::optional<WaveFunction>> states(solves);
  std::vector<std::string> errors(solves);

  const int workers = std::min(resolve_workers(config.workers), solves);
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= solves) return;
      const double gamma = config.gamma_start + i * config.dgamma;
      try {
        states[i] = ground_state_ecs(base.with_gamma(gamma), config.n_max,
                                     config.solver, ParitySector::Even,
                                     config.dim_ceiling);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  result.points.reserve(points);
  for (int i = 0; i < solves; ++i) {
    if (!states[i]) {
      result.failures.push_back({config.gamma_start + i * config.dgamma, errors[i]});
      continue;
    }
    result.max_residual = std::max(result.max_residual, states[i]->residual);
    result.total_iterations += states[i]->iterations;
  }
  for (int i = 0; i < points; ++i) {
    if (!states[i] || !states[i + 1]) continue;
    const WaveFunction& a = *states[i];
    const WaveFunction& b = *states[i + 1];
    ScanPoint p;
    p.gamma = config.gamma_start + i * config.dgamma;
    p.fidelity = fidelity(a, b);
    p.chi_f = susceptibility(p.fidelity, config.dgamma);
    p.delta_p = excitation_distribution(a).delta_p;
    p.energy = a.energy;
    p.degenerate = a.degenerate || b.degenerate;
    result.points.push_back(p);
  }
  return result;
}

CriticalPoint locate_critical(const std::vector<ScanPoint>& points,
                              const SweepConfig& config, int n_atoms) {
  return locate_critical(points, config, n_atoms, nullptr);
}

CriticalPoint locate_critical(const std::vector<ScanPoint>& points,
                              const SweepConfig& config, int n_atoms,
                              const std::function<double(double)>& chi_eval) {
  if (points.size() < 5) {
    throw std::invalid_argument("need at least 5 scan points to locate an extremum");
  }

  // Degenerate-flagged points are excluded: fidelity is ill-defined there.
  int i_chi = -1, i_f = -1, i_dp = -1;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    if (points[i].degenerate) continue;
    if (i_chi < 0 || points[i].chi_f > points[i_chi].chi_f) i_chi = i;
    if (i_f < 0 || points[i].fidelity < points[i_f].fidelity) i_f = i;
    if (i_dp < 0 || points[i].delta_p > points[i_dp].delta_p) i_dp = i;
  }
  if (i_chi < 0) throw analysis_error("all scan points are degenerate-flagged");
  if (std::abs(i_chi - i_f) > 1) {
    throw analysis_error("fidelity minimum and susceptibility maximum disagree "
                         "by more than one grid step");
  }
  if (i_chi == 0 || i_chi == static_cast<int>(points.size()) - 1) {
    throw analysis_error("susceptibility extremum on the grid boundary; widen the scan");
  }

  CriticalPoint cp;
  cp.n_atoms = n_atoms;
  cp.gamma_max = points[i_chi].gamma;
  cp.f_min = points[i_f].fidelity;
  cp.chi_max = points[i_chi].chi_f;
  cp.delta_p_peak_gamma = points[i_dp].gamma;
  cp.degenerate = (i_chi > 0 && points[i_chi - 1].degenerate) ||
                  (i_chi + 1 < static_cast<int>(points.size()) && points[i_chi + 1].degenerate);

  if (config.refine && chi_eval) {
    // Golden-section maximization of chi over one grid step on each side.
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = points[i_chi - 1].gamma;
    double b = points[i_chi + 1].gamma;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = chi_eval(x1);
    double f2 = chi_eval(x2);
    while (b - a > config.dgamma / 10.0) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = chi_eval(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = chi_eval(x1);
      }
    }
    cp.gamma_max_refined = 0.5 * (a + b);
    cp.chi_max_refined = std::max(f1, f2);
  }
  return cp;
}

CriticalPoint analyze_sweep(const ModelParams& base, const SweepConfig& config,
                            const SweepResult& result) {
  if (!config.refine) return locate_critical(result.points, config, base.n_atoms);
  auto chi_eval = [&](double gamma) {
    const WaveFunction a = ground_state_ecs(base.with_gamma(gamma), config.n_max,
                                            config.solver, ParitySector::Even,
                                            config.dim_ceiling);
    const WaveFunction b = ground_state_ecs(base.with_gamma(gamma + config.dgamma),
                                            config.n_max, config.solver,
                                            ParitySector::Even, config.dim_ceiling);
    return susceptibility(a, b, config.dgamma);
  };
  return locate_critical(result.points, config, base.n_atoms, chi_eval);
}

}  // namespace dicke
