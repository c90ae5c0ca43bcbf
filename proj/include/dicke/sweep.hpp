#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dicke/ecs.hpp"
#include "dicke/model.hpp"

namespace dicke {

struct SweepConfig {
  double gamma_start = 0.0;
  double gamma_end = 0.0;
  double dgamma = 0.0;   // grid step; also the fidelity increment
  int n_max = 0;
  bool refine = false;   // golden-section refinement of the chi maximum
  int workers = 0;       // 0: hardware concurrency
  SolverConfig solver;
  std::size_t dim_ceiling = kDefaultDimensionCeiling;

  void validate() const;
  /// Number of scan points; grid gammas are gamma_start + i*dgamma, i < count.
  int point_count() const;
};

struct ScanPoint {
  double gamma = 0.0;
  double fidelity = 0.0;   // F(gamma, gamma + dgamma)
  double chi_f = 0.0;
  double delta_p = 0.0;
  double energy = 0.0;
  bool degenerate = false;
};

struct SweepFailure {
  double gamma = 0.0;
  std::string message;
};

struct SweepResult {
  std::vector<ScanPoint> points;      // ascending gamma
  std::vector<SweepFailure> failures;
  double max_residual = 0.0;
  long total_iterations = 0;
};

/// One ground-state solve per grid gamma (consecutive points share solves:
/// the grid step equals the fidelity increment). Points are computed from
/// independent deterministic solves, so the output is identical for any
/// worker count.
SweepResult run_sweep(const ModelParams& base, const SweepConfig& config);

struct CriticalPoint {
  int n_atoms = 0;
  double gamma_max = 0.0;           // grid argmax of chi_f == argmin of F
  double f_min = 1.0;
  double chi_max = 0.0;
  double delta_p_peak_gamma = 0.0;  // grid argmax of delta_p
  bool degenerate = false;
  std::optional<double> gamma_max_refined;
  std::optional<double> chi_max_refined;
};

/// Grid extremum of a finished sweep. Throws analysis_error if the extremum
/// sits on the grid boundary or if argmin(F) and argmax(chi) disagree by more
/// than one step.
CriticalPoint locate_critical(const std::vector<ScanPoint>& points,
                              const SweepConfig& config, int n_atoms);

/// Same, refining gamma_max by golden-section search on chi_eval when
/// config.refine is set. chi_eval(gamma) must return the susceptibility of
/// the pair (gamma, gamma + dgamma).
CriticalPoint locate_critical(const std::vector<ScanPoint>& points,
                              const SweepConfig& config, int n_atoms,
                              const std::function<double(double)>& chi_eval);

/// locate_critical wired to fresh solves for the refinement probes.
CriticalPoint analyze_sweep(const ModelParams& base, const SweepConfig& config,
                            const SweepResult& result);

}  // namespace dicke
