#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dicke/sweep.hpp"

namespace dicke {

enum class FitKind { LinearLogLog, QuadraticSemilog };

struct ScalingFit {
  FitKind kind = FitKind::LinearLogLog;
  std::vector<double> coefficients;  // {intercept, slope} or {c0, c1, c2}
  std::optional<double> exponent;    // derived slope, linear fits only
  double rsq = 0.0;
  std::vector<double> residuals;
};

/// Least-squares line through (log10 N, log10(gamma_max - gamma_c));
/// exponent = -slope. Throws std::domain_error if any gamma_max <= gamma_c.
ScalingFit fit_gamma_exponent(const std::vector<CriticalPoint>& points, double gamma_c);

/// Least-squares line through (log10 N, log10 chi_max); exponent = slope.
ScalingFit fit_chi_exponent(const std::vector<CriticalPoint>& points);

/// Least-squares quadratic of log10(F_min) against N (semilog coordinates).
ScalingFit fit_fmin_quadratic(const std::vector<CriticalPoint>& points);

struct CollapsePoint {
  double x = 0.0;  // N^nu (gamma - gamma_max)
  double y = 0.0;  // specific susceptibility
  int n_atoms = 0;
};

/// Rescales every scan onto the universal axes. Points with chi <= 0 are
/// skipped (counted in *skipped when given).
std::vector<CollapsePoint> build_collapse(
    const std::map<int, std::vector<ScanPoint>>& scans,
    const std::map<int, CriticalPoint>& criticals, double nu,
    int* skipped = nullptr);

struct CollapseSpread {
  double spread = 0.0;  // max vertical distance between per-N curves
  double range = 0.0;   // overall vertical extent of the curves
  double ratio = 0.0;   // spread / range
  double x_lo = 0.0;    // common window actually used
  double x_hi = 0.0;
};

/// Interpolates each per-N curve onto a common x grid over the shared window
/// clipped to |x| <= x_window and measures how far the curves spread apart.
CollapseSpread collapse_spread(const std::vector<CollapsePoint>& points,
                               double x_window = 2.0, int grid_points = 81);

}  // namespace dicke
