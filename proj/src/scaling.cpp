#include "dicke/scaling.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dicke {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double r_squared(const std::vector<double>& ys, const std::vector<double>& residuals) {
  double mean = 0.0;
  for (double y : ys) mean += y;
  mean /= static_cast<double>(ys.size());
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
    ss_res += residuals[i] * residuals[i];
  }
  if (ss_tot <= 0.0) return ss_res <= 1e-24 ? 1.0 : 0.0;
  return clamp01(1.0 - ss_res / ss_tot);
}

ScalingFit line_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2) throw fit_error("linear fit needs at least 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) throw fit_error("linear fit design is rank deficient");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  ScalingFit fit;
  fit.kind = FitKind::LinearLogLog;
  fit.coefficients = {intercept, slope};
  fit.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = ys[i] - (intercept + slope * xs[i]);
  }
  fit.rsq = r_squared(ys, fit.residuals);
  return fit;
}

}  // namespace

ScalingFit fit_gamma_exponent(const std::vector<CriticalPoint>& points, double gamma_c) {
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const CriticalPoint& p : points) {
    if (!(p.gamma_max > gamma_c)) {
      throw std::domain_error("gamma_max <= gamma_c at N = " + std::to_string(p.n_atoms));
    }
    xs.push_back(std::log10(static_cast<double>(p.n_atoms)));
    ys.push_back(std::log10(p.gamma_max - gamma_c));
  }
  ScalingFit fit = line_fit(xs, ys);
  fit.exponent = -fit.coefficients[1];
  return fit;
}

ScalingFit fit_chi_exponent(const std::vector<CriticalPoint>& points) {
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const CriticalPoint& p : points) {
    if (!(p.chi_max > 0.0)) {
      throw std::domain_error("chi_max <= 0 at N = " + std::to_string(p.n_atoms));
    }
    xs.push_back(std::log10(static_cast<double>(p.n_atoms)));
    ys.push_back(std::log10(p.chi_max));
  }
  ScalingFit fit = line_fit(xs, ys);
  fit.exponent = fit.coefficients[1];
  return fit;
}

ScalingFit fit_fmin_quadratic(const std::vector<CriticalPoint>& points) {
  const std::size_t n = points.size();
  if (n < 4) throw fit_error("quadratic fit needs at least 4 points");
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = static_cast<double>(points[i].n_atoms);
    if (!(points[i].f_min > 0.0)) {
      throw std::domain_error("f_min <= 0 at N = " + std::to_string(points[i].n_atoms));
    }
    ys[i] = std::log10(points[i].f_min);
  }

  // Fit in a centered, scaled variable; the raw Vandermonde in N up to 1000
  // is too ill conditioned to recover small quadratic coefficients.
  double lo = xs[0], hi = xs[0];
  for (double x : xs) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double center = 0.5 * (lo + hi);
  const double span = hi > lo ? 0.5 * (hi - lo) : 1.0;
  if (!(span > 0.0)) throw fit_error("quadratic fit design is rank deficient");

  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (xs[i] - center) / span;
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = t;
    design(static_cast<Eigen::Index>(i), 2) = t * t;
    rhs(static_cast<Eigen::Index>(i)) = ys[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw fit_error("quadratic fit design is rank deficient");
  const Eigen::Vector3d a = qr.solve(rhs);

  // Back to monomials in N: t = (N - c)/s.
  const double c2 = a(2) / (span * span);
  const double c1 = a(1) / span - 2.0 * a(2) * center / (span * span);
  const double c0 = a(0) - a(1) * center / span + a(2) * center * center / (span * span);

  ScalingFit fit;
  fit.kind = FitKind::QuadraticSemilog;
  fit.coefficients = {c0, c1, c2};
  fit.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = ys[i] - (c0 + c1 * xs[i] + c2 * xs[i] * xs[i]);
  }
  fit.rsq = r_squared(ys, fit.residuals);
  return fit;
}

std::vector<CollapsePoint> build_collapse(
    const std::map<int, std::vector<ScanPoint>>& scans,
    const std::map<int, CriticalPoint>& criticals, double nu, int* skipped) {
  if (!(nu > 0.0)) throw std::invalid_argument("nu must be > 0");
  if (skipped) *skipped = 0;
  std::vector<CollapsePoint> out;
  for (const auto& [n_atoms, points] : scans) {
    const auto it = criticals.find(n_atoms);
    if (it == criticals.end()) {
      throw std::invalid_argument("missing critical point for N = " + std::to_string(n_atoms));
    }
    const double scale = std::pow(static_cast<double>(n_atoms), nu);
    for (const ScanPoint& p : points) {
      if (!(p.chi_f > 0.0)) {
        if (skipped) ++*skipped;
        continue;
      }
      CollapsePoint cp;
      cp.n_atoms = n_atoms;
      cp.x = scale * (p.gamma - it->second.gamma_max);
      cp.y = (it->second.chi_max - p.chi_f) / p.chi_f;
      out.push_back(cp);
    }
  }
  return out;
}

CollapseSpread collapse_spread(const std::vector<CollapsePoint>& points,
                               double x_window, int grid_points) {
  std::map<int, std::vector<CollapsePoint>> curves;
  for (const CollapsePoint& p : points) curves[p.n_atoms].push_back(p);
  CollapseSpread result;
  if (curves.size() < 2) return result;  // a single curve is trivially collapsed

  double lo = -x_window, hi = x_window;
  for (auto& [n, curve] : curves) {
    std::sort(curve.begin(), curve.end(),
              [](const CollapsePoint& a, const CollapsePoint& b) { return a.x < b.x; });
    lo = std::max(lo, curve.front().x);
    hi = std::min(hi, curve.back().x);
  }
  if (!(hi > lo)) return result;
  result.x_lo = lo;
  result.x_hi = hi;

  auto interp = [](const std::vector<CollapsePoint>& curve, double x) {
    auto it = std::lower_bound(curve.begin(), curve.end(), x,
                               [](const CollapsePoint& p, double v) { return p.x < v; });
    if (it == curve.begin()) return it->y;
    if (it == curve.end()) return (it - 1)->y;
    const auto prev = it - 1;
    const double w = (x - prev->x) / (it->x - prev->x);
    return prev->y + w * (it->y - prev->y);
  };

  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double x = lo + (hi - lo) * i / (grid_points - 1);
    double cmin = std::numeric_limits<double>::infinity();
    double cmax = -std::numeric_limits<double>::infinity();
    for (const auto& [n, curve] : curves) {
      const double y = interp(curve, x);
      cmin = std::min(cmin, y);
      cmax = std::max(cmax, y);
    }
    result.spread = std::max(result.spread, cmax - cmin);
    ymin = std::min(ymin, cmin);
    ymax = std::max(ymax, cmax);
  }
  result.range = ymax - ymin;
  result.ratio = result.range > 0.0 ? result.spread / result.range : 0.0;
  return result;
}

}  // namespace dicke
