#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dicke/ecs.hpp"
#include "dicke/fock.hpp"
#include "dicke/model.hpp"
#include "dicke/observables.hpp"
#include "dicke/scaling.hpp"
#include "dicke/sweep.hpp"
#include "dicke/version.hpp"

namespace py = pybind11;
using namespace dicke;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact diagonalization of the finite Dicke model: ground states in the "
            "extended coherent-state basis, fidelity-susceptibility criticality "
            "scans, and finite-size scaling fits.";
  m.attr("__version__") = kVersion;

  py::register_exception<dimension_error>(m, "DimensionError");
  py::register_exception<solver_error>(m, "SolverError");
  py::register_exception<analysis_error>(m, "AnalysisError");
  py::register_exception<fit_error>(m, "FitError");

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double omega, double omega0, int n_atoms, double gamma) {
             ModelParams p{omega, omega0, n_atoms, gamma};
             p.validate();
             return p;
           }),
           py::arg("omega") = 1.0, py::arg("omega0") = 1.0, py::arg("n_atoms") = 1,
           py::arg("gamma") = 0.0)
      .def_readonly("omega", &ModelParams::omega)
      .def_readonly("omega0", &ModelParams::omega0)
      .def_readonly("n_atoms", &ModelParams::n_atoms)
      .def_readonly("gamma", &ModelParams::gamma)
      .def_property_readonly("j", &ModelParams::spin_j)
      .def("critical_coupling", &ModelParams::critical_coupling)
      .def("with_gamma", &ModelParams::with_gamma)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(omega=" + std::to_string(p.omega) +
               ", omega0=" + std::to_string(p.omega0) +
               ", n_atoms=" + std::to_string(p.n_atoms) +
               ", gamma=" + std::to_string(p.gamma) + ")";
      });

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("max_iter", &SolverConfig::max_iter)
      .def_readwrite("krylov_dim", &SolverConfig::krylov_dim)
      .def_readwrite("seed", &SolverConfig::seed)
      .def_readwrite("dense_dim_threshold", &SolverConfig::dense_dim_threshold);

  py::class_<WaveFunction>(m, "WaveFunction")
      .def_property_readonly("coeffs", [](const WaveFunction& w) { return to_array(w.coeffs); })
      .def_readonly("energy", &WaveFunction::energy)
      .def_readonly("n_max", &WaveFunction::n_max)
      .def_readonly("params", &WaveFunction::params)
      .def_readonly("degenerate", &WaveFunction::degenerate)
      .def_readonly("residual", &WaveFunction::residual)
      .def("coeff", &WaveFunction::coeff, py::arg("n_exc"), py::arg("twice_m"));

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_property_readonly("p_n", [](const ConvergenceReport& r) { return to_array(r.p_n); })
      .def_readonly("delta_p", &ConvergenceReport::delta_p)
      .def_readonly("n_max_used", &ConvergenceReport::n_max_used);

  py::class_<ScanPoint>(m, "ScanPoint")
      .def_readonly("gamma", &ScanPoint::gamma)
      .def_readonly("fidelity", &ScanPoint::fidelity)
      .def_readonly("chi_f", &ScanPoint::chi_f)
      .def_readonly("delta_p", &ScanPoint::delta_p)
      .def_readonly("energy", &ScanPoint::energy)
      .def_readonly("degenerate", &ScanPoint::degenerate);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("gamma_start", &SweepConfig::gamma_start)
      .def_readwrite("gamma_end", &SweepConfig::gamma_end)
      .def_readwrite("dgamma", &SweepConfig::dgamma)
      .def_readwrite("n_max", &SweepConfig::n_max)
      .def_readwrite("refine", &SweepConfig::refine)
      .def_readwrite("workers", &SweepConfig::workers)
      .def_readwrite("solver", &SweepConfig::solver);

  py::class_<SweepFailure>(m, "SweepFailure")
      .def_readonly("gamma", &SweepFailure::gamma)
      .def_readonly("message", &SweepFailure::message);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("points", &SweepResult::points)
      .def_readonly("failures", &SweepResult::failures)
      .def_readonly("max_residual", &SweepResult::max_residual);

  py::class_<CriticalPoint>(m, "CriticalPoint")
      .def(py::init([](int n_atoms, double gamma_max, double f_min, double chi_max,
                       double delta_p_peak_gamma) {
             CriticalPoint c;
             c.n_atoms = n_atoms;
             c.gamma_max = gamma_max;
             c.f_min = f_min;
             c.chi_max = chi_max;
             c.delta_p_peak_gamma = delta_p_peak_gamma;
             return c;
           }),
           py::arg("n_atoms"), py::arg("gamma_max"), py::arg("f_min") = 1.0,
           py::arg("chi_max") = 0.0, py::arg("delta_p_peak_gamma") = 0.0)
      .def_readonly("n_atoms", &CriticalPoint::n_atoms)
      .def_readonly("gamma_max", &CriticalPoint::gamma_max)
      .def_readonly("f_min", &CriticalPoint::f_min)
      .def_readonly("chi_max", &CriticalPoint::chi_max)
      .def_readonly("delta_p_peak_gamma", &CriticalPoint::delta_p_peak_gamma)
      .def_readonly("degenerate", &CriticalPoint::degenerate)
      .def_readonly("gamma_max_refined", &CriticalPoint::gamma_max_refined)
      .def_readonly("chi_max_refined", &CriticalPoint::chi_max_refined);

  py::class_<ScalingFit>(m, "ScalingFit")
      .def_property_readonly("kind",
                             [](const ScalingFit& f) {
                               return f.kind == FitKind::LinearLogLog ? "linear-loglog"
                                                                      : "quadratic-semilog";
                             })
      .def_readonly("coefficients", &ScalingFit::coefficients)
      .def_readonly("exponent", &ScalingFit::exponent)
      .def_readonly("rsq", &ScalingFit::rsq)
      .def_readonly("residuals", &ScalingFit::residuals);

  py::class_<CollapsePoint>(m, "CollapsePoint")
      .def_readonly("x", &CollapsePoint::x)
      .def_readonly("y", &CollapsePoint::y)
      .def_readonly("n_atoms", &CollapsePoint::n_atoms);

  py::class_<CollapseSpread>(m, "CollapseSpread")
      .def_readonly("spread", &CollapseSpread::spread)
      .def_readonly("range", &CollapseSpread::range)
      .def_readonly("ratio", &CollapseSpread::ratio);

  py::class_<NmaxSearch>(m, "NmaxSearch")
      .def_readonly("converged", &NmaxSearch::converged)
      .def_readonly("n_max", &NmaxSearch::n_max)
      .def_readonly("ladder", &NmaxSearch::ladder);

  m.def("critical_coupling",
        [](const ModelParams& p) { return p.critical_coupling(); });
  m.def("basis_enumerate",
        [](int n_atoms, int n_max) {
          std::vector<std::pair<int, double>> out;
          for (const EcsIndex& idx : basis_enumerate(n_atoms, n_max)) {
            out.emplace_back(idx.n_exc, idx.m());
          }
          return out;
        },
        py::arg("n_atoms"), py::arg("n_max"));
  m.def("displaced_fock_overlap", &displaced_fock_overlap, py::arg("n_row"),
        py::arg("n_col"), py::arg("beta"));
  m.def("ground_state_ecs",
        [](const ModelParams& p, int n_max, const SolverConfig& cfg, bool even_parity) {
          return ground_state_ecs(p, n_max, cfg,
                                  even_parity ? ParitySector::Even : ParitySector::Full);
        },
        py::arg("params"), py::arg("n_max"), py::arg("solver") = SolverConfig{},
        py::arg("even_parity") = true,
        py::call_guard<py::gil_scoped_release>());
  m.def("fock_ground_state",
        [](const ModelParams& p, int photon_cutoff) {
          const FockGroundState gs = photon_cutoff > 0 ? fock_ground_state(p, photon_cutoff)
                                                       : fock_ground_state_auto(p);
          py::array_t<double> vec(gs.vector.size());
          std::copy(gs.vector.data(), gs.vector.data() + gs.vector.size(),
                    vec.mutable_data());
          return py::make_tuple(gs.energy, vec, gs.photon_cutoff);
        },
        py::arg("params"), py::arg("photon_cutoff") = 0);
  m.def("fidelity", &fidelity, py::arg("psi_a"), py::arg("psi_b"));
  m.def("susceptibility",
        py::overload_cast<const WaveFunction&, const WaveFunction&, double>(&susceptibility),
        py::arg("psi_a"), py::arg("psi_b"), py::arg("dgamma"));
  m.def("specific_susceptibility", &specific_susceptibility, py::arg("chi_at_max"),
        py::arg("chi"));
  m.def("excitation_distribution", &excitation_distribution, py::arg("psi"));
  m.def("delta_p_exact", &delta_p_exact, py::arg("psi_small"), py::arg("psi_large"));
  m.def("mean_photon_number", &mean_photon_number, py::arg("psi"));
  m.def("run_sweep", &run_sweep, py::arg("params"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("locate_critical",
        [](const std::vector<ScanPoint>& points, const SweepConfig& cfg, int n_atoms) {
          return locate_critical(points, cfg, n_atoms);
        },
        py::arg("points"), py::arg("config"), py::arg("n_atoms"));
  m.def("analyze_sweep", &analyze_sweep, py::arg("params"), py::arg("config"),
        py::arg("result"), py::call_guard<py::gil_scoped_release>());
  m.def("fit_gamma_exponent", &fit_gamma_exponent, py::arg("points"), py::arg("gamma_c"));
  m.def("fit_chi_exponent", &fit_chi_exponent, py::arg("points"));
  m.def("fit_fmin_quadratic", &fit_fmin_quadratic, py::arg("points"));
  m.def("build_collapse",
        [](const std::map<int, std::vector<ScanPoint>>& scans,
           const std::map<int, CriticalPoint>& criticals, double nu) {
          return build_collapse(scans, criticals, nu);
        },
        py::arg("scans"), py::arg("criticals"), py::arg("nu"));
  m.def("collapse_spread", &collapse_spread, py::arg("points"), py::arg("x_window") = 2.0,
        py::arg("grid_points") = 81);
  m.def("find_minimal_nmax",
        [](const ModelParams& p, double tolerance, int nmax_start, int nmax_ceiling) {
          return find_minimal_nmax(p, tolerance, nmax_start, nmax_ceiling);
        },
        py::arg("params"), py::arg("tolerance") = 1e-8, py::arg("nmax_start") = 0,
        py::arg("nmax_ceiling") = 64, py::call_guard<py::gil_scoped_release>());
}
