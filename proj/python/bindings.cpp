#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

#include "voigt/criterion.hpp"
#include "voigt/diagnostics.hpp"
#include "voigt/initial_conditions.hpp"
#include "voigt/integrate.hpp"
#include "voigt/spectral_ops.hpp"
#include "voigt/transform.hpp"

namespace py = pybind11;
using namespace voigt;

namespace {

/// Divergence-free velocity state on the unit torus, stored spectrally.
class Field {
  public:
    Field(SpectralVectorField u) : u_(std::move(u)) {}

    static Field make(const std::string& kind, int n, std::uint64_t seed, double A,
                      double B, double C, int modes, double k0) {
        InitialConditionSpec spec;
        spec.kind = ic_kind_from_string(kind);
        spec.seed = seed;
        spec.A = A;
        spec.B = B;
        spec.C = C;
        spec.shear_modes = modes;
        spec.k0 = k0;
        return Field(generate_ic(spec, Grid(n)));
    }

    static Field from_real(const py::array_t<double, py::array::c_style>& samples) {
        const auto buf = samples.request();
        if (buf.ndim != 4 || buf.shape[0] != 3 || buf.shape[1] != buf.shape[2] ||
            buf.shape[2] != buf.shape[3]) {
            throw py::value_error("expected an array of shape (3, n, n, n)");
        }
        const int n = static_cast<int>(buf.shape[1]);
        const Grid g(n);
        RealVectorField v(g);
        const double* data = static_cast<const double*>(buf.ptr);
        for (int c = 0; c < 3; ++c) {
            std::copy(data + static_cast<std::size_t>(c) * g.size(),
                      data + static_cast<std::size_t>(c + 1) * g.size(),
                      v[c].samples().begin());
        }
        SpectralTransform fft(g);
        SpectralVectorField u = dealias(leray_project(fft.forward(v)));
        zero_mean(u);
        return Field(std::move(u));
    }

    py::array_t<double> to_real() const {
        const Grid& g = u_.grid();
        SpectralTransform fft(g);
        const RealVectorField v = fft.inverse(u_);
        const int n = g.n();
        py::array_t<double> out({3, n, n, n});
        double* data = static_cast<double*>(out.request().ptr);
        for (int c = 0; c < 3; ++c) {
            std::copy(v[c].samples().begin(), v[c].samples().end(),
                      data + static_cast<std::size_t>(c) * g.size());
        }
        return out;
    }

    int n() const { return u_.grid().n(); }
    double energy() const { return voigt::energy(u_); }
    double enstrophy() const { return voigt::enstrophy(u_); }
    double alpha_energy(double alpha) const {
        return voigt::alpha_energy(u_, VoigtParams(alpha, u_.grid()));
    }
    double q(double alpha) const {
        return voigt::q_value(u_, VoigtParams(alpha, u_.grid()));
    }
    double identity_residual() const { return voigt::identity_residual(u_); }
    double divergence_residual() const { return voigt::divergence_residual(u_); }

    py::array_t<double> spectrum() const {
        const std::vector<double> shells = energy_spectrum(u_);
        py::array_t<double> out(static_cast<py::ssize_t>(shells.size()));
        std::copy(shells.begin(), shells.end(), static_cast<double*>(out.request().ptr));
        return out;
    }

    const SpectralVectorField& state() const { return u_; }

  private:
    SpectralVectorField u_;
};

py::dict summary_to_dict(const RunSummary& s) {
    py::dict d;
    d["alpha"] = s.alpha;
    d["n"] = s.n;
    d["t_final"] = s.t_final;
    d["M"] = s.max_q;
    d["t_argmax"] = s.t_argmax;
    d["q_final"] = s.q_final;
    d["drift"] = s.drift;
    d["tail_fraction_max"] = s.tail_fraction_max;
    d["steps"] = s.steps;
    d["status"] = to_string(s.status);
    return d;
}

py::dict fit_to_dict(const FitResult& f) {
    py::dict d;
    d["c"] = f.c;
    d["beta"] = f.beta;
    d["r2"] = f.r2;
    d["points_used"] = f.points_used;
    d["trivially_vanishing"] = f.trivially_vanishing;
    return d;
}

IntegratorConfig make_integrator_config(double t_final, std::optional<double> dt,
                                        std::optional<double> cfl, double dt_max,
                                        int sample_stride, double drift_abort_tol) {
    IntegratorConfig cfg;
    cfg.t_final = t_final;
    cfg.sample_stride = sample_stride;
    cfg.drift_abort_tol = drift_abort_tol;
    cfg.dt_max = dt_max;
    if (dt && cfl) throw py::value_error("pass either dt or cfl, not both");
    if (dt) {
        cfg.dt = *dt;
    } else if (cfl) {
        cfg.adaptive = true;
        cfg.cfl = *cfl;
    } else {
        throw py::value_error("pass dt (fixed step) or cfl (adaptive)");
    }
    return cfg;
}

py::dict integrate_py(const Field& field, double alpha, double t_final,
                      std::optional<double> dt, std::optional<double> cfl, double dt_max,
                      int sample_stride, double drift_abort_tol, bool keep_series) {
    const IntegratorConfig cfg =
        make_integrator_config(t_final, dt, cfl, dt_max, sample_stride, drift_abort_tol);
    const VoigtParams params(alpha, field.state().grid());

    std::vector<TimeSeriesRecord> series;
    RunSummary summary;
    {
        py::gil_scoped_release release;
        DiagnosticsSink sink;
        if (keep_series) {
            sink = [&series](const TimeSeriesRecord& r) { series.push_back(r); };
        }
        summary = integrate_summary(field.state(), params, cfg, sink);
    }

    py::dict d = summary_to_dict(summary);
    if (keep_series) {
        py::list t, energy_col, enstrophy_col, alpha_energy_col, q_col, dt_col;
        for (const TimeSeriesRecord& r : series) {
            t.append(r.t);
            energy_col.append(r.energy);
            enstrophy_col.append(r.enstrophy);
            alpha_energy_col.append(r.alpha_energy);
            q_col.append(r.q);
            dt_col.append(r.dt_used);
        }
        py::dict sd;
        sd["t"] = t;
        sd["energy"] = energy_col;
        sd["enstrophy"] = enstrophy_col;
        sd["alpha_energy"] = alpha_energy_col;
        sd["q"] = q_col;
        sd["dt"] = dt_col;
        d["series"] = sd;
    }
    return d;
}

py::dict sweep_py(const std::string& kind, int n, const std::vector<double>& alphas,
                  double t_final, std::optional<double> dt, std::optional<double> cfl,
                  double dt_max, int sample_stride, double drift_abort_tol,
                  std::uint64_t seed, int modes, double k0, int workers,
                  int time_grid_points) {
    SweepConfig cfg;
    cfg.n = n;
    cfg.ic.kind = ic_kind_from_string(kind);
    cfg.ic.seed = seed;
    cfg.ic.shear_modes = modes;
    cfg.ic.k0 = k0;
    cfg.alphas = alphas;
    cfg.integrator =
        make_integrator_config(t_final, dt, cfl, dt_max, sample_stride, drift_abort_tol);
    cfg.workers = workers;
    cfg.time_grid_points = time_grid_points;

    SweepResult sweep;
    SweepAnalysis analysis;
    {
        py::gil_scoped_release release;
        sweep = run_sweep(cfg);
        analysis = analyze_sweep(sweep);
    }

    py::dict d;
    py::list runs;
    for (const SweepRun& run : sweep.runs) runs.append(summary_to_dict(run.summary));
    d["runs"] = runs;
    py::list points;
    for (const auto& [a, m] : analysis.new_curve) points.append(py::make_tuple(a, m));
    d["new_criterion_points"] = points;
    d["fit_new"] = fit_to_dict(analysis.verdict.fit_new);
    d["fit_old"] = fit_to_dict(analysis.verdict.fit_old);
    d["verdict_new"] = to_string(analysis.verdict.new_evidence);
    d["verdict_old"] = to_string(analysis.verdict.old_evidence);
    d["ordering_violations"] = analysis.comparison.violations;
    return d;
}

py::dict fit_power_law_py(const std::vector<double>& alphas,
                          const std::vector<double>& values) {
    if (alphas.size() != values.size()) {
        throw py::value_error("alphas and values must have equal length");
    }
    std::vector<std::pair<double, double>> points;
    points.reserve(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        points.emplace_back(alphas[i], values[i]);
    }
    return fit_to_dict(fit_power_law(points));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pseudospectral Euler-Voigt solver with blow-up-criterion diagnostics";

    py::class_<Field>(m, "Field")
        .def_static("from_real", &Field::from_real, py::arg("samples"),
                    "Build a state from real samples of shape (3, n, n, n), axes "
                    "(component, z, y, x); the field is projected and dealiased.")
        .def("to_real", &Field::to_real)
        .def_property_readonly("n", &Field::n)
        .def("energy", &Field::energy)
        .def("enstrophy", &Field::enstrophy)
        .def("alpha_energy", &Field::alpha_energy, py::arg("alpha"))
        .def("q", &Field::q, py::arg("alpha"))
        .def("identity_residual", &Field::identity_residual)
        .def("divergence_residual", &Field::divergence_residual)
        .def("spectrum", &Field::spectrum);

    m.def("make_initial_condition", &Field::make, py::arg("kind"), py::arg("n"),
          py::arg("seed") = 0, py::arg("A") = 1.0, py::arg("B") = 1.0, py::arg("C") = 1.0,
          py::arg("modes") = 1, py::arg("k0") = 3.0,
          "kinds: taylor-green, abc, shear, random-solenoidal");

    m.def("integrate", &integrate_py, py::arg("field"), py::arg("alpha"),
          py::arg("t_final"), py::arg("dt") = std::nullopt, py::arg("cfl") = std::nullopt,
          py::arg("dt_max") = 0.01, py::arg("sample_stride") = 1,
          py::arg("drift_abort_tol") = 1e-6, py::arg("keep_series") = false,
          "Advance the Euler-Voigt state to t_final; returns the run summary "
          "(M = sup_t alpha*||grad u||, drift, status, ...).");

    m.def("sweep", &sweep_py, py::arg("kind"), py::arg("n"), py::arg("alphas"),
          py::arg("t_final"), py::arg("dt") = std::nullopt, py::arg("cfl") = std::nullopt,
          py::arg("dt_max") = 0.01, py::arg("sample_stride") = 1,
          py::arg("drift_abort_tol") = 1e-6, py::arg("seed") = 0, py::arg("modes") = 1,
          py::arg("k0") = 3.0, py::arg("workers") = 1, py::arg("time_grid_points") = 11,
          "Run the alpha ladder from one shared initial condition and classify "
          "the blow-up evidence.");

    m.def("fit_power_law", &fit_power_law_py, py::arg("alphas"), py::arg("values"));
}
