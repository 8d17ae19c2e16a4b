#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <vector>

#include "clat/collective.hpp"
#include "clat/errors.hpp"
#include "clat/greens.hpp"
#include "clat/surface.hpp"
#include "clat/sweep.hpp"
#include "clat/version.hpp"

namespace py = pybind11;

namespace {

clat::surface::kind parse_kind(const std::string& s) {
    if (s == "plane") return clat::surface::kind::plane;
    if (s == "sphere") return clat::surface::kind::sphere;
    if (s == "free3d") return clat::surface::kind::free3d;
    throw clat::config_error("kind must be plane, sphere, or free3d");
}

clat::surface::emitter_array ring(const std::string& kind_s, int n, double spacing,
                                  double radius) {
    switch (parse_kind(kind_s)) {
        case clat::surface::kind::plane: return clat::surface::ring_on_plane(n, spacing);
        case clat::surface::kind::free3d: return clat::surface::ring_in_free3d(n, spacing);
        case clat::surface::kind::sphere:
        default: return clat::surface::ring_on_sphere(n, spacing, radius);
    }
}

clat::surface::descriptor parse_surf(const std::string& kind_s, double radius) {
    switch (parse_kind(kind_s)) {
        case clat::surface::kind::plane: return clat::surface::descriptor::plane();
        case clat::surface::kind::free3d: return clat::surface::descriptor::free3d();
        case clat::surface::kind::sphere:
        default: return clat::surface::descriptor::sphere(radius);
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Photon-mediated dipole interactions and collective decay on curved "
              "surface waveguides";
    m.attr("__version__") = clat::version;

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const clat::config_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const clat::domain_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const clat::geometry_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const clat::convergence_error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        } catch (const clat::numeric_error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def("green_plane", &clat::greens::green_plane, py::arg("r"), py::arg("keff"),
          "thin-plane Green function (i/4) H0(keff r); r in lambda0 units");
    m.def(
        "green_sphere_open",
        [](double theta, double radius, double keff) {
            return clat::greens::green_sphere_open(theta, radius, keff);
        },
        py::arg("theta"), py::arg("radius"), py::arg("keff"),
        "radiating sphere Green function at central angle theta (rad)");
    m.def(
        "green_sphere_closed",
        [](double theta, double radius, double keff) {
            return clat::greens::green_sphere_closed(theta, radius, keff);
        },
        py::arg("theta"), py::arg("radius"), py::arg("keff"),
        "standing-wave sphere Green function, real and finite at the antipode");
    m.def("green_free3d_zz", &clat::greens::green_free3d_zz, py::arg("r"), py::arg("k"),
          "free-space dyadic zz component for a perpendicular dipole pair");
    m.def("degree_from", &clat::greens::degree_from, py::arg("keff"), py::arg("radius"),
          "the degree nu solving nu(nu+1) = (keff R)^2");

    m.def(
        "effective_wavenumber",
        [](const std::string& kind, double n0, double k_perp_frac, double radius) {
            return clat::surface::effective_wavenumber(
                clat::surface::optics_from_frac(n0, k_perp_frac), parse_surf(kind, radius));
        },
        py::arg("kind"), py::arg("n0") = 1.0, py::arg("k_perp_frac") = 0.0,
        py::arg("radius") = 0.0,
        "in-surface propagation constant; raises ValueError in the evanescent regime");

    m.def(
        "interaction_matrix",
        [](const std::string& kind, int n, double spacing, double n0, double k_perp_frac,
           double radius) -> Eigen::MatrixXcd {
            return clat::collective::build_matrix(
                ring(kind, n, spacing, radius),
                clat::surface::optics_from_frac(n0, k_perp_frac));
        },
        py::arg("kind"), py::arg("n"), py::arg("spacing"), py::arg("n0") = 1.0,
        py::arg("k_perp_frac") = 0.0, py::arg("radius") = 0.0,
        "normalized effective interaction matrix of a ring array (complex NxN)");

    m.def(
        "eigenvalues",
        [](const Eigen::MatrixXcd& mat) { return clat::collective::eigenvalues(mat); },
        py::arg("matrix"), "raw complex eigenvalues, solver order");

    m.def(
        "spectrum",
        [](const std::string& kind, int n, double spacing, double n0, double k_perp_frac,
           double radius) {
            clat::collective::spectrum_result res = clat::collective::spectrum(
                ring(kind, n, spacing, radius),
                clat::surface::optics_from_frac(n0, k_perp_frac));
            std::vector<std::pair<double, double>> out;
            out.reserve(res.modes.size());
            for (const auto& mode : res.modes) out.emplace_back(mode.shift, mode.gamma);
            return out;
        },
        py::arg("kind"), py::arg("n"), py::arg("spacing"), py::arg("n0") = 1.0,
        py::arg("k_perp_frac") = 0.0, py::arg("radius") = 0.0,
        "(shift, gamma) pairs sorted by descending gamma, units of the single-emitter "
        "decay rate");

    m.def(
        "run_sweep",
        [](const std::string& config_json, int workers, const std::string& fmt) {
            clat::sweep::run_config cfg = clat::sweep::parse_config(config_json);
            if (!fmt.empty()) {
                if (fmt != "csv" && fmt != "json")
                    throw clat::config_error("format must be csv or json");
                cfg.format = fmt;
            }
            clat::sweep::sweep_result res = clat::sweep::run_sweep(cfg, workers);
            return cfg.format == "csv" ? clat::sweep::to_csv(res, cfg)
                                       : clat::sweep::to_json(res, cfg);
        },
        py::arg("config_json"), py::arg("workers") = 0, py::arg("format") = std::string(),
        "run a config-described sweep and return the emitted file as a string");
}
