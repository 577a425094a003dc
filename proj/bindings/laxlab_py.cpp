// Python bindings for the main operations.
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "laxlab/cmmodel.hpp"
#include "laxlab/errors.hpp"
#include "laxlab/twist.hpp"
#include "laxlab/verify.hpp"
#include "laxlab/znalgebra.hpp"

namespace py = pybind11;
using namespace laxlab;

namespace {

py::array_t<Complex> to_numpy(const CMatrix& m) {
    py::array_t<Complex> out({m.rows(), m.cols()});
    auto buf = out.mutable_unchecked<2>();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) buf(i, j) = m(i, j);
    return out;
}

PhasePoint make_point(const std::vector<double>& p, const std::vector<double>& q) {
    PhasePoint x;
    x.p = p;
    x.q = q;
    return x;
}

EllipticParams make_epar(Complex tau, int n, double eps) { return {tau, n, eps}; }

ModelParams make_mpar(int n, Complex tau, double gamma) {
    ModelParams par;
    par.n = n;
    par.tau = tau;
    par.gamma = gamma;
    return par;
}

}  // namespace

PYBIND11_MODULE(_laxlab, m) {
    m.doc() = "elliptic n-particle model: special functions, R/r-matrices, Lax fields";

    py::register_exception<PoleError>(m, "PoleError", PyExc_ValueError);
    py::register_exception<ValidityError>(m, "ValidityError", PyExc_ValueError);
    py::register_exception<InvalidModulusError>(m, "InvalidModulusError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<SingularMatrixError>(m, "SingularMatrixError", PyExc_RuntimeError);
    py::register_exception<RealnessError>(m, "RealnessError", PyExc_ValueError);

    m.def("theta_char",
          [](double a, double b, Complex z, Complex tau) {
              return theta_char({a, b}, z, tau);
          },
          py::arg("a"), py::arg("b"), py::arg("z"), py::arg("tau"));
    m.def("theta_j",
          [](int j, Complex u, Complex tau, int n) { return theta_j(j, u, make_epar(tau, n, 1e-15)); },
          py::arg("j"), py::arg("u"), py::arg("tau"), py::arg("n"));
    m.def("sigma", [](Complex u, Complex tau) { return sigma_fn(u, tau); });
    m.def("sigma_deriv",
          [](Complex u, Complex tau, int order) { return sigma_deriv(u, tau, order); },
          py::arg("u"), py::arg("tau"), py::arg("order") = 1);
    m.def("xi", [](Complex u, Complex tau) { return xi_fn(u, tau); });
    m.def("e_fn", [](Complex u, Complex v, Complex tau) { return e_fn(u, v, tau); });
    m.def("q_fn", [](Complex u, Complex tau) { return q_fn(u, tau); });

    m.def("belavin_r",
          [](Complex v, Complex w, Complex tau, int n) {
              return to_numpy(belavin_r_quantum(v, w, make_epar(tau, n, 1e-15)).m);
          },
          py::arg("v"), py::arg("w"), py::arg("tau"), py::arg("n"));
    m.def("classical_r",
          [](Complex v, Complex tau, int n) {
              return to_numpy(classical_r(v, make_epar(tau, n, 1e-15)).m);
          },
          py::arg("v"), py::arg("tau"), py::arg("n"));
    m.def("qybe_residual",
          [](Complex v1, Complex v2, Complex v3, Complex w, Complex tau, int n) {
              return qybe_residual(v1, v2, v3, w, make_epar(tau, n, 1e-15));
          });
    m.def("cybe_residual", [](Complex v1, Complex v2, Complex v3, Complex tau, int n) {
        return cybe_residual(v1, v2, v3, make_epar(tau, n, 1e-15));
    });
    m.def("antisymmetry_residual",
          [](Complex v, Complex tau, int n) {
              return antisymmetry_residual(v, make_epar(tau, n, 1e-15));
          });
    m.def("classical_limit_residual", [](Complex v, Complex w, Complex tau, int n) {
        return classical_limit_residual(v, w, make_epar(tau, n, 1e-15));
    });

    m.def("krichever_L",
          [](Complex u, int n, Complex tau, double gamma, const std::vector<double>& p,
             const std::vector<double>& q) {
              return to_numpy(krichever_L(u, make_mpar(n, tau, gamma)).value(make_point(p, q)));
          },
          py::arg("u"), py::arg("n"), py::arg("tau"), py::arg("gamma"), py::arg("p"),
          py::arg("q"));
    m.def("twisted_L",
          [](Complex u, int n, Complex tau, double gamma, const std::vector<double>& p,
             const std::vector<double>& q) {
              return to_numpy(twisted_L(u, make_mpar(n, tau, gamma)).value(make_point(p, q)));
          },
          py::arg("u"), py::arg("n"), py::arg("tau"), py::arg("gamma"), py::arg("p"),
          py::arg("q"));
    m.def("intertwiner_A",
          [](Complex u, const std::vector<double>& q, Complex tau, int n) {
              return to_numpy(intertwiner_A(u, q, make_epar(tau, n, 1e-15)));
          });
    m.def("hamiltonian",
          [](const std::vector<double>& p, const std::vector<double>& q, int n, Complex tau,
             double gamma) { return hamiltonian(make_point(p, q), make_mpar(n, tau, gamma)); });

    m.def("dynamical_bracket_residual",
          [](Complex u, Complex v, const std::vector<double>& p, const std::vector<double>& q,
             int n, Complex tau, double gamma) {
              return dynamical_bracket_residual(u, v, make_point(p, q), make_mpar(n, tau, gamma));
          });
    m.def("nondynamical_bracket_residual",
          [](Complex u, Complex v, const std::vector<double>& p, const std::vector<double>& q,
             int n, Complex tau, double gamma) {
              return nondynamical_bracket_residual(u, v, make_point(p, q),
                                                   make_mpar(n, tau, gamma));
          });

    m.def("theta_j_deriv",
          [](int j, Complex u, Complex tau, int n, int order) {
              return theta_j_deriv(j, u, make_epar(tau, n, 1e-15), order);
          },
          py::arg("j"), py::arg("u"), py::arg("tau"), py::arg("n"), py::arg("order") = 1);
    m.def("xi_deriv", [](Complex u, Complex tau) { return xi_deriv(u, tau); });
    m.def("trace_invariants",
          [](Complex u, const std::vector<double>& p, const std::vector<double>& q, int n,
             Complex tau, double gamma, int kmax) {
              return trace_invariants(u, make_point(p, q), make_mpar(n, tau, gamma), kmax);
          },
          py::arg("u"), py::arg("p"), py::arg("q"), py::arg("n"), py::arg("tau"),
          py::arg("gamma"), py::arg("kmax"));
    m.def("dynamical_r",
          [](Complex u, Complex v, const std::vector<double>& p, const std::vector<double>& q,
             int n, Complex tau, double gamma, bool printed) {
              return to_numpy(dynamical_r(u, v, make_point(p, q), make_mpar(n, tau, gamma),
                                          printed ? RConvention::printed
                                                  : RConvention::consistent));
          },
          py::arg("u"), py::arg("v"), py::arg("p"), py::arg("q"), py::arg("n"), py::arg("tau"),
          py::arg("gamma"), py::arg("printed") = false);
    m.def("momentum_shift_map",
          [](const std::vector<double>& p, const std::vector<double>& q, Complex s, Complex tau,
             int n, int sign) {
              const PhasePoint y =
                  momentum_shift_map(make_point(p, q), s, make_epar(tau, n, 1e-15), sign);
              return py::make_tuple(y.p, y.q);
          },
          py::arg("p"), py::arg("q"), py::arg("s"), py::arg("tau"), py::arg("n"),
          py::arg("sign") = 1);
    m.def("vandermonde_ratio", [](const std::vector<Complex>& u_list, Complex tau, int n) {
        return vandermonde_ratio(u_list, make_epar(tau, n, 1e-15));
    });
    m.def("twist_consistency_residual",
          [](Complex u, Complex v, const std::vector<double>& p, const std::vector<double>& q,
             int n, Complex tau, double gamma) {
              return twist_consistency_residual(u, v, make_point(p, q),
                                                make_mpar(n, tau, gamma));
          });
    m.def("run_verify",
          [](const std::vector<std::string>& suites, const std::vector<int>& n_list, Complex tau,
             double gamma, int trials, uint64_t seed) {
              VerifyConfig cfg;
              cfg.suites = suites;
              cfg.n_list = n_list;
              cfg.tau = tau;
              cfg.gamma = gamma;
              cfg.trials = trials;
              cfg.seed = seed;
              return run_verify(cfg).to_json().dump(2);
          },
          py::arg("suites") = std::vector<std::string>{"all"},
          py::arg("n_list") = std::vector<int>{2}, py::arg("tau") = Complex(0.0, 1.0),
          py::arg("gamma") = 1.0, py::arg("trials") = 5, py::arg("seed") = 42,
          "run the verification suites, returns the JSON report as a string");

    m.def("simulate",
          [](const std::vector<double>& p, const std::vector<double>& q, int n, double tau_im,
             double gamma, double dt, long steps, long sample_every) {
              IntegrateOptions opts;
              opts.dt = dt;
              opts.steps = steps;
              opts.sample_every = sample_every;
              const IntegrateResult res =
                  integrate(make_point(p, q), make_mpar(n, Complex(0, tau_im), gamma), opts);
              py::dict out;
              out["aborted"] = res.aborted;
              out["t"] = res.traj.t;
              out["H"] = res.traj.H;
              out["p_total"] = res.traj.p_total;
              if (res.aborted) {
                  out["t_abort"] = res.t_abort;
                  out["abort_reason"] = res.abort_reason;
              }
              return out;
          },
          py::arg("p"), py::arg("q"), py::arg("n"), py::arg("tau_im") = 1.0,
          py::arg("gamma") = 1.0, py::arg("dt") = 1e-3, py::arg("steps") = 1000,
          py::arg("sample_every") = 10);
}
