#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "fucikhom/errors.hpp"
#include "fucikhom/fucik.hpp"
#include "fucikhom/homrates.hpp"
#include "fucikhom/plap.hpp"
#include "fucikhom/weights.hpp"

namespace py = pybind11;
using namespace fucikhom;

namespace {

py::dict estimate_dict(const EigenEstimate& e) {
  py::dict d;
  d["lambda"] = e.lambda;
  d["method"] = e.method == EigenMethod::Shooting
                    ? "shooting"
                    : (e.method == EigenMethod::Rayleigh ? "rayleigh"
                                                         : "closed_form");
  d["residual"] = e.residual;
  d["evaluations"] = e.evaluations;
  return d;
}

py::dict record_dict(const RateRecord& r) {
  py::dict d;
  d["eps"] = r.eps;
  d["gap"] = r.measured_gap;
  d["bound"] = r.bound;
  d["ratio"] = r.ratio;
  d["degenerate"] = r.degenerate;
  return d;
}

py::dict report_dict(const SweepReport& rep) {
  py::dict d;
  py::list recs;
  for (const auto& r : rep.records) recs.append(record_dict(r));
  d["records"] = recs;
  d["fitted_order"] = rep.fitted_order;
  d["usable_records"] = rep.usable_records;
  d["quantity"] = rep.quantity;
  return d;
}

Sign parse_sign(const std::string& s) {
  if (s == "plus" || s == "+") return Sign::Plus;
  if (s == "minus" || s == "-") return Sign::Minus;
  throw std::invalid_argument("sign must be 'plus' or 'minus'");
}

}  // namespace

PYBIND11_MODULE(_fucikhom, m) {
  m.doc() =
      "Fucik eigencurves of the weighted 1D p-Laplacian and homogenization "
      "rate verification";

  py::register_exception<SolverError>(m, "SolverError");
  py::register_exception<BoundViolation>(m, "BoundViolation");

  py::class_<Interval>(m, "Interval")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_readonly("a", &Interval::a)
      .def_readonly("b", &Interval::b)
      .def("length", &Interval::length);

  py::class_<PeriodicWeight>(m, "PeriodicWeight")
      .def_static("constant", &PeriodicWeight::constant, py::arg("value"))
      .def_static("piecewise", &PeriodicWeight::piecewise, py::arg("breaks"),
                  py::arg("values"))
      .def_static("trigonometric", &PeriodicWeight::trigonometric,
                  py::arg("offset"), py::arg("amplitude"),
                  py::arg("frequency"))
      .def("with_declared_bounds", &PeriodicWeight::with_declared_bounds)
      .def("eval", &PeriodicWeight::eval, py::arg("y"))
      .def("eval_scaled", &PeriodicWeight::eval_scaled, py::arg("eps"),
           py::arg("x"))
      .def("mean", &PeriodicWeight::mean)
      .def("sup_deviation", &PeriodicWeight::sup_deviation)
      .def("theta_minus", &PeriodicWeight::theta_minus)
      .def("theta_plus", &PeriodicWeight::theta_plus)
      .def("__repr__", &PeriodicWeight::describe);

  py::class_<Partition>(m, "Partition")
      .def_readonly("breakpoints", &Partition::breakpoints)
      .def_property_readonly("sign_start", [](const Partition& p) {
        return p.sign_start == Sign::Plus ? "plus" : "minus";
      });

  py::class_<CurvePoint>(m, "CurvePoint")
      .def_readonly("k", &CurvePoint::k)
      .def_readonly("s", &CurvePoint::s)
      .def_readonly("c", &CurvePoint::c)
      .def_readonly("alpha", &CurvePoint::alpha)
      .def_readonly("beta", &CurvePoint::beta)
      .def_readonly("partition", &CurvePoint::partition)
      .def_readonly("outside_stated_validity",
                    &CurvePoint::outside_stated_validity)
      .def_property_readonly("sign", [](const CurvePoint& p) {
        return p.sign == Sign::Plus ? "plus" : "minus";
      });

  m.def("pi_p", &pi_p, py::arg("p"));
  m.def("pi_p_closed_form", &pi_p_closed_form, py::arg("p"));
  m.def("mu_k", &mu_k, py::arg("interval"), py::arg("k"), py::arg("p"));
  m.def("lambda_k_constant", &lambda_k_constant, py::arg("c"),
        py::arg("interval"), py::arg("k"), py::arg("p"));
  m.def("gamma_factor", &gamma_factor, py::arg("s"));

  m.def(
      "lambda1_shoot",
      [](const PeriodicWeight& w, std::optional<double> eps, Interval I,
         double p, double tol) {
        return estimate_dict(lambda1_shoot(w, eps, I, p, tol));
      },
      py::arg("weight"), py::arg("eps"), py::arg("interval"), py::arg("p"),
      py::arg("tol") = 1e-8);
  m.def(
      "lambda_k_shoot",
      [](const PeriodicWeight& w, std::optional<double> eps, Interval I,
         int k, double p, double tol) {
        return estimate_dict(lambda_k_shoot(w, eps, I, k, p, tol));
      },
      py::arg("weight"), py::arg("eps"), py::arg("interval"), py::arg("k"),
      py::arg("p"), py::arg("tol") = 1e-8);
  m.def(
      "lambda1_rayleigh",
      [](const PeriodicWeight& w, std::optional<double> eps, Interval I,
         double p, int grid_n) {
        return estimate_dict(lambda1_rayleigh(w, eps, I, p, grid_n));
      },
      py::arg("weight"), py::arg("eps"), py::arg("interval"), py::arg("p"),
      py::arg("grid_n") = 2048);

  m.def(
      "c_value",
      [](int k, const std::string& sign, double s, const PeriodicWeight& m_,
         const PeriodicWeight& n_, std::optional<double> eps, Interval I,
         double p, double tol) {
        return c_value(k, parse_sign(sign), s, m_, n_, eps, I, p, tol);
      },
      py::arg("k"), py::arg("sign"), py::arg("s"), py::arg("m"), py::arg("n"),
      py::arg("eps"), py::arg("interval"), py::arg("p"),
      py::arg("tol") = 1e-9);
  m.def(
      "closed_form_constant",
      [](int k, const std::string& sign, double s, double m0, double n0,
         Interval I, double p) {
        return closed_form_constant(k, parse_sign(sign), s, m0, n0, I, p);
      },
      py::arg("k"), py::arg("sign"), py::arg("s"), py::arg("m0"),
      py::arg("n0"), py::arg("interval"), py::arg("p"));
  m.def(
      "trace_curve",
      [](int k, const std::string& sign, const std::vector<double>& s_list,
         const PeriodicWeight& m_, const PeriodicWeight& n_,
         std::optional<double> eps, Interval I, double p, double tol) {
        return trace_curve(k, parse_sign(sign), s_list, m_, n_, eps, I, p,
                           tol);
      },
      py::arg("k"), py::arg("sign"), py::arg("s_list"), py::arg("m"),
      py::arg("n"), py::arg("eps"), py::arg("interval"), py::arg("p"),
      py::arg("tol") = 1e-9);

  m.def("constant_Cr", &constant_Cr, py::arg("weight"), py::arg("p"),
        py::arg("N") = 1);
  m.def("constant_C_1d", &constant_C_1d, py::arg("m"), py::arg("n"),
        py::arg("p"), py::arg("interval"));
  m.def("constant_C_Nd", &constant_C_Nd, py::arg("m"), py::arg("n"),
        py::arg("p"), py::arg("N"), py::arg("mu2"));

  m.def(
      "sweep_eigen",
      [](const PeriodicWeight& w, Interval I, double p,
         const std::vector<double>& eps_list, double tol, int jobs) {
        return report_dict(sweep_eigen(w, I, p, eps_list, tol, jobs));
      },
      py::arg("weight"), py::arg("interval"), py::arg("p"),
      py::arg("eps_list"), py::arg("tol") = 1e-8, py::arg("jobs") = 1);
  m.def(
      "sweep_fucik",
      [](int k, const std::string& sign, double s, const PeriodicWeight& m_,
         const PeriodicWeight& n_, Interval I, double p,
         const std::vector<double>& eps_list, double tol, int jobs) {
        const FucikSweepReport rep =
            sweep_fucik(k, parse_sign(sign), s, m_, n_, I, p, eps_list, tol,
                        jobs);
        py::dict d;
        d["alpha"] = report_dict(rep.alpha);
        d["beta"] = report_dict(rep.beta);
        d["stated_bound_alpha"] = rep.stated_bound_alpha;
        d["stated_bound_beta"] = rep.stated_bound_beta;
        d["stated_k_bound_held"] = rep.stated_k_bound_held;
        return d;
      },
      py::arg("k"), py::arg("sign"), py::arg("s"), py::arg("m"), py::arg("n"),
      py::arg("interval"), py::arg("p"), py::arg("eps_list"),
      py::arg("tol") = 1e-9, py::arg("jobs") = 1);
}
