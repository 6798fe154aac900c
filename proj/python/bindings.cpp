#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "app/report.hpp"
#include "quadax/chasles.hpp"
#include "quadax/confocal.hpp"
#include "quadax/constructibility.hpp"
#include "quadax/conjugate.hpp"
#include "quadax/error.hpp"
#include "quadax/rytz.hpp"

namespace py = pybind11;
using namespace quadax;

namespace {

// Results cross the boundary as plain dicts, built from the same JSON the
// CLI writes, so Python sees exactly the report schema.
py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ConjugateSystem system_of(const std::vector<std::vector<double>>& rows) {
  std::vector<Vec> d;
  d.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw invalid_input("expected a square list of semi-diameters");
    d.emplace_back(r);
  }
  return ConjugateSystem(std::move(d));
}

RatPoly quartic_of(const std::vector<std::string>& descending) {
  std::vector<Rat> c;
  for (auto it = descending.rbegin(); it != descending.rend(); ++it) c.push_back(parse_rat(*it));
  return RatPoly(std::move(c));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Principal axes of an ellipsoid from conjugate semi-diameters";

  static py::exception<Error> base(m, "QuadaxError", PyExc_RuntimeError);
  static py::exception<Error> bad_input(m, "InvalidInputError", base.ptr());
  static py::exception<Error> degenerate_exc(m, "DegenerateError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidInput)
        py::set_error(bad_input, e.what());
      else
        py::set_error(degenerate_exc, e.what());
    }
  });

  m.def("axes_oracle", [](const std::vector<std::vector<double>>& rows) {
    return to_py(json(axes_oracle(system_of(rows))));
  }, py::arg("diameters"), "Principal axes from the eigen-decomposition of X X^T.");

  m.def("chasles_axes", [](const std::vector<std::vector<double>>& rows, double tol, std::optional<std::size_t> role) {
    ChaslesOptions opt;
    opt.tol = tol;
    opt.role = role;
    const ChaslesResult r = chasles_axes(system_of(rows), opt);
    json j = {{"axes", r.axes}, {"degenerate_flag", r.degenerate_flag}, {"trace", r.trace}};
    return to_py(j);
  }, py::arg("diameters"), py::arg("tol") = 1e-8, py::arg("role") = py::none(),
     "Principal axes of a 3D system by the confocal construction, with its trace.");

  m.def("rytz_axes", [](const std::vector<double>& p, const std::vector<double>& q) {
    return to_py(json(rytz_axes(Vec(p), Vec(q))));
  }, py::arg("p"), py::arg("q"), "Axes of the ellipse spanned by a conjugate pair.");

  m.def("sum_of_squares", [](const std::vector<std::vector<double>>& rows) { return sum_of_squares(system_of(rows)); },
        py::arg("diameters"));
  m.def("volume", [](const std::vector<std::vector<double>>& rows) { return volume(system_of(rows)); },
        py::arg("diameters"));

  m.def("lambda_roots", [](const std::vector<double>& semi_axes, const std::vector<double>& point) {
    const ConfocalTriple t = lambda_roots(Ellipsoid(semi_axes), Vec(point));
    std::vector<std::vector<double>> table(t.dim(), std::vector<double>(t.dim()));
    for (std::size_t i = 0; i < t.dim(); ++i)
      for (std::size_t j = 0; j < t.dim(); ++j) table[i][j] = t.sq(i, j);
    const RecoveredCoordinates rc = recover_coordinates(t);
    py::dict d;
    d["lambdas"] = t.lambdas;
    d["table"] = table;
    d["interlaced"] = t.interlaced();
    d["recovered_abs"] = rc.abs;
    return d;
  }, py::arg("semi_axes"), py::arg("point"), "Parameters of the confocal quadrics through a point.");

  m.def("quartic_constructibility", [](const std::vector<std::string>& coeffs) {
    return to_py(json(quartic_constructibility(quartic_of(coeffs))));
  }, py::arg("coeffs"), "Verdict for an exact quartic given as descending 'p/q' coefficients.");

  m.def("instance_constructibility",
        [](const std::string& a, const std::string& b, const std::string& x, const std::string& y,
           const std::string& zsq) {
          return to_py(json(instance_constructibility(parse_rat(a), parse_rat(b), parse_rat(x), parse_rat(y),
                                                      parse_rat(zsq))));
        },
        py::arg("a"), py::arg("b"), py::arg("x"), py::arg("y"), py::arg("zsq"),
        "Verdict for the intersection quartic of exact parameters.");
}
