#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "hypzeta/error.hpp"
#include "hypzeta/geodesics.hpp"
#include "hypzeta/homcount.hpp"
#include "hypzeta/io.hpp"
#include "hypzeta/resonances.hpp"
#include "hypzeta/schottky.hpp"
#include "hypzeta/transfer.hpp"
#include "hypzeta/zeta.hpp"

namespace py = pybind11;
using namespace hypzeta;

namespace {

Rect to_rect(const std::vector<double>& r) {
  if (r.size() != 4) throw Error(ErrorCode::InvalidArgument, "rect needs (re_min, re_max, im_min, im_max)");
  return {r[0], r[1], r[2], r[3]};
}

ThetaPoint to_theta(const SchottkyGroup& g, std::vector<double> theta) {
  if (theta.empty()) theta.assign(g.rank(), 0.0);
  if (static_cast<int>(theta.size()) != g.rank())
    throw Error(ErrorCode::InvalidArgument, "theta needs one coordinate per generator");
  return ThetaPoint(std::move(theta));
}

py::dict resonance_dict(const Resonance& z) {
  py::dict d;
  d["s"] = z.s;
  d["multiplicity"] = z.multiplicity;
  d["theta"] = z.theta.coords();
  d["winding"] = z.winding;
  d["newton_residual"] = z.newton_residual;
  d["det_error"] = z.det_error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resonances and twisted zeta functions of Schottky surfaces";

  static py::exception<Error> error(m, "HypzetaError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<SchottkyGroup>(m, "SchottkyGroup")
      .def_property_readonly("rank", &SchottkyGroup::rank)
      .def_property_readonly("discs",
                             [](const SchottkyGroup& g) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& d : g.discs()) out.emplace_back(d.center, d.radius);
                               return out;
                             })
      .def_property_readonly("generators",
                             [](const SchottkyGroup& g) {
                               std::vector<std::vector<double>> out;
                               for (const auto& h : g.generators()) out.push_back({h.a, h.b, h.c, h.d});
                               return out;
                             })
      .def("to_json", [](const SchottkyGroup& g) { return group_to_json(g).dump(2); })
      .def("__repr__", [](const SchottkyGroup& g) {
        return "<SchottkyGroup rank " + std::to_string(g.rank()) + ">";
      });

  m.def("three_funnel", &three_funnel, py::arg("l1"), py::arg("l2"), py::arg("outer_center") = 3.0);
  m.def("cylinder", &cylinder, py::arg("length"));
  m.def("parse_group", &parse_group, py::arg("text"));
  m.def("load_group", [](const std::string& path) { return load_group(path); }, py::arg("path"));
  m.def("validate", [](const SchottkyGroup& g) {
    std::vector<std::string> out;
    for (const auto& v : validate(g).violations) out.push_back(v.describe());
    return out;
  });

  m.def("pressure", py::overload_cast<const SchottkyGroup&, double, int>(&pressure), py::arg("group"),
        py::arg("sigma"), py::arg("order") = kDefaultOrder);
  m.def("hausdorff_dimension", py::overload_cast<const SchottkyGroup&, int>(&hausdorff_dimension),
        py::arg("group"), py::arg("order") = kDefaultOrder);
  m.def("largest_real_zero", py::overload_cast<const SchottkyGroup&, int>(&largest_real_zero),
        py::arg("group"), py::arg("order") = kDefaultOrder);

  m.def(
      "zeta",
      [](const SchottkyGroup& g, cplx s, std::vector<double> theta, int order) {
        const auto v = zeta_det(g, s, to_theta(g, std::move(theta)), order);
        return py::make_tuple(v.value, v.error_estimate);
      },
      py::arg("group"), py::arg("s"), py::arg("theta") = std::vector<double>{},
      py::arg("order") = kDefaultOrder, "det(I - L_{s,theta}) and its order-doubling error estimate");

  m.def(
      "find_zeros",
      [](const SchottkyGroup& g, const std::vector<double>& rect, std::vector<double> theta, int order) {
        ResonanceSolver solver(g, order);
        const auto res = solver.find(to_rect(rect), to_theta(g, std::move(theta)));
        py::list zeros;
        for (const auto& z : res.zeros) zeros.append(resonance_dict(z));
        py::dict d;
        d["zeros"] = zeros;
        d["count"] = res.count;
        d["complete"] = res.complete;
        d["note"] = res.note;
        return d;
      },
      py::arg("group"), py::arg("rect"), py::arg("theta") = std::vector<double>{},
      py::arg("order") = kDefaultOrder);

  m.def(
      "count_zeros",
      [](const SchottkyGroup& g, const std::vector<double>& rect, std::vector<double> theta, int order) {
        return count_zeros(g, to_rect(rect), to_theta(g, std::move(theta)), order);
      },
      py::arg("group"), py::arg("rect"), py::arg("theta") = std::vector<double>{},
      py::arg("order") = kDefaultOrder);

  m.def(
      "cover_resonances",
      [](const SchottkyGroup& g, std::vector<int> moduli, const std::vector<double>& rect, int order) {
        const auto scan = cover_resonances(g, CoverSpec{std::move(moduli)}, to_rect(rect), order);
        py::list zeros;
        for (const auto& z : scan.zeros) zeros.append(resonance_dict(z));
        return py::make_tuple(zeros, scan.complete);
      },
      py::arg("group"), py::arg("moduli"), py::arg("rect"), py::arg("order") = kDefaultOrder);

  m.def(
      "phi",
      [](const SchottkyGroup& g, std::vector<double> theta, double delta, int order) {
        ResonanceSolver solver(g, order);
        PhiOptions opt;
        opt.order = order;
        opt.delta = delta;
        return phi_at(solver, theta, opt);
      },
      py::arg("group"), py::arg("theta"), py::arg("delta"), py::arg("order") = kDefaultOrder,
      "Real zero near delta continued from theta = 0");

  m.def(
      "primitive_classes",
      [](const SchottkyGroup& g, double max_length) {
        const auto table = enumerate_primitives_by_length(g, max_length);
        py::list out;
        for (const auto& c : table.classes)
          if (c.length <= max_length) out.append(py::make_tuple(c.representative.letters, c.length, c.hom));
        return out;
      },
      py::arg("group"), py::arg("max_length"), "(word, length, homology) for every class up to max_length");

  m.def(
      "count_homology",
      [](const SchottkyGroup& g, const HomologyVector& alpha, double T) { return count_homology(g, alpha, T); },
      py::arg("group"), py::arg("alpha"), py::arg("T"));
}
