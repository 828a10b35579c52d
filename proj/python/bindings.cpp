#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fanozeta/errors.hpp"
#include "fanozeta/field.hpp"
#include "fanozeta/pipeline.hpp"
#include "fanozeta/weil.hpp"

namespace py = pybind11;
namespace fz = fanozeta;

namespace {

py::int_ to_py(const mpz_class& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

mpz_class from_py(const py::handle& h) { return mpz_class(py::str(py::int_(py::reinterpret_borrow<py::object>(h))).cast<std::string>()); }

py::list to_py(const std::vector<mpz_class>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

std::vector<mpz_class> from_py_list(const py::sequence& seq) {
  std::vector<mpz_class> out;
  for (auto item : seq) out.push_back(from_py(item));
  return out;
}

py::object fraction(const mpq_class& x) {
  return py::module_::import("fractions").attr("Fraction")(to_py(x.get_num()), to_py(x.get_den()));
}

fz::WeilPolynomial weil(std::uint64_t q, const py::sequence& coeffs, unsigned weight) {
  return {from_py_list(coeffs), weight, q};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Zeta functions of cubic threefolds and their Fano surfaces";

  static py::exception<fz::Error> base(m, "FanoZetaError");
  static py::exception<fz::InputError> input(m, "InputError", base.ptr());
  static py::exception<fz::NoRationalLineError> no_line(m, "NoRationalLineError", base.ptr());
  static py::exception<fz::ResourceError> resource(m, "ResourceError", base.ptr());
  static py::exception<fz::InvariantError> invariant(m, "InvariantError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const fz::InputError& e) {
      input(e.what());
    } catch (const fz::NoRationalLineError& e) {
      no_line(e.what());
    } catch (const fz::ResourceError& e) {
      resource(e.what());
    } catch (const fz::InvariantError& e) {
      invariant(e.what());
    } catch (const fz::Error& e) {
      base(e.what());
    }
  });

  py::class_<fz::Field, std::shared_ptr<fz::Field>>(m, "Field")
      .def(py::init([](std::uint32_t p, std::uint32_t r) {
             return std::const_pointer_cast<fz::Field>(fz::make_field(p, r));
           }),
           py::arg("p"), py::arg("r") = 1)
      .def_property_readonly("characteristic", &fz::Field::characteristic)
      .def_property_readonly("degree", &fz::Field::degree)
      .def_property_readonly("order", &fz::Field::order)
      .def_property_readonly("modulus", &fz::Field::modulus)
      .def("add", [](const fz::Field& F, std::uint64_t a, std::uint64_t b) { return F.add({a}, {b}).code; })
      .def("mul", [](const fz::Field& F, std::uint64_t a, std::uint64_t b) { return F.mul({a}, {b}).code; })
      .def("inv", [](const fz::Field& F, std::uint64_t a) { return F.inv({a}).code; })
      .def("pow", [](const fz::Field& F, std::uint64_t a, std::uint64_t e) { return F.pow({a}, e).code; })
      .def("square_class", [](const fz::Field& F, std::uint64_t a) {
        switch (F.square_class({a})) {
          case fz::SquareClass::zero: return "zero";
          case fz::SquareClass::square: return "square";
          default: return "nonsquare";
        }
      });

  m.def("preset", [](const std::string& name) { return fz::job_to_json(fz::preset(name), -1); },
        "Job JSON for a named preset.");
  m.def("job_hash", [](const std::string& job) { return fz::job_hash(fz::job_from_json(job)); });
  m.def(
      "run",
      [](const std::string& job, bool scan) {
        auto spec = fz::job_from_json(job);
        fz::ZetaReport rep;
        {
          py::gil_scoped_release release;
          rep = scan ? fz::scan_last_trace(spec) : fz::run(spec);
        }
        return fz::report_to_json(rep, -1);
      },
      py::arg("job"), py::arg("scan_last_trace") = false, "Runs a job given as JSON; returns the report JSON.");
  m.def("find_line", [](const std::string& job) {
    auto spec = fz::job_from_json(job);
    spec.line.reset();
    auto res = fz::resolve(spec);
    py::list rows;
    for (const auto& row : res.line->rows()) {
      py::list r;
      for (auto x : row) r.append(x.code);
      rows.append(r);
    }
    return py::make_tuple(res.field->order(), rows);
  });

  m.def("p1_from_traces", [](std::uint64_t q, const py::sequence& s) {
    return to_py(fz::p1_from_traces(q, from_py_list(s)).coeffs);
  });
  m.def("power_sums", [](const py::sequence& coeffs, std::size_t n) {
    return to_py(fz::power_sums(from_py_list(coeffs), n));
  });
  m.def("wedge_square", [](std::uint64_t q, const py::sequence& p1) {
    return to_py(fz::wedge_square(weil(q, p1, 1)).coeffs);
  });
  m.def("picard_number", [](std::uint64_t q, const py::sequence& p2) { return fz::picard_number(weil(q, p2, 2)); });
  m.def("geometric_picard", [](std::uint64_t q, const py::sequence& p1) {
    return fz::geometric_picard(weil(q, p1, 1));
  });
  m.def("artin_tate", [](std::uint64_t q, const py::sequence& p2, unsigned rho) {
    return fraction(fz::artin_tate(weil(q, p2, 2), rho).value);
  });
  m.def("is_rational_square", [](const py::object& num, const py::object& den) {
    mpq_class x(from_py(num), from_py(den));
    x.canonicalize();
    return fz::is_rational_square(x) == fz::SquareVerdict::square;
  });
  m.def("nr_cubic", [](std::uint64_t q, unsigned r, const py::object& s) { return to_py(fz::nr_cubic(q, r, from_py(s))); });
  m.def("nr_fano", [](std::uint64_t q, const py::sequence& p1, unsigned r) {
    return to_py(fz::nr_fano(weil(q, p1, 1), r));
  });
  m.def("cyclotomic_poly", [](unsigned n) { return to_py(fz::cyclotomic_poly(n)); });
  m.def(
      "roots_on_circle",
      [](const py::sequence& coeffs, double modulus, double tol) {
        auto rc = fz::roots_on_circle(from_py_list(coeffs), modulus, tol);
        return py::make_tuple(rc.on_circle, rc.max_deviation);
      },
      py::arg("coeffs"), py::arg("modulus"), py::arg("tol") = fz::kDefaultTol);
  m.def(
      "feasible_last_trace",
      [](std::uint64_t q, const py::sequence& prefix, double tol) {
        auto a = from_py_list(prefix);
        fz::LastTraceScan scan;
        {
          py::gil_scoped_release release;
          scan = fz::feasible_last_trace(q, a, tol);
        }
        py::dict out;
        out["radius"] = scan.radius;
        out["center"] = scan.center;
        out["lo"] = scan.lo;
        out["hi"] = scan.hi;
        out["passing"] = scan.passing;
        return out;
      },
      py::arg("q"), py::arg("a1_to_a4"), py::arg("tol") = fz::kDefaultTol);
}
