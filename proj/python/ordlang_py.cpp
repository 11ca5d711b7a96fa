// Python bindings: ordinals, programs, runs, size/bound evaluation and the
// classifier. Large naturals cross the boundary as Python ints.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ordlang/analysis.hpp"
#include "ordlang/classifier.hpp"
#include "ordlang/error.hpp"
#include "ordlang/machine.hpp"
#include "ordlang/ordinal.hpp"
#include "ordlang/program.hpp"
#include "ordlang/rewriter.hpp"
#include "ordlang/verify.hpp"

namespace py = pybind11;
using namespace ordlang;

namespace {

py::int_ to_py(const BigNat& v) {
  const std::string digits = v.get_str();
  return py::reinterpret_steal<py::int_>(PyLong_FromString(digits.c_str(), nullptr, 10));
}

BigNat from_py(const py::int_& v) {
  const std::string digits = py::str(v);
  if (!digits.empty() && digits[0] == '-') throw py::value_error("expected a natural number");
  return BigNat(digits);
}

py::int_ unwrap(const BoundedValue& v) {
  if (!v.is_exact()) throw py::value_error(v.to_string());
  return to_py(v.value());
}

Ordinal as_ordinal(const py::object& o) {
  if (py::isinstance<Ordinal>(o)) return o.cast<Ordinal>();
  if (py::isinstance<py::int_>(o)) return Ordinal::natural(o.cast<std::uint64_t>());
  return Ordinal::parse(o.cast<std::string>());
}

py::dict json_to_dict(const std::string& text) {
  return py::module_::import("json").attr("loads")(text).cast<py::dict>();
}

}  // namespace

PYBIND11_MODULE(_ordlang, m) {
  m.doc() = "Ordinal-indexed loop programs and their time hierarchy";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<FuelExhausted>(m, "FuelExhausted", base.ptr());

  py::class_<Ordinal>(m, "Ordinal")
      .def(py::init([](const py::object& o) { return as_ordinal(o); }), py::arg("value") = 0)
      .def_static("parse", &Ordinal::parse)
      .def_static("omega", &Ordinal::omega)
      .def("is_zero", &Ordinal::is_zero)
      .def("is_finite", &Ordinal::is_finite)
      .def("is_limit", &Ordinal::is_limit)
      .def("is_successor", &Ordinal::is_successor)
      .def("fundamental", [](const Ordinal& a, std::uint64_t k) { return fundamental(a, k); })
      .def("size", [](const Ordinal& a) { return ordinal_size(a); })
      .def("__add__", [](const Ordinal& a, const py::object& b) { return add(a, as_ordinal(b)); })
      .def("__mul__", [](const Ordinal& a, std::uint64_t k) { return mul_nat(a, k); })
      .def("__eq__", [](const Ordinal& a, const py::object& b) { return a == as_ordinal(b); })
      .def("__lt__", [](const Ordinal& a, const py::object& b) { return a < as_ordinal(b); })
      .def("__le__", [](const Ordinal& a, const py::object& b) { return a <= as_ordinal(b); })
      .def("__gt__", [](const Ordinal& a, const py::object& b) { return a > as_ordinal(b); })
      .def("__ge__", [](const Ordinal& a, const py::object& b) { return a >= as_ordinal(b); })
      .def("__hash__", [](const Ordinal& a) { return py::hash(py::str(a.to_string())); })
      .def("__str__", &Ordinal::to_string)
      .def("__repr__", [](const Ordinal& a) { return "Ordinal('" + a.to_string() + "')"; });

  m.def("omega_pow", [](const py::object& a) { return omega_pow(as_ordinal(a)); });

  py::class_<Program>(m, "Program")
      .def(py::init([](const std::string& text) { return parse_program(text); }))
      .def_property_readonly("length", &Program::length)
      .def_property_readonly("depth", &Program::depth)
      .def_property_readonly("ordinal", &Program::ordinal)
      .def("is_safe", [](const Program& p) { return is_safe(p); })
      .def("is_absorption_free", [](const Program& p) { return is_absorption_free(p); })
      .def("__eq__", [](const Program& a, const Program& b) { return a == b; })
      .def("__str__", [](const Program& p) { return render(p); })
      .def("__repr__", [](const Program& p) { return "Program('" + render(p) + "')"; });

  m.def("parse_program", [](const std::string& text) { return parse_program(text); });
  m.def("synthesize", [](const py::object& a) { return synthesize(as_ordinal(a)); },
        "Canonical program of an ordinal.");

  m.def(
      "run",
      [](const Program& p, std::uint64_t n, std::uint64_t fuel, bool trace) -> py::dict {
        if (!trace) {
          const auto s = length_run(p, n, fuel);
          py::dict d;
          d["finalLength"] = s.final_length;
          d["applications"] = s.applications;
          d["totalCost"] = s.total_cost;
          d["steps"] = s.steps;
          return d;
        }
        RunOptions opt;
        opt.fuel = fuel;
        return json_to_dict(trace_json(run(p, Datum::unary(n), Interpretation{}, opt)));
      },
      py::arg("program"), py::arg("n"), py::arg("fuel") = 100'000'000, py::arg("trace") = false,
      "Runs a program on a unary input of length n.");

  m.def(
      "size", [](const py::object& a, const py::int_& n) { return unwrap(size_fn(as_ordinal(a), from_py(n))); },
      py::arg("ordinal"), py::arg("n"),
      "Length added by the canonical program; ValueError when past the magnitude cap.");
  m.def(
      "runtime_bound",
      [](const py::object& a, const py::int_& n) { return unwrap(runtime_bound(as_ordinal(a), from_py(n))); },
      py::arg("ordinal"), py::arg("n"));
  m.def(
      "wainer", [](const py::object& a, const py::int_& n) { return unwrap(wainer(as_ordinal(a), from_py(n))); },
      py::arg("index"), py::arg("n"));
  m.def(
      "tower", [](const py::int_& base, std::uint64_t height, const py::int_& top) {
        return unwrap(tower_num(from_py(base), height, from_py(top)));
      },
      py::arg("base"), py::arg("height"), py::arg("top"));

  m.def("classify", [](const py::object& a) { return json_to_dict(classify(as_ordinal(a)).to_json()); });
  m.def("classify_program", [](const Program& p) { return json_to_dict(classify_program(p).to_json()); });

  m.def(
      "simulate",
      [](const std::string& machine_json, const py::object& a, std::uint64_t fuel) {
        const TuringMachine tm = TuringMachine::from_json(machine_json);
        const Simulation sim =
            simulate_via_language(tm, as_ordinal(a), Configuration::initial(tm.tapes()), fuel);
        py::dict d;
        d["steps"] = sim.steps;
        d["initialLength"] = sim.initial_length;
        d["state"] = sim.final.state;
        d["matchesDirect"] = sim.final == tm_run(tm, Configuration::initial(tm.tapes()), sim.steps);
        return d;
      },
      py::arg("machine_json"), py::arg("ordinal"), py::arg("fuel") = 100'000'000,
      "Runs a machine for size(ordinal) steps through its compiled program.");

  m.def(
      "verify",
      [](const std::string& key) {
        const auto r = run_criterion(find_criterion(key));
        py::dict d;
        d["id"] = r.id;
        d["name"] = r.name;
        d["passed"] = r.passed;
        d["detail"] = r.detail;
        return d;
      },
      py::arg("criterion"));
}
