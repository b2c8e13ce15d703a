#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qseries/cli.hpp"
#include "qseries/errors.hpp"
#include "qseries/evaluator.hpp"
#include "qseries/expr.hpp"
#include "qseries/lambert.hpp"
#include "qseries/modeq.hpp"
#include "qseries/registry.hpp"

namespace py = pybind11;
using namespace qseries;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(r));
}

// Reports are built for the CLI's JSON output; reuse that shape.
py::object from_json(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::list terms(const QSeries& s) {
  py::list out;
  for (const auto& t : s.terms()) out.append(py::make_tuple(fraction(ratio(t.key, s.granularity())), fraction(t.coeff)));
  return out;
}

QSeries expand_series(const std::string& expr, std::int64_t order, std::int64_t granularity) {
  const QSeries s = dsl::evaluate_to_order(*dsl::parse(expr), order, granularity);
  return s.truncated(std::min(Rational(order), s.truncation()));
}

VerifyOptions options(std::optional<std::int64_t> order, std::int64_t granularity) {
  VerifyOptions opts;
  opts.order = order;
  opts.granularity = granularity;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact q-series expansion and identity verification";

  static py::exception<Error> base(m, "QSeriesError", PyExc_ValueError);
  static py::exception<dsl::ParseError> parse_error(m, "ParseError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dsl::ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const Error& e) {
      py::set_error(base, (std::string(e.kind()) + ": " + e.what()).c_str());
    }
  });

  m.def(
      "expand",
      [](const std::string& expr, std::int64_t order, std::int64_t granularity) {
        return terms(expand_series(expr, order, granularity));
      },
      py::arg("expr"), py::arg("order") = 20, py::arg("granularity") = 1,
      "Nonzero terms of the expansion as (exponent, coefficient) Fraction pairs, below `order`.");

  m.def(
      "expand_text",
      [](const std::string& expr, std::int64_t order, std::int64_t granularity) {
        return expand_series(expr, order, granularity).to_string();
      },
      py::arg("expr"), py::arg("order") = 20, py::arg("granularity") = 1);

  m.def(
      "normalize", [](const std::string& expr) { return dsl::print(*dsl::parse(expr)); }, py::arg("expr"),
      "Canonical printed form of a DSL expression.");

  m.def("record_ids", [] {
    std::vector<std::string> ids;
    for (const auto& r : default_registry().records) ids.push_back(r.id);
    return ids;
  });

  m.def(
      "verify",
      [](const std::string& id, std::optional<std::int64_t> order, std::int64_t granularity) {
        const IdentityRecord* rec = default_registry().find(id);
        if (!rec) throw py::key_error("unknown record id " + id);
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = verify(*rec, options(order, granularity));
        }
        return from_json(to_json(r));
      },
      py::arg("id"), py::arg("order") = py::none(), py::arg("granularity") = 0);

  m.def(
      "verify_all",
      [](std::optional<std::int64_t> order, const std::string& id_filter) {
        std::vector<VerificationReport> reports;
        {
          py::gil_scoped_release release;
          reports = verify_all(default_registry(), options(order, 0), id_filter);
        }
        py::list out;
        for (const auto& r : reports) out.append(from_json(to_json(r)));
        return out;
      },
      py::arg("order") = py::none(), py::arg("id_filter") = "");

  m.def(
      "bernoulli", [](int k) { return fraction(bernoulli(k)); }, py::arg("k"));

  m.def(
      "modular_residual",
      [](std::int64_t order, const std::string& variant) {
        if (variant != "printed" && variant != "derived") throw py::value_error("variant must be printed or derived");
        const ModularResidual r =
            modular_eq_residual(order, variant == "printed" ? ModularVariant::AsPrinted : ModularVariant::AsDerived);
        py::dict d;
        d["zero"] = r.residual.is_zero();
        d["integral"] = r.integral;
        d["radicals_on_lattice"] = r.radicals_on_lattice;
        d["order"] = fraction(r.order_checked);
        d["terms"] = terms(r.residual);
        return d;
      },
      py::arg("order") = 100, py::arg("variant") = "derived");

  m.def(
      "degree_check", [](double q) { return from_json(to_json(degree_check(q))); }, py::arg("q"),
      "Numeric degree-5 check at 0 < q <= 0.2.");
}
