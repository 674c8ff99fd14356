#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "folkcat/catlim.hpp"
#include "folkcat/model.hpp"
#include "folkcat/parse.hpp"
#include "folkcat/report.hpp"
#include "folkcat/suites.hpp"
#include "folkcat/weights.hpp"

namespace py = pybind11;
using namespace folkcat;

namespace {

FactorMode mode_from(const std::string& s) {
  if (s == "we-fib") return FactorMode::WeThenFib;
  if (s == "cof-trivfib") return FactorMode::CofThenTrivFib;
  if (s == "trivcof-fib") return FactorMode::TrivCofThenFib;
  throw ShapeError("unknown mode: " + s + " (we-fib | cof-trivfib | trivcof-fib)");
}

NamedCat named_from(const std::string& s) {
  if (s == "zero") return NamedCat::Zero;
  if (s == "one") return NamedCat::One;
  if (s == "two") return NamedCat::TwoDiscrete;
  if (s == "arrow") return NamedCat::Arrow;
  if (s == "pair") return NamedCat::ParallelPair;
  if (s == "iso") return NamedCat::FreeIso;
  throw ShapeError("unknown category name: " + s +
                   " (zero | one | two | arrow | pair | iso)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact decision procedures for the folklore model structure on Cat";

  py::register_exception<ShapeError>(m, "ShapeError");
  py::register_exception<SizeGuardError>(m, "SizeGuardError");
  py::register_exception<InternalFault>(m, "InternalFault");
  py::register_exception<ParseError>(m, "FormatError");

  py::class_<FinCat>(m, "FinCat")
      .def_property_readonly("objects",
                             [](const FinCat& c) {
                               std::vector<std::string> out;
                               for (ObjId a = 0; a < c.object_count(); ++a)
                                 out.push_back(c.object_name(a));
                               return out;
                             })
      .def_property_readonly("arrows",
                             [](const FinCat& c) {
                               std::vector<std::string> out;
                               for (MorId x = 0; x < c.morphism_count(); ++x)
                                 out.push_back(c.morphism_name(x));
                               return out;
                             })
      .def("to_text", [](const FinCat& c, const std::string& n) { return to_text(c, n); },
           py::arg("name") = "C")
      .def("__repr__", [](const FinCat& c) {
        return "<FinCat with " + std::to_string(c.object_count()) + " objects, " +
               std::to_string(c.morphism_count()) + " morphisms>";
      });

  py::class_<FinFunctor>(m, "FinFunctor")
      .def_readonly("dom", &FinFunctor::dom)
      .def_readonly("cod", &FinFunctor::cod)
      .def("__repr__", [](const FinFunctor& f) {
        return "<FinFunctor " + std::to_string(f.dom.object_count()) + "/" +
               std::to_string(f.dom.morphism_count()) + " -> " +
               std::to_string(f.cod.object_count()) + "/" +
               std::to_string(f.cod.morphism_count()) + ">";
      });

  py::class_<Weight>(m, "Weight")
      .def_readonly("base", &Weight::base);
  py::class_<Diagram>(m, "Diagram")
      .def_readonly("base", &Diagram::base);

  py::class_<Document>(m, "Document")
      .def("category", &Document::category, py::return_value_policy::copy)
      .def("functor", &Document::functor, py::return_value_policy::copy)
      .def("weight", &Document::weight, py::return_value_policy::copy)
      .def("diagram", &Document::diagram, py::return_value_policy::copy)
      .def_property_readonly("category_names",
                             [](const Document& d) {
                               std::vector<std::string> out;
                               for (const auto& [k, v] : d.categories) out.push_back(k);
                               return out;
                             })
      .def_property_readonly("functor_names", [](const Document& d) {
        std::vector<std::string> out;
        for (const auto& [k, v] : d.functors) out.push_back(k);
        return out;
      });

  m.def("parse_document", &parse_document);
  m.def("parse_file", &parse_file);
  m.def("named", [](const std::string& s) { return named(named_from(s)); });
  m.def("chaotic", &chaotic);
  m.def("identity", &identity_functor);
  m.def("compose", &compose_functors);

  // JSON-reporting entry points; the python package decodes them into dicts
  m.def("classify_json",
        [](const FinFunctor& f) { return describe(classify(f)).dump(); });
  m.def("factor_json", [](const FinFunctor& f, const std::string& mode) {
    return describe(factor(f, mode_from(mode))).dump();
  });
  m.def("lift_json",
        [](const FinFunctor& i, const FinFunctor& p, const FinFunctor& top,
           const FinFunctor& bottom) -> std::optional<std::string> {
          LiftingProblem sq{i, p, top, bottom};
          if (auto v = validate(sq); !v.ok)
            throw ShapeError("square does not commute: " + v.violation->detail);
          auto w = solve_lift(sq);
          if (!w) return std::nullopt;
          return describe(*w).dump();
        });
  m.def("corner_json", [](const FinFunctor& i, const FinFunctor& p) {
    return describe(corner_map(i, p)).dump();
  });
  m.def("pseudolimit_json", [](const FinFunctor& f) {
    ArrowPseudolimit pl = pseudolimit_of_arrow(f);
    return json{{"limit", describe(pl.L)}, {"u", describe(pl.u)},
                {"v", describe(pl.v)}, {"d", describe(pl.d)}}
        .dump();
  });
  m.def("pseudocolimit_json", [](const FinFunctor& f) {
    ArrowPseudocolimit pc = pseudocolimit_of_arrow(f);
    return json{{"colimit", describe(pc.C)}, {"i", describe(pc.i)},
                {"j", describe(pc.j)}, {"e", describe(pc.e)}}
        .dump();
  });
  m.def("weighted_limit_json", [](const Weight& J, const Diagram& S) {
    return json{{"limit", describe(weighted_limit(J, S).cat)}}.dump();
  });
  m.def("verify_json",
        [](const std::string& suite, std::uint64_t seed, int count, int max_objects,
           int max_morphisms, int bound, int probe_size) {
          SuiteConfig cfg;
          cfg.suite = suite;
          cfg.seed = seed;
          cfg.count = count;
          cfg.gen.max_objects = max_objects;
          cfg.gen.max_morphisms = max_morphisms;
          cfg.bound = bound;
          cfg.probe_size = probe_size;
          return describe(run_suite(cfg)).dump();
        },
        py::arg("suite"), py::arg("seed") = 1, py::arg("count") = 100,
        py::arg("max_objects") = 5, py::arg("max_morphisms") = 15,
        py::arg("bound") = 50, py::arg("probe_size") = 2);
}
