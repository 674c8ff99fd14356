#include "folkcat/report.hpp"

#include <sstream>

namespace folkcat {

namespace {

json arrow_entry(const FinCat& c, MorId m) {
  return {{"name", c.morphism_name(m)},
          {"src", c.object_name(c.src(m))},
          {"tgt", c.object_name(c.tgt(m))}};
}

const char* mode_name(FactorMode m) {
  switch (m) {
    case FactorMode::WeThenFib: return "WE_then_Fib";
    case FactorMode::CofThenTrivFib: return "Cof_then_TrivFib";
    case FactorMode::TrivCofThenFib: return "TrivCof_then_Fib";
  }
  return "?";
}

}  // namespace

json describe(const FinCat& c) {
  json objects = json::array();
  for (ObjId a = 0; a < c.object_count(); ++a) objects.push_back(c.object_name(a));
  json arrows = json::array();
  for (MorId m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) arrows.push_back(arrow_entry(c, m));
  json compose = json::array();
  for (MorId g = 0; g < c.morphism_count(); ++g)
    for (MorId f = 0; f < c.morphism_count(); ++f)
      if (c.composable(g, f) && !c.is_identity(g) && !c.is_identity(f))
        compose.push_back(c.morphism_name(g) + "." + c.morphism_name(f) + " = " +
                          c.morphism_name(c.compose(g, f)));
  return {{"objects", objects}, {"arrows", arrows}, {"compose", compose}};
}

json describe(const FinFunctor& f) {
  json omap = json::object();
  for (ObjId a = 0; a < f.dom.object_count(); ++a)
    omap[f.dom.object_name(a)] = f.cod.object_name(f.omap[a]);
  json mmap = json::object();
  for (MorId m = 0; m < f.dom.morphism_count(); ++m)
    if (!f.dom.is_identity(m))
      mmap[f.dom.morphism_name(m)] = f.cod.morphism_name(f.mmap[m]);
  return {{"dom", describe(f.dom)},
          {"cod", describe(f.cod)},
          {"objects", omap},
          {"arrows", mmap}};
}

json describe(const NatTransform& t) {
  json comp = json::object();
  for (ObjId a = 0; a < t.source.dom.object_count(); ++a)
    comp[t.source.dom.object_name(a)] = t.source.cod.morphism_name(t.at(a));
  return {{"components", comp}};
}

json describe(const ClassReport& r) {
  json out = {{"weak_equivalence", r.is_weak_equivalence},
              {"fibration", r.is_fibration},
              {"cofibration", r.is_cofibration},
              {"trivial_fibration", r.is_trivial_fibration},
              {"trivial_cofibration", r.is_trivial_cofibration}};
  if (r.equivalence) {
    out["equivalence_witness"] = {{"inverse", describe(r.equivalence->inverse)},
                                  {"unit", describe(r.equivalence->unit)},
                                  {"counit", describe(r.equivalence->counit)}};
  }
  if (r.lift_table) {
    json lifts = json::array();
    const FinCat& up = r.subject.dom;
    const FinCat& down = r.subject.cod;
    for (const IsoLift& l : r.lift_table->lifts)
      lifts.push_back({{"e", up.object_name(l.e)},
                       {"beta", down.morphism_name(l.beta)},
                       {"e_prime", up.object_name(l.e_prime)},
                       {"eps", up.morphism_name(l.eps)}});
    out["iso_lifts"] = lifts;
  }
  if (r.section) out["section"] = describe(*r.section);
  if (r.object_collision)
    out["object_collision"] = {r.subject.dom.object_name(r.object_collision->first),
                               r.subject.dom.object_name(r.object_collision->second)};
  return out;
}

json describe(const FactorizationWitness& w) {
  return {{"mode", mode_name(w.mode)},
          {"left", describe(w.left)},
          {"right", describe(w.right)},
          {"left_report", describe(w.left_report)},
          {"right_report", describe(w.right_report)}};
}

json describe(const CornerReport& r) {
  return {{"corner", describe(r.corner)},
          {"corner_is_isofibration", r.corner_is_isofibration},
          {"corner_is_equivalence", r.corner_is_equivalence},
          {"i_trivial", r.i_trivial},
          {"p_trivial", r.p_trivial}};
}

json describe(const LiftingProblem& sq) {
  return {{"i", describe(sq.i)},
          {"p", describe(sq.p)},
          {"top", describe(sq.top)},
          {"bottom", describe(sq.bottom)}};
}

json describe(const WeightClassReport& r) {
  json at = json::array();
  for (const ClassReport& c : r.at) at.push_back(describe(c));
  return {{"weak_equivalence", r.is_weak_equivalence},
          {"fibration", r.is_fibration},
          {"cofibration", r.is_cofibration},
          {"trivial_fibration", r.is_trivial_fibration},
          {"trivial_cofibration", r.is_trivial_cofibration},
          {"at", at}};
}

json describe(const Weight& w) {
  json at = json::object();
  for (ObjId c = 0; c < w.base.object_count(); ++c)
    at[w.base.object_name(c)] = describe(w.at[c]);
  json on = json::object();
  for (MorId m = 0; m < w.base.morphism_count(); ++m)
    if (!w.base.is_identity(m)) on[w.base.morphism_name(m)] = describe(w.on[m]);
  return {{"base", describe(w.base)}, {"at", at}, {"on", on}};
}

std::string to_text(const FinCat& c, const std::string& name) {
  std::ostringstream out;
  out << "category " << name << "\n";
  if (c.object_count() > 0) {
    out << "  objects:";
    for (ObjId a = 0; a < c.object_count(); ++a) out << " " << c.object_name(a);
    out << "\n";
  }
  bool first = true;
  for (MorId m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    out << (first ? "  arrows: " : " ; ") << c.morphism_name(m) << ": "
        << c.object_name(c.src(m)) << " -> " << c.object_name(c.tgt(m));
    first = false;
  }
  if (!first) out << "\n";
  first = true;
  for (MorId g = 0; g < c.morphism_count(); ++g)
    for (MorId f = 0; f < c.morphism_count(); ++f) {
      if (!c.composable(g, f) || c.is_identity(g) || c.is_identity(f)) continue;
      out << (first ? "  compose: " : " ; ") << c.morphism_name(g) << "."
          << c.morphism_name(f) << " = " << c.morphism_name(c.compose(g, f));
      first = false;
    }
  if (!first) out << "\n";
  return out.str();
}

std::string to_text(const FinFunctor& f, const std::string& name,
                    const std::string& dom_name, const std::string& cod_name) {
  std::ostringstream out;
  out << "functor " << name << " : " << dom_name << " -> " << cod_name << "\n";
  bool first = true;
  for (ObjId a = 0; a < f.dom.object_count(); ++a) {
    out << (first ? "  objects: " : " ; ") << f.dom.object_name(a) << " |-> "
        << f.cod.object_name(f.omap[a]);
    first = false;
  }
  if (!first) out << "\n";
  first = true;
  for (MorId m = 0; m < f.dom.morphism_count(); ++m) {
    if (f.dom.is_identity(m)) continue;
    out << (first ? "  arrows: " : " ; ") << f.dom.morphism_name(m) << " |-> "
        << f.cod.morphism_name(f.mmap[m]);
    first = false;
  }
  if (!first) out << "\n";
  return out.str();
}

}  // namespace folkcat
