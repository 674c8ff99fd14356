#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "folkcat/catlim.hpp"
#include "folkcat/model.hpp"
#include "folkcat/parse.hpp"
#include "folkcat/report.hpp"
#include "folkcat/suites.hpp"
#include "folkcat/weights.hpp"

using namespace folkcat;

namespace {

// exit codes: 0 success, 1 verification/invariant failure, 2 usage or parse
// error, 3 resource guard
constexpr int kOk = 0, kFail = 1, kUsage = 2, kGuard = 3;

void emit(const json& j, bool as_json, const std::string& summary) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << summary << "\n";
}

std::string flags_line(const ClassReport& r) {
  std::string out;
  auto add = [&](bool b, const char* name) {
    if (b) out += std::string(out.empty() ? "" : ", ") + name;
  };
  add(r.is_weak_equivalence, "weak equivalence");
  add(r.is_fibration, "fibration");
  add(r.is_cofibration, "cofibration");
  add(r.is_trivial_fibration, "trivial fibration");
  add(r.is_trivial_cofibration, "trivial cofibration");
  return out.empty() ? "none of the model classes" : out;
}

NatTransform parse_transform(const Document& doc, const FinFunctor& F,
                             const FinFunctor& G, const std::string& comps) {
  NatTransform t;
  t.source = F;
  t.target = G;
  std::stringstream ss(comps);
  std::string item;
  std::map<std::string, MorId> mors;
  for (MorId m = 0; m < F.cod.morphism_count(); ++m)
    mors[F.cod.morphism_name(m)] = m;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    std::string name = item.substr(a, b - a + 1);
    if (!mors.count(name)) throw ShapeError("unknown arrow in component list: " + name);
    t.components.push_back(mors[name]);
  }
  (void)doc;
  if (auto v = validate(t); !v.ok)
    throw ShapeError("transform is not natural: " + v.violation->detail);
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact decision procedures for the folklore model structure on Cat"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit the full JSON report on stdout");

  std::string file, name, name2, name3, name4, mode_str = "we-fib";
  std::string alpha_str, beta_str;
  int bound = 50;
  SuiteConfig suite_cfg;

  auto* classify_cmd = app.add_subcommand("classify", "classify a functor");
  classify_cmd->add_option("file", file)->required();
  classify_cmd->add_option("functor", name)->required();

  auto* factor_cmd = app.add_subcommand("factor", "factor a functor");
  factor_cmd->add_option("file", file)->required();
  factor_cmd->add_option("functor", name)->required();
  factor_cmd->add_option("--mode", mode_str,
                         "we-fib | cof-trivfib | trivcof-fib (default we-fib)");

  auto* lift_cmd = app.add_subcommand("lift", "solve a lifting problem i,p,top,bottom");
  lift_cmd->add_option("file", file)->required();
  lift_cmd->add_option("i", name)->required();
  lift_cmd->add_option("p", name2)->required();
  lift_cmd->add_option("top", name3)->required();
  lift_cmd->add_option("bottom", name4)->required();

  auto* corner_cmd = app.add_subcommand("corner", "enriched corner map of (i, p)");
  corner_cmd->add_option("file", file)->required();
  corner_cmd->add_option("i", name)->required();
  corner_cmd->add_option("p", name2)->required();

  auto* plim_cmd = app.add_subcommand("pseudolimit", "pseudolimit of an arrow");
  plim_cmd->add_option("file", file)->required();
  plim_cmd->add_option("functor", name)->required();

  auto* pcolim_cmd = app.add_subcommand("pseudocolimit", "pseudocolimit of an arrow");
  pcolim_cmd->add_option("file", file)->required();
  pcolim_cmd->add_option("functor", name)->required();

  auto* coeq_cmd = app.add_subcommand(
      "coequifier", "coequify two parallel 2-cells between F and G");
  coeq_cmd->add_option("file", file)->required();
  coeq_cmd->add_option("F", name)->required();
  coeq_cmd->add_option("G", name2)->required();
  coeq_cmd->add_option("--alpha", alpha_str, "components of the first 2-cell, comma-separated arrows of cod(F) in object order")->required();
  coeq_cmd->add_option("--beta", beta_str, "components of the second 2-cell")->required();

  auto* coins_cmd = app.add_subcommand("coinserter", "coinserter of a parallel pair");
  coins_cmd->add_option("file", file)->required();
  coins_cmd->add_option("F", name)->required();
  coins_cmd->add_option("G", name2)->required();
  coins_cmd->add_option("--bound", bound, "budget in new morphisms (default 50)");

  auto* wlim_cmd = app.add_subcommand("weighted-limit", "limit of a diagram weighted by a presheaf");
  wlim_cmd->add_option("file", file)->required();
  wlim_cmd->add_option("weight", name)->required();
  wlim_cmd->add_option("diagram", name2)->required();

  auto* verify_cmd = app.add_subcommand("verify", "run a seeded verification suite");
  verify_cmd->add_option("suite", suite_cfg.suite, "model-axioms | enrichment | generators | pseudolimit-criterion | weights-closure")->required();
  verify_cmd->add_option("--seed", suite_cfg.seed);
  verify_cmd->add_option("--count", suite_cfg.count);
  verify_cmd->add_option("--max-objects", suite_cfg.gen.max_objects);
  verify_cmd->add_option("--max-morphisms", suite_cfg.gen.max_morphisms);
  verify_cmd->add_option("--bound", suite_cfg.bound);
  verify_cmd->add_option("--probe-size", suite_cfg.probe_size);

  for (CLI::App* sub : {classify_cmd, factor_cmd, lift_cmd, corner_cmd, plim_cmd,
                        pcolim_cmd, coeq_cmd, coins_cmd, wlim_cmd})
    sub->add_flag("--json", as_json, "emit the full JSON report on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (*classify_cmd) {
      Document doc = parse_file(file);
      ClassReport r = classify(doc.functor(name));
      emit(describe(r), as_json, name + ": " + flags_line(r));
    } else if (*factor_cmd) {
      FactorMode mode;
      if (mode_str == "we-fib") mode = FactorMode::WeThenFib;
      else if (mode_str == "cof-trivfib") mode = FactorMode::CofThenTrivFib;
      else if (mode_str == "trivcof-fib") mode = FactorMode::TrivCofThenFib;
      else throw ShapeError("unknown mode: " + mode_str);
      Document doc = parse_file(file);
      FactorizationWitness w = factor(doc.functor(name), mode);
      emit(describe(w), as_json,
           name + " = right . left through a " +
               std::to_string(w.left.cod.object_count()) + "-object category; left: " +
               flags_line(w.left_report) + "; right: " + flags_line(w.right_report));
    } else if (*lift_cmd) {
      Document doc = parse_file(file);
      LiftingProblem sq{doc.functor(name), doc.functor(name2), doc.functor(name3),
                        doc.functor(name4)};
      if (auto v = validate(sq); !v.ok)
        throw ShapeError("square does not commute: " + v.violation->detail);
      auto w = solve_lift(sq);
      if (w)
        emit({{"lift", describe(*w)}}, as_json, "lift found");
      else
        emit({{"lift", nullptr}}, as_json, "NoLift");
    } else if (*corner_cmd) {
      Document doc = parse_file(file);
      CornerReport r = corner_map(doc.functor(name), doc.functor(name2));
      emit(describe(r), as_json,
           std::string("corner map: isofibration=") +
               (r.corner_is_isofibration ? "true" : "false") +
               ", equivalence=" + (r.corner_is_equivalence ? "true" : "false"));
    } else if (*plim_cmd) {
      Document doc = parse_file(file);
      ArrowPseudolimit pl = pseudolimit_of_arrow(doc.functor(name));
      json j = {{"limit", describe(pl.L)},     {"u", describe(pl.u)},
                {"v", describe(pl.v)},         {"d", describe(pl.d)},
                {"lambda", describe(pl.lambda)}, {"zeta", describe(pl.zeta)}};
      emit(j, as_json,
           "pseudolimit has " + std::to_string(pl.L.object_count()) + " objects, " +
               std::to_string(pl.L.morphism_count()) + " morphisms");
    } else if (*pcolim_cmd) {
      Document doc = parse_file(file);
      ArrowPseudocolimit pc = pseudocolimit_of_arrow(doc.functor(name));
      json j = {{"colimit", describe(pc.C)},   {"i", describe(pc.i)},
                {"j", describe(pc.j)},         {"e", describe(pc.e)},
                {"lambda", describe(pc.lambda)}, {"epsilon", describe(pc.epsilon)}};
      emit(j, as_json,
           "pseudocolimit has " + std::to_string(pc.C.object_count()) + " objects, " +
               std::to_string(pc.C.morphism_count()) + " morphisms");
    } else if (*coeq_cmd) {
      Document doc = parse_file(file);
      const FinFunctor& F = doc.functor(name);
      const FinFunctor& G = doc.functor(name2);
      NatTransform alpha = parse_transform(doc, F, G, alpha_str);
      NatTransform beta = parse_transform(doc, F, G, beta_str);
      CoequifierWitness w = coequifier(alpha, beta);
      emit({{"quotient", describe(w.quotient)}, {"p", describe(w.p)}}, as_json,
           "coequifier has " + std::to_string(w.quotient.object_count()) +
               " objects, " + std::to_string(w.quotient.morphism_count()) +
               " morphisms");
    } else if (*coins_cmd) {
      Document doc = parse_file(file);
      CoinserterResult r = coinserter_bounded(doc.functor(name), doc.functor(name2), bound);
      if (r.diverged) {
        emit({{"diverged", true}, {"frontier", r.frontier}}, as_json,
             "Diverged within budget " + std::to_string(bound));
        code = kGuard;
      } else {
        emit({{"diverged", false}, {"coinserter", describe(r.cat)}, {"p", describe(r.p)}},
             as_json,
             "coinserter has " + std::to_string(r.cat.object_count()) + " objects, " +
                 std::to_string(r.cat.morphism_count()) + " morphisms");
      }
    } else if (*wlim_cmd) {
      Document doc = parse_file(file);
      WeightedLimitResult r = weighted_limit(doc.weight(name), doc.diagram(name2));
      emit({{"limit", describe(r.cat)}}, as_json,
           "weighted limit has " + std::to_string(r.cat.object_count()) +
               " objects, " + std::to_string(r.cat.morphism_count()) + " morphisms");
    } else if (*verify_cmd) {
      SuiteReport rep = run_suite(suite_cfg);
      std::cout << describe(rep).dump(2) << "\n";
      if (rep.failed > 0) code = kFail;
      std::cerr << suite_cfg.suite << ": " << rep.passed << " passed, " << rep.failed
                << " failed, " << rep.guard_trips << " size-guard trips\n";
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return kGuard;
  } catch (const InternalFault& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::cerr << "wall time: " << ms << " ms\n";  // stderr keeps stdout reproducible
  return code;
}
