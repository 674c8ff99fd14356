#include "folkcat/model.hpp"

#include <algorithm>
#include <functional>

namespace folkcat {

std::optional<EquivalenceWitness> is_equivalence(const FinFunctor& f) {
  const FinCat& A = f.dom;
  const FinCat& B = f.cod;
  // fully faithful: hom(a, a') -> hom(Fa, Fa') bijective for all pairs
  for (ObjId a = 0; a < A.object_count(); ++a)
    for (ObjId a2 = 0; a2 < A.object_count(); ++a2) {
      std::vector<MorId> dom_hom = A.hom(a, a2);
      std::vector<MorId> images;
      for (MorId m : dom_hom) images.push_back(f.mmap[m]);
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end())
        return std::nullopt;  // not faithful
      if (images.size() != B.hom(f.omap[a], f.omap[a2]).size())
        return std::nullopt;  // not full
    }
  // essentially surjective, with deterministic witness choice
  std::vector<ObjId> g_obj(B.object_count(), -1);
  std::vector<MorId> eta(B.object_count(), -1);  // eta_b : b -> F(g b), iso
  for (ObjId b = 0; b < B.object_count(); ++b) {
    for (ObjId a = 0; a < A.object_count() && g_obj[b] < 0; ++a)
      for (MorId m : B.hom(b, f.omap[a]))
        if (B.is_iso(m)) {
          g_obj[b] = a;
          eta[b] = m;
          break;
        }
    if (g_obj[b] < 0) return std::nullopt;
  }
  // transport morphisms along the chosen isos; full faithfulness makes the
  // preimage unique
  auto preimage = [&](ObjId a, ObjId a2, MorId target) -> MorId {
    for (MorId m : A.hom(a, a2))
      if (f.mmap[m] == target) return m;
    throw InternalFault("is_equivalence: missing preimage under a ff functor");
  };
  EquivalenceWitness w;
  w.inverse.dom = B;
  w.inverse.cod = A;
  w.inverse.omap = g_obj;
  w.inverse.mmap.resize(B.morphism_count());
  for (MorId u = 0; u < B.morphism_count(); ++u) {
    ObjId b = B.src(u), b2 = B.tgt(u);
    MorId conj = B.compose(eta[b2], B.compose(u, *B.inverse(eta[b])));
    w.inverse.mmap[u] = preimage(g_obj[b], g_obj[b2], conj);
  }
  if (auto r = validate(w.inverse); !r.ok)
    throw InternalFault("is_equivalence: constructed inverse is not a functor");
  w.counit.source = compose_functors(f, w.inverse);
  w.counit.target = identity_functor(B);
  for (ObjId b = 0; b < B.object_count(); ++b)
    w.counit.components.push_back(*B.inverse(eta[b]));
  w.unit.source = compose_functors(w.inverse, f);
  w.unit.target = identity_functor(A);
  for (ObjId a = 0; a < A.object_count(); ++a)
    w.unit.components.push_back(
        preimage(g_obj[f.omap[a]], a, *B.inverse(eta[f.omap[a]])));
  if (auto r = validate(w.unit); !r.ok)
    throw InternalFault("is_equivalence: unit is not natural");
  if (auto r = validate(w.counit); !r.ok)
    throw InternalFault("is_equivalence: counit is not natural");
  if (!is_invertible(w.unit) || !is_invertible(w.counit))
    throw InternalFault("is_equivalence: witness transforms not invertible");
  return w;
}

std::optional<IsofibrationWitness> is_isofibration(const FinFunctor& f) {
  const FinCat& A = f.dom;
  const FinCat& B = f.cod;
  IsofibrationWitness w;
  for (ObjId e = 0; e < A.object_count(); ++e)
    for (MorId beta = 0; beta < B.morphism_count(); ++beta) {
      if (B.tgt(beta) != f.omap[e] || !B.is_iso(beta)) continue;
      bool found = false;
      for (MorId eps = 0; eps < A.morphism_count() && !found; ++eps) {
        if (A.tgt(eps) != e || !A.is_iso(eps)) continue;
        if (f.omap[A.src(eps)] != B.src(beta) || f.mmap[eps] != beta) continue;
        w.lifts.push_back({e, beta, A.src(eps), eps});
        found = true;
      }
      if (!found) return std::nullopt;
    }
  return w;
}

bool is_cofibration(const FinFunctor& f) {
  for (size_t x = 0; x < f.omap.size(); ++x)
    for (size_t y = x + 1; y < f.omap.size(); ++y)
      if (f.omap[x] == f.omap[y]) return false;
  return true;
}

std::optional<FinFunctor> retract_equivalence_section(const FinFunctor& f,
                                                      std::uint64_t guard) {
  const FinCat& A = f.dom;
  const FinCat& B = f.cod;
  FunctorConstraints cons = FunctorConstraints::none(B);
  for (ObjId b = 0; b < B.object_count(); ++b) {
    for (ObjId a = 0; a < A.object_count(); ++a)
      if (f.omap[a] == b) cons.obj[b].push_back(a);
    if (cons.obj[b].empty()) return std::nullopt;  // no section on objects
  }
  for (MorId m = 0; m < B.morphism_count(); ++m) {
    for (MorId n = 0; n < A.morphism_count(); ++n)
      if (f.mmap[n] == m) cons.mor[m].push_back(n);
    if (cons.mor[m].empty()) return std::nullopt;  // no section on morphisms
  }
  std::optional<FinFunctor> out;
  FinFunctor id_a = identity_functor(A);
  for_each_functor(B, A, cons,
                   [&](const FinFunctor& g) {
                     if (naturally_isomorphic(compose_functors(g, f), id_a, guard)) {
                       out = g;
                       return false;
                     }
                     return true;
                   },
                   guard);
  return out;
}

ClassReport classify(const FinFunctor& f, std::uint64_t guard) {
  ClassReport r;
  r.subject = f;
  r.equivalence = is_equivalence(f);
  r.is_weak_equivalence = r.equivalence.has_value();
  r.lift_table = is_isofibration(f);
  r.is_fibration = r.lift_table.has_value();
  r.is_cofibration = is_cofibration(f);
  if (!r.is_cofibration) {
    for (size_t x = 0; x < f.omap.size() && !r.object_collision; ++x)
      for (size_t y = x + 1; y < f.omap.size(); ++y)
        if (f.omap[x] == f.omap[y]) {
          r.object_collision = {static_cast<ObjId>(x), static_cast<ObjId>(y)};
          break;
        }
  }
  // both trivial-fibration routes are provably equal (trivial fibrations are
  // precisely the retract equivalences), so a mismatch is a bug in this
  // library rather than a property of the input
  bool route_a = r.is_fibration && r.is_weak_equivalence;
  r.section = retract_equivalence_section(f, guard);
  bool route_b = r.section.has_value();
  if (route_a != route_b)
    throw InternalFault(
        "trivial-fibration routes disagree (fibration+equivalence vs retract "
        "equivalence)");
  r.is_trivial_fibration = route_a;
  r.is_trivial_cofibration = r.is_cofibration && r.is_weak_equivalence;
  return r;
}

ValidationReport validate(const LiftingProblem& sq) {
  auto fail = [](std::string detail) {
    return ValidationReport{false, LawViolation{"lifting-square", {}, std::move(detail)}};
  };
  if (!sq.top.dom.same_table(sq.i.dom)) return fail("top and i have different domains");
  if (!sq.bottom.dom.same_table(sq.i.cod)) return fail("bottom domain is not cod(i)");
  if (!sq.top.cod.same_table(sq.p.dom)) return fail("top codomain is not dom(p)");
  if (!sq.bottom.cod.same_table(sq.p.cod)) return fail("bottom codomain is not cod(p)");
  if (!same_functor(compose_functors(sq.p, sq.top),
                    compose_functors(sq.bottom, sq.i)))
    return fail("square does not commute");
  return {};
}

std::optional<FinFunctor> solve_lift(const LiftingProblem& sq, std::uint64_t guard) {
  if (auto r = validate(sq); !r.ok) throw ShapeError(r.violation->detail);
  const FinCat& B = sq.i.cod;
  const FinCat& C = sq.p.dom;
  FunctorConstraints cons = FunctorConstraints::none(B);
  // p . w = bottom restricts every image to a fibre
  for (ObjId b = 0; b < B.object_count(); ++b) {
    for (ObjId c = 0; c < C.object_count(); ++c)
      if (sq.p.omap[c] == sq.bottom.omap[b]) cons.obj[b].push_back(c);
    if (cons.obj[b].empty()) return std::nullopt;
  }
  for (MorId m = 0; m < B.morphism_count(); ++m) {
    for (MorId n = 0; n < C.morphism_count(); ++n)
      if (sq.p.mmap[n] == sq.bottom.mmap[m]) cons.mor[m].push_back(n);
    if (cons.mor[m].empty()) return std::nullopt;
  }
  // w . i = top pins the images of everything in the image of i
  for (ObjId a = 0; a < sq.i.dom.object_count(); ++a)
    cons.fix_object(sq.i.omap[a], sq.top.omap[a]);
  for (MorId m = 0; m < sq.i.dom.morphism_count(); ++m)
    cons.fix_morphism(sq.i.mmap[m], sq.top.mmap[m]);
  return first_functor(B, C, cons, guard);
}

bool has_lifting_property(const FinFunctor& i, const FinFunctor& p,
                          std::uint64_t guard, LiftingProblem* counterexample) {
  bool all = true;
  for_each_commuting_square(
      i, p,
      [&](const FinFunctor& top, const FinFunctor& bottom) {
        LiftingProblem sq{i, p, top, bottom};
        if (!solve_lift(sq, guard)) {
          all = false;
          if (counterexample) *counterexample = sq;
          return false;
        }
        return true;
      },
      guard);
  return all;
}

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw InternalFault(std::string("factor: ") + what);
}

}  // namespace

FactorizationWitness factor(const FinFunctor& f, FactorMode mode) {
  FactorizationWitness w;
  w.mode = mode;
  switch (mode) {
    case FactorMode::WeThenFib: {
      ArrowPseudolimit psl = pseudolimit_of_arrow(f);
      w.left = psl.d;
      w.right = psl.v;
      break;
    }
    case FactorMode::CofThenTrivFib: {
      ArrowPseudocolimit pcl = pseudocolimit_of_arrow(f);
      w.left = pcl.i;
      w.right = pcl.e;
      break;
    }
    case FactorMode::TrivCofThenFib: {
      ArrowPseudolimit psl = pseudolimit_of_arrow(f);
      ArrowPseudocolimit pcl = pseudocolimit_of_arrow(psl.d);
      w.left = pcl.i;
      w.right = compose_functors(psl.v, pcl.e);
      break;
    }
  }
  require(same_functor(compose_functors(w.right, w.left), f),
          "factorization does not compose back to the input");
  w.left_report = classify(w.left);
  w.right_report = classify(w.right);
  switch (mode) {
    case FactorMode::WeThenFib:
      require(w.left_report.is_weak_equivalence, "left part is not an equivalence");
      require(w.right_report.is_fibration, "right part is not a fibration");
      break;
    case FactorMode::CofThenTrivFib:
      require(w.left_report.is_cofibration, "left part is not a cofibration");
      require(w.right_report.is_trivial_fibration,
              "right part is not a trivial fibration");
      break;
    case FactorMode::TrivCofThenFib:
      require(w.left_report.is_trivial_cofibration,
              "left part is not a trivial cofibration");
      require(w.right_report.is_fibration, "right part is not a fibration");
      break;
  }
  return w;
}

CornerReport corner_map(const FinFunctor& i, const FinFunctor& p,
                        std::uint64_t guard) {
  const FinCat& A = i.dom;
  const FinCat& B = i.cod;
  const FinCat& C = p.dom;
  const FinCat& D = p.cod;
  FunctorCategory kbc = functor_category(B, C, guard);
  FunctorCategory kac = functor_category(A, C, guard);
  FunctorCategory kbd = functor_category(B, D, guard);
  FunctorCategory kad = functor_category(A, D, guard);

  auto hom_functor = [&](const FunctorCategory& from, const FunctorCategory& to,
                         auto&& on_obj, auto&& on_mor) {
    FinFunctor h;
    h.dom = from.cat;
    h.cod = to.cat;
    for (const FinFunctor& x : from.objects)
      h.omap.push_back(to.object_index(on_obj(x)));
    for (MorId m = 0; m < from.cat.morphism_count(); ++m) {
      NatTransform t = on_mor(from.transforms[m]);
      h.mmap.push_back(to.morphism_index(h.omap[from.cat.src(m)],
                                         h.omap[from.cat.tgt(m)], t.components));
    }
    if (auto r = validate(h); !r.ok)
      throw InternalFault("corner_map: induced hom functor invalid");
    return h;
  };

  // postcomposition with p on hom(A,-) and precomposition with i on hom(-,D)
  FinFunctor post_p = hom_functor(
      kac, kad, [&](const FinFunctor& x) { return compose_functors(p, x); },
      [&](const NatTransform& t) { return whisker_left(p, t); });
  FinFunctor pre_i = hom_functor(
      kbd, kad, [&](const FinFunctor& x) { return compose_functors(x, i); },
      [&](const NatTransform& t) { return whisker_right(t, i); });
  PullbackResult pb = pullback(post_p, pre_i);

  CornerReport r;
  r.corner.dom = kbc.cat;
  r.corner.cod = pb.cat;
  for (const FinFunctor& x : kbc.objects)
    r.corner.omap.push_back(
        pb.object_index(kac.object_index(compose_functors(x, i)),
                        kbd.object_index(compose_functors(p, x))));
  for (MorId m = 0; m < kbc.cat.morphism_count(); ++m) {
    const NatTransform& t = kbc.transforms[m];
    NatTransform ti = whisker_right(t, i);
    NatTransform pt = whisker_left(p, t);
    int src_pair = r.corner.omap[kbc.cat.src(m)];
    int tgt_pair = r.corner.omap[kbc.cat.tgt(m)];
    MorId mi = kac.morphism_index(pb.obj_pairs[src_pair].first,
                                  pb.obj_pairs[tgt_pair].first, ti.components);
    MorId mp = kbd.morphism_index(pb.obj_pairs[src_pair].second,
                                  pb.obj_pairs[tgt_pair].second, pt.components);
    r.corner.mmap.push_back(pb.morphism_index(mi, mp));
  }
  if (auto v = validate(r.corner); !v.ok)
    throw InternalFault("corner_map: comparison functor invalid: " +
                        v.violation->detail);
  r.corner_is_isofibration = is_isofibration(r.corner).has_value();
  r.corner_is_equivalence = is_equivalence(r.corner).has_value();
  ClassReport ri = classify(i, guard);
  ClassReport rp = classify(p, guard);
  r.i_trivial = ri.is_cofibration && ri.is_weak_equivalence;
  r.p_trivial = rp.is_trivial_fibration;
  return r;
}

bool check_pseudolimit_fibration_criterion(const FinFunctor& f,
                                           std::uint64_t guard) {
  bool direct = is_isofibration(f).has_value();
  ArrowPseudolimit psl = pseudolimit_of_arrow(f);
  const FinCat& A = f.dom;
  // search v' : L -> A with f.v' = v, then an invertible lambda' : v' => u
  // with f.lambda' = lambda
  FunctorConstraints cons = FunctorConstraints::none(psl.L);
  for (ObjId x = 0; x < psl.L.object_count(); ++x) {
    for (ObjId a = 0; a < A.object_count(); ++a)
      if (f.omap[a] == psl.v.omap[x]) cons.obj[x].push_back(a);
    if (cons.obj[x].empty()) return direct == false;
  }
  for (MorId m = 0; m < psl.L.morphism_count(); ++m) {
    for (MorId n = 0; n < A.morphism_count(); ++n)
      if (f.mmap[n] == psl.v.mmap[m]) cons.mor[m].push_back(n);
    if (cons.mor[m].empty()) return direct == false;
  }
  bool exists = false;
  for_each_functor(
      psl.L, A, cons,
      [&](const FinFunctor& vp) {
        // components constrained pointwise, then checked for naturality
        std::vector<std::vector<MorId>> choices(psl.L.object_count());
        for (ObjId x = 0; x < psl.L.object_count(); ++x) {
          for (MorId c : A.hom(vp.omap[x], psl.u.omap[x]))
            if (A.is_iso(c) && f.mmap[c] == psl.lambda.components[x])
              choices[x].push_back(c);
          if (choices[x].empty()) return true;
        }
        NatTransform lp;
        lp.source = vp;
        lp.target = psl.u;
        lp.components.assign(psl.L.object_count(), -1);
        std::function<bool(ObjId)> go = [&](ObjId x) -> bool {
          if (x == psl.L.object_count()) return validate(lp).ok;
          for (MorId c : choices[x]) {
            lp.components[x] = c;
            if (go(x + 1)) return true;
          }
          return false;
        };
        if (go(0)) {
          exists = true;
          return false;
        }
        return true;
      },
      guard);
  return direct == exists;
}

}  // namespace folkcat
