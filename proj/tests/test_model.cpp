#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folkcat/model.hpp"

using namespace folkcat;

namespace {

FinFunctor iso_to_point() {
  return constant_functor(named(NamedCat::FreeIso), named(NamedCat::One), 0);
}

FinFunctor codiagonal() {
  return constant_functor(named(NamedCat::TwoDiscrete), named(NamedCat::One), 0);
}

}  // namespace

TEST_CASE("equivalence detection and its witnesses") {
  CHECK(is_equivalence(identity_functor(named(NamedCat::Arrow))));
  CHECK(is_equivalence(identity_functor(named(NamedCat::Zero))));

  auto w = is_equivalence(iso_to_point());
  REQUIRE(w);
  // deterministic choice: smallest object id
  CHECK(w->inverse.omap == std::vector<ObjId>{0});
  CHECK(validate(w->inverse).ok);
  CHECK(is_invertible(w->unit));
  CHECK(is_invertible(w->counit));

  // collapsing two points with an empty hom between them is not full
  CHECK_FALSE(is_equivalence(codiagonal()));
  // and the free-standing arrow is not equivalent to the discrete pair
  FinFunctor disc{named(NamedCat::TwoDiscrete), named(NamedCat::Arrow),
                  {0, 1},
                  {named(NamedCat::Arrow).identity(0), named(NamedCat::Arrow).identity(1)}};
  REQUIRE(validate(disc).ok);
  CHECK_FALSE(is_equivalence(disc));
}

TEST_CASE("isofibration detection via the lift table") {
  // anything into the point lifts trivially
  CHECK(is_isofibration(iso_to_point()));
  CHECK(is_isofibration(constant_functor(named(NamedCat::Arrow), named(NamedCat::One), 0)));

  // the point into the free iso: the iso 1 ~ 0 has no lift
  CHECK_FALSE(is_isofibration(generating_trivial_cofibration()));

  auto w = is_isofibration(iso_to_point());
  REQUIRE(w);
  const FinFunctor f = iso_to_point();
  for (const IsoLift& l : w->lifts) {
    CHECK(f.dom.is_iso(l.eps));
    CHECK(f.dom.tgt(l.eps) == l.e);
    CHECK(f.dom.src(l.eps) == l.e_prime);
    CHECK(f.mmap[l.eps] == l.beta);
  }
  // one entry per (object upstairs, iso into its image); only identities
  // downstairs, so two entries
  CHECK(w->lifts.size() == 2);
  // the identity of the free iso has two isos into each image
  auto full = is_isofibration(identity_functor(named(NamedCat::FreeIso)));
  REQUIRE(full);
  CHECK(full->lifts.size() == 4);
}

TEST_CASE("cofibrations are the functors injective on objects") {
  auto gens = generating_cofibrations();
  for (const FinFunctor& g : gens) CHECK(is_cofibration(g));
  CHECK_FALSE(is_cofibration(iso_to_point()));
  CHECK_FALSE(is_cofibration(codiagonal()));

  ClassReport r = classify(iso_to_point());
  REQUIRE(r.object_collision);
  CHECK(r.object_collision->first == 0);
  CHECK(r.object_collision->second == 1);
}

TEST_CASE("failed object-injectivity yields a failed lift against iso -> 1") {
  LiftingProblem bad;
  bool ok = has_lifting_property(codiagonal(), iso_to_point(), kDefaultGuard, &bad);
  CHECK_FALSE(ok);
  CHECK(validate(bad).ok);
  CHECK_FALSE(solve_lift(bad));
}

TEST_CASE("both trivial-fibration routes agree on a sweep of functors") {
  std::vector<FinCat> cats = {named(NamedCat::Zero), named(NamedCat::One),
                              named(NamedCat::TwoDiscrete), named(NamedCat::Arrow),
                              named(NamedCat::ParallelPair), named(NamedCat::FreeIso)};
  int trivial_fibs = 0, total = 0;
  for (const FinCat& a : cats)
    for (const FinCat& b : cats)
      for (const FinFunctor& f : all_functors(a, b)) {
        ClassReport r = classify(f);  // throws if the two routes disagree
        if (r.is_trivial_fibration) ++trivial_fibs;
        CHECK(r.is_trivial_fibration == (r.is_fibration && r.is_weak_equivalence));
        CHECK(r.is_trivial_cofibration == (r.is_cofibration && r.is_weak_equivalence));
        ++total;
      }
  CHECK(total > 50);
  CHECK(trivial_fibs > 0);
}

TEST_CASE("trivial fibration spot checks") {
  ClassReport collapse = classify(iso_to_point());
  CHECK(collapse.is_trivial_fibration);
  REQUIRE(collapse.section);
  CHECK(same_functor(compose_functors(iso_to_point(), *collapse.section),
                     identity_functor(named(NamedCat::One))));

  CHECK(classify(identity_functor(named(NamedCat::ParallelPair))).is_trivial_fibration);
  ClassReport point_in = classify(generating_trivial_cofibration());
  CHECK_FALSE(point_in.is_trivial_fibration);
  CHECK(point_in.is_trivial_cofibration);
}

TEST_CASE("solve_lift finds lifts exactly when they exist") {
  auto gens = generating_cofibrations();
  const FinFunctor zero_to_one = gens[0];
  // 0 -> 1 against iso -> 1: any object upstairs completes the square
  CHECK(has_lifting_property(zero_to_one, iso_to_point()));

  // the codiagonal against iso -> 1 with a separating top has no lift
  FinCat two = named(NamedCat::TwoDiscrete);
  FinCat iso = named(NamedCat::FreeIso);
  FinFunctor top{two, iso, {0, 1}, {iso.identity(0), iso.identity(1)}};
  REQUIRE(validate(top).ok);
  LiftingProblem sq{codiagonal(), iso_to_point(), top,
                    identity_functor(named(NamedCat::One))};
  REQUIRE(validate(sq).ok);
  CHECK_FALSE(solve_lift(sq));

  // p = id: the lift is forced to equal bottom
  FinFunctor arrow_incl = gens[1];
  LiftingProblem easy{arrow_incl, identity_functor(named(NamedCat::Arrow)),
                      constant_functor(arrow_incl.dom, named(NamedCat::Arrow), 1),
                      constant_functor(arrow_incl.cod, named(NamedCat::Arrow), 1)};
  auto w = solve_lift(easy);
  REQUIRE(w);
  CHECK(same_functor(*w, easy.bottom));

  // a non-commuting square is a shape error, not a NoLift
  LiftingProblem broken{arrow_incl, identity_functor(named(NamedCat::Arrow)),
                        constant_functor(arrow_incl.dom, named(NamedCat::Arrow), 0),
                        constant_functor(arrow_incl.cod, named(NamedCat::Arrow), 1)};
  CHECK_THROWS_AS(solve_lift(broken), ShapeError);
}

TEST_CASE("generating maps detect the fibration classes by lifting") {
  auto cofs = generating_cofibrations();
  FinFunctor j = generating_trivial_cofibration();
  std::vector<FinCat> cats = {named(NamedCat::One), named(NamedCat::TwoDiscrete),
                              named(NamedCat::Arrow), named(NamedCat::FreeIso)};
  for (const FinCat& a : cats)
    for (const FinCat& b : cats)
      for (const FinFunctor& f : all_functors(a, b)) {
        ClassReport r = classify(f);
        CHECK(r.is_fibration == has_lifting_property(j, f));
        bool rlp_all = true;
        for (const FinFunctor& c : cofs)
          if (!has_lifting_property(c, f)) rlp_all = false;
        CHECK(r.is_trivial_fibration == rlp_all);
      }
}

TEST_CASE("two-out-of-three for weak equivalences on composable pairs") {
  std::vector<FinCat> cats = {named(NamedCat::One), named(NamedCat::Arrow),
                              named(NamedCat::FreeIso)};
  for (const FinCat& a : cats)
    for (const FinCat& b : cats)
      for (const FinCat& c : cats)
        for (const FinFunctor& f : all_functors(a, b))
          for (const FinFunctor& g : all_functors(b, c)) {
            bool wf = is_equivalence(f).has_value();
            bool wg = is_equivalence(g).has_value();
            bool wgf = is_equivalence(compose_functors(g, f)).has_value();
            if ((wf && wg) || (wf && wgf) || (wg && wgf))
              CHECK((wf && wg && wgf));
          }
}

TEST_CASE("factorization through the pseudolimit: equivalence then fibration") {
  for (const FinFunctor& f :
       {iso_to_point(), generating_trivial_cofibration(), codiagonal(),
        identity_functor(named(NamedCat::ParallelPair))}) {
    FactorizationWitness w = factor(f, FactorMode::WeThenFib);
    CHECK(same_functor(compose_functors(w.right, w.left), f));
    CHECK(w.left_report.is_weak_equivalence);
    CHECK(w.right_report.is_fibration);
    // the fibration is trivial exactly when f was an equivalence
    CHECK(w.right_report.is_weak_equivalence == is_equivalence(f).has_value());
  }
}

TEST_CASE("factorization through the pseudocolimit: cofibration then trivial fibration") {
  FactorizationWitness w = factor(identity_functor(named(NamedCat::One)),
                                  FactorMode::CofThenTrivFib);
  // pseudocolimit of id_1 is the chaotic category on two objects
  CHECK(find_isomorphism(w.left.cod, chaotic(2)));
  CHECK(w.left_report.is_cofibration);
  CHECK(w.right_report.is_trivial_fibration);

  for (const FinFunctor& f : {iso_to_point(), codiagonal(),
                              generating_cofibrations()[2]}) {
    FactorizationWitness v = factor(f, FactorMode::CofThenTrivFib);
    CHECK(same_functor(compose_functors(v.right, v.left), f));
    CHECK(v.left_report.is_cofibration);
    CHECK(v.right_report.is_trivial_fibration);
  }
}

TEST_CASE("factorization: trivial cofibration then fibration") {
  for (const FinFunctor& f : {iso_to_point(), codiagonal(),
                              generating_trivial_cofibration()}) {
    FactorizationWitness w = factor(f, FactorMode::TrivCofThenFib);
    CHECK(same_functor(compose_functors(w.right, w.left), f));
    CHECK(w.left_report.is_trivial_cofibration);
    CHECK(w.right_report.is_fibration);
  }
  FactorizationWitness w = factor(identity_functor(named(NamedCat::Arrow)),
                                  FactorMode::TrivCofThenFib);
  CHECK(w.left_report.is_weak_equivalence);
  CHECK(w.right_report.is_weak_equivalence);
}

TEST_CASE("corner of 2 -> arrow against iso -> 1 is an isomorphism") {
  CornerReport r = corner_map(generating_cofibrations()[1], iso_to_point());
  // hom(arrow, iso) and hom(2, iso) x 1 are both chaotic on four objects
  CHECK(r.corner.dom.object_count() == 4);
  CHECK(r.corner.cod.object_count() == 4);
  CHECK(r.corner_is_isofibration);
  CHECK(r.corner_is_equivalence);
  CHECK_FALSE(r.i_trivial);
  CHECK(r.p_trivial);
  // in fact a strict isomorphism of tables
  std::vector<bool> hit(4, false);
  for (ObjId x : r.corner.omap) hit[x] = true;
  CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
  CHECK(find_isomorphism(r.corner.dom, r.corner.cod));
}

TEST_CASE("corner of an identity is an isomorphism") {
  FinCat arrow = named(NamedCat::Arrow);
  CornerReport r = corner_map(identity_functor(named(NamedCat::TwoDiscrete)),
                              constant_functor(arrow, named(NamedCat::One), 0));
  CHECK(r.corner_is_equivalence);
  CHECK(r.corner_is_isofibration);
  CHECK(r.corner.dom.object_count() == r.corner.cod.object_count());
}

TEST_CASE("corner conditions on sampled cofibration/fibration pairs") {
  std::vector<FinFunctor> is = {generating_cofibrations()[0],
                                generating_cofibrations()[1],
                                generating_trivial_cofibration()};
  std::vector<FinFunctor> ps = {iso_to_point(),
                                constant_functor(named(NamedCat::Arrow),
                                                 named(NamedCat::One), 0),
                                identity_functor(named(NamedCat::FreeIso))};
  for (const FinFunctor& i : is)
    for (const FinFunctor& p : ps) {
      CornerReport r = corner_map(i, p);
      CHECK(r.corner_is_isofibration);
      if (r.i_trivial || r.p_trivial) CHECK(r.corner_is_equivalence);
    }
}

TEST_CASE("the pseudolimit criterion matches the direct definition everywhere") {
  CHECK(check_pseudolimit_fibration_criterion(iso_to_point()));
  CHECK(check_pseudolimit_fibration_criterion(generating_trivial_cofibration()));
  CHECK(check_pseudolimit_fibration_criterion(identity_functor(named(NamedCat::Arrow))));

  std::vector<FinCat> cats = {named(NamedCat::One), named(NamedCat::TwoDiscrete),
                              named(NamedCat::Arrow), named(NamedCat::FreeIso)};
  for (const FinCat& a : cats)
    for (const FinCat& b : cats)
      for (const FinFunctor& f : all_functors(a, b))
        CHECK(check_pseudolimit_fibration_criterion(f));
}

TEST_CASE("weak equivalences between skeletal iso-free categories are isomorphisms") {
  // posets: no non-identity isos, skeletal; equivalence must be bijective
  std::vector<FinCat> posets = {named(NamedCat::One), named(NamedCat::TwoDiscrete),
                                named(NamedCat::Arrow)};
  for (const FinCat& a : posets)
    for (const FinCat& b : posets)
      for (const FinFunctor& f : all_functors(a, b))
        if (is_equivalence(f)) {
          std::vector<bool> hit(b.object_count(), false);
          for (ObjId x : f.omap) {
            CHECK_FALSE(hit[x]);
            hit[x] = true;
          }
          CHECK(std::all_of(hit.begin(), hit.end(), [](bool v) { return v; }));
        }
}
