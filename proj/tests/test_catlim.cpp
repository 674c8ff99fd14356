#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "folkcat/catlim.hpp"
#include "folkcat/enumerate.hpp"
#include "folkcat/fincat.hpp"

using namespace folkcat;

namespace {

// Brute-force functor count: enumerate every raw object/morphism map and
// filter by the functor laws. Independent of the pruned search the library
// uses; only usable on tiny categories.
long brute_force_functor_count(const FinCat& a, const FinCat& b) {
  int no = a.object_count(), nm = a.morphism_count();
  if (no == 0) return 1;
  long count = 0;
  std::vector<ObjId> om(no, 0);
  std::vector<MorId> mm(nm, 0);
  std::function<void(int)> mor_loop = [&](int k) {
    if (k == nm) {
      FinFunctor f{a, b, om, mm};
      if (validate(f).ok) ++count;
      return;
    }
    for (MorId c = 0; c < b.morphism_count(); ++c) {
      mm[k] = c;
      mor_loop(k + 1);
    }
  };
  std::function<void(int)> obj_loop = [&](int k) {
    if (k == no) {
      if (b.morphism_count() == 0) return;
      mor_loop(0);
      return;
    }
    for (ObjId x = 0; x < b.object_count(); ++x) {
      om[k] = x;
      obj_loop(k + 1);
    }
  };
  obj_loop(0);
  return count;
}

bool isomorphic(const FinCat& a, const FinCat& b) {
  return find_isomorphism(a, b).has_value();
}

}  // namespace

TEST_CASE("binary products and coproducts") {
  FinCat one = named(NamedCat::One);
  FinCat iso = named(NamedCat::FreeIso);
  FinCat arrow = named(NamedCat::Arrow);

  CHECK(isomorphic(product(one, arrow).cat, arrow));
  CHECK(isomorphic(product(one, iso).cat, iso));
  CHECK(isomorphic(coproduct(one, one).cat, named(NamedCat::TwoDiscrete)));
  CHECK(validate(product(arrow, iso).cat).ok);
  CHECK(validate(coproduct(arrow, iso).cat).ok);
}

TEST_CASE("pullback of the two collapses of the free iso is chaotic on 4") {
  FinCat iso = named(NamedCat::FreeIso);
  FinFunctor c1 = constant_functor(iso, named(NamedCat::One), 0);
  FinFunctor c2 = constant_functor(iso, named(NamedCat::One), 0);
  PullbackResult r = pullback(c1, c2);
  CHECK(r.cat.object_count() == 4);
  CHECK(validate(r.cat).ok);
  CHECK(isomorphic(r.cat, chaotic(4)));
  CHECK(isomorphic(r.cat, product(iso, iso).cat));
  CHECK(validate(r.to_a).ok);
  CHECK(validate(r.to_b).ok);
}

TEST_CASE("equalizer of parallel functors is the agreeing subcategory") {
  FinCat iso = named(NamedCat::FreeIso);
  FinFunctor idf = identity_functor(iso);
  FinFunctor swap{iso, iso, {1, 0}, {iso.identity(1), iso.identity(0), 3, 2}};
  REQUIRE(validate(swap).ok);
  EqualizerResult r = equalizer(idf, swap);
  CHECK(r.cat.object_count() == 0);
  EqualizerResult r2 = equalizer(idf, idf);
  CHECK(isomorphic(r2.cat, iso));
}

TEST_CASE("functor categories match brute-force enumeration") {
  FinCat one = named(NamedCat::One);
  FinCat arrow = named(NamedCat::Arrow);
  FinCat iso = named(NamedCat::FreeIso);
  FinCat two = named(NamedCat::TwoDiscrete);

  for (auto [a, b] : {std::pair<FinCat, FinCat>{one, iso},
                      {arrow, iso},
                      {two, arrow},
                      {arrow, arrow},
                      {iso, iso}}) {
    FunctorCategory fc = functor_category(a, b);
    CHECK(static_cast<long>(fc.objects.size()) == brute_force_functor_count(a, b));
    CHECK(validate(fc.cat).ok);
  }
}

TEST_CASE("named functor-category shapes") {
  FinCat one = named(NamedCat::One);
  FinCat arrow = named(NamedCat::Arrow);
  FinCat iso = named(NamedCat::FreeIso);

  CHECK(isomorphic(functor_category(one, iso).cat, iso));
  CHECK(isomorphic(functor_category(arrow, iso).cat, chaotic(4)));
  CHECK(isomorphic(functor_category(named(NamedCat::TwoDiscrete), arrow).cat,
                   product(arrow, arrow).cat));
}

TEST_CASE("arrow cotensor objects are the morphisms of the base") {
  for (NamedCat tag : {NamedCat::One, NamedCat::Arrow, NamedCat::ParallelPair,
                       NamedCat::FreeIso}) {
    FinCat b = named(tag);
    CHECK(cotensor_arrow(b).cat.object_count() == b.morphism_count());
  }
  CHECK(isomorphic(cotensor_arrow(named(NamedCat::One)).cat, named(NamedCat::One)));
}

TEST_CASE("tensor-cotensor adjunction counts for the arrow category") {
  FinCat arrow = named(NamedCat::Arrow);
  FinCat tensored = tensor_arrow(arrow).cat;          // arrow x arrow
  FinCat cotensored = cotensor_arrow(arrow).cat;      // arrow ^ arrow
  long lhs = static_cast<long>(all_functors(tensored, arrow).size());
  long rhs = static_cast<long>(all_functors(arrow, cotensored).size());
  CHECK(lhs == rhs);
  CHECK(lhs > 0);
}

TEST_CASE("pseudolimit of identities") {
  FinCat one = named(NamedCat::One);
  FinCat arrow = named(NamedCat::Arrow);
  FinCat iso = named(NamedCat::FreeIso);

  ArrowPseudolimit l1 = pseudolimit_of_arrow(identity_functor(one));
  CHECK(isomorphic(l1.L, one));

  // the arrow category has no non-identity isos, so L recovers the arrow
  ArrowPseudolimit l2 = pseudolimit_of_arrow(identity_functor(arrow));
  CHECK(isomorphic(l2.L, arrow));

  // all four morphisms of the free iso are isos; L is chaotic on them
  ArrowPseudolimit l3 = pseudolimit_of_arrow(identity_functor(iso));
  CHECK(l3.L.object_count() == 4);
  CHECK(isomorphic(l3.L, chaotic(4)));
}

TEST_CASE("pseudolimit witness equations") {
  FinCat iso = named(NamedCat::FreeIso);
  FinFunctor f = constant_functor(iso, named(NamedCat::One), 0);
  ArrowPseudolimit r = pseudolimit_of_arrow(f);
  CHECK(validate(r.L).ok);
  CHECK(validate(r.u).ok);
  CHECK(validate(r.v).ok);
  CHECK(validate(r.d).ok);
  REQUIRE(validate(r.lambda).ok);
  REQUIRE(validate(r.zeta).ok);
  CHECK(is_invertible(r.lambda));
  CHECK(is_invertible(r.zeta));
  CHECK(same_functor(compose_functors(r.u, r.d), identity_functor(f.dom)));
  // lambda whiskered with d is the identity 2-cell on f
  NatTransform ld = whisker_right(r.lambda, r.d);
  CHECK(same_transform(ld, identity_transform(compose_functors(f, compose_functors(r.u, r.d)))));
  // zeta whiskered with d is the identity as well
  CHECK(same_transform(whisker_right(r.zeta, r.d), identity_transform(r.d)));
}

TEST_CASE("pseudolimit agrees with the pullback-of-iso-cotensor oracle") {
  // independent construction: pull the target projection of B^I back along f
  auto oracle = [](const FinFunctor& f) {
    FunctorCategory bi = functor_category(named(NamedCat::FreeIso), f.cod);
    FinFunctor tgt;
    tgt.dom = bi.cat;
    tgt.cod = f.cod;
    for (const FinFunctor& x : bi.objects) tgt.omap.push_back(x.omap[1]);
    for (const NatTransform& t : bi.transforms) tgt.mmap.push_back(t.components[1]);
    REQUIRE(validate(tgt).ok);
    return pullback(f, tgt).cat;
  };
  FinCat iso = named(NamedCat::FreeIso);
  FinCat arrow = named(NamedCat::Arrow);
  for (const FinFunctor& f :
       {identity_functor(arrow), identity_functor(iso),
        constant_functor(iso, named(NamedCat::One), 0),
        constant_functor(arrow, iso, 1)}) {
    CHECK(isomorphic(pseudolimit_of_arrow(f).L, oracle(f)));
  }
}

TEST_CASE("pseudolimit one-dimensional universal property by counting") {
  // functors X -> L correspond to triples (X -> A, X -> B, invertible
  // transform) -- checked by exhaustive count over small probes
  FinCat iso = named(NamedCat::FreeIso);
  FinCat arrow = named(NamedCat::Arrow);
  FinFunctor f = constant_functor(iso, arrow, 1);
  ArrowPseudolimit r = pseudolimit_of_arrow(f);
  for (NamedCat probe_tag : {NamedCat::One, NamedCat::Arrow, NamedCat::TwoDiscrete}) {
    FinCat X = named(probe_tag);
    long lhs = static_cast<long>(all_functors(X, r.L).size());
    long rhs = 0;
    for (const FinFunctor& a : all_functors(X, f.dom))
      for (const FinFunctor& b : all_functors(X, f.cod))
        for (const NatTransform& t : all_transforms(b, compose_functors(f, a)))
          if (is_invertible(t)) ++rhs;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("pseudocolimit golden shapes") {
  FinCat one = named(NamedCat::One);
  FinCat iso = named(NamedCat::FreeIso);

  // empty domain: C is just B
  FinFunctor from_zero;
  from_zero.dom = named(NamedCat::Zero);
  from_zero.cod = iso;
  ArrowPseudocolimit c0 = pseudocolimit_of_arrow(from_zero);
  CHECK(isomorphic(c0.C, iso));

  // id on the point: the chaotic category on two objects
  ArrowPseudocolimit c1 = pseudocolimit_of_arrow(identity_functor(one));
  CHECK(c1.C.object_count() == 2);
  CHECK(c1.C.morphism_count() == 4);
  CHECK(isomorphic(c1.C, chaotic(2)));

  // collapse of the discrete pair: chaotic on three objects
  FinFunctor collapse = constant_functor(named(NamedCat::TwoDiscrete), one, 0);
  ArrowPseudocolimit c2 = pseudocolimit_of_arrow(collapse);
  CHECK(isomorphic(c2.C, chaotic(3)));
}

TEST_CASE("pseudocolimit witness equations") {
  FinCat iso = named(NamedCat::FreeIso);
  FinCat arrow = named(NamedCat::Arrow);
  for (const FinFunctor& f :
       {constant_functor(arrow, iso, 0), identity_functor(arrow),
        constant_functor(iso, named(NamedCat::One), 0)}) {
    ArrowPseudocolimit r = pseudocolimit_of_arrow(f);
    CHECK(validate(r.C).ok);
    CHECK(validate(r.i).ok);
    CHECK(validate(r.j).ok);
    CHECK(validate(r.e).ok);
    REQUIRE(validate(r.lambda).ok);
    REQUIRE(validate(r.epsilon).ok);
    CHECK(is_invertible(r.lambda));
    CHECK(is_invertible(r.epsilon));
    CHECK(same_functor(compose_functors(r.e, r.i), f));
    CHECK(same_functor(compose_functors(r.e, r.j), identity_functor(f.cod)));
    // e whiskered on epsilon is the identity
    NatTransform we = whisker_left(r.e, r.epsilon);
    CHECK(same_transform(we, identity_transform(r.e)));
    // epsilon restricted along j is the identity
    CHECK(same_transform(whisker_right(r.epsilon, r.j), identity_transform(r.j)));
    // j is injective on objects
    for (size_t x = 0; x < r.j.omap.size(); ++x)
      for (size_t y = x + 1; y < r.j.omap.size(); ++y)
        CHECK(r.j.omap[x] != r.j.omap[y]);
  }
}

TEST_CASE("coequifier golden shapes") {
  FinCat pp = named(NamedCat::ParallelPair);
  FinCat one = named(NamedCat::One);
  FinFunctor src_pt = constant_functor(one, pp, 0);
  FinFunctor tgt_pt = constant_functor(one, pp, 1);
  NatTransform alpha{src_pt, tgt_pt, {2}};  // u
  NatTransform beta{src_pt, tgt_pt, {3}};  // v
  REQUIRE(validate(alpha).ok);
  REQUIRE(validate(beta).ok);

  CoequifierWitness w = coequifier(alpha, beta);
  CHECK(isomorphic(w.quotient, named(NamedCat::Arrow)));
  CHECK(validate(w.p).ok);
  CHECK(w.p.mmap[2] == w.p.mmap[3]);

  // equal 2-cells: the quotient is B itself
  CoequifierWitness w2 = coequifier(alpha, alpha);
  CHECK(isomorphic(w2.quotient, pp));

  CoequifierWitness w3 =
      coequifier(identity_transform(src_pt), identity_transform(src_pt));
  CHECK(isomorphic(w3.quotient, pp));
}

TEST_CASE("coequifier universal property on small probes") {
  FinCat pp = named(NamedCat::ParallelPair);
  FinCat one = named(NamedCat::One);
  FinFunctor src_pt = constant_functor(one, pp, 0);
  FinFunctor tgt_pt = constant_functor(one, pp, 1);
  NatTransform alpha{src_pt, tgt_pt, {2}};
  NatTransform beta{src_pt, tgt_pt, {3}};
  CoequifierWitness w = coequifier(alpha, beta);

  for (NamedCat probe : {NamedCat::One, NamedCat::Arrow, NamedCat::FreeIso}) {
    FinCat X = named(probe);
    for (const FinFunctor& q : all_functors(pp, X)) {
      // q coequalizes iff the whiskered components agree
      bool equalizes = q.mmap[2] == q.mmap[3];
      long factorings = 0;
      for (const FinFunctor& h : all_functors(w.quotient, X))
        if (same_functor(compose_functors(h, w.p), q)) ++factorings;
      CHECK(factorings == (equalizes ? 1 : 0));
    }
  }
}

TEST_CASE("coinserter golden shapes") {
  FinCat one = named(NamedCat::One);
  FinCat two = named(NamedCat::TwoDiscrete);

  // empty domain: B unchanged
  FinFunctor z1, z2;
  z1.dom = z2.dom = named(NamedCat::Zero);
  z1.cod = z2.cod = two;
  CoinserterResult r0 = coinserter_bounded(z1, z2, 50);
  REQUIRE_FALSE(r0.diverged);
  CHECK(isomorphic(r0.cat, two));

  // one free generator between the two points: the arrow category
  FinFunctor fx = constant_functor(one, two, 0);
  FinFunctor gy = constant_functor(one, two, 1);
  CoinserterResult r1 = coinserter_bounded(fx, gy, 50);
  REQUIRE_FALSE(r1.diverged);
  CHECK(isomorphic(r1.cat, named(NamedCat::Arrow)));
  CHECK(r1.cat.src(r1.sigma[0]) == 0);
  CHECK(r1.cat.tgt(r1.sigma[0]) == 1);

  // free monoid on one generator: diverges
  FinFunctor idp = identity_functor(one);
  CoinserterResult r2 = coinserter_bounded(idp, idp, 50);
  CHECK(r2.diverged);
  CHECK(r2.frontier > 0);
}

TEST_CASE("coinserter universal property via induced functors") {
  FinCat one = named(NamedCat::One);
  FinCat two = named(NamedCat::TwoDiscrete);
  FinFunctor fx = constant_functor(one, two, 0);
  FinFunctor gy = constant_functor(one, two, 1);
  CoinserterResult r = coinserter_bounded(fx, gy, 50);

  // induce into the free iso with the iso as the inserted 2-cell component
  FinCat iso = named(NamedCat::FreeIso);
  FinFunctor h;
  h.dom = two;
  h.cod = iso;
  h.omap = {0, 1};
  h.mmap = {iso.identity(0), iso.identity(1)};
  REQUIRE(validate(h).ok);
  auto q = coinserter_induce(r, h, {2});
  REQUIRE(q.has_value());
  CHECK(q->mmap[r.sigma[0]] == 2);
  CHECK(same_functor(compose_functors(*q, r.p), h));
}

TEST_CASE("coinserter with naturality collapsing onto the quotient") {
  // inserting a 2-cell from id to id over the identity of the parallel pair
  // forces sigma components that commute with u and v
  FinCat pp = named(NamedCat::ParallelPair);
  FinFunctor idp = identity_functor(pp);
  CoinserterResult r = coinserter_bounded(idp, idp, 100);
  if (!r.diverged) {
    CHECK(validate(r.cat).ok);
    CHECK(validate(r.p).ok);
    // naturality holds in the result: sigma_t . u = u . sigma_s etc.
    for (MorId m = 0; m < pp.morphism_count(); ++m) {
      MorId lhs = r.cat.compose(r.sigma[pp.tgt(m)], r.p.mmap[m]);
      MorId rhs = r.cat.compose(r.p.mmap[m], r.sigma[pp.src(m)]);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("idempotent splittings") {
  FinCat two = named(NamedCat::TwoDiscrete);
  FinCat arrow = named(NamedCat::Arrow);

  // identity splits through the whole category
  SplitResult r0 = split_idempotent(identity_functor(arrow));
  CHECK(isomorphic(r0.S, arrow));

  // collapse of the discrete pair onto x
  FinFunctor e1{two, two, {0, 0}, {two.identity(0), two.identity(0)}};
  REQUIRE(validate(e1).ok);
  SplitResult r1 = split_idempotent(e1);
  CHECK(isomorphic(r1.S, named(NamedCat::One)));
  CHECK(same_functor(compose_functors(r1.retraction, r1.section),
                     identity_functor(r1.S)));
  CHECK(same_functor(compose_functors(r1.section, r1.retraction), e1));

  // everything to the target object of the arrow category
  FinFunctor e2{arrow, arrow, {1, 1},
                {arrow.identity(1), arrow.identity(1), arrow.identity(1)}};
  REQUIRE(validate(e2).ok);
  SplitResult r2 = split_idempotent(e2);
  CHECK(isomorphic(r2.S, named(NamedCat::One)));
  CHECK(same_functor(compose_functors(r2.retraction, r2.section),
                     identity_functor(r2.S)));
  CHECK(same_functor(compose_functors(r2.section, r2.retraction), e2));

  // a non-idempotent functor is rejected
  FinCat iso = named(NamedCat::FreeIso);
  FinFunctor swap{iso, iso, {1, 0}, {iso.identity(1), iso.identity(0), 3, 2}};
  CHECK_THROWS_AS(split_idempotent(swap), ShapeError);
}
