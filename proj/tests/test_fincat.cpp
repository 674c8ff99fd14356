#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folkcat/enumerate.hpp"
#include "folkcat/fincat.hpp"

using namespace folkcat;

TEST_CASE("named categories validate with the expected sizes") {
  struct Row {
    NamedCat tag;
    int objects, morphisms;
  };
  for (Row row : {Row{NamedCat::Zero, 0, 0}, Row{NamedCat::One, 1, 1},
                  Row{NamedCat::TwoDiscrete, 2, 2}, Row{NamedCat::Arrow, 2, 3},
                  Row{NamedCat::ParallelPair, 2, 4}, Row{NamedCat::FreeIso, 2, 4}}) {
    FinCat c = named(row.tag);
    CHECK(c.object_count() == row.objects);
    CHECK(c.morphism_count() == row.morphisms);
    CHECK(validate(c).ok);
  }
}

TEST_CASE("the two non-identities of the free iso are mutually inverse") {
  FinCat iso = named(NamedCat::FreeIso);
  MorId u = 2, v = 3;
  CHECK(iso.is_iso(u));
  CHECK(*iso.inverse(u) == v);
  CHECK(*iso.inverse(v) == u);
  CHECK_FALSE(named(NamedCat::Arrow).is_iso(2));
}

TEST_CASE("a corrupted identity law is caught with a witness") {
  FinCat c = named(NamedCat::Arrow);
  // break compose(f, id_s): point it at the identity instead of f
  c.set_composite(2, c.identity(0), c.identity(0));
  auto r = validate(c);
  REQUIRE_FALSE(r.ok);
  CHECK(r.violation->law == "composite-endpoints");
}

TEST_CASE("every single-entry mutation of the free iso table is caught") {
  FinCat base = named(NamedCat::FreeIso);
  int m = base.morphism_count();
  int mutations = 0;
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f) {
      if (!base.composable(g, f)) continue;
      for (MorId wrong = 0; wrong < m; ++wrong) {
        if (wrong == base.compose(g, f)) continue;
        FinCat c = base;
        c.set_composite(g, f, wrong);
        CHECK_FALSE(validate(c).ok);
        ++mutations;
      }
    }
  CHECK(mutations > 0);
}

TEST_CASE("functor composition is associative and unital on tables") {
  FinCat arrow = named(NamedCat::Arrow);
  FinCat iso = named(NamedCat::FreeIso);
  FinFunctor id_arrow = identity_functor(arrow);
  CHECK(same_functor(compose_functors(id_arrow, id_arrow), id_arrow));

  FinFunctor collapse = constant_functor(arrow, named(NamedCat::One), 0);
  FinFunctor pick0 = constant_functor(named(NamedCat::One), iso, 0);
  FinFunctor c = compose_functors(pick0, collapse);
  CHECK(same_functor(c, constant_functor(arrow, iso, 0)));

  FinFunctor g = generating_trivial_cofibration();
  CHECK(same_functor(compose_functors(g, identity_functor(g.dom)), g));
  CHECK(same_functor(compose_functors(identity_functor(g.cod), g), g));
}

TEST_CASE("generating maps have the shapes from the model structure") {
  auto gens = generating_maps();
  REQUIRE(gens.size() == 4);
  // 2 -> arrow is injective on objects
  CHECK(gens[1].omap == std::vector<ObjId>{0, 1});
  // parallel pair -> arrow maps both parallel arrows to the single arrow
  CHECK(gens[2].mmap[2] == gens[2].mmap[3]);
  CHECK_FALSE(gens[2].dom.is_identity(gens[2].mmap[2]));
  // 1 -> FreeIso composed with FreeIso -> 1 is id_1
  FinFunctor to_point = constant_functor(gens[3].cod, named(NamedCat::One), 0);
  CHECK(same_functor(compose_functors(to_point, gens[3]),
                     identity_functor(named(NamedCat::One))));
  for (const auto& f : gens) CHECK(validate(f).ok);
}

TEST_CASE("invertibility of transformations matches componentwise isos") {
  FinCat one = named(NamedCat::One);
  FinCat iso = named(NamedCat::FreeIso);
  FinCat arrow = named(NamedCat::Arrow);

  FinFunctor p0 = constant_functor(one, iso, 0);
  FinFunctor p1 = constant_functor(one, iso, 1);
  NatTransform u{p0, p1, {2}};  // the component u : 0 -> 1
  REQUIRE(validate(u).ok);
  CHECK(is_invertible(u));

  FinFunctor a0 = constant_functor(one, arrow, 0);
  FinFunctor a1 = constant_functor(one, arrow, 1);
  NatTransform f{a0, a1, {2}};  // the non-identity of the arrow category
  REQUIRE(validate(f).ok);
  CHECK_FALSE(is_invertible(f));

  CHECK(is_invertible(identity_transform(p0)));
}

TEST_CASE("invertibility agrees with a two-sided inverse found by search") {
  FinCat iso = named(NamedCat::FreeIso);
  FinCat arrow = named(NamedCat::Arrow);
  for (const FinCat& cod : {iso, arrow}) {
    for (const FinFunctor& F : all_functors(named(NamedCat::One), cod))
      for (const FinFunctor& G : all_functors(named(NamedCat::One), cod))
        for (const NatTransform& alpha : all_transforms(F, G)) {
          bool has_inverse = false;
          for (const NatTransform& beta : all_transforms(G, F)) {
            if (same_transform(vertical_compose(beta, alpha),
                               identity_transform(F)) &&
                same_transform(vertical_compose(alpha, beta),
                               identity_transform(G)))
              has_inverse = true;
          }
          CHECK(is_invertible(alpha) == has_inverse);
        }
  }
}

TEST_CASE("whiskering computes the expected components") {
  FinCat one = named(NamedCat::One);
  FinCat iso = named(NamedCat::FreeIso);
  FinFunctor p0 = constant_functor(one, iso, 0);
  FinFunctor p1 = constant_functor(one, iso, 1);
  NatTransform u{p0, p1, {2}};
  FinFunctor swap;  // the nontrivial automorphism of the free iso
  swap.dom = iso;
  swap.cod = iso;
  swap.omap = {1, 0};
  swap.mmap = {iso.identity(1), iso.identity(0), 3, 2};
  REQUIRE(validate(swap).ok);
  NatTransform w = whisker_left(swap, u);
  CHECK(w.components == std::vector<MorId>{3});
  CHECK(validate(w).ok);

  FinFunctor idf = identity_functor(one);
  NatTransform wr = whisker_right(u, idf);
  CHECK(same_transform(wr, u));
}

TEST_CASE("find_isomorphism relates equal-shaped categories only") {
  CHECK(find_isomorphism(named(NamedCat::FreeIso), named(NamedCat::FreeIso)));
  CHECK(find_isomorphism(chaotic(2), named(NamedCat::FreeIso)));
  CHECK_FALSE(find_isomorphism(named(NamedCat::ParallelPair), named(NamedCat::FreeIso)));
  CHECK_FALSE(find_isomorphism(named(NamedCat::Arrow), named(NamedCat::TwoDiscrete)));
}

TEST_CASE("functor enumeration matches hand counts") {
  // functors 1 -> FreeIso: one per object
  CHECK(all_functors(named(NamedCat::One), named(NamedCat::FreeIso)).size() == 2);
  // functors Arrow -> Arrow: monotone maps on the 2-chain: ss, st, tt
  CHECK(all_functors(named(NamedCat::Arrow), named(NamedCat::Arrow)).size() == 3);
  // functors Arrow -> FreeIso: chaotic codomain, any object map extends uniquely
  CHECK(all_functors(named(NamedCat::Arrow), named(NamedCat::FreeIso)).size() == 4);
  // functors from 0: exactly the empty functor
  CHECK(all_functors(named(NamedCat::Zero), named(NamedCat::Arrow)).size() == 1);
}
