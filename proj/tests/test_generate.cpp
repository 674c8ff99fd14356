#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folkcat/generate.hpp"
#include "folkcat/model.hpp"

using namespace folkcat;

TEST_CASE("generated categories validate and respect the caps") {
  std::mt19937_64 rng(7);
  GenConfig cfg;
  int with_isos = 0, with_parallel = 0;
  for (int i = 0; i < 300; ++i) {
    FinCat c = random_category(rng, cfg);
    CHECK(validate(c).ok);
    CHECK(c.object_count() <= cfg.max_objects);
    CHECK(c.morphism_count() <= cfg.max_morphisms);
    bool iso = false, par = false;
    for (MorId m = 0; m < c.morphism_count(); ++m) {
      if (!c.is_identity(m) && c.is_iso(m)) iso = true;
      for (MorId n = m + 1; n < c.morphism_count(); ++n)
        if (c.src(m) == c.src(n) && c.tgt(m) == c.tgt(n)) par = true;
    }
    with_isos += iso;
    with_parallel += par;
  }
  // the corpus is not degenerate: both phenomena occur
  CHECK(with_isos > 10);
  CHECK(with_parallel > 10);
}

TEST_CASE("generation is deterministic in the seed") {
  auto a = random_corpus(42, 50);
  auto b = random_corpus(42, 50);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].same_table(b[i]));
  auto c = random_corpus(43, 50);
  bool all_same = true;
  for (size_t i = 0; i < a.size(); ++i) all_same &= a[i].same_table(c[i]);
  CHECK_FALSE(all_same);
}

TEST_CASE("random functors are valid and deterministic") {
  std::mt19937_64 rng(11);
  auto cats = random_corpus(5, 20);
  int produced = 0;
  for (size_t i = 0; i + 1 < cats.size(); ++i) {
    auto f = random_functor(rng, cats[i], cats[i + 1]);
    if (!f) {
      CHECK(cats[i + 1].object_count() == 0);
      continue;
    }
    CHECK(validate(*f).ok);
    ++produced;
  }
  CHECK(produced > 10);

  std::mt19937_64 r1(3), r2(3);
  auto f1 = random_functor(r1, cats[0], cats[1]);
  auto f2 = random_functor(r2, cats[0], cats[1]);
  REQUIRE(f1.has_value() == f2.has_value());
  if (f1) CHECK(same_functor(*f1, *f2));
}

TEST_CASE("generated functors classify without consistency faults") {
  std::mt19937_64 rng(23);
  auto cats = random_corpus(23, 30, {4, 10, 2, true});
  for (size_t i = 0; i + 1 < cats.size(); i += 2) {
    auto f = random_functor(rng, cats[i], cats[i + 1]);
    if (!f) continue;
    CHECK_NOTHROW(classify(*f));  // both trivial-fibration routes must agree
  }
}
