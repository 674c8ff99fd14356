#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folkcat/model.hpp"
#include "folkcat/parse.hpp"
#include "folkcat/weights.hpp"

using namespace folkcat;

static const char* kSpan = R"(
# a three-object span with a composite
category Span
  objects: a b c
  arrows: f: a -> b ; g: b -> c ; h: a -> c
  compose: g.f = h
)";

TEST_CASE("category block builds a valid table") {
  Document doc = parse_document(kSpan);
  const FinCat& c = doc.category("Span");
  CHECK(c.object_count() == 3);
  CHECK(c.morphism_count() == 6);  // three identities, f, g, h
  CHECK(validate(c).ok);
  // names survive
  CHECK(c.object_name(0) == "a");
  CHECK(c.morphism_name(3) == "f");
  CHECK(c.compose(4, 3) == 5);  // g.f = h
  CHECK_THROWS_AS((void)doc.category("Nope"), ShapeError);
}

TEST_CASE("identities may appear on compose right-hand sides") {
  Document doc = parse_document(R"(
category Retract
  objects: x y
  arrows: s: x -> y ; r: y -> x
  compose: r.s = 1_x ; s.r = e
  arrows: e: y -> y
  compose: e.e = e ; r.e = r ; e.s = s
)");
  const FinCat& c = doc.category("Retract");
  CHECK(c.morphism_count() == 5);
  CHECK(c.is_identity(c.compose(3, 2)));  // r.s = 1_x
}

TEST_CASE("functor block resolves names and maps identities implicitly") {
  std::string text = std::string(kSpan) + R"(
category Pt
  objects: p
functor Collapse : Span -> Pt
  objects: a |-> p ; b |-> p ; c |-> p
  arrows: f |-> 1_p ; g |-> 1_p ; h |-> 1_p
)";
  Document doc = parse_document(text);
  const FinFunctor& F = doc.functor("Collapse");
  CHECK(validate(F).ok);
  CHECK(F.dom.object_count() == 3);
  CHECK(F.cod.object_count() == 1);
  ClassReport rep = classify(F);
  CHECK(rep.is_fibration);
  CHECK_FALSE(rep.is_cofibration);
}

TEST_CASE("weight block assembles per-object categories and restrictions") {
  Document doc = parse_document(R"(
category Pair
  objects: s t
  arrows: u: s -> t ; v: s -> t
category One
  objects: z
category Two
  objects: p q
functor Pick : Two -> One
  objects: p |-> z ; q |-> z
weight Eq over Pair
  at s: One
  at t: Two
  on u: Pick
  on v: Pick
)");
  const Weight& w = doc.weight("Eq");
  CHECK(validate(w).ok);
  CHECK(w.base.morphism_count() == 4);
  CHECK(w.at[1].object_count() == 2);
  // restrictions run contravariantly: at[t] -> at[s]
  CHECK(w.on[2].dom.object_count() == 2);
  CHECK(w.on[2].cod.object_count() == 1);
}

TEST_CASE("diagram blocks are covariant") {
  Document doc = parse_document(R"(
category A
  objects: a b
  arrows: f: a -> b
category One
  objects: z
category Two
  objects: p q
functor Pick : One -> Two
  objects: z |-> p
diagram D over A
  at a: One
  at b: Two
  on f: Pick
)");
  const Diagram& d = doc.diagram("D");
  CHECK(validate(d).ok);
  // covariant: on[f] runs at[a] -> at[b]
  CHECK(d.on[2].dom.object_count() == 1);
  CHECK(d.on[2].cod.object_count() == 2);
  // the same functor fails the contravariant reading
  CHECK_THROWS_AS(parse_document(R"(
category A
  objects: a b
  arrows: f: a -> b
category One
  objects: z
category Two
  objects: p q
functor Pick : One -> Two
  objects: z |-> p
weight W over A
  at a: One
  at b: Two
  on f: Pick
)"),
                  ParseError);
}

TEST_CASE("errors carry the offending line number") {
  auto line_of = [](const std::string& text) {
    try {
      parse_document(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("category C\n  objects: a a") == 2);
  CHECK(line_of("category C\n  objects: a\n  arrows: f: a -> b") == 3);
  CHECK(line_of("category C\n  objects: a\n  compose: f.g = h") == 3);
  CHECK(line_of("junk") == 1);
  CHECK(line_of("category C\n  objects: a\n\n  widgets: q") == 4);
  // non-composable pair
  CHECK(line_of(R"(category C
  objects: a b
  arrows: f: a -> b ; g: a -> b
  compose: g.f = f)") == 4);
  // missing composite: the table is partial, reported against the header
  CHECK(line_of(R"(category C
  objects: a b c
  arrows: f: a -> b ; g: b -> c ; h: a -> c)") == 1);
  // functor missing an arrow image
  CHECK(line_of(R"(category A
  objects: a b
  arrows: f: a -> b
functor F : A -> A
  objects: a |-> a ; b |-> b)") == 4);
  // weight missing a restriction
  CHECK(line_of(R"(category A
  objects: a b
  arrows: f: a -> b
category P
  objects: z
weight W over A
  at a: P
  at b: P)") == 6);
}

TEST_CASE("declaring an identity or duplicating a name is rejected") {
  CHECK_THROWS_AS(parse_document("category C\n  objects: a\n  arrows: 1_a: a -> a"),
                  ParseError);
  CHECK_THROWS_AS(parse_document("category C\n  objects: a\ncategory C\n  objects: b"),
                  ParseError);
  CHECK_THROWS_AS(parse_document(R"(category A
  objects: a
functor F : A -> A
  objects: a |-> a
functor F : A -> A
  objects: a |-> a)"),
                  ParseError);
}

TEST_CASE("inconsistent tables are rejected, not silently accepted") {
  // claims g.f = f, which breaks the source law
  const char* bad = R"(
category C
  objects: a b c
  arrows: f: a -> b ; g: b -> c
  compose: g.f = g
)";
  // lands on g: src mismatch caught by validation against the header line
  CHECK_THROWS_AS(parse_document(bad), ParseError);
}

TEST_CASE("parse_file reads from disk") {
  CHECK_THROWS_AS(parse_file("/nonexistent/input.fct"), ParseError);
}
