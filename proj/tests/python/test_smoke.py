import os

import pytest

import folkcat

HERE = os.path.dirname(os.path.abspath(__file__))
INPUTS = os.path.join(HERE, "..", "..", "inputs")


def test_named_categories():
    iso = folkcat.named("iso")
    assert len(iso.objects) == 2
    assert len(iso.arrows) == 4
    assert len(folkcat.chaotic(3).arrows) == 9


def test_parse_and_classify():
    doc = folkcat.parse_file(os.path.join(INPUTS, "generators.fct"))
    rep = folkcat.classify(doc.functor("iso_to_point"))
    assert rep["weak_equivalence"] and rep["fibration"]
    assert not rep["cofibration"]
    rep = folkcat.classify(doc.functor("point_to_iso"))
    assert rep["cofibration"] and rep["weak_equivalence"]
    assert not rep["fibration"]


def test_factor_and_lift():
    doc = folkcat.parse_file(os.path.join(INPUTS, "generators.fct"))
    w = folkcat.factor(doc.functor("id_point"), "cof-trivfib")
    assert w["left_report"]["cofibration"]
    assert w["right_report"]["trivial_fibration"]
    assert len(w["left"]["cod"]["objects"]) == 2

    sq = folkcat.parse_file(os.path.join(INPUTS, "nolift_square.fct"))
    out = folkcat.lift(sq.functor("nabla"), sq.functor("iso_to_point"),
                       sq.functor("separate"), sq.functor("id_point"))
    assert out is None


def test_corner_and_weighted_limit():
    doc = folkcat.parse_file(os.path.join(INPUTS, "generators.fct"))
    rep = folkcat.corner(doc.functor("endpoints"), doc.functor("iso_to_point"))
    assert rep["corner_is_isofibration"]
    assert rep["corner_is_equivalence"]

    eq = folkcat.parse_file(os.path.join(INPUTS, "equalizer_weight.fct"))
    lim = folkcat.weighted_limit(eq.weight("Eq"), eq.diagram("Pair"))
    assert lim["limit"]["objects"] == []


def test_verify_deterministic():
    a = folkcat.verify("generators", seed=3, count=10)
    b = folkcat.verify("generators", seed=3, count=10)
    assert a == b
    assert a["failed"] == 0


def test_parse_error_has_line():
    with pytest.raises(folkcat.FormatError, match="line 2"):
        folkcat.parse_document("category C\n  objects: a a")


def test_shape_errors_are_typed():
    # a square whose corners do not match raises rather than returning None
    doc = folkcat.parse_document(
        "category A\n  objects: a\nfunctor F : A -> A\n  objects: a |-> a")
    f = doc.functor("F")
    two = folkcat.named("two")
    with pytest.raises(folkcat.ShapeError):
        folkcat.lift(folkcat.identity(two), f, f, f)
