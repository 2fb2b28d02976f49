import numpy as np
import pytest

from radsub.basics import (
    IllegalLabel,
    basic_labels,
    build_basic,
    build_extraspecial,
    canonical,
    check_legal,
    compare_with_oracle,
    enumerate_labels,
    parse_basic,
    predicted_order,
    structured_order,
    weight_labels,
)
from radsub.matgrp import closure, standard_space


def _order(gens, q, n):
    return closure(gens, standard_space("GL", n, q).ops).order


@pytest.mark.parametrize("eta,gamma,q,order", [("+", 1, 3, 8), ("-", 1, 3, 8), ("+", 2, 5, 32), ("-", 2, 3, 32)])
def test_extraspecial_orders(eta, gamma, q, order):
    gens = build_extraspecial(eta, gamma, q, 1)
    assert _order(gens, q, 2**gamma) == order


def test_q8_has_one_involution():
    gens = build_extraspecial("-", 1, 3, 1)
    R = closure(gens, standard_space("GL", 2, 3).ops)
    sq = R.ops.mm(R.elements, R.elements)
    ident = np.eye(2, dtype=np.int64)
    involutions = [i for i in range(R.order) if np.array_equal(sq[i], ident) and not np.array_equal(R.elements[i], ident)]
    assert len(involutions) == 1


@pytest.mark.parametrize(
    "text,kind,q,order",
    [
        ("R1_{m=1,a=0,g=0,c=()}", "GL", 5, 4),
        ("R0+_{m=1,a=0,g=0,c=()}", "O", 3, 2),
        ("R1_{m=1,a=0,g=0,c=()}", "Sp", 3, 4),
        ("R0+_{m=1,a=0,g=2,c=()}", "O", 3, 32),
        ("R1_{m=1,a=0,g=0,c=(1)}", "GL", 5, 32),
    ],
)
def test_basic_orders(text, kind, q, order):
    lab = parse_basic(text, kind)
    assert predicted_order(lab, q) == order
    assert structured_order(lab, q) == order


def test_build_basic_lands_in_space():
    lab = parse_basic("R1_{m=1,a=0,g=0,c=()}", "Sp")
    gens = build_basic(lab, 3)
    sp = standard_space("Sp", 2, 3)
    for g in gens:
        assert np.array_equal(sp.form(g, g), sp.gram % 3)


def test_illegal_labels():
    with pytest.raises(IllegalLabel):
        check_legal(parse_basic("R1_{m=1,a=0,g=0,c=(1)}", "GL"), 3)
    with pytest.raises(ValueError):
        parse_basic("R9_{m=1}", "GL")


def test_canonical_r4_gamma():
    lab = parse_basic("R4_{m=1,a=0,g=1,c=()}", "O")
    assert str(canonical(lab, 3)) == "R0+_{m=1,a=0,g=2,c=()}"


@pytest.mark.parametrize("q", [3, 7])
def test_labels_are_sorted_and_unique(q):
    labs = [str(x) for x in basic_labels("O", 4, q)]
    assert len(labs) == len(set(labs))


def test_enumerate_small():
    assert [str(x) for x in enumerate_labels("GL", 1, 5)] == ["R1_{m=1,a=0,g=0,c=()}"]
    assert len(enumerate_labels("O", 8, 3, 2, "+")) == 38


def test_weight_labels_small_orthogonal():
    assert [str(x) for x in weight_labels("O", 1, 3, True)] == [
        "R0+_{m=1,a=0,g=0,c=()}",
        "R0+_{m=1,a=1,g=0,c=()}@disc-",
    ]
    assert [str(x) for x in weight_labels("O", 2, 3, True, "+")] == ["R4_{m=1,a=0,g=0,c=()}"]
    four = {str(x) for x in weight_labels("O", 4, 3, True, "+")}
    assert four == {
        "R0+_{m=1,a=0,g=2,c=()}",
        "R0+_{m=1,a=0,g=0,c=(2)}",
        "R0+_{m=1,a=1,g=0,c=(2)}@disc-",
        "R4_{m=1,a=0,g=0,c=(1)}",
    }


@pytest.mark.parametrize("kind,n,q,variant", [("GL", 2, 3, None), ("Sp", 2, 3, None), ("O", 3, 3, "+"), ("GU", 2, 3, None)])
def test_oracle_agreement_small(kind, n, q, variant):
    assert compare_with_oracle(kind, n, q, 2, variant).match


def test_odd_p_gl2_4():
    cmp = compare_with_oracle("GL", 2, 4, 3)
    assert cmp.match and len(cmp.labels) == 2
