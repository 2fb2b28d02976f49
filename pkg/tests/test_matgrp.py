import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from radsub.matgrp import (
    CapExceeded,
    ambient_group,
    centralizer,
    closure,
    core_p,
    deserialize,
    enumerate_radical_classes,
    is_isometry,
    is_p_group,
    is_radical,
    normalizer,
    serialize,
    standard_space,
    sylow_p,
)


def test_standard_spaces():
    o = standard_space("O", 2, 3, "+")
    assert np.array_equal(o.gram, np.eye(2))
    sp = standard_space("Sp", 4, 3)
    J = np.asarray(sp.gram)
    assert np.array_equal(sp.ops.mm(J, J), (-np.eye(4, dtype=np.int64)) % 3)
    assert np.array_equal(standard_space("O", 2, 5, "-").gram, np.diag([1, 2]))


def test_is_isometry():
    o3 = standard_space("O", 3, 3, "+")
    assert is_isometry(np.eye(3, dtype=np.int64), o3)
    assert is_isometry(2 * np.eye(3, dtype=np.int64), o3)
    # 2^2 = 4 is not 1 in F_5
    assert not is_isometry(np.diag([2, 1]), standard_space("O", 2, 5, "+"))


@pytest.mark.parametrize(
    "kind,n,q,variant,order",
    [
        ("GL", 2, 3, None, 48),
        ("GL", 2, 5, None, 480),
        ("GU", 2, 3, None, 96),
        ("Sp", 2, 3, None, 24),
        ("Sp", 4, 3, None, 51840),
        ("O", 2, 3, "+", 8),  # variant is the discriminant
        ("O", 2, 3, "-", 4),
        ("O", 3, 3, "+", 48),
        ("O", 4, 3, "+", 1152),
        ("O", 4, 3, "-", 1440),
    ],
)
def test_ambient_orders(kind, n, q, variant, order):
    assert ambient_group(kind, n, q, variant).order == order


def test_closure_examples():
    ops = standard_space("GL", 2, 3).ops
    assert closure([np.eye(2, dtype=np.int64)], ops).order == 1
    d8 = [np.array([[2, 0], [0, 1]]), np.array([[0, 1], [1, 0]])]
    assert closure(d8, ops).order == 8
    sl2 = [np.array([[1, 1], [0, 1]]), np.array([[1, 0], [1, 1]])]
    assert closure(sl2, ops).order == 24


def test_closure_cap():
    ops = standard_space("GL", 2, 5).ops
    with pytest.raises(CapExceeded):
        closure([np.array([[1, 1], [0, 1]]), np.array([[0, 1], [4, 0]])], ops, cap=10)


def test_radical_examples_gl23():
    G = ambient_group("GL", 2, 3)
    S = sylow_p(G, 2)
    assert S.order == 16 and is_p_group(S, 2)
    assert is_radical(G, S, 2)
    one = closure([], G.ops, n=2)
    assert not is_radical(G, one, 2)
    assert core_p(G, 2).order == 8


def test_center_of_sp23_not_radical():
    G = ambient_group("Sp", 2, 3)
    Z = closure([2 * np.eye(2, dtype=np.int64)], G.ops)
    assert centralizer(G, Z).order == 24
    assert normalizer(G, Z).order == 24
    assert not is_radical(G, Z, 2)
    classes = enumerate_radical_classes(G, 2)
    assert [(R.order, size) for R, size in classes] == [(8, 1)]


def test_class_sizes_sum_gl23():
    # the class sizes are indices of normalizers
    G = ambient_group("GL", 2, 3)
    for R, size in enumerate_radical_classes(G, 2):
        assert size * normalizer(G, R).order == G.order


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=9, max_size=9))
def test_serialize_round_trip(entries):
    M = np.array(entries, dtype=np.int64).reshape(3, 3)
    back, q, kind, n = deserialize(serialize(M, 7, "O"))
    assert np.array_equal(back, M) and (q, kind, n) == (7, "O", 3)


def test_deserialize_rejects():
    with pytest.raises(ValueError):
        deserialize("q=3;kind=O;n=2;rows=1,0")
    with pytest.raises(ValueError):
        deserialize("q=3;kind=O;n=2")
