import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from radsub.basics import basic_space, build_basic, parse_basic
from radsub.matgrp import closure, standard_space
from radsub.parity import (
    Parity,
    ParityGroup,
    fuzz_homomorphism,
    omega_kernel,
    parity_group,
    parity_of,
    reflect_decompose,
    reflection,
    rotation_t,
)


def _minus_identity(n, q):
    return (q - 1) * np.eye(n, dtype=np.int64)


def test_decompose_identity_and_reflection():
    sp = standard_space("O", 3, 5, "+")
    assert reflect_decompose(np.eye(3, dtype=np.int64), sp) == []
    r = reflection([1, 1, 0], sp)
    vs = reflect_decompose(r, sp)
    assert len(vs) == 1
    assert np.array_equal(reflection(vs[0], sp), r)


def test_decompose_minus_identity_rebuilds():
    sp = standard_space("O", 2, 3, "+")
    X = _minus_identity(2, 3)
    vs = reflect_decompose(X, sp)
    assert len(vs) == 2
    Y = np.eye(2, dtype=np.int64)
    for v in vs:
        Y = sp.ops.mm(Y, reflection(v, sp))
    assert np.array_equal(Y, X)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_minus_identity_parity(q):
    # disc(I_n) = + so -I is (0,0) in even and (1,0) in odd dimension
    for n in (2, 4):
        assert parity_of(_minus_identity(n, q), standard_space("O", n, q, "+")) == Parity(0, 0)
    assert parity_of(_minus_identity(3, q), standard_space("O", 3, q, "+")) == Parity(1, 0)
    assert parity_of(_minus_identity(1, q), standard_space("O", 1, q, "-")) == Parity(0, 1)


def test_reflection_parities():
    sp = standard_space("O", 2, 5, "-")  # gram diag(1, 2), 2 a nonsquare mod 5
    assert parity_of(reflection([1, 0], sp), sp) == Parity(1, 0)
    assert parity_of(reflection([0, 1], sp), sp) == Parity(0, 1)


def test_rejects_non_isometry():
    sp = standard_space("O", 2, 5, "+")
    with pytest.raises(ValueError):
        parity_of(np.diag([2, 1]), sp)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_rotations(q):
    sp = standard_space("O", 2, q, "+")
    F = sp.field
    for a in range(q):
        for b in range(q):
            if F.add[F.mul[a, a], F.mul[b, b]] == 1:
                t = rotation_t(a, b, q)
                X = np.array([[a, b], [int(F.neg[b]), a]])
                assert parity_of(X, sp) == Parity(t, t)


@pytest.mark.parametrize(
    "text,name",
    [
        ("R4_{m=1,a=0,g=0,c=()}", "(Z2)^2"),
        ("R3_{m=1,a=2,g=0,c=()}", "0"),
        ("R0+_{m=1,a=0,g=0,c=(2)}", "(1,0)"),
        ("R0+_{m=3,a=0,g=0,c=()}", "(1,0)"),
    ],
)
def test_parity_groups_of_basics(text, name):
    lab = parse_basic(text, "O")
    assert str(parity_group(build_basic(lab, 3), basic_space(lab, 3))) == name


def test_omega_kernel_index():
    lab = parse_basic("R4_{m=1,a=0,g=0,c=()}", "O")
    sp = basic_space(lab, 3)
    R = closure(build_basic(lab, 3), sp.ops)
    assert R.order == 8
    assert omega_kernel(R, sp).order == 2
    line = standard_space("O", 1, 3, "+")
    assert omega_kernel(closure([_minus_identity(1, 3)], line.ops), line).order == 1


def test_decomposition_is_basis_independent():
    sp = standard_space("O", 4, 3, "+")
    rng = np.random.default_rng(5)
    X = np.eye(4, dtype=np.int64)
    while True:
        try:
            X = sp.ops.mm(X, reflection(rng.integers(0, 3, 4), sp))
        except ValueError:
            continue
        if rng.random() < 0.2:
            break
    assert parity_of(X, sp) == parity_of(X, sp, order=[3, 1, 0, 2])


def test_parity_group_names():
    for name in ("0", "(1,0)", "(0,1)", "(1,1)", "(Z2)^2"):
        assert str(ParityGroup.named(name)) == name
    assert ParityGroup([Parity(1, 0), Parity(0, 1)]).order == 4


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_homomorphism_small_fuzz(seed):
    sp = standard_space("O", 3, 5, "+")
    assert fuzz_homomorphism(sp, words=20, seed=seed) == 0
