import pytest
from hypothesis import given, strategies as st

from radsub.gfq import (
    FieldElement,
    field_make,
    field_of_order,
    prime_power,
    q_params,
    q_params_oddp,
    solve_sum_of_squares,
    square_class,
)

QS = [3, 5, 7, 9, 11, 13, 25, 27]


def test_prime_field_shapes():
    F = field_make(3, 1)
    assert (F.q, F.p, F.k) == (3, 3, 1)
    assert len(list(F.elements())) == 3
    assert field_make(3, 2).q == 9
    # the multiplicative group of F_5 is cyclic of order 4
    assert field_make(5, 1).order(field_make(5, 1).primitive) == 4


def test_prime_power():
    assert prime_power(27) == (3, 3)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        prime_power(12)


@pytest.mark.parametrize("q", QS)
def test_field_axioms_tables(q):
    F = field_of_order(q)
    for x in range(1, q):
        assert F.mul[x, F.inv[x]] == 1
        assert F.add[x, F.neg[x]] == 0
    # frobenius is additive and multiplicative
    for x in range(q):
        for y in range(0, q, max(1, q // 5)):
            assert F.frob(int(F.add[x, y])) == F.add[F.frob(x), F.frob(y)]
            assert F.frob(int(F.mul[x, y])) == F.mul[F.frob(x), F.frob(y)]


def test_square_class_examples():
    F5, F7 = field_make(5), field_make(7)
    assert square_class(FieldElement(F5, 1)) == "square"
    assert square_class(FieldElement(F5, 2)) == "nonsquare"
    assert square_class(FieldElement(F7, 0)) == "zero"


@pytest.mark.parametrize("q", QS)
def test_square_class_counts(q):
    F = field_of_order(q)
    sq = {int(F.mul[x, x]) for x in range(1, q)}
    for x in range(1, q):
        assert square_class(x, F) == ("square" if x in sq else "nonsquare")
    assert len(sq) == (q - 1) // 2


def test_q_params():
    p3 = q_params(3)
    assert (p3.eps, p3.a) == (-1, 2)
    p7 = q_params(7)
    assert (p7.eps, p7.a) == (-1, 3)
    assert (q_params(5).eps, q_params(5).a) == (1, 2)
    o = q_params_oddp(4, 3)
    assert (o.e, o.eps, o.a) == (1, 1, 1)
    with pytest.raises(ValueError):
        q_params(4)


def test_sum_of_squares_examples():
    b, b2 = solve_sum_of_squares(-1, 1, 3)
    assert (b.value, b2.value) == (1, 1)
    b, b2 = solve_sum_of_squares(0, 1, 5)
    assert (b.value, b2.value) == (0, 0)
    b, b2 = solve_sum_of_squares(-1, 1, 5)
    assert (b * b + b2 * b2).value == 4


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11])
@pytest.mark.parametrize("eps", [1, -1])
def test_sum_of_squares_all_lambda(q, eps):
    small = field_of_order(q)
    for lam in range(q):
        b, b2 = solve_sum_of_squares(FieldElement(small, lam), eps, q)
        F = b.parent
        target = F.subfield_embedding(small)[lam]
        assert (b * b + b2 * b2).value == target
        # b lies in the eps-eigenspace of x -> x^q
        for x in (b, b2):
            fx = F.pow(x.value, q)
            assert fx == (x.value if eps == 1 else int(F.neg[x.value]))


@given(st.sampled_from(QS), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_distributive(q, a, b, c):
    F = field_of_order(q)
    x, y, z = (FieldElement(F, v % q) for v in (a, b, c))
    assert x * (y + z) == x * y + x * z
    assert (x - y) + y == x
