import pytest
from hypothesis import given, settings, strategies as st

from radsub.census import (
    SERIES_IDS,
    PSeries,
    core_tower,
    count_principal_weights,
    count_unipotent,
    from_core_tower,
    hook_lengths,
    is_two_core,
    jacobi_check,
    partitions,
    partitions_orth,
    report_csv,
    series_named,
    series_sum_form,
    theta_series,
    two_cores,
    verify_identities,
)

N = 12
coeffs = st.lists(st.integers(-5, 5), min_size=N + 1, max_size=N + 1)


def test_partitions_orth_small():
    assert [p.parts for p in partitions_orth(2)] == [(1, 1)]
    assert sorted(p.parts for p in partitions_orth(4)) == [(1, 1, 1, 1), (2, 2), (3, 1)]
    one = partitions_orth(1)[0]
    assert (one.a, one.kappa) == (1, 1)


@pytest.mark.parametrize("w", range(1, 13))
def test_partition_stats(w):
    for lam in partitions_orth(w):
        assert lam.delta in {1, lam.a, lam.a - 1}
        assert lam.b == max(lam.a - 1, 0)
        assert lam.iota == (1 if lam.a else 0)


def test_two_cores_are_staircases():
    assert two_cores(10) == [(), (1,), (2, 1), (3, 2, 1), (4, 3, 2, 1)]


@pytest.mark.parametrize("n", range(0, 13))
def test_two_core_iff_staircase(n):
    for lam in partitions(n):
        stair = lam == tuple(range(len(lam), 0, -1))
        assert is_two_core(lam) == stair
        # a 2-core has no even hook at all
        assert is_two_core(lam) == all(h % 2 for h in hook_lengths(lam))


@pytest.mark.parametrize("n", range(0, 13))
def test_core_tower_round_trip(n):
    for lam in partitions(n):
        assert from_core_tower(core_tower(lam)) == lam


@given(coeffs, coeffs, coeffs)
def test_series_ring_laws(a, b, c):
    f, g, h = PSeries(a, N), PSeries(b, N), PSeries(c, N)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


@given(coeffs)
def test_series_inverse(a):
    a = [1] + a[1:]
    f = PSeries(a, N)
    assert f * f.inverse() == PSeries.one(N)


def test_named_series_examples():
    assert series_named("5.1", 8)[2] == 2
    assert series_named("5.1-1", 8)[4] == 1
    assert series_named("5.4", 64) == series_named("5.5", 64)
    with pytest.raises(KeyError):
        series_named("5.9", 8)


@pytest.mark.parametrize("sid", SERIES_IDS)
def test_named_series_forms(sid):
    s = series_named(sid, 40)
    assert s == series_sum_form(sid, 40)
    assert all(x >= 0 for x in s.c)


def test_theta():
    th = theta_series("t", 20)
    assert [th[k] for k in (0, 1, 2, 3, 6)] == [1, 1, 0, 1, 1]
    th2 = theta_series("t2", 20)
    assert all(th2[k] == 0 for k in range(1, 21, 2))
    assert jacobi_check(64)


def test_unipotent_examples():
    assert count_unipotent(2, "O+") + count_unipotent(2, "O-") == 2
    assert count_unipotent(4, "O+") - count_unipotent(4, "O-") == 1
    for w in (1, 3, 5, 7):
        assert count_unipotent(w, "SO+") == count_unipotent(w, "O+")


def test_weight_examples():
    assert count_principal_weights(1, "O+") == 1
    for w in (1, 3, 5, 7, 9):
        assert count_principal_weights(w, "Spin+") - count_principal_weights(w, "SO+") == series_named("5.5", 9)[w]


@pytest.mark.parametrize("w", range(1, 21))
def test_differences_vanish_unless_four_divides(w):
    for g in ("O", "SO", "J"):
        du = count_unipotent(w, g + "+") - count_unipotent(w, g + "-")
        dw = count_principal_weights(w, g + "+") - count_principal_weights(w, g + "-")
        if w % 4:
            assert du == dw == 0


def test_spin_minus_needs_four_not_dividing():
    assert count_unipotent(6, "Spin-") == count_principal_weights(6, "Spin-")
    with pytest.raises(ValueError):
        count_unipotent(8, "Spin-")
    with pytest.raises(ValueError):
        count_principal_weights(8, "Spin-")


def test_verify_identities_small():
    rows = verify_identities(12)
    assert rows and all(r.passed for r in rows)
    text = report_csv(rows)
    assert text.splitlines()[0] == "w,tag,gf_value,enum_value,pass"
    assert ",false" not in text
    with pytest.raises(ValueError):
        verify_identities(65)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 16))
def test_weights_equal_unipotent(w):
    for tag in ("O+", "O-", "SO+", "SO-", "Spin+", "J+", "J-"):
        assert count_unipotent(w, tag) == count_principal_weights(w, tag)
