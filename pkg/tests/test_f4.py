import pytest

from radsub import f4
from radsub.basics import label_dim


def test_table_shapes():
    assert len(f4.table_rows("Ta1")) == 7
    assert len(f4.table_rows("Ta2")) == 21
    assert len(f4.table_rows("Ta3")) == 16
    assert sum(r.excluded for r in f4.table_rows("Ta2")) == 5
    with pytest.raises(ValueError):
        f4.table_rows("Ta4")


@pytest.mark.parametrize("which,dim", [("Ta2", 9), ("Ta3", 8)])
@pytest.mark.parametrize("q", [3, 7])
def test_row_dimensions(which, dim, q):
    for r in f4.table_rows(which):
        assert sum(d for _, d, _ in f4._blocks(r, q)) == dim


def test_size_examples():
    rows = {r.id: r for r in f4.table_rows("Ta2") + f4.table_rows("Ta3")}
    assert rows["R_8"].size_at(2) == 13
    assert rows["R_29"].size_at(3) == 15


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("row", ["1", "2", "3", "4"])
def test_ta1_counts(n, row):
    labs = f4.ta1_labels(row, n, 3)
    assert len(labs) == 2 ** (n - 2)
    assert all(label_dim(x, 3) == 2**n for x in labs)


def test_ta1_small_dims():
    assert [r.id for r in f4.ta1_rows_for_dim(1)] == ["6", "7"]
    assert [r.id for r in f4.ta1_rows_for_dim(2)] == ["5"]
    assert [r.id for r in f4.ta1_rows_for_dim(8)] == ["1", "2", "3", "4"]
    assert f4.ta1_rows_for_dim(6) == []


@pytest.mark.parametrize("q", [3, 7])
def test_parities_match(q):
    for r in f4.verify_table_sizes(q):
        assert r["parity"] == r["parity_expected"], r["id"]


@pytest.mark.parametrize("q", [3, 5])
def test_excluded_rows_are_line_isolated(q):
    for r in f4.table_rows("Ta2"):
        assert f4.line_isolated(r, q) == r.excluded, r.id


def test_r13_size_closure():
    # the structural order agrees with a brute-force closure
    r13 = next(r for r in f4.table_rows("Ta2") if r.id == "R_13")
    chk = f4._row_check(r13, 3, 10**6)
    assert chk["log2_computed"] == chk["log2_closure"] == 12


def test_orbit_stabilizers():
    assert f4.orbit_stabilizers("Gamma") == [6]
    assert f4.orbit_stabilizers("S") == [2, 6]
    assert f4.orbit_stabilizers("E") == [2, 2]


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_principal_counts(q):
    c = f4.count_alp_principal(q)
    assert (c.alp1, c.alp2, c.ibr) == (19, 7, 26)


def test_quasi():
    assert f4.count_alp_quasi(7) == f4.count_alp_quasi(13) == 9
    with pytest.raises(ValueError):
        f4.count_alp_quasi(9)
    labs = f4.sl3_radical_labels(7)
    assert len(labs) == 6 and {x.kind for x in labs} == {"SL"}
    assert {x.kind for x in f4.sl3_radical_labels(7, -1)} == {"SU"}
