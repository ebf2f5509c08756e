import os
from pathlib import Path

import pytest

import tdindex

FIXTURES = Path(os.environ.get("TDI_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def fx(name):
    return str(FIXTURES / name)


def test_figure_eight_order_10():
    s = tdindex.index(fx("m004.tri"), 10)
    assert s.coefficients(10) == [1, -2, -3, 2, 8, 18, 18, 14, -12, -52, -106]


def test_big_coefficients_are_python_ints():
    s = tdindex.index(fx("m004.tri"), 100)
    assert s.coefficients(100)[-1] == -3272416148


def test_threads_and_half_orders():
    a = tdindex.index(fx("5_2.nz"), "21/2", threads=2)
    b = tdindex.index(fx("5_2.nz"), "21/2")
    assert a == b
    assert a.order_halves == 21


def test_tet_index_and_degree():
    assert tdindex.degree(1, 1) == "3/2"
    s = tdindex.tet_index(1, 1, 4)
    assert min(s.terms()) == 3
    assert tdindex.tet_index(2, -1, 6) == tdindex.tet_index(1, -2, 6)


def test_identities():
    assert all(tdindex.verify_identities(1, 6).values())


def test_basis_and_sublattice():
    b = tdindex.basis(fx("m129.nz"))
    assert b["excluded"] == [2, 3]
    assert b["rows"] == ["E2 = -E0 - 2*E1", "E3 = E1"]
    assert tdindex.sublattice_index(fx("m129.nz"), [1, 3]) == 2


def test_efficiency():
    ok, report = tdindex.efficiency(fx("trefoil.tri"))
    assert ok and report.startswith("INDEX STRUCTURE: yes (9/9")
    ok, report = tdindex.efficiency(fx("deg1_deg2.tri"))
    assert not ok


def test_moves_round_trip():
    text = Path(fx("m004.tri")).read_text()
    moved = tdindex.move(text, "2-3", "0,0")
    assert "tets 3" in moved
    assert tdindex.isomorphic(tdindex.move(moved, "3-2", "0"), text)


def test_errors():
    with pytest.raises(tdindex.InputError):
        tdindex.index(fx("missing.tri"), 5)
    with pytest.raises(tdindex.Divergent):
        tdindex.index(fx("deg1_deg2.tri"), 4)
    with pytest.raises(ValueError):
        tdindex.gluing_data(fx("missing.nz"))


def test_version():
    assert tdindex.FORMAT_VERSIONS == "tri v1 / nz v1 / peri v1"
