"""The compiled and pure-Python kernels must agree bit for bit, and both must
agree with the brute-force oracles."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from pgcol import build_geometry, kernels
from pgcol.geometry import closure, complement_flat, enumerate_flats

BACKENDS = kernels.available()
GEOMS = [(2, 3), (2, 4), (3, 3), (4, 3), (5, 3)]


def test_python_backend_always_available():
    assert kernels.PYTHON in BACKENDS


def test_compiled_backend_built():
    # the editable install compiles the extension; the fallback covers other setups
    assert kernels.COMPILED is not None, "compiled kernels missing; rebuild with pip install -e ."


def test_using_restores_previous():
    before = kernels.active()
    with kernels.using("python") as b:
        assert kernels.active() is b is kernels.PYTHON
    assert kernels.active() is before
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def _colours(draw, g, s):
    return draw(st.lists(st.integers(0, s - 1), min_size=g.size, max_size=g.size))


@pytest.mark.parametrize("q,n", GEOMS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_rainbow_triangle_parity(q, n, data):
    g = build_geometry(q, n)
    cols = _colours(data.draw, g, data.draw(st.integers(1, 4)))
    results = {b.name: b.first_rainbow_triangle(g, cols) for b in BACKENDS}
    assert len(set(results.values())) == 1
    got = next(iter(results.values()))
    ref = oracles.rainbow_triangles(q, n, cols)
    assert (got is None) == (not ref)
    if got is not None:
        assert tuple(got) == min(ref)


@pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (3, 3)])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_decomposer_parity(q, n, data):
    g = build_geometry(q, n)
    cols = _colours(data.draw, g, data.draw(st.integers(1, 3)))
    r = data.draw(st.integers(0, n - 1))
    flats = enumerate_flats(g, r)
    f = flats[data.draw(st.integers(0, len(flats) - 1))]
    got = {b.name: b.is_decomposer(g, cols, f.points) for b in BACKENDS}
    assert set(got.values()) == {oracles.is_decomposer(q, n, cols, f.points)}


@pytest.mark.parametrize("q,n", GEOMS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_closure_parity(q, n, data):
    g = build_geometry(q, n)
    pts = data.draw(st.lists(st.integers(0, g.size - 1), max_size=5))
    ref = sorted(oracles.span(q, n, pts))
    for b in BACKENDS:
        flat, r = b.closure(g, pts)
        assert sorted(flat) == ref
        assert r == closure(g, pts).rank


@pytest.mark.parametrize("q,n", GEOMS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_omega_parity(q, n, data):
    g = build_geometry(q, n)
    member = data.draw(st.lists(st.integers(0, 1), min_size=g.size, max_size=g.size))
    # bias towards dense sets so larger flats occur
    if data.draw(st.booleans()):
        member = [1 - m if i % 3 else 1 for i, m in enumerate(member)]
    x = [p for p in range(g.size) if member[p]]
    expected = oracles.omega(q, n, x)
    for b in BACKENDS:
        w, pts = b.omega(g, member)
        assert w == expected
        assert set(pts) <= set(x)
        assert sorted(oracles.span(q, n, pts)) == sorted(pts)
        assert (oracles.rank(q, n, pts) if pts else 0) == w


@pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (3, 3), (4, 3)])
def test_lift_project_parity(q, n):
    g = build_geometry(q, n)
    for r in range(1, n):
        for f1 in enumerate_flats(g, r)[:6]:
            f2 = complement_flat(g, f1)
            targets = [p for p in range(g.size) if p not in f1.points]
            ref = []
            for e in targets:
                hit = oracles.span(q, n, set(f1.points) | {e}) & set(f2.points)
                assert len(hit) == 1
                ref.append(next(iter(hit)))
            for b in BACKENDS:
                assert list(b.lift_project(g, targets, f1.points, f2.points)) == ref
