from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from pgcol import (
    Colouring,
    DecompositionSequence,
    NotSkewError,
    Part,
    PgcolError,
    RainbowTriangleError,
    build_geometry,
    classify_plane,
    closure,
    complement_flat,
    decompose,
    enumerate_flats,
    find_decomposer,
    find_rainbow_triangle,
    is_decomposer,
    is_target,
    lift_join,
    lift_join_many,
    recolour,
    restrict,
)
from pgcol.extremal import (
    construct_block_colouring,
    construct_chain_colouring,
    omega,
    random_invertible,
    random_rtf_colouring,
    random_target_colouring,
)
from pgcol.geometry import all_flats
from pgcol.rng import SplitMix64
from pgcol.structure import (
    PLANE_CASES,
    make_part,
    pair_colouring,
    plane_case_colouring,
    plane_cases,
    target_decomposition,
)

FANO = build_geometry(2, 3)


def rtf(q, n, s=4):
    return st.integers(0, 2**63).map(lambda seed: random_rtf_colouring(q, n, s, SplitMix64(seed)))


def host_map(c: Colouring, flat) -> dict:
    sub, emb = restrict(c, flat)
    return {emb[i]: sub.colours[i] for i in range(len(emb))}


def fano_rtf(s_max=3):
    for s in range(1, s_max + 1):
        for cols in itertools.product(range(s), repeat=7):
            if s > 1 and max(cols) != s - 1:
                continue  # colourings with fewer colours were seen for smaller s
            c = Colouring(FANO, cols, s)
            if find_rainbow_triangle(c) is None:
                yield c


# -- decomposers -----------------------------------------------------------------


def test_empty_flat_is_decomposer():
    c = Colouring(FANO, (0, 1, 2, 0, 1, 2, 0), 3)
    assert is_decomposer(c, closure(FANO, []))


def test_bicoloured_line_decomposer():
    # line {0,1,2} coloured 1,1,2 and colour 0 everywhere else
    c = Colouring(FANO, (1, 1, 2, 0, 0, 0, 0), 3)
    assert find_rainbow_triangle(c) is None
    assert is_decomposer(c, closure(FANO, [0, 1]))


def test_mixed_line_not_decomposer():
    c = construct_chain_colouring(2, 3, [0, 1, 2])
    line = closure(FANO, [1, 3])  # points 1, 3, 5 with colours 1, 2, 2
    assert line.points == (1, 3, 5)
    # point 0 closes the line to the whole plane; the rest carries colours 0, 1, 2
    assert not is_decomposer(c, line)
    assert not oracles.is_decomposer(2, 3, c.colours, line.points)


def test_decomposer_requires_proper_flat():
    with pytest.raises(PgcolError):
        is_decomposer(Colouring.constant(FANO), closure(FANO, range(7)))


def test_find_decomposer_examples():
    assert find_decomposer(Colouring(build_geometry(2, 2), (0, 1, 2), 3)) is None
    assert find_decomposer(Colouring.constant(FANO)).points == (0,)


@pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (3, 3)])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_find_decomposer_vs_oracle(q, n, data):
    g = build_geometry(q, n)
    if data.draw(st.booleans()):
        c = data.draw(rtf(q, n))
    else:
        s = data.draw(st.integers(1, 3))
        c = Colouring(g, tuple(data.draw(st.lists(st.integers(0, s - 1), min_size=g.size, max_size=g.size))), s)
    expected = None
    for r in range(1, n):
        hits = sorted(tuple(sorted(f)) for f in oracles.flats(q, n)[r] if oracles.is_decomposer(q, n, c.colours, f))
        if hits:
            expected = hits[0]
            break
    got = find_decomposer(c)
    assert (got.points if got is not None else None) == expected


# -- lift-join --------------------------------------------------------------------


def test_lift_join_point_and_bicoloured_line_gives_case_2i():
    x = closure(FANO, [0])
    line = complement_flat(FANO, x)
    c1 = Colouring(build_geometry(2, 1), (0,), 3)
    c2 = Colouring(build_geometry(2, 2), (1, 2, 2), 3)
    joined = lift_join(FANO, x, c1, line, c2)
    assert joined.flat.rank == 3
    assert classify_plane(joined.colouring) == "2i"


def test_lift_join_monochromatic_second_part():
    x = closure(FANO, [0, 1])
    pt = complement_flat(FANO, x)
    c1 = Colouring(build_geometry(2, 2), (0, 1, 1), 3)
    c2 = Colouring(build_geometry(2, 1), (2,), 3)
    got = lift_join(FANO, x, c1, pt, c2).colouring
    emb = FANO.embedding(closure(FANO, range(7)))
    host = {emb[i]: got.colours[i] for i in range(7)}
    assert {host[p] for p in range(7) if p not in x.points} == {2}


def test_lift_join_needs_skew():
    a = closure(FANO, [0, 1])
    b = closure(FANO, [0, 3])
    c = Colouring(build_geometry(2, 2), (0, 0, 0), 1)
    with pytest.raises(NotSkewError):
        lift_join(FANO, a, c, b, c)


@pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (3, 3)])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_lift_join_vs_oracle(q, n, data):
    g = build_geometry(q, n)
    r = data.draw(st.integers(1, n - 1))
    fl = enumerate_flats(g, r)
    f1 = fl[data.draw(st.integers(0, len(fl) - 1))]
    f2 = complement_flat(g, f1)
    cols = tuple(data.draw(st.lists(st.integers(0, 2), min_size=g.size, max_size=g.size)))
    c = Colouring(g, cols, 3)
    p1, p2 = make_part(c, f1), make_part(c, f2)
    joined = lift_join(g, f1, p1.colouring, f2, p2.colouring)
    ref = oracles.lift_join(q, n, f1.points, host_map(c, f1), f2.points, host_map(c, f2))
    got = dict(zip(g.embedding(joined.flat), joined.colouring.colours))
    assert got == ref
    # restrictions are recovered
    for f in (f1, f2):
        assert all(got[p] == cols[p] for p in f.points)


def test_liftjoin_iff_decomposer_exhaustive():
    proper = [f for f in all_flats(FANO) if 0 < f.rank < 3]
    for cols in itertools.product(range(3), repeat=7):
        c = Colouring(FANO, cols, 3)
        for f in proper:
            f2 = complement_flat(FANO, f)
            joined = lift_join_many([make_part(c, f), make_part(c, f2)], FANO)
            assert (joined.colours == cols) == is_decomposer(c, f)


def test_fold_single_part_is_identity():
    c = Colouring(FANO, (0, 1, 1, 2, 0, 1, 2), 3)
    assert lift_join_many([make_part(c, closure(FANO, range(7)))], FANO) == c


@pytest.mark.parametrize("cols", list(itertools.permutations(range(3))) + [(0, 0, 1), (2, 2, 2)])
def test_fold_of_skew_points_is_chain(cols):
    pts = [closure(FANO, [p]) for p in (0, 1, 3)]  # standard basis points, last coordinate first
    g1 = build_geometry(2, 1)
    parts = [Part(f, Colouring(g1, (k,), 3)) for f, k in zip(pts, cols)]
    assert lift_join_many(parts, FANO) == construct_chain_colouring(2, 3, list(cols), 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**63), st.sampled_from([(1, 1, 2), (1, 2, 1), (2, 1, 1), (1, 1, 1, 1)]))
def test_fold_is_associative(seed, ranks):
    g = build_geometry(2, 4)
    rng = SplitMix64(seed)
    # random skew flats of the given ranks: split a random basis
    basis = random_invertible(2, 4, rng)
    flats, i = [], 0
    for r in ranks:
        flats.append(closure(g, [g.index_of(v) for v in basis[i:i + r]]))
        i += r
    parts = [Part(f, Colouring(build_geometry(2, f.rank),
                               tuple(rng.randbelow(3) for _ in range(2**f.rank - 1)), 3)) for f in flats]
    left = lift_join_many(parts, g)
    right = parts[-1]
    for p in reversed(parts[:-1]):
        right = lift_join(g, p.flat, p.colouring, right.flat, right.colouring)
    assert right.colouring == left


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**63))
def test_lift_join_keeps_triangle_free(seed):
    g = build_geometry(2, 4)
    rng = SplitMix64(seed)
    c = random_rtf_colouring(2, 4, 4, rng)
    other = random_rtf_colouring(2, 4, 4, SplitMix64(seed + 1))
    f = enumerate_flats(g, 1 + rng.randbelow(3))[rng.randbelow(7)]
    f2 = complement_flat(g, f)
    joined = lift_join_many([make_part(c, f), make_part(other, f2)], g)
    assert find_rainbow_triangle(joined) is None


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**63))
def test_recolour_commutes_with_lift_join(seed):
    rng = SplitMix64(seed)
    c = Colouring(FANO, tuple(rng.randbelow(4) for _ in range(7)), 4)
    f = enumerate_flats(FANO, 1 + rng.randbelow(2))[rng.randbelow(7)]
    f2 = complement_flat(FANO, f)
    mapping = [rng.randbelow(3) for _ in range(4)]
    a = recolour(lift_join_many([make_part(c, f), make_part(c, f2)], FANO), mapping, 4)
    d = recolour(c, mapping, 4)
    b = lift_join_many([make_part(d, f), make_part(d, f2)], FANO)
    assert a == b


# -- decompose --------------------------------------------------------------------


def test_decompose_bicoloured_is_single_part():
    c = Colouring(FANO, (0, 1, 1, 0, 0, 1, 0), 2)
    seq = decompose(c)
    assert len(seq) == 1 and seq.parts[0].flat.rank == 3


def test_decompose_line_plus_point_colouring():
    # bicoloured line {0,1,2} (1,1,2), colour 0 elsewhere: the lone colour-2
    # point is the least-rank decomposer, so it comes first
    c = Colouring(FANO, (1, 1, 2, 0, 0, 0, 0), 3)
    seq = decompose(c)
    assert [p.flat.points for p in seq.parts] == [(2,), (0, 3, 4)]
    assert [sorted(p.colouring.used) for p in seq.parts] == [[2], [0, 1]]
    assert lift_join_many(seq) == c


def test_decompose_rejects_rainbow_triangle():
    c = Colouring(build_geometry(2, 2), (0, 1, 2), 3)
    with pytest.raises(RainbowTriangleError) as exc:
        decompose(c)
    assert tuple(exc.value.witness) == (0, 1, 2)


def test_decompose_round_trip_fano_exhaustive():
    count = 0
    for c in fano_rtf(3):
        seq = decompose(c)
        assert lift_join_many(seq) == c
        assert seq.spans
        assert all(len(p.colouring.used) <= 2 for p in seq.parts)
        count += 1
    assert count > 0


@pytest.mark.parametrize("q,n", [(2, 4), (2, 5), (3, 3), (4, 3)])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_decompose_round_trip_sampled(q, n, data):
    c = data.draw(rtf(q, n, 5))
    seq = decompose(c)
    assert lift_join_many(seq) == c
    assert sum(f.rank for f in seq.flats) == n


def test_sequence_validation():
    c = Colouring.constant(FANO)
    a = make_part(c, closure(FANO, [0, 1]))
    b = make_part(c, closure(FANO, [0, 3]))
    with pytest.raises(NotSkewError):
        DecompositionSequence(FANO, (a, b))
    with pytest.raises(PgcolError):
        DecompositionSequence(FANO, ())


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**63))
def test_ljomega_vs_oracle(seed):
    c = random_rtf_colouring(2, 4, 4, SplitMix64(seed))
    seq = decompose(c)
    for k, cls in c.classes.items():
        whole = oracles.omega(2, 4, cls)
        parts = sum(oracles.omega(2, 4, set(f.points) & set(cls)) for f in seq.flats)
        assert whole == parts == omega(c.geometry, cls)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**63))
def test_decomposer_of_decomposer_restriction(seed):
    g = build_geometry(2, 4)
    c = random_rtf_colouring(2, 4, 4, SplitMix64(seed))
    f = find_decomposer(c)
    if f is None or f.rank < 2:
        return
    sub, emb = restrict(c, f)
    for inner in all_flats(sub.geometry):
        if inner.rank == sub.n:
            continue
        if is_decomposer(sub, inner):
            assert is_decomposer(c, closure(g, [emb[p] for p in inner.points]))


# -- targets ----------------------------------------------------------------------


def test_target_examples():
    line = build_geometry(3, 2)
    chain = is_target(Colouring(line, (1, 0, 0, 0), 2))
    assert chain is not None and chain.ranks == (0, 1, 2)
    assert chain.layer_colours == (1, 0)
    assert is_target(Colouring(line, (0, 0, 1, 1), 2)) is None
    mono = is_target(Colouring.constant(FANO, 1, 2))
    assert mono.ranks == (0, 3) and mono.layer_colours == (1,)


@pytest.mark.parametrize("q,n", [(2, 3), (3, 3), (2, 4)])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_is_target_vs_oracle(q, n, data):
    g = build_geometry(q, n)
    if data.draw(st.booleans()):
        c = random_target_colouring(q, n, 3, SplitMix64(data.draw(st.integers(0, 2**63))))
    else:
        s = data.draw(st.integers(1, 3))
        c = Colouring(g, tuple(data.draw(st.lists(st.integers(0, s - 1), min_size=g.size, max_size=g.size))), s)
    chain = is_target(c)
    assert (chain is not None) == oracles.is_target(q, n, c.colours)
    if chain is not None:
        assert chain.flats[0].rank == 0 and chain.flats[-1].rank == n
        for lo, hi, k in zip(chain.flats, chain.flats[1:], chain.layer_colours):
            diff = set(hi.points) - set(lo.points)
            assert diff and {c.colours[p] for p in diff} == {k}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**63))
def test_target_restricts_to_targets(seed):
    g = build_geometry(2, 4)
    c = random_target_colouring(2, 4, 3, SplitMix64(seed))
    assert is_target(c) is not None
    for f in all_flats(g):
        if f.rank:
            assert is_target(restrict(c, f)[0]) is not None


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**63))
def test_target_decomposition_is_monochromatic_lift_join(seed):
    c = random_target_colouring(2, 5, 3, SplitMix64(seed))
    seq = target_decomposition(c, is_target(c))
    assert all(len(p.colouring.used) == 1 for p in seq.parts)
    assert lift_join_many(seq) == c


def test_pair_colouring_fano_exhaustive():
    for c in fano_rtf(3):
        if len(c.used) < 2:
            continue
        labels, pairs = pair_colouring(c)
        assert is_target(labels) is not None
        assert all(c.colours[e] in pairs[labels.colours[e]] for e in range(7))


def test_pair_colouring_needs_two_colours():
    with pytest.raises(PgcolError):
        pair_colouring(Colouring(FANO, (1,) * 7, 2))


# -- planes -----------------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3])
@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**63))
def test_plane_case_constructions(q, seed):
    rng = SplitMix64(seed)
    for case in PLANE_CASES:
        if case == "2ii" and q == 2:
            with pytest.raises(PgcolError):
                plane_case_colouring(q, case, rng)
            continue
        c = plane_case_colouring(q, case, rng)
        assert plane_cases(c) == [case]
        assert classify_plane(c) == case


def test_case_2ii_impossible_in_fano():
    # lines have three points, so a line cannot hold two colours twice each
    for cols in itertools.product(range(3), repeat=7):
        assert "2ii" not in plane_cases(Colouring(FANO, cols, 3))


def test_classify_plane_rejects_three_coloured_lines():
    assert classify_plane(Colouring(FANO, (0, 1, 2, 0, 0, 0, 0), 3)) is None


def test_block_colouring_parts():
    c = construct_block_colouring(2, 6, 3, 5)
    assert find_rainbow_triangle(c) is None
