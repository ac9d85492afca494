r"""
The transverse cone: dimension, recurrence, vertex cycles.

The vertex-cycle test is adversarial: the library computes extreme rays
by double description, so the oracle here enumerates every integral
solution of the switch conditions with entries in {0, 1, 2} by a pruned
depth-first search and extracts the support-minimal ones.  For a pointed
cone {A x = 0, x >= 0} the supports of extreme rays are exactly the
minimal supports of nonzero solutions, and each minimal support carries
a unique ray; since every vertex cycle of a trivalent track has entries
at most 2, the box search sees all of them.

Recurrence decisions are cross-checked against an independent scipy
linear program, and cone dimensions against sympy's exact nullspace.
"""

from fractions import Fraction
from math import gcd

import pytest
import sympy
from scipy.optimize import linprog

from tracksurf import (
    EmptyConeError,
    MeasureMismatchError,
    catalog,
    cone_dimension,
    is_recurrent,
    is_transversely_recurrent,
    pair,
    switch_defects,
    switch_system,
    transverse_kernel_basis,
    vertex_cycles,
)
from tracksurf.cone import TANGENTIAL, TRANSVERSE, BranchWeights


# -- the oracle ---------------------------------------------------------------


def box_solutions(track, top=2):
    """All integer solutions of the switch conditions with 0 <= x_b <= top,
    by depth-first search with per-equation interval pruning."""
    rows = switch_system(track)
    n = track.num_branches
    # suffix bounds: the least/greatest value columns >= j can still add
    lo = [[0] * (n + 1) for _ in rows]
    hi = [[0] * (n + 1) for _ in rows]
    for r, row in enumerate(rows):
        for j in range(n - 1, -1, -1):
            c = row[j]
            lo[r][j] = lo[r][j + 1] + min(0, top * c)
            hi[r][j] = hi[r][j + 1] + max(0, top * c)

    out = []
    x = [0] * n
    partial = [0] * len(rows)

    def dfs(j):
        if j == n:
            if all(p == 0 for p in partial):
                out.append(tuple(x))
            return
        for v in range(top + 1):
            x[j] = v
            ok = True
            for r, row in enumerate(rows):
                p = partial[r] + row[j] * v
                if p + lo[r][j + 1] > 0 or p + hi[r][j + 1] < 0:
                    ok = False
                    break
            if ok:
                for r, row in enumerate(rows):
                    partial[r] += row[j] * v
                dfs(j + 1)
                for r, row in enumerate(rows):
                    partial[r] -= row[j] * v
        x[j] = 0

    dfs(0)
    return out


def oracle_vertex_cycles(track):
    """Support-minimal nonzero box solutions, primitive-normalized."""
    sols = [s for s in box_solutions(track) if any(s)]
    supports = [frozenset(j for j, v in enumerate(s) if v) for s in sols]
    rays = set()
    for s, supp in zip(sols, supports):
        if any(other < supp for other in supports):
            continue
        g = gcd(*(v for v in s if v))
        rays.add(tuple(v // g for v in s))
    return rays


def library_cycles_as_set(track):
    out = set()
    for bw in vertex_cycles(track):
        vec = []
        for w in bw.weights:
            f = Fraction(w)
            assert f.denominator == 1
            vec.append(int(f))
        out.add(tuple(vec))
    return out


def oracle_recurrent(track):
    """Strictly positive solutions exist iff the supports of the extreme
    rays jointly cover every branch."""
    covered = set()
    for ray in oracle_vertex_cycles(track):
        covered |= {j for j, v in enumerate(ray) if v}
    return covered == set(range(track.num_branches))


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_vertex_cycles_match_exhaustive_oracle(name):
    t = catalog.CATALOG[name]()
    if not oracle_recurrent(t):
        # the library refuses vertex cycles on non-recurrent tracks
        with pytest.raises(EmptyConeError):
            vertex_cycles(t)
        return
    assert library_cycles_as_set(t) == oracle_vertex_cycles(t)


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_vertex_cycle_entries_at_most_two(name):
    t = catalog.CATALOG[name]()
    try:
        cycles = vertex_cycles(t)
    except EmptyConeError:
        return
    for bw in cycles:
        assert all(0 <= w <= 2 for w in bw.weights)
        assert bw.is_valid()  # switch conditions and nonnegativity


def test_punctured_torus_cycles_by_hand():
    t = catalog.punctured_torus_track()
    assert library_cycles_as_set(t) == {
        (2, 1, 1, 1, 0, 1),
        (2, 1, 1, 1, 1, 0),
    }


def test_dumbbell_cone_is_one_ray():
    t = catalog.dumbbell_track()
    assert library_cycles_as_set(t) == {(2, 1, 1)}
    assert cone_dimension(t) == 1


def test_zero_cone_is_a_degenerate_ray():
    t = catalog.zero_cone_track()
    # the loop at switch 0 stays free, everything else is forced to zero
    assert oracle_vertex_cycles(t) == {(0, 1, 0)}
    assert not oracle_recurrent(t)
    assert is_recurrent(t) == (False, None)
    with pytest.raises(EmptyConeError):
        vertex_cycles(t)


# -- dimension ----------------------------------------------------------------


def test_cone_dimension_on_complete_tracks():
    expected = {
        "punctured-torus": 2,
        "four-punctured-sphere": 2,
        "genus2": 6,
        "twice-punctured-torus": 4,
    }
    for name, dim in expected.items():
        t = catalog.CATALOG[name]()
        assert cone_dimension(t) == dim == 6 * t.genus - 6 + 2 * t.punctures


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_cone_dimension_matches_sympy_nullspace(name):
    t = catalog.CATALOG[name]()
    m = sympy.Matrix(switch_system(t))
    assert cone_dimension(t) == len(m.nullspace())


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_kernel_basis_spans_the_solution_space(name):
    t = catalog.CATALOG[name]()
    basis = transverse_kernel_basis(t)
    assert len(basis) == cone_dimension(t)
    rows = switch_system(t)
    for vec in basis:
        assert all(sum(a * x for a, x in zip(row, vec)) == 0 for row in rows)
    # the basis vectors are linearly independent
    m = sympy.Matrix([[sympy.Rational(x) for x in vec] for vec in basis])
    assert m.rank() == len(basis)


# -- recurrence ---------------------------------------------------------------


def scipy_recurrent(track):
    """Feasibility of {A x = 0, x >= 1} decides strict positivity."""
    rows = switch_system(track)
    res = linprog(
        c=[0.0] * track.num_branches,
        A_eq=[[float(a) for a in row] for row in rows],
        b_eq=[0.0] * len(rows),
        bounds=[(1.0, None)] * track.num_branches,
        method="highs",
    )
    return res.status == 0


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_recurrence_matches_scipy_lp(name):
    t = catalog.CATALOG[name]()
    assert is_recurrent(t)[0] == scipy_recurrent(t) == oracle_recurrent(t)


def test_recurrence_table():
    expected = {
        "punctured-torus": (True, False),
        "four-punctured-sphere": (True, True),
        "genus2": (True, True),
        "twice-punctured-torus": (True, True),
        "overwound-trigon": (True, False),
        "dumbbell": (True, True),
        "zero-cone": (False, True),
    }
    for name, (rec, trec) in expected.items():
        t = catalog.CATALOG[name]()
        assert is_recurrent(t)[0] == rec
        assert is_transversely_recurrent(t)[0] == trec


def test_recurrence_witnesses_are_checked():
    for name in ("four-punctured-sphere", "genus2", "twice-punctured-torus"):
        t = catalog.CATALOG[name]()
        ok, mu = is_recurrent(t)
        assert ok and mu.kind == TRANSVERSE
        assert all(w > 0 for w in mu.weights)
        assert mu.total() == 1
        assert mu.is_valid()
        ok, nu = is_transversely_recurrent(t)
        assert ok and nu.kind == TANGENTIAL
        assert all(w > 0 for w in nu.weights)
        assert nu.is_valid()


def test_overwound_side_blocks_tangential_measures():
    # the long trigon side walks branch 0 twice; against the two short
    # sides the triangle inequality reads 2 nu(0) + nu(1) <= 0, which no
    # strictly positive vector satisfies
    t = catalog.overwound_trigon_track()
    trigon = t.trigons()[0]
    long_side = max(trigon.sides, key=len)
    assert sorted(long_side).count(0) == 2
    assert is_transversely_recurrent(t) == (False, None)


# -- weights and pairing --------------------------------------------------------


def test_switch_defects_vanish_on_measures():
    t = catalog.punctured_torus_track()
    assert switch_defects(t, [4, 2, 2, 2, 1, 1]) == [0, 0, 0, 0]
    assert switch_defects(t, [4, 2, 2, 2, 1, 2]) == [0, 0, -1, -1]


def test_branch_weights_violations():
    t = catalog.punctured_torus_track()
    assert BranchWeights(t, TRANSVERSE, [4, 2, 2, 2, 1, 1]).violations() == []
    bad = BranchWeights(t, TRANSVERSE, [-4, 2, 2, 2, 1, 1])
    assert any("negative weight" in v for v in bad.violations())
    with pytest.raises(MeasureMismatchError):
        BranchWeights(t, TRANSVERSE, [1, 2, 3])  # wrong length


def test_pair_requires_matching_kinds_and_tracks():
    t = catalog.four_punctured_sphere_track()
    mu = is_recurrent(t)[1]
    nu = is_transversely_recurrent(t)[1]
    assert pair(mu, nu) > 0
    with pytest.raises(MeasureMismatchError):
        pair(mu, mu)
    with pytest.raises(MeasureMismatchError):
        pair(nu, mu)
    other = catalog.genus2_track()
    with pytest.raises(MeasureMismatchError):
        pair(mu, is_transversely_recurrent(other)[1])


def test_catalog_measures_are_positive_cone_points():
    for name, fn in catalog.CATALOG_MEASURES.items():
        mu = fn()
        assert mu.kind == TRANSVERSE
        assert mu.is_valid()
        assert all(w > 0 for w in mu.weights)
