r"""
Saddle-connection enumeration against a tile-walking oracle.

The oracle knows nothing about the library's wedge search or the
triangulated geodesic tracer.  It works straight off the three-square
L-shape with hand-coded tile adjacency: crossing the right edge of tile
A lands in B, B back in A, C in itself, and so on.  Every corner of the
tiling is the unique singularity, so a separatrix of primitive slope
``(p, q)`` leaving a corner closes up at parameter time exactly one
(a coprime pair has no earlier moment with both coordinates integral),
giving holonomy ``(p, q)`` on the nose.  Non-primitive vectors pass
through an intermediate corner and are not connections at all.  The
library's census must therefore be exactly the primitive integer
vectors in the disc, up to sign.
"""

import math
from fractions import Fraction

import pytest

from tracksurf import (
    FlowState,
    apply_matrix,
    connections_disjoint,
    golden_l_surface,
    pillowcase_surface,
    saddle_connections,
    sqrtD,
    three_square_surface,
)

RIGHT_OF = {"A": "B", "B": "A", "C": "C"}
UP_OF = {"A": "C", "B": "B", "C": "A"}


def walk_from_corner(p, q):
    """Follow direction ``(p, q)`` from a corner of the L-shape tiling and
    return the parameter time of the first corner hit.

    The position is tracked inside a single unit tile with exact
    fractions; the adjacency tables above are involutions, so crossing
    either vertical edge applies RIGHT_OF and either horizontal edge
    UP_OF regardless of the crossing direction.
    """
    # start in the corner wedge that contains the direction
    x = Fraction(0) if p >= 0 else Fraction(1)
    y = Fraction(0) if q >= 0 else Fraction(1)
    tile = "A"
    t = Fraction(0)
    while True:
        # time to the next vertical / horizontal edge
        tx = math.inf
        if p > 0:
            tx = (1 - x) / p
        elif p < 0:
            tx = x / -p
        ty = math.inf
        if q > 0:
            ty = (1 - y) / q
        elif q < 0:
            ty = y / -q
        step = min(tx, ty)
        t += step
        x += step * p
        y += step * q
        if x in (0, 1) and y in (0, 1):
            return t
        if x == 1:
            tile, x = RIGHT_OF[tile], Fraction(0)
        elif x == 0 and p < 0:
            tile, x = RIGHT_OF[tile], Fraction(1)
        if y == 1:
            tile, y = UP_OF[tile], Fraction(0)
        elif y == 0 and q < 0:
            tile, y = UP_OF[tile], Fraction(1)
        assert t < 10**6  # safety: the walk must terminate


def canonical_primitive_vectors(bound):
    out = set()
    b2 = bound * bound
    for x in range(0, bound + 1):
        for y in range(-bound, bound + 1):
            if x * x + y * y > b2 or (x, y) == (0, 0):
                continue
            if x == 0 and y < 0:
                continue
            if x == 0 or y == 0:
                if {abs(x), abs(y)} != {0, 1}:
                    continue
            elif math.gcd(x, abs(y)) != 1:
                continue
            out.add((x, y))
    return out


@pytest.mark.parametrize("bound", [3, 5, 10])
def test_three_square_census_matches_walking_oracle(bound):
    fs = three_square_surface()
    found = {c.holonomy for c in saddle_connections(fs, bound)}
    expected = set()
    for p, q in canonical_primitive_vectors(bound):
        assert walk_from_corner(p, q) == 1
        expected.add((p, q))
    assert found == expected


def test_three_square_short_census_by_hand():
    fs = three_square_surface()
    cons = saddle_connections(fs, 3)
    assert [(c.holonomy, c.endpoints) for c in cons] == [
        ((0, 1), (0, 0)),
        ((1, 0), (0, 0)),
        ((1, -1), (0, 0)),
        ((1, 1), (0, 0)),
        ((1, -2), (0, 0)),
        ((1, 2), (0, 0)),
        ((2, -1), (0, 0)),
        ((2, 1), (0, 0)),
    ]


def test_census_is_sorted_and_canonical():
    fs = three_square_surface()
    cons = saddle_connections(fs, 10)
    norms = [c.norm2() for c in cons]
    assert norms == sorted(norms)
    assert all(n <= 100 for n in norms)
    for c in cons:
        x, y = c.holonomy
        assert x > 0 or (x == 0 and y > 0)
        assert math.gcd(x, abs(y)) == 1
        assert c.endpoints == (0, 0)  # single singularity
        assert c.norm2() == x * x + y * y
        assert c.length() == pytest.approx(math.sqrt(x * x + y * y))


def test_nonprimitive_vectors_hit_a_corner_early():
    # the oracle sees the intermediate singularity directly
    assert walk_from_corner(2, 2) == Fraction(1, 2)
    assert walk_from_corner(3, 6) == Fraction(1, 3)


def test_itineraries_flag():
    fs = three_square_surface()
    with_it = saddle_connections(fs, 3)
    without = saddle_connections(fs, 3, itineraries=False)
    assert [(c.holonomy, c.endpoints) for c in with_it] == [
        (c.holonomy, c.endpoints) for c in without
    ]
    assert with_it[0].chunks()
    with pytest.raises(ValueError):
        without[0].chunks()


def test_chunks_develop_to_the_holonomy():
    # the itinerary is stored as traced, which may be the opposite
    # orientation of the sign-canonical holonomy
    fs = three_square_surface()
    for c in saddle_connections(fs, 3):
        chunks = c.chunks()
        dx = sum(b[0] - a[0] for _, a, b in chunks)
        dy = sum(b[1] - a[1] for _, a, b in chunks)
        assert (dx, dy) in (c.holonomy, (-c.holonomy[0], -c.holonomy[1]))


# -- the golden L ----------------------------------------------------------------


def test_golden_l_shortest_connections():
    gl = golden_l_surface()
    cons = saddle_connections(gl, 4)
    phi_inv = (sqrtD(5) - 1) / 2
    # the two short crossings of the thin arms, then the unit sides
    assert cons[0].holonomy == (0, phi_inv)
    assert cons[1].holonomy == (phi_inv, 0)
    assert cons[0].norm2() == cons[1].norm2() == phi_inv * phi_inv
    assert cons[2].holonomy == (0, 1)
    assert cons[3].holonomy == (1, 0)
    assert len(cons) == 52
    for c in cons:
        assert c.norm2() <= 16


def test_golden_l_exactness():
    gl = golden_l_surface()
    for c in saddle_connections(gl, 3):
        x, y = c.holonomy
        # entries live in Z[phi]: twice any coordinate has integral parts
        for v in (x, y):
            fa, fb = Fraction(2) * Fraction(v.a), Fraction(2) * Fraction(v.b)
            assert fa.denominator == 1 and fb.denominator == 1


# -- the pillowcase ---------------------------------------------------------------


def test_pillowcase_census():
    pc = pillowcase_surface()
    cons = saddle_connections(pc, 3)
    assert len(cons) == 16
    # the same holonomy occurs between different pole pairs
    vertical = [c for c in cons if c.holonomy == (0, 1)]
    assert len(vertical) == 2
    assert {c.endpoints for c in vertical} == {(0, 2), (1, 3)}
    classes = pc.vertex_classes()
    for c in cons:
        assert classes[c.endpoints[0]].is_pole
        assert classes[c.endpoints[1]].is_pole


# -- covariance under the linear action ---------------------------------------------


def test_holonomies_transform_covariantly():
    fs = three_square_surface()
    m = ((1, 0), (1, 1))
    sheared = apply_matrix(FlowState(fs), m)
    found = {c.holonomy for c in saddle_connections(sheared, 3)}

    expected = set()
    for x, y in (c.holonomy for c in saddle_connections(fs, 10)):
        ix, iy = m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y
        if ix * ix + iy * iy > 9:
            continue
        if ix < 0 or (ix == 0 and iy < 0):
            ix, iy = -ix, -iy
        expected.add((ix, iy))
    assert found == expected


# -- disjointness -------------------------------------------------------------------


def test_connections_disjoint_cases():
    fs = three_square_surface()
    cons = {c.holonomy: c for c in saddle_connections(fs, 3)}
    # short sides sharing only the singularity
    assert connections_disjoint(cons[(0, 1)], cons[(1, 0)])
    assert connections_disjoint(cons[(0, 1)], cons[(1, 1)])
    # transverse diagonals cross in a square interior
    assert not connections_disjoint(cons[(1, 1)], cons[(1, -1)])
    # a connection is never disjoint from itself
    assert not connections_disjoint(cons[(0, 1)], cons[(0, 1)])
