r"""
Half-translation surfaces built from euclidean polygons.

A surface is a list of simple polygons with vertices in counterclockwise
order and a perfect matching of their edges.  Each identification is either
a ``translation`` (the glued edge is a parallel translate traversed the
opposite way, so its edge vector is the negative) or a ``halfturn``
(rotation by pi followed by a translation, so the glued edge vector is
equal).  Vertex identifications are derived by walking corners around each
vertex; every class must close up with total angle a multiple of pi:
``k = 1`` is a marked pole at a puncture, ``k >= 3`` a zero of the
half-translation structure.  A class of angle exactly ``2*pi`` would be a
spurious regular marked point and is rejected by validation, because the
straight-line flow through such a point is perfectly smooth and the
segment enumeration would treat it as an obstacle.

Coordinates may be ints, Fractions, quadratic numbers or floats; all the
geometry here uses only field operations and comparisons, so exact inputs
give exact answers.  Angles are measured through floats (they only feed
the integer cone-angle census).

Polygons need not be convex; straight corners (interior angle exactly pi)
are allowed and are treated as ordinary corners of the polygon while
contributing angle pi to their vertex class.  Internally every polygon is
ear-clipped into triangles once and the triangulation is shared by the
segment-enumeration machinery.
"""

import math
from fractions import Fraction

from .errors import StructureError, InternalInconsistencyError

TRANSLATION = "translation"
HALF_TURN = "halfturn"
GLUING_KINDS = (TRANSLATION, HALF_TURN)


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _norm2(u):
    return u[0] * u[0] + u[1] * u[1]


def _signed_area2(coords):
    tot = 0
    n = len(coords)
    for i in range(n):
        tot += _cross(coords[i], coords[(i + 1) % n])
    return tot


def _segments_cross(a, b, c, d):
    """Whether open segment ab meets open segment cd (proper or improper
    crossings both count, shared endpoints do not)."""
    d1 = _cross(_sub(b, a), _sub(c, a))
    d2 = _cross(_sub(b, a), _sub(d, a))
    d3 = _cross(_sub(d, c), _sub(a, c))
    d4 = _cross(_sub(d, c), _sub(b, c))
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != d2 and d3 != d4:
        return True

    def on_open(p, q, x):
        if _cross(_sub(q, p), _sub(x, p)) != 0:
            return False
        t = _dot(_sub(x, p), _sub(q, p))
        return 0 < t < _norm2(_sub(q, p))

    return on_open(a, b, c) or on_open(a, b, d) or on_open(c, d, a) or on_open(c, d, b)


def _point_in_triangle(x, a, b, c):
    """Strictly inside, or on the open diagonal ca (which would put a
    vertex on a cut edge of the ear)."""
    s1 = _cross(_sub(b, a), _sub(x, a))
    s2 = _cross(_sub(c, b), _sub(x, b))
    s3 = _cross(_sub(a, c), _sub(x, c))
    if s1 > 0 and s2 > 0 and s3 > 0:
        return True
    if s3 == 0:
        t = _dot(_sub(x, c), _sub(a, c))
        if 0 < t < _norm2(_sub(a, c)):
            return True
    return False


def _ear_clip(coords):
    """Index triples triangulating a simple CCW polygon.

    Straight corners are never picked as ear tips; cut diagonals never pass
    through another vertex, so no new marked points are created.
    """
    n = len(coords)
    idx = list(range(n))
    tris = []
    while len(idx) > 3:
        for pos in range(len(idx)):
            a = idx[pos - 1]
            b = idx[pos]
            c = idx[(pos + 1) % len(idx)]
            if _cross(_sub(coords[b], coords[a]), _sub(coords[c], coords[b])) <= 0:
                continue
            if any(
                _point_in_triangle(coords[d], coords[a], coords[b], coords[c])
                for d in idx
                if d not in (a, b, c)
            ):
                continue
            tris.append((a, b, c))
            del idx[pos]
            break
        else:
            raise InternalInconsistencyError(
                "ear clipping found no ear; polygon is not simple"
            )
    tris.append(tuple(idx))
    return tris


class VertexClass:
    r"""
    One identified vertex of the surface: the cycle of polygon corners
    around it and the integer ``k`` with cone angle ``k*pi``.
    """

    __slots__ = ("corners", "k", "angle")

    def __init__(self, corners, k, angle):
        self.corners = tuple(corners)
        self.k = k
        self.angle = angle

    @property
    def is_pole(self):
        return self.k == 1

    @property
    def is_zero(self):
        return self.k >= 3

    def __repr__(self):
        return "VertexClass(k=%d, corners=%r)" % (self.k, self.corners)


class FlatSurface:
    r"""
    A half-translation surface given by polygons and edge gluings.

    Parameters
    ----------
    polygons : list of list of (x, y)
        Simple polygons, vertices counterclockwise.  Edge ``e`` of polygon
        ``p`` runs from vertex ``e`` to vertex ``e+1 (mod n)``.
    gluings : iterable of ((p, e), (q, f), kind)
        A perfect matching of edges.  For ``kind == 'translation'`` the
        identification is ``z -> z + c`` and the two edge vectors are
        negatives of each other; for ``kind == 'halfturn'`` it is
        ``z -> -z + c`` and the edge vectors are equal.  Either order of
        the pair may be given; both directions are stored.

    Construction checks well-formedness only; geometric/semantic problems
    are reported by :meth:`validate`.
    """

    __slots__ = ("polygons", "gluings", "_cache")

    def __init__(self, polygons, gluings):
        polys = []
        for coords in polygons:
            coords = tuple((x, y) for x, y in coords)
            if len(coords) < 3:
                raise StructureError(
                    "polygon needs at least three vertices, got %d" % len(coords)
                )
            polys.append(coords)
        self.polygons = tuple(polys)
        glue = {}
        for rec in gluings:
            (p, e), (q, f), kind = rec
            if kind not in GLUING_KINDS:
                raise StructureError("unknown gluing kind %r" % (kind,))
            for side in ((p, e), (q, f)):
                pp, ee = side
                if not (0 <= pp < len(self.polygons)):
                    raise StructureError("polygon index %r out of range" % (pp,))
                if not (0 <= ee < len(self.polygons[pp])):
                    raise StructureError(
                        "edge index %r out of range for polygon %d" % (ee, pp)
                    )
                if side in glue:
                    raise StructureError("edge %r glued twice" % (side,))
            if (p, e) == (q, f):
                raise StructureError("edge %r glued to itself" % ((p, e),))
            glue[(p, e)] = ((q, f), kind)
            glue[(q, f)] = ((p, e), kind)
        self.gluings = glue
        self._cache = {}

    # -- basic geometry ------------------------------------------------

    def edge_vector(self, p, e):
        coords = self.polygons[p]
        return _sub(coords[(e + 1) % len(coords)], coords[e])

    def num_edges(self):
        return sum(len(c) for c in self.polygons)

    def area(self):
        total = 0
        for coords in self.polygons:
            total += _signed_area2(coords)
        if isinstance(total, int):
            return Fraction(total, 2)
        return total / 2

    @property
    def exact(self):
        return not any(
            isinstance(x, float) for coords in self.polygons for v in coords for x in v
        )

    def transition(self, p, e):
        """The identification map across edge ``(p, e)`` as ``(sign, shift)``
        sending this polygon's coordinates into the glued polygon's:
        ``z -> sign*z + shift``."""
        (q, f), kind = self.gluings[(p, e)]
        a = self.polygons[p][e]
        coords_q = self.polygons[q]
        d = coords_q[(f + 1) % len(coords_q)]
        if kind == TRANSLATION:
            return 1, _sub(d, a)
        return -1, (d[0] + a[0], d[1] + a[1])

    # -- validation ------------------------------------------------------

    def validate(self):
        r"""
        List of human-readable invariant violations; empty when the surface
        is a genuine half-translation surface.
        """
        out = []
        for p, coords in enumerate(self.polygons):
            n = len(coords)
            if len(set(coords)) != n:
                out.append("polygon %d repeats a vertex" % p)
                continue
            if any(self.edge_vector(p, e) == (0, 0) for e in range(n)):
                out.append("polygon %d has a zero-length edge" % p)
                continue
            if _signed_area2(coords) <= 0:
                out.append("polygon %d is not counterclockwise" % p)
                continue
            simple = True
            for e in range(n):
                for f in range(e + 1, n):
                    if f == e + 1 or (e == 0 and f == n - 1):
                        continue
                    if _segments_cross(
                        coords[e], coords[(e + 1) % n], coords[f], coords[(f + 1) % n]
                    ):
                        simple = False
            if not simple:
                out.append("polygon %d is not simple" % p)
        if out:
            return out
        for p in range(len(self.polygons)):
            for e in range(len(self.polygons[p])):
                if (p, e) not in self.gluings:
                    out.append("edge (%d, %d) is unglued" % (p, e))
        if out:
            return out
        for (p, e), ((q, f), kind) in self.gluings.items():
            ve = self.edge_vector(p, e)
            vf = self.edge_vector(q, f)
            want = (-ve[0], -ve[1]) if kind == TRANSLATION else ve
            if not self._close(vf, want):
                out.append(
                    "gluing (%d,%d)~(%d,%d) is not a %s: edge vectors %r and %r"
                    % (p, e, q, f, kind, ve, vf)
                )
        if out:
            return out
        for cls in self.vertex_classes():
            if cls.k is None:
                out.append(
                    "vertex class %r has angle %.6f, not a multiple of pi"
                    % (cls.corners[0], cls.angle)
                )
            elif cls.k == 2:
                out.append(
                    "vertex class %r is a regular point (angle 2*pi); remove the"
                    " spurious marked point" % (cls.corners[0],)
                )
        return out

    def _close(self, u, v):
        if self.exact:
            return u == v
        return abs(float(u[0]) - float(v[0])) <= 1e-9 and abs(
            float(u[1]) - float(v[1])
        ) <= 1e-9

    def is_valid(self):
        return not self.validate()

    def require_valid(self):
        bad = self.validate()
        if bad:
            raise StructureError("invalid flat surface: %s" % "; ".join(bad))
        return self

    # -- vertex census -----------------------------------------------------

    def vertex_classes(self):
        r"""
        The identified vertices, each a :class:`VertexClass` with its corner
        cycle and cone angle ``k*pi`` (``k`` is None when the angle fails to
        be a multiple of pi within 1e-6).

        Corners are pairs ``(polygon, vertex)``; the cycle is produced by
        repeatedly crossing the edge that leaves the vertex.
        """
        if "classes" in self._cache:
            return self._cache["classes"]
        seen = set()
        classes = []
        for p, coords in enumerate(self.polygons):
            for v in range(len(coords)):
                if (p, v) in seen:
                    continue
                cycle = []
                cur = (p, v)
                while cur not in seen:
                    seen.add(cur)
                    cycle.append(cur)
                    (q, f), _ = self.gluings[cur]
                    cur = (q, (f + 1) % len(self.polygons[q]))
                angle = sum(self._corner_angle(pp, vv) for pp, vv in cycle)
                k = angle / math.pi
                ki = int(round(k))
                classes.append(
                    VertexClass(cycle, ki if abs(k - ki) <= 1e-6 and ki > 0 else None,
                                angle)
                )
        self._cache["classes"] = tuple(classes)
        return self._cache["classes"]

    def _corner_angle(self, p, v):
        coords = self.polygons[p]
        n = len(coords)
        w_in = _sub(coords[v], coords[(v - 1) % n])
        w_out = _sub(coords[(v + 1) % n], coords[v])
        turn = math.atan2(float(_cross(w_in, w_out)), float(_dot(w_in, w_out)))
        return math.pi - turn

    def vertex_class_of(self, p, v):
        for i, cls in enumerate(self.vertex_classes()):
            if (p, v) in cls.corners:
                return i
        raise ValueError("no such corner (%d, %d)" % (p, v))

    def zeros(self):
        return tuple(c for c in self.vertex_classes() if c.is_zero)

    def poles(self):
        return tuple(c for c in self.vertex_classes() if c.is_pole)

    def genus(self):
        r"""
        Genus of the underlying closed surface, from the euler count
        ``V - E + F`` of the polygon complex.
        """
        v = len(self.vertex_classes())
        e = self.num_edges() // 2
        f = len(self.polygons)
        chi = v - e + f
        if (2 - chi) % 2:
            raise InternalInconsistencyError("odd euler characteristic %d" % chi)
        return (2 - chi) // 2

    # -- triangulation -----------------------------------------------------

    def triangulation(self):
        r"""
        ``(triangles, partners, corner_class)`` where ``triangles`` is a
        tuple of ``(polygon, (a, b, c))`` index triples, ``partners`` maps
        each triangle edge ``(t, k)`` to ``(t', k', sign, shift)`` with the
        transition ``z -> sign*z + shift`` into the neighbour's polygon
        coordinates, and ``corner_class`` maps ``(t, k)`` to the vertex
        class index of that corner.
        """
        if "tri" in self._cache:
            return self._cache["tri"]
        tris = []
        owner = {}
        diagonals = {}
        for p, coords in enumerate(self.polygons):
            n = len(coords)
            for tri in _ear_clip(coords):
                t = len(tris)
                tris.append((p, tri))
                for k in range(3):
                    u, v = tri[k], tri[(k + 1) % 3]
                    if v == (u + 1) % n:
                        owner[(p, u)] = (t, k)
                    else:
                        diagonals.setdefault((p, frozenset((u, v))), []).append((t, k))
        partners = {}
        for key, sides in diagonals.items():
            if len(sides) != 2:
                raise InternalInconsistencyError(
                    "diagonal %r bounds %d triangles" % (key, len(sides))
                )
            (t1, k1), (t2, k2) = sides
            partners[(t1, k1)] = (t2, k2, 1, (0, 0))
            partners[(t2, k2)] = (t1, k1, 1, (0, 0))
        for (p, e), ((q, f), _kind) in self.gluings.items():
            t1, k1 = owner[(p, e)]
            t2, k2 = owner[(q, f)]
            sign, shift = self.transition(p, e)
            partners[(t1, k1)] = (t2, k2, sign, shift)
        corner_class = {}
        class_of = {}
        for i, cls in enumerate(self.vertex_classes()):
            for corner in cls.corners:
                class_of[corner] = i
        for t, (p, tri) in enumerate(tris):
            for k in range(3):
                corner_class[(t, k)] = class_of[(p, tri[k])]
        self._cache["tri"] = (tuple(tris), partners, corner_class)
        return self._cache["tri"]

    def triangle_coords(self, t):
        p, tri = self.triangulation()[0][t]
        coords = self.polygons[p]
        return tuple(coords[i] for i in tri)

    def __repr__(self):
        return "FlatSurface(%d polygons, %d edges, genus %d)" % (
            len(self.polygons),
            self.num_edges() // 2,
            self.genus(),
        )


def transform_surface(surface, m):
    r"""
    The image surface under a linear map ``m = ((a, b), (c, d))``: every
    vertex coordinate is mapped, gluings are unchanged (linear maps send
    translations to translations and halfturns to halfturns).
    """
    (a, b), (c, d) = m
    polys = [
        [(a * x + b * y, c * x + d * y) for x, y in coords]
        for coords in surface.polygons
    ]
    seen = set()
    glu = []
    for (p, e), ((q, f), kind) in surface.gluings.items():
        key = frozenset(((p, e), (q, f)))
        if key in seen:
            continue
        seen.add(key)
        glu.append(((p, e), (q, f), kind))
    return FlatSurface(polys, glu)


def _det(m):
    (a, b), (c, d) = m
    return a * d - b * c


class FlowState:
    r"""
    A flat surface together with the accumulated unimodular matrix applied
    to it.  The deformed surface itself is materialized lazily.
    """

    __slots__ = ("base", "applied", "_cache")

    def __init__(self, base, applied=((1, 0), (0, 1))):
        if not isinstance(base, FlatSurface):
            raise ValueError("flow state needs a FlatSurface, got %r" % (base,))
        applied = (tuple(applied[0]), tuple(applied[1]))
        if abs(float(_det(applied)) - 1) > 1e-12:
            raise ValueError(
                "matrix must have determinant one, got %r" % (float(_det(applied)),)
            )
        self.base = base
        self.applied = applied
        self._cache = {}

    def surface(self):
        if "surf" not in self._cache:
            if self.applied == ((1, 0), (0, 1)):
                self._cache["surf"] = self.base
            else:
                self._cache["surf"] = transform_surface(self.base, self.applied)
        return self._cache["surf"]

    def __repr__(self):
        return "FlowState(%r, applied=%r)" % (self.base, self.applied)


def apply_matrix(state, m):
    r"""
    Act by another determinant-one matrix; composes with what has been
    applied already, so ``apply_matrix(apply_matrix(s, M1), M2)`` equals
    ``apply_matrix(s, M2*M1)``.
    """
    if isinstance(state, FlatSurface):
        state = FlowState(state)
    (a, b), (c, d) = m
    if abs(float(a * d - b * c) - 1) > 1e-12:
        raise ValueError("matrix must have determinant one")
    (e, f), (g, h) = state.applied
    prod = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
    return FlowState(state.base, prod)


def geodesic_matrix(t):
    """The Teichmueller flow matrix diag(e^t, e^-t)."""
    return ((math.exp(t), 0.0), (0.0, math.exp(-t)))


def horocycle_matrix(t):
    """The horocycle flow matrix [[1, 0], [t, 1]]."""
    return ((1, 0), (t, 1))


# -- fixtures ---------------------------------------------------------------


def three_square_surface():
    r"""
    The L-shaped square-tiled surface made of three unit squares: genus
    two, one zero of cone angle ``6*pi``, every saddle connection has
    integer holonomy.

    Squares: ``A = [0,1]^2``, ``B = [1,2]x[0,1]``, ``C = [0,1]x[1,2]``;
    opposite sides of the L are glued by translations.
    """
    a = [(0, 0), (1, 0), (1, 1), (0, 1)]
    b = [(1, 0), (2, 0), (2, 1), (1, 1)]
    c = [(0, 1), (1, 1), (1, 2), (0, 2)]
    return FlatSurface(
        [a, b, c],
        [
            ((0, 0), (2, 2), TRANSLATION),  # A bottom ~ C top
            ((1, 0), (1, 2), TRANSLATION),  # B bottom ~ B top
            ((0, 2), (2, 0), TRANSLATION),  # A top ~ C bottom
            ((0, 1), (1, 3), TRANSLATION),  # A right ~ B left
            ((0, 3), (1, 1), TRANSLATION),  # A left ~ B right
            ((2, 1), (2, 3), TRANSLATION),  # C right ~ C left
        ],
    )


def golden_l_surface():
    r"""
    The golden L: two rectangles ``[0, g] x [0, 1]`` and ``[0, 1] x [1, g]``
    with ``g`` the golden ratio, opposite sides glued by translations.
    Genus two, one zero of angle ``6*pi``, exact coordinates in ``Q(√5)``.

    The bottom rectangle is stored as a hexagon (its top and bottom edges
    are split at ``x = 1`` so that every gluing matches whole edges); the
    two straight corners this creates belong to the zero's corner cycle.
    """
    from .quadfield import GOLDEN

    g = GOLDEN
    one = g / g
    zero = one - one
    hexagon = [
        (zero, zero),
        (one, zero),
        (g, zero),
        (g, one),
        (one, one),
        (zero, one),
    ]
    quad = [(zero, one), (one, one), (one, g), (zero, g)]
    return FlatSurface(
        [hexagon, quad],
        [
            ((0, 0), (1, 2), TRANSLATION),  # bottom left ~ quad top
            ((0, 1), (0, 3), TRANSLATION),  # bottom right ~ hexagon top right
            ((0, 2), (0, 5), TRANSLATION),  # hexagon right ~ hexagon left
            ((0, 4), (1, 0), TRANSLATION),  # hexagon top left ~ quad bottom
            ((1, 1), (1, 3), TRANSLATION),  # quad right ~ quad left
        ],
    )


def as_float_surface(surface):
    r"""
    The same surface with every coordinate converted to a double.  Useful
    for turning an exact fixture into the float model that irrational
    deformations require.
    """
    seen = set()
    glu = []
    for (p, e), ((q, f), kind) in surface.gluings.items():
        key = frozenset(((p, e), (q, f)))
        if key in seen:
            continue
        seen.add(key)
        glu.append(((p, e), (q, f), kind))
    return FlatSurface(
        [[(float(x), float(y)) for x, y in coords] for coords in surface.polygons],
        glu,
    )


def golden_l_minimal_state():
    r"""
    A unit-area float model of the golden L, sheared so that its
    horizontal foliation is the direction of slope ``sqrt(2)`` of the
    upright model.  That slope is irrational and outside the trace field
    ``Q(sqrt(5))``, so the direction is aperiodic; on a lattice surface
    every aperiodic direction is minimal and filling, which is exactly
    the standing assumption of the horocycle-average experiment.
    """
    base = as_float_surface(golden_l_surface())
    c = 5 ** -0.25
    scaled = transform_surface(base, ((c, 0.0), (0.0, c)))
    shear = ((1.0, 0.0), (-math.sqrt(2.0), 1.0))
    return FlowState(scaled, shear)


def pillowcase_surface():
    r"""
    The pillowcase: a ``2 x 1`` rectangle (stored as a hexagon, bottom and
    top split at ``x = 1``) with both bottom halves and both top halves
    identified by halfturns and the two vertical sides by a translation.
    A sphere with four poles — the smallest half-translation fixture with
    every ``halfturn`` feature exercised.
    """
    hexagon = [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (0, 1)]
    return FlatSurface(
        [hexagon],
        [
            ((0, 0), (0, 1), HALF_TURN),  # bottom halves swapped by z -> -z + (2,0)
            ((0, 3), (0, 4), HALF_TURN),  # top halves by z -> -z + (2,2)
            ((0, 2), (0, 5), TRANSLATION),  # right ~ left
        ],
    )
