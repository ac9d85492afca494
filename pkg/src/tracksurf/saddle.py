r"""
Saddle-connection enumeration by developing-map search.

A saddle connection is a straight segment running from one singularity (a
zero or a pole) to another with no singular point in its interior.  The
enumeration develops triangle strips into the plane: starting from every
corner of the triangulation it maintains the angular sector of directions
that remain visible through the chain of crossed edges, narrowing the
sector at every developed vertex.  Because validation rejects spurious
regular vertices, every developed vertex is singular, so a direction on a
sector boundary always passes through a singular point and the strictly
open sectors are exactly right.  Segments that lie on triangulation edges
are listed directly.

All geometry is done with field operations and comparisons on the
coordinate type, so exact surfaces (integer, Fraction or quadratic
coordinates) are enumerated exactly; lengths are compared as squared
norms.  Results are deduplicated by (holonomy, endpoints) up to a global
sign and returned sorted by length.

Each connection keeps its developing itinerary: the ordered list of
crossed triangles with the local coordinates of the segment piece inside
each one.  The disjointness tests used by the short-system quantities
intersect those pieces triangle by triangle.
"""

import math
from fractions import Fraction

from .errors import InternalInconsistencyError
from .flatsurface import FlatSurface, FlowState, _cross, _dot, _norm2, _sub


class SaddleConnection:
    r"""
    A saddle connection on a triangulated flat surface.

    Attributes
    ----------
    holonomy : (x, y)
        Displacement vector, sign-canonicalized so that ``x > 0``, or
        ``x == 0`` and ``y > 0``.
    endpoints : (int, int)
        Vertex-class indices of the start and end singularity, in the
        orientation of the canonical sign.
    """

    __slots__ = ("holonomy", "endpoints", "_surface", "_trail", "_w", "_chunks")

    def __init__(self, holonomy, endpoints, surface, trail, w):
        self.holonomy = holonomy
        self.endpoints = endpoints
        self._surface = surface
        self._trail = trail
        self._w = w
        self._chunks = None

    def norm2(self):
        return _norm2(self.holonomy)

    def length(self):
        return math.sqrt(float(self.norm2()))

    @property
    def horizontal(self):
        y = self.holonomy[1]
        if isinstance(y, float):
            return abs(y) <= 1e-9
        return y == 0

    def chunks(self):
        r"""
        The developing itinerary: a tuple of ``(triangle, p, q)`` with the
        segment piece inside each crossed triangle in that triangle's
        polygon coordinates, ordered along the connection.
        """
        if self._chunks is None:
            if self._trail is None:
                raise ValueError(
                    "connection was enumerated without itineraries"
                )
            self._chunks = _clip_trail(self._surface, self._trail, self._w)
        return self._chunks

    def __repr__(self):
        return "SaddleConnection(%r, endpoints=%r)" % (self.holonomy, self.endpoints)


def _dev_apply(dev, p):
    s, (tx, ty) = dev
    return (s * p[0] + tx, s * p[1] + ty)


def _dev_invert(dev, z):
    s, (tx, ty) = dev
    return (s * (z[0] - tx), s * (z[1] - ty))


def _dev_compose(dev, sign, shift):
    s, (tx, ty) = dev
    s2 = s * sign
    return (s2, (tx - s2 * shift[0], ty - s2 * shift[1]))


def _seg_dist2_exceeds(a, b, l2):
    """Whether the squared distance from the origin to segment ab exceeds l2."""
    ab = _sub(b, a)
    if _dot((-a[0], -a[1]), ab) <= 0:
        return _norm2(a) > l2
    if _dot((-b[0], -b[1]), (-ab[0], -ab[1])) <= 0:
        return _norm2(b) > l2
    c = _cross(a, b)
    return c * c > l2 * _norm2(ab)


def _canonical(vec):
    x, y = vec
    if isinstance(x, float) or isinstance(y, float):
        if x < -1e-12 or (abs(x) <= 1e-12 and y < 0):
            return (-x, -y), -1
        return vec, 1
    if x < 0 or (x == 0 and y < 0):
        return (-x, -y), -1
    return vec, 1


def _key_coord(x):
    if isinstance(x, float):
        return round(x * 1e9)
    return x


def _clip_trail(surface, trail, w):
    chunks = []
    for t, dev in trail:
        corners = [_dev_apply(dev, p) for p in surface.triangle_coords(t)]
        lo, hi = 0, 1
        ok = True
        for i in range(3):
            a, b = corners[i], corners[(i + 1) % 3]
            # inside the triangle means cross(b - a, z - a) >= 0 for all edges
            d0 = _cross(_sub(b, a), (-a[0], -a[1]))
            d1 = _cross(_sub(b, a), _sub(w, a))
            if d0 < 0 and d1 < 0:
                ok = False
                break
            if d0 == d1:
                if d0 < 0:
                    ok = False
                    break
                continue
            if isinstance(d0, int) and isinstance(d1, int):
                s = Fraction(d0, d0 - d1)
            else:
                s = d0 / (d0 - d1)
            if d1 < d0:
                if s < hi:
                    hi = s
            else:
                if s > lo:
                    lo = s
        if not ok or not lo < hi:
            raise InternalInconsistencyError("itinerary piece missing its triangle")
        p = _dev_invert(dev, (w[0] * lo, w[1] * lo))
        q = _dev_invert(dev, (w[0] * hi, w[1] * hi))
        chunks.append((t, p, q))
    return tuple(chunks)


def saddle_connections(state, bound, itineraries=True):
    r"""
    The saddle connections of length at most ``bound``, up to sign, sorted
    by length (ties broken by holonomy then endpoints).

    ``state`` may be a :class:`FlatSurface` or a :class:`FlowState`; a flow
    state is materialized first so holonomies transform covariantly.  The
    surface must validate.  With ``itineraries=False`` the developing
    paths are not recorded (``chunks`` becomes unavailable), which speeds
    up large-radius enumerations considerably.
    """
    if isinstance(state, FlowState):
        surface = state.surface()
    elif isinstance(state, FlatSurface):
        surface = state
    else:
        raise ValueError("expected a FlatSurface or FlowState, got %r" % (state,))
    surface.require_valid()
    if not float(bound) > 0:
        raise ValueError("length bound must be positive, got %r" % (bound,))
    if surface.exact and isinstance(bound, float):
        bound = Fraction(bound).limit_denominator(10**12)
    tris, partners, corner_class = surface.triangulation()
    l2 = bound * bound

    found = {}

    def emit(vec, start_cls, end_cls, trail, w):
        cvec, flip = _canonical(vec)
        ends = (start_cls, end_cls) if flip == 1 else (end_cls, start_cls)
        key = (
            _key_coord(cvec[0]),
            _key_coord(cvec[1]),
            min(start_cls, end_cls),
            max(start_cls, end_cls),
        )
        if key in found:
            return
        found[key] = SaddleConnection(cvec, ends, surface, trail, w)

    # segments that are edges of the triangulation
    done_edges = set()
    for (t, k), (t2, k2, _sg, _sh) in partners.items():
        if (t2, k2) in done_edges:
            continue
        done_edges.add((t, k))
        coords = surface.triangle_coords(t)
        a, b = coords[k], coords[(k + 1) % 3]
        vec = _sub(b, a)
        if _norm2(vec) <= l2:
            dev = (1, (-a[0], -a[1]))
            emit(
                vec,
                corner_class[(t, k)],
                corner_class[(t, (k + 1) % 3)],
                ((t, dev),) if itineraries else None,
                vec,
            )

    # wedge search from every corner
    for t0 in range(len(tris)):
        coords0 = surface.triangle_coords(t0)
        for k in range(3):
            a = coords0[k]
            dev0 = (1, (-a[0], -a[1]))
            u0 = _dev_apply(dev0, coords0[(k + 1) % 3])
            v0 = _dev_apply(dev0, coords0[(k + 2) % 3])
            start_cls = corner_class[(t0, k)]
            trail0 = ((t0, dev0),) if itineraries else None
            stack = [(t0, (k + 1) % 3, dev0, u0, v0, trail0)]
            while stack:
                t, slot, dev, u, v, trail = stack.pop()
                t2, k2, sg, shift = partners[(t, slot)]
                dev2 = _dev_compose(dev, sg, shift)
                coords2 = surface.triangle_coords(t2)
                w_idx = (k2 + 2) % 3
                w = _dev_apply(dev2, coords2[w_idx])
                eu = _dev_apply(dev2, coords2[(k2 + 1) % 3])
                ev = _dev_apply(dev2, coords2[k2])
                if _seg_dist2_exceeds(eu, ev, l2):
                    continue
                trail2 = trail + ((t2, dev2),) if itineraries else None
                cu = _cross(u, w)
                cv = _cross(w, v)
                if cu > 0 and cv > 0:
                    if _norm2(w) <= l2:
                        emit(w, start_cls, corner_class[(t2, w_idx)], trail2, w)
                    stack.append((t2, (k2 + 1) % 3, dev2, u, w, trail2))
                    stack.append((t2, (k2 + 2) % 3, dev2, w, v, trail2))
                elif cu <= 0:
                    stack.append((t2, (k2 + 2) % 3, dev2, u, v, trail2))
                else:
                    stack.append((t2, (k2 + 1) % 3, dev2, u, v, trail2))

    def sort_key(c):
        return (
            float(c.norm2()),
            float(c.holonomy[0]),
            float(c.holonomy[1]),
            c.endpoints,
        )

    return tuple(sorted(found.values(), key=sort_key))


def _segments_meet_badly(p0, p1, q0, q1, allowed):
    """Closed segments intersect at some point other than an allowed
    shared endpoint."""
    d1 = _cross(_sub(p1, p0), _sub(q0, p0))
    d2 = _cross(_sub(p1, p0), _sub(q1, p0))
    d3 = _cross(_sub(q1, q0), _sub(p0, q0))
    d4 = _cross(_sub(q1, q0), _sub(p1, q0))
    if (
        ((d1 > 0) is (d2 < 0))
        and d1 != 0
        and d2 != 0
        and ((d3 > 0) is (d4 < 0))
        and d3 != 0
        and d4 != 0
    ):
        return True
    if d1 == 0 and d2 == 0:
        # collinear: overlapping interval of positive length is bad, a
        # single shared point is judged like any endpoint touch
        dirv = _sub(p1, p0)
        tp = sorted((0, _dot(dirv, dirv)))
        tq = sorted((_dot(_sub(q0, p0), dirv), _dot(_sub(q1, p0), dirv)))
        lo = max(tp[0], tq[0])
        hi = min(tp[1], tq[1])
        if lo > hi:
            return False
        if lo < hi:
            return True
        for x in (p0, p1):
            for y in (q0, q1):
                if x == y and _dot(_sub(x, p0), dirv) == lo:
                    return x not in allowed
        return True
    touches = []
    if d1 == 0 and _between(p0, p1, q0):
        touches.append(q0)
    if d2 == 0 and _between(p0, p1, q1):
        touches.append(q1)
    if d3 == 0 and _between(q0, q1, p0):
        touches.append(p0)
    if d4 == 0 and _between(q0, q1, p1):
        touches.append(p1)
    return any(x not in allowed for x in touches)


def _between(a, b, x):
    t = _dot(_sub(x, a), _sub(b, a))
    return 0 <= t <= _norm2(_sub(b, a))


def connections_disjoint(c1, c2):
    r"""
    Whether the open segments of two saddle connections are disjoint on the
    surface.  Touching at shared singular endpoints is allowed; any other
    common point, including a positive-length overlap, is an intersection.
    """
    by_tri = {}
    for t, p, q in c2.chunks():
        by_tri.setdefault(t, []).append((p, q))
    ch1 = c1.chunks()
    ends1 = {ch1[0][1], ch1[-1][2]}
    ch2 = c2.chunks()
    ends2 = {ch2[0][1], ch2[-1][2]}
    allowed = ends1 & ends2
    for t, p, q in ch1:
        for r, s in by_tri.get(t, ()):
            if _segments_meet_badly(p, q, r, s, allowed):
                return False
    return True
