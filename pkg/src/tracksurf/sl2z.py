r"""
The linear action of SL(2, Z) on the plane.

Orbits are explored by breadth-first search over words in the standard
generators ``S = [[0, -1], [1, 0]]`` and ``T = [[1, 1], [0, 1]]`` and
their inverses.  Every reported point carries a word certificate; words
are strings over ``S``, ``T``, ``s``, ``t`` (lowercase = inverse), applied
to the seed left to right.  Points are identified up to the reflection at
the origin; since ``-I = S*S``, a sign flip is recorded by appending
``SS`` to the word, so certificates always re-evaluate to their points
exactly.

Two numeric modes: seeds with int/Fraction coordinates run exactly
(deduplication and all comparisons are exact); seeds with a float
coordinate run in double precision with a dedup tolerance of 1e-12, and
any conclusion drawn from float runs is evidence, not proof.

The seed dichotomy — orbits of rationally dependent seeds are discrete
and orbits of independent seeds accumulate — is what
:func:`classify_seed` (exact, or by continued-fraction cutoff for floats)
and :func:`discreteness_gap` let experiments probe.
"""

import math
from fractions import Fraction

import numpy as np

RATIONAL_DEPENDENT = "rational-dependent"
INDEPENDENT = "independent"
UNKNOWN = "unknown"

GENERATORS = {
    "S": ((0, -1), (1, 0)),
    "s": ((0, 1), (-1, 0)),
    "T": ((1, 1), (0, 1)),
    "t": ((1, -1), (0, 1)),
}


def _apply(m, v):
    (a, b), (c, d) = m
    return (a * v[0] + b * v[1], c * v[0] + d * v[1])


def evaluate_word(word, seed):
    r"""
    Apply a generator word to a seed, letters left to right.
    """
    v = tuple(seed)
    for ch in word:
        if ch not in GENERATORS:
            raise ValueError("unknown generator letter %r" % (ch,))
        v = _apply(GENERATORS[ch], v)
    return v


class SeedClass:
    r"""
    Classification of a seed vector: ``rational-dependent`` when it is a
    rational multiple of a rational vector (equivalently its slope is
    rational or infinite), ``independent`` otherwise; float seeds may come
    back ``unknown`` when the continued-fraction probe is inconclusive.
    """

    __slots__ = ("kind", "detail")

    def __init__(self, kind, detail=""):
        self.kind = kind
        self.detail = detail

    def __eq__(self, other):
        if isinstance(other, SeedClass):
            return self.kind == other.kind
        return self.kind == other

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return "SeedClass(%r%s)" % (
            self.kind,
            ", %s" % self.detail if self.detail else "",
        )


def _is_exact(v):
    return all(isinstance(x, (int, Fraction)) for x in v)


def classify_seed(seed, cf_terms=40, huge=10**10):
    r"""
    Decide the seed dichotomy.  Exact coordinates decide exactly; float
    coordinates are probed through the continued fraction of the slope:
    exact termination means rational-dependent, surviving ``cf_terms``
    quotients is reported independent (as evidence), and a quotient
    beyond ``huge`` — indistinguishable from termination in doubles —
    comes back unknown.
    """
    x, y = seed
    if x == 0 and y == 0:
        raise ValueError("seed must be nonzero")
    if _is_exact(seed):
        return SeedClass(RATIONAL_DEPENDENT, "exact rational coordinates")
    if x == 0 or y == 0:
        return SeedClass(RATIONAL_DEPENDENT, "axis vector")
    r = abs(float(y) / float(x))
    for i in range(cf_terms):
        a = math.floor(r)
        if a > huge:
            return SeedClass(
                UNKNOWN, "quotient %d exceeds %d after %d terms" % (a, huge, i)
            )
        r -= a
        if r == 0:
            return SeedClass(
                RATIONAL_DEPENDENT, "continued fraction terminated at term %d" % i
            )
        r = 1.0 / r
    return SeedClass(INDEPENDENT, "no termination within %d terms" % cf_terms)


class OrbitPoint:
    r"""
    An orbit point with its word certificate: ``evaluate_word(word, seed)``
    returns ``coordinates`` exactly (rational mode) or within dedup
    tolerance (real mode).
    """

    __slots__ = ("coordinates", "word")

    def __init__(self, coordinates, word):
        self.coordinates = tuple(coordinates)
        self.word = word

    def norm2(self):
        x, y = self.coordinates
        return x * x + y * y

    def __repr__(self):
        return "OrbitPoint(%r, word=%r)" % (self.coordinates, self.word)


def _canonical_key(v, exact):
    x, y = v
    if exact:
        if x < 0 or (x == 0 and y < 0):
            x, y = -x, -y
        return (x, y), True
    fx, fy = float(x), float(y)
    if fx < -1e-12 or (abs(fx) <= 1e-12 and fy < 0):
        fx, fy = -fx, -fy
    return (round(fx * 1e12), round(fy * 1e12)), False


def orbit_ball(seed, radius, depth):
    r"""
    All orbit points of euclidean norm at most ``radius`` reachable from
    the seed by generator words of syllable length at most ``depth``, up
    to the reflection at the origin, sorted by (norm, coordinates).

    Depth counts syllables, the normal-form length in SL(2, Z): each
    ``S^{+-1}`` and each maximal parabolic run ``T^{+-k}`` costs one unit
    (the continued-fraction notion of depth).  Certificates are still
    recorded letter by letter.

    The search never leaves the disk of radius ``2*(radius + |seed|) + 2``.
    For exact seeds this loses nothing: continued-fraction words reach any
    target through its convergents, whose norms never exceed the target's.
    For float seeds the cap is part of the recorded protocol — results are
    accumulation evidence, not a completeness claim.
    """
    x, y = seed
    if x == 0 and y == 0:
        raise ValueError("seed must be nonzero")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    exact = _is_exact(seed)
    r2 = radius * radius
    cap = 2 * (float(radius) + math.sqrt(float(x * x + y * y))) + 2
    cap2 = cap * cap
    seed = tuple(seed)
    key0, _ = _canonical_key(seed, exact)
    visited = {key0}
    frontier = [(seed, "")]
    out = []
    if float(x * x + y * y) <= float(r2) + (0 if exact else 1e-9):
        out.append(OrbitPoint(seed, ""))

    def moves(v):
        x, y = v
        yield (-y, x), "S"
        yield (y, -x), "s"
        if y == 0:
            return  # T and T^{-1} fix the horizontal axis
        # parabolic runs: T^k sends (x, y) to (x + k y, y); the in-disk
        # range of k is computed directly instead of stepping one by one
        b2 = cap2 - float(y) * float(y)
        if b2 < 0:
            return
        b = math.sqrt(b2)
        fx, fy = float(x), float(y)
        lo = (-b - fx) / fy
        hi = (b - fx) / fy
        if lo > hi:
            lo, hi = hi, lo
        k_lo, k_hi = math.ceil(lo), math.floor(hi)
        for k in range(1, k_hi + 1):
            yield (x + k * y, y), "T" * k
        for k in range(-1, k_lo - 1, -1):
            yield (x + k * y, y), "t" * (-k)

    for _level in range(depth):
        new_frontier = []
        for v, word in frontier:
            for w, step in moves(v):
                key, _ = _canonical_key(w, exact)
                if key in visited:
                    continue
                visited.add(key)
                word2 = word + step
                new_frontier.append((w, word2))
                n2 = w[0] * w[0] + w[1] * w[1]
                if exact:
                    inside = n2 <= r2
                else:
                    inside = float(n2) <= float(r2) + 1e-9
                if inside:
                    out.append(OrbitPoint(w, word2))
        frontier = new_frontier
        if not frontier:
            break
    if not exact:
        out = _merge_float_duplicates(out)
    out.sort(key=lambda p: (float(p.norm2()), float(p.coordinates[0]), float(p.coordinates[1])))
    return tuple(out)


def _merge_float_duplicates(out, tol=1e-12):
    # cell-rounded dedup misses points straddling a cell boundary; sweep
    # the sign-canonicalized cloud and keep the first (shortest-word)
    # representative of each tol-cluster
    if len(out) < 2:
        return out
    canon = []
    for p in out:
        fx, fy = float(p.coordinates[0]), float(p.coordinates[1])
        if fx < -tol or (abs(fx) <= tol and fy < 0):
            fx, fy = -fx, -fy
        canon.append((fx, fy))
    order = sorted(range(len(out)), key=lambda i: canon[i])
    drop = set()
    for a in range(len(order) - 1):
        i = order[a]
        for b in range(a + 1, len(order)):
            j = order[b]
            if canon[j][0] - canon[i][0] > tol:
                break
            if abs(canon[j][1] - canon[i][1]) <= tol:
                drop.add(max(i, j))
    return [p for i, p in enumerate(out) if i not in drop]


def _pairwise_min_exact(coords):
    pts = [(Fraction(x), Fraction(y)) for x, y in coords]
    arr = np.array([[float(x), float(y)] for x, y in pts])
    n = len(pts)
    best = math.inf
    chunk = max(1, int(2**22 // max(n, 1)))
    for i0 in range(0, n, chunk):
        block = arr[i0 : i0 + chunk]
        d2 = (
            (block[:, None, 0] - arr[None, :, 0]) ** 2
            + (block[:, None, 1] - arr[None, :, 1]) ** 2
        )
        for r in range(len(block)):
            d2[r, i0 + r] = math.inf
        m = d2.min()
        if m < best:
            best = m
    # exact confirmation among float-near-minimal pairs
    slack = best * (1 + 1e-6) + 1e-12
    exact_best = None
    for i0 in range(0, n, chunk):
        block = arr[i0 : i0 + chunk]
        d2 = (
            (block[:, None, 0] - arr[None, :, 0]) ** 2
            + (block[:, None, 1] - arr[None, :, 1]) ** 2
        )
        for r in range(len(block)):
            d2[r, i0 + r] = math.inf
        for r, j in zip(*np.nonzero(d2 <= slack)):
            i = i0 + int(r)
            j = int(j)
            if i >= j:
                continue
            dx = pts[i][0] - pts[j][0]
            dy = pts[i][1] - pts[j][1]
            q = dx * dx + dy * dy
            if exact_best is None or q < exact_best:
                exact_best = q
    return exact_best


def discreteness_gap_sq(points):
    r"""
    The squared minimum pairwise distance of a collection of orbit points
    (or bare coordinate pairs) — exact (a Fraction) in rational mode, a
    float otherwise.
    """
    coords = [p.coordinates if isinstance(p, OrbitPoint) else tuple(p) for p in points]
    if len(coords) < 2:
        raise ValueError("need at least two points, got %d" % len(coords))
    if all(_is_exact(c) for c in coords):
        return _pairwise_min_exact(coords)
    # plane-sweep over x-sorted points: only pairs closer than the current
    # best in x need a look
    arr = np.array([[float(x), float(y)] for x, y in coords])
    arr = arr[np.lexsort((arr[:, 1], arr[:, 0]))]
    xs, ys = arr[:, 0], arr[:, 1]
    n = len(xs)
    dx, dy = xs[1:] - xs[:-1], ys[1:] - ys[:-1]
    best = float(np.min(dx * dx + dy * dy))
    for i in range(n - 1):
        hi = np.searchsorted(xs, xs[i] + math.sqrt(best), side="right")
        if hi <= i + 1:
            continue
        ddx = xs[i + 1 : hi] - xs[i]
        ddy = ys[i + 1 : hi] - ys[i]
        m = float(np.min(ddx * ddx + ddy * ddy))
        if m < best:
            best = m
    return best


def discreteness_gap(points):
    r"""
    The minimum pairwise euclidean distance; the minimizing pair is found
    by exact comparison in rational mode.
    """
    return math.sqrt(float(discreteness_gap_sq(points)))


def lebesgue_invariance_check(g, box, n_samples, seed=0):
    r"""
    Monte-Carlo check that the linear action of a determinant-one integer
    matrix preserves area: one fixed uniform cloud is drawn on a region
    covering both the box and its ``g``-preimage, and the relative
    discrepancy ``|#(cloud in box) - #(cloud in g^{-1} box)| / max(#, 1)``
    is returned.  It decays like ``n^{-1/2}``; a sanity demonstration, not
    a proof.

    ``box`` is ``(xmin, xmax, ymin, ymax)``; ``seed`` fixes the RNG.
    """
    (a, b), (c, d) = g
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant one")
    xmin, xmax, ymin, ymax = (float(t) for t in box)
    if not (xmin < xmax and ymin < ymax):
        raise ValueError("box must have positive area")
    # corners of g^{-1}(box): g^{-1} = [[d, -b], [-c, a]]
    corners = [
        (d * x - b * y, -c * x + a * y)
        for x in (xmin, xmax)
        for y in (ymin, ymax)
    ]
    gx0 = min(xmin, *(p[0] for p in corners))
    gx1 = max(xmax, *(p[0] for p in corners))
    gy0 = min(ymin, *(p[1] for p in corners))
    gy1 = max(ymax, *(p[1] for p in corners))
    rng = np.random.default_rng(seed)
    xs = rng.uniform(gx0, gx1, int(n_samples))
    ys = rng.uniform(gy0, gy1, int(n_samples))
    in_box = (xs >= xmin) & (xs <= xmax) & (ys >= ymin) & (ys <= ymax)
    ix = a * xs + b * ys
    iy = c * xs + d * ys
    in_pre = (ix >= xmin) & (ix <= xmax) & (iy >= ymin) & (iy <= ymax)
    c1 = int(in_box.sum())
    c2 = int(in_pre.sum())
    return abs(c1 - c2) / max(c1, 1)
