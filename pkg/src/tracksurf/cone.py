r"""
The transverse and tangential weight cones of a train track.

A *transverse* measure assigns a nonnegative weight to every branch so that
at each switch the weight of the large half-branch equals the sum of the two
small ones (the switch condition).  A *tangential* measure instead satisfies,
for every complementary trigon with sides ``c1, c2, c3`` (each side a smooth
arc, its weight the sum of branch weights along it with multiplicity), the
triangle inequalities ``mu(c_i) <= mu(c_{i+1}) + mu(c_{i+2})``.

Everything here is exact: weights are rationals (or elements of a real
quadratic field), feasibility questions are decided by an exact simplex, and
extreme rays by double description over Q.  Floating-point weights are
accepted for dynamical experiments, in which case validation takes an
explicit tolerance.
"""

from fractions import Fraction

from .errors import EmptyConeError, InternalInconsistencyError, MeasureMismatchError
from .rational import integerize, nullspace, rank, simplex_max
from .track import LARGE, SLOTS, TrainTrack

TRANSVERSE = "transverse"
TANGENTIAL = "tangential"
KINDS = (TRANSVERSE, TANGENTIAL)


class BranchWeights:
    """A weight vector on the branches of a fixed track.

    ``kind`` is ``'transverse'`` or ``'tangential'``; the corresponding
    invariants are checked by :meth:`violations` / :meth:`is_valid`, never
    silently assumed.  Weights may be exact (int/Fraction/quadratic) or
    floats; :attr:`exact` tells which.
    """

    __slots__ = ("track", "kind", "weights")

    def __init__(self, track, kind, weights):
        if not isinstance(track, TrainTrack):
            raise MeasureMismatchError("weights need a TrainTrack, got %r" % (track,))
        if kind not in KINDS:
            raise MeasureMismatchError("unknown weight kind %r" % (kind,))
        weights = tuple(weights)
        if len(weights) != track.num_branches:
            raise MeasureMismatchError(
                "%d weights for %d branches" % (len(weights), track.num_branches)
            )
        self.track = track
        self.kind = kind
        self.weights = weights

    @property
    def exact(self):
        return not any(isinstance(w, float) for w in self.weights)

    def total(self):
        return sum(self.weights)

    def violations(self, tol=0):
        vio = []
        for b, w in enumerate(self.weights):
            if w < -tol:
                vio.append("negative weight %s on branch %d" % (w, b))
        if self.kind == TRANSVERSE:
            for s, defect in enumerate(switch_defects(self.track, self.weights)):
                if not -tol <= defect <= tol:
                    vio.append("switch %d: defect %s" % (s, defect))
        else:
            for r, i, lhs, rhs in _trigon_inequalities(self.track, self.weights):
                if lhs > rhs + tol:
                    vio.append(
                        "trigon %d side %d: %s > %s" % (r, i, lhs, rhs)
                    )
        return vio

    def is_valid(self, tol=0):
        return not self.violations(tol)

    def __eq__(self, other):
        if not isinstance(other, BranchWeights):
            return NotImplemented
        return (
            self.track == other.track
            and self.kind == other.kind
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.kind, self.weights))

    def __repr__(self):
        return "BranchWeights(%s, %s)" % (self.kind, list(self.weights))


def switch_defects(track, weights):
    """Per-switch value of (large weight) - (sum of small weights).

    Loops are handled per half-branch: a branch occupying both small slots
    of a switch is counted twice on the small side.
    """
    dm = track._dart_map()
    defects = []
    for s in range(track.num_switches):
        d = 0
        for slot in SLOTS:
            b, _ = dm[(s, slot)]
            d = d + weights[b] if slot == LARGE else d - weights[b]
        defects.append(d)
    return defects


def switch_system(track):
    """Integer matrix (rows = switches, columns = branches) whose kernel in
    the nonnegative orthant is the transverse cone: entry = (multiplicity of
    the branch in the large slot) - (multiplicity in the small slots)."""
    track.require_operable()
    dm = track._dart_map()
    rows = []
    for s in range(track.num_switches):
        row = [0] * track.num_branches
        for slot in SLOTS:
            b, _ = dm[(s, slot)]
            row[b] += 1 if slot == LARGE else -1
        rows.append(row)
    return rows


def _trigon_inequalities(track, weights):
    """Yield (region index, side index, mu(c_i), mu(c_{i+1}) + mu(c_{i+2}))
    over all complementary trigons."""
    for r, region in enumerate(track.regions):
        if region.cusp_count != 3:
            continue
        side_w = [sum(weights[b] for b in side) for side in region.sides]
        for i in range(3):
            yield r, i, side_w[i], side_w[(i + 1) % 3] + side_w[(i + 2) % 3]


def cone_dimension(track):
    """Dimension of the transverse solution space: branches minus the rank
    of the switch system over Q.  Equals ``6g - 6 + 2m`` on every complete
    track."""
    rows = [[Fraction(x) for x in row] for row in switch_system(track)]
    return track.num_branches - rank(rows, track.num_branches)


def _max_min_coordinate(rows_eq, n):
    r"""Exactly solve  max t  s.t.  rows_eq . w = 0,  sum w = 1,  w_b >= t.

    Variables are (w_0..w_{n-1}, t, slack_0..slack_{n-1}), all >= 0; the
    optimum is positive iff the homogeneous system has a strictly positive
    solution.  Returns (value, w) with value None when even the slice is
    infeasible (the cone is the origin).
    """
    zero, one = Fraction(0), Fraction(1)
    nvar = 2 * n + 1
    A = []
    b = []
    for row in rows_eq:
        A.append([Fraction(x) for x in row] + [zero] * (n + 1))
        b.append(zero)
    A.append([one] * n + [zero] * (n + 1))
    b.append(one)
    for j in range(n):
        row = [zero] * nvar
        row[j] = one
        row[n] = -one
        row[n + 1 + j] = -one
        A.append(row)
        b.append(zero)
    c = [zero] * nvar
    c[n] = one
    res = simplex_max(c, A, b)
    if res.status == "infeasible":
        return None, None
    if res.status != "optimal":  # t <= max w_b <= 1: cannot be unbounded
        raise InternalInconsistencyError("recurrence LP reported %s" % res.status)
    return res.value, res.x[:n]


def is_recurrent(track):
    """Does the track carry a strictly positive transverse measure?

    Returns ``(decision, witness)``; the witness is a strictly positive
    rational :class:`BranchWeights` of total weight one when the decision is
    true, else ``None``.
    """
    track.require_operable()
    rows = switch_system(track)
    value, w = _max_min_coordinate(rows, track.num_branches)
    if value is None or value <= 0:
        return False, None
    return True, BranchWeights(track, TRANSVERSE, w)


def is_transversely_recurrent(track):
    """Does the track carry a strictly positive tangential measure?

    Same exact LP as :func:`is_recurrent`, with the trigon triangle
    inequalities (one slack per inequality) in place of switch conditions.
    """
    track.require_operable()
    n = track.num_branches
    zero, one = Fraction(0), Fraction(1)
    ineqs = []  # rows of coefficients c with c.w >= 0 required
    for region in track.regions:
        if region.cusp_count != 3:
            continue
        side_coeff = []
        for side in region.sides:
            coeff = [0] * n
            for bb in side:
                coeff[bb] += 1
            side_coeff.append(coeff)
        for i in range(3):
            row = [
                Fraction(
                    side_coeff[(i + 1) % 3][j]
                    + side_coeff[(i + 2) % 3][j]
                    - side_coeff[i][j]
                )
                for j in range(n)
            ]
            ineqs.append(row)
    k = len(ineqs)
    # variables: w (n), t, slack_pos (n), slack_ineq (k)
    nvar = 2 * n + 1 + k
    A = []
    b = []
    A.append([one] * n + [zero] * (nvar - n))
    b.append(one)
    for j in range(n):
        row = [zero] * nvar
        row[j] = one
        row[n] = -one
        row[n + 1 + j] = -one
        A.append(row)
        b.append(zero)
    for i, coeff in enumerate(ineqs):
        row = list(coeff) + [zero] * (n + 1 + k)
        row[2 * n + 1 + i] = -one
        A.append(row)
        b.append(zero)
    c = [zero] * nvar
    c[n] = one
    res = simplex_max(c, A, b)
    if res.status == "infeasible" or (res.status == "optimal" and res.value <= 0):
        return False, None
    if res.status != "optimal":
        raise InternalInconsistencyError("tangential LP reported %s" % res.status)
    return True, BranchWeights(track, TANGENTIAL, res.x[: track.num_branches])


def _supports_adjacent(r1, r2, rays):
    union = {j for j, x in enumerate(r1) if x} | {j for j, x in enumerate(r2) if x}
    for r3 in rays:
        if r3 is r1 or r3 is r2:
            continue
        if all(j in union for j, x in enumerate(r3) if x):
            return False
    return True


def _extreme_rays(rows, n):
    """Extreme rays of {x >= 0 : rows . x = 0} by double description.

    Starts from the coordinate rays of the orthant and intersects with one
    hyperplane at a time; adjacency is the standard combinatorial support
    test (valid here: the cone is pointed, being a subset of the orthant).
    Rays come back as primitive integer tuples, sorted.
    """
    rays = []
    for j in range(n):
        r = [Fraction(0)] * n
        r[j] = Fraction(1)
        rays.append(tuple(r))
    for a in rows:
        val = {r: sum(ai * ri for ai, ri in zip(a, r)) for r in rays}
        zero = [r for r in rays if val[r] == 0]
        pos = [r for r in rays if val[r] > 0]
        neg = [r for r in rays if val[r] < 0]
        new = {tuple(integerize(r)): r for r in zero}
        for rp in pos:
            for rn in neg:
                if not _supports_adjacent(rp, rn, rays):
                    continue
                combo = tuple(
                    val[rp] * xn - val[rn] * xp for xp, xn in zip(rp, rn)
                )
                new.setdefault(tuple(integerize(combo)), combo)
        rays = [tuple(Fraction(x) for x in key) for key in new]
    return sorted(tuple(int(x) for x in integerize(r)) for r in rays)


def vertex_cycles(track):
    """The extreme rays of the transverse cone, as primitive integral
    measures sorted lexicographically.

    Every returned vector satisfies the switch conditions, has entry gcd 1,
    and is certified extreme by the support-rank test (the solution space
    restricted to its support is one-dimensional).  A non-recurrent track
    raises :class:`EmptyConeError` -- its cone is a face with no interior
    and has no well-defined set of vertex cycles.
    """
    track.require_operable()
    recurrent, _ = is_recurrent(track)
    if not recurrent:
        raise EmptyConeError("track is not recurrent: transverse cone has empty interior")
    rows = switch_system(track)
    rays = _extreme_rays([[Fraction(x) for x in row] for row in rows], track.num_branches)
    qrows = [[Fraction(x) for x in row] for row in rows]
    for ray in rays:
        supp = [j for j, x in enumerate(ray) if x]
        sub = [[row[j] for j in supp] for row in qrows]
        if rank(sub, len(supp)) != len(supp) - 1:
            raise InternalInconsistencyError(
                "ray %r failed the support-rank extremality certificate" % (ray,)
            )
        if any(
            x != 0 for x in _apply_rows(qrows, ray)
        ):
            raise InternalInconsistencyError("ray %r violates switch conditions" % (ray,))
    return [BranchWeights(track, TRANSVERSE, [Fraction(x) for x in ray]) for ray in rays]


def _apply_rows(rows, x):
    return [sum(a * xi for a, xi in zip(row, x)) for row in rows]


def transverse_kernel_basis(track):
    """A rational basis of the switch-condition solution space."""
    rows = [[Fraction(x) for x in row] for row in switch_system(track)]
    return nullspace(rows, track.num_branches)


def pair(transverse, tangential):
    """The intersection pairing  sum_b mu(b) nu(b)  of a transverse and a
    tangential weight vector on the same track."""
    if not isinstance(transverse, BranchWeights) or not isinstance(tangential, BranchWeights):
        raise MeasureMismatchError("pair() needs two BranchWeights")
    if transverse.kind != TRANSVERSE or tangential.kind != TANGENTIAL:
        raise MeasureMismatchError(
            "pair(%s, %s): expected kinds (transverse, tangential)"
            % (transverse.kind, tangential.kind)
        )
    if transverse.track != tangential.track:
        raise MeasureMismatchError("pair() across different tracks")
    return sum(m * n for m, n in zip(transverse.weights, tangential.weights))
