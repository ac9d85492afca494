r"""
Splits, full splits and measure-driven splitting sequences.

A *split* happens at a large branch ``e`` whose endpoints occupy the two
large slots of distinct switches ``u`` and ``v``.  The four half-branches
adjacent to ``e`` form a quad

    a = occupant of (u, SR)      d = occupant of (v, SL)
    b = occupant of (u, SL)      c = occupant of (v, SR)

(with the surface oriented so that, looking along the small directions,
small-right is the upper strand; ``a`` and ``d`` are then the two upper
corners of the quad).  The *right* split makes ``a`` and ``c`` the
winners: in the child, ``a`` becomes the large half-branch at ``u`` with
the new diagonal ``e'`` and the transported ``d`` as its smalls, and
symmetrically at ``v``.  The left split is the mirror image under
``(a, b) <-> (d, c)``.  In terms of darts the right split moves

    (u, SR) -> (u, L)    (u, SL) -> (v, SL)    (u, L) -> (u, SR)
    (v, SR) -> (v, L)    (v, SL) -> (u, SL)    (v, L) -> (v, SR)

and the left split is obtained by exchanging SR with SL throughout.  The
moves are applied per branch *end*, so degenerate quads (a rail that is a
single branch, or a small loop) need no special cases.  The diagonal
``e'`` keeps the branch index of ``e``.

A transverse measure is carried through a split by keeping every weight
except the one on ``e``, which becomes ``mu(a) - mu(d)`` for a right
split (equivalently ``mu(c) - mu(b)``, by the switch conditions) and the
negative of that for a left split; the measure itself selects the unique
direction making the diagonal weight positive, with a tie meaning the
measure sits on the wall between the two daughter cones.
"""

from fractions import Fraction

from .track import TrainTrack, LARGE, SMALL_RIGHT, SMALL_LEFT
from .cone import BranchWeights, TRANSVERSE
from .errors import (
    NotSplittableError,
    NonGenericMeasureError,
    InternalInconsistencyError,
    MeasureMismatchError,
)

RIGHT = "Right"
LEFT = "Left"
UNDETERMINED = "Undetermined"


class SplitRecord(object):
    r"""
    The result of one split: parent, child, and how they correspond.

    ``quad`` holds the branch ids ``(a, b, c, d)`` (repetitions possible
    when a rail or loop is a single branch); ``quad_darts`` the four
    (branch, end) pairs themselves.  ``correspondence`` maps parent branch
    ids to child branch ids; it is the identity because the diagonal
    reuses the index of ``e``, but consumers are written against the map.
    """

    __slots__ = (
        "parent",
        "child",
        "large_branch",
        "direction",
        "quad",
        "quad_darts",
        "winners",
        "losers",
        "correspondence",
    )

    def __init__(self, parent, child, large_branch, direction, quad, quad_darts):
        self.parent = parent
        self.child = child
        self.large_branch = large_branch
        self.direction = direction
        self.quad = quad
        self.quad_darts = quad_darts
        a, b, c, d = quad_darts
        if direction == RIGHT:
            self.winners, self.losers = (a, c), (b, d)
        else:
            self.winners, self.losers = (b, d), (a, c)
        self.correspondence = tuple(range(parent.num_branches))

    def __repr__(self):
        return "SplitRecord(e=%d, %s, quad=%r)" % (
            self.large_branch,
            self.direction,
            self.quad,
        )


def _quad_darts(track, e):
    """The (branch, end) occupants of the four small slots around ``e``."""
    dm = track._dart_map()
    (u, _), (v, _) = track.branches[e]
    return (
        dm[(u, SMALL_RIGHT)],
        dm[(u, SMALL_LEFT)],
        dm[(v, SMALL_RIGHT)],
        dm[(v, SMALL_LEFT)],
    )


def _transport_regions(parent, child, e, u, v):
    r"""
    Match parent regions to child regions across a split at switches
    ``u, v`` and return the child's puncture switches.

    A boundary step ``(b, end)`` departing from a switch other than
    ``u, v`` is untouched by the split, so regions sharing such a step
    correspond.  Regions living entirely on the quad switches are matched
    by their multiset of traversed branches with the split branch left
    out (the diagonal may enter or leave such a boundary — a monogon
    bounded by a small loop at ``u`` picks the diagonal up, and its cusp
    moves to ``v``).  The census must match region by region; anything
    else means the split moves were wrong.
    """
    def stable_steps(track, region):
        return {
            s for s in region.boundary if track.branches[s[0]][s[1]][0] not in (u, v)
        }

    pregions = list(parent.regions)
    cregions = list(child.regions)
    if sorted(r.cusp_count for r in pregions) != sorted(
        r.cusp_count for r in cregions
    ):
        raise InternalInconsistencyError("split changed the region census")
    matched = {}
    leftover_p = []
    cstable = [stable_steps(child, r) for r in cregions]
    for rp in pregions:
        sp = stable_steps(parent, rp)
        hits = [i for i, sc in enumerate(cstable) if sp & sc]
        if len(hits) > 1:
            raise InternalInconsistencyError("split merged complementary regions")
        if hits:
            matched[hits[0]] = rp
        else:
            leftover_p.append(rp)
    def key(region):
        return sorted(x for x in region.branches().items() if x[0] != e)

    for rp in leftover_p:
        hits = [
            i
            for i, rc in enumerate(cregions)
            if i not in matched and key(rc) == key(rp)
        ]
        if len(hits) != 1:
            raise InternalInconsistencyError(
                "cannot transport a quad-local region through the split"
            )
        matched[hits[0]] = rp
    flags = []
    punctured = {r.cusp_switches[0] for r in parent.monogons()} & set(
        parent.puncture_switches
    )
    for i, rc in enumerate(cregions):
        rp = matched.get(i)
        if rp is None:
            raise InternalInconsistencyError("unmatched child region after split")
        if rp.cusp_count == 1 and rp.cusp_switches[0] in punctured:
            if rc.cusp_count != 1:
                raise InternalInconsistencyError(
                    "punctured monogon did not stay a monogon"
                )
            flags.append(rc.cusp_switches[0])
    return sorted(flags)


def split(track, e, direction):
    r"""
    Split ``track`` at the large branch ``e`` in the given direction.

    Returns a SplitRecord whose child has been revalidated from scratch
    (census recomputed, puncture flags transported through the region
    correspondence).
    """
    track.require_valid()
    if direction not in (RIGHT, LEFT):
        raise ValueError("direction must be %r or %r" % (RIGHT, LEFT))
    if track.branch_kind(e) != "large":
        raise NotSplittableError("branch %d is not large" % e)
    (u, _), (v, _) = track.branches[e]
    if direction == RIGHT:
        moves = {
            (u, SMALL_RIGHT): (u, LARGE),
            (u, SMALL_LEFT): (v, SMALL_LEFT),
            (v, SMALL_RIGHT): (v, LARGE),
            (v, SMALL_LEFT): (u, SMALL_LEFT),
            (u, LARGE): (u, SMALL_RIGHT),
            (v, LARGE): (v, SMALL_RIGHT),
        }
    else:
        moves = {
            (u, SMALL_LEFT): (u, LARGE),
            (u, SMALL_RIGHT): (v, SMALL_RIGHT),
            (v, SMALL_LEFT): (v, LARGE),
            (v, SMALL_RIGHT): (u, SMALL_RIGHT),
            (u, LARGE): (u, SMALL_LEFT),
            (v, LARGE): (v, SMALL_LEFT),
        }
    branches = [
        tuple(moves.get(d, d) for d in ends) for ends in track.branches
    ]
    quad_darts = _quad_darts(track, e)
    bare = TrainTrack(
        track.genus, track.punctures, track.num_switches, branches
    )
    flags = _transport_regions(track, bare, e, u, v)
    child = TrainTrack(
        track.genus,
        track.punctures,
        track.num_switches,
        branches,
        puncture_switches=flags,
    )
    report = child.validate()
    if report:
        raise InternalInconsistencyError(
            "split produced an invalid child: %s" % "; ".join(report)
        )
    quad = tuple(b for b, _ in quad_darts)
    return SplitRecord(track, child, e, direction, quad, quad_darts)


def _check_measure(track, weights):
    if weights.track != track:
        raise MeasureMismatchError("measure lives on a different track")
    if weights.kind != TRANSVERSE:
        raise MeasureMismatchError("splitting needs a transverse measure")
    bad = weights.violations()
    if bad:
        raise ValueError("measure invalid: %s" % "; ".join(bad))


def lift_measure(track, e, weights):
    r"""
    Carry a transverse measure through the split at ``e``.

    Returns ``(direction, child measure)`` with the direction the unique
    one giving the diagonal a positive weight, or ``UNDETERMINED`` when
    the competing quad weights tie (central split).
    """
    _check_measure(track, weights)
    if track.branch_kind(e) != "large":
        raise NotSplittableError("branch %d is not large" % e)
    a, b, c, d = (x[0] for x in _quad_darts(track, e))
    w = weights.weights
    delta = w[a] - w[d]
    if not delta:
        return UNDETERMINED
    direction = RIGHT if delta > 0 else LEFT
    rec = split(track, e, direction)
    out = list(w)
    out[e] = delta if delta > 0 else -delta
    child = BranchWeights(rec.child, TRANSVERSE, out)
    if child.violations():
        raise InternalInconsistencyError(
            "lifted measure violates the child switch conditions"
        )
    return direction, child


def project_measure(rec, child_weights):
    r"""
    Pull a transverse measure on the child of a split back to the parent.

    Away from the split the weight is kept; on the split branch the parent
    weight is the diagonal weight plus the weights of the two loser
    half-branches (a loser loop counts twice).  The result is asserted
    against the parent switch conditions, never assumed.
    """
    if child_weights.track != rec.child:
        raise MeasureMismatchError("measure does not live on the split child")
    if child_weights.kind != TRANSVERSE:
        raise MeasureMismatchError("projection needs a transverse measure")
    w = list(child_weights.weights)
    e = rec.large_branch
    lost = sum(w[dart[0]] for dart in rec.losers)
    out = [w[rec.correspondence[b]] for b in range(rec.parent.num_branches)]
    out[e] = w[rec.correspondence[e]] + lost
    parent = BranchWeights(rec.parent, TRANSVERSE, out)
    if parent.violations():
        raise InternalInconsistencyError(
            "projected measure violates the parent switch conditions"
        )
    return parent


def full_split(track, weights):
    r"""
    Split at every large branch of ``track`` once, driven by ``weights``.

    Distinct large branches have disjoint endpoint switches (a switch has
    one large slot, and the occupants of the small slots around a large
    branch are small half-branches), so the individual splits commute;
    they are applied in increasing branch order.  Returns
    ``(child, measure renormalized to total one, expansion ratio)`` where
    the ratio is old total mass over new, always at least one.
    """
    child, bw, ratio, _, _ = _full_split(track, weights)
    return child, bw, ratio


def _full_split(track, weights):
    _check_measure(track, weights)
    larges = track.large_branches()
    total_in = weights.total()
    if not total_in > 0:
        raise ValueError("measure must have positive total weight")
    current = track
    w = list(weights.weights)
    directions = {}
    records = []
    for e in larges:
        a, b, c, d = (x[0] for x in _quad_darts(current, e))
        delta = w[a] - w[d]
        if not delta:
            raise NonGenericMeasureError(
                "measure ties at branch %d" % e, branch=e
            )
        direction = RIGHT if delta > 0 else LEFT
        rec = split(current, e, direction)
        w[e] = delta if delta > 0 else -delta
        current = rec.child
        directions[e] = direction
        records.append(rec)
    current_w = BranchWeights(current, TRANSVERSE, w)
    if current_w.violations():
        raise InternalInconsistencyError(
            "full split broke the switch conditions"
        )
    total_out = current_w.total()
    ratio = total_in / total_out
    if not ratio >= 1:
        raise InternalInconsistencyError("expansion ratio below one")
    normalized = BranchWeights(
        current, TRANSVERSE, [x / total_out for x in w]
    )
    return current, normalized, ratio, directions, records


class SplitStep(object):
    """One state of a splitting sequence."""

    __slots__ = ("track", "directions", "records", "measure", "ratio")

    def __init__(self, track, directions, records, measure, ratio):
        self.track = track
        self.directions = dict(directions)
        self.records = list(records)
        self.measure = measure
        self.ratio = ratio

    def __repr__(self):
        return "SplitStep(%r, ratio=%r)" % (self.directions, self.ratio)


class SplittingSequence(object):
    r"""
    A run of full splits: step 0 is the initial state, step i the result
    of the i-th full split.  Measures are kept normalized to total weight
    one; ``ratio`` is the per-step expansion factor (1 for step 0).
    """

    __slots__ = ("steps",)

    def __init__(self, steps):
        self.steps = list(steps)

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def tracks(self):
        return [s.track for s in self.steps]

    def measures(self):
        return [s.measure for s in self.steps]

    def cumulative_expansion(self):
        out = self.steps[0].ratio
        for s in self.steps[1:]:
            out = out * s.ratio
        return out


def drive_sequence(track, weights, n):
    r"""
    Drive ``n`` full splits of ``track`` by the measure ``weights``.

    Every intermediate measure is revalidated against its own switch
    conditions.  A tie at any step raises the non-generic-measure error
    with the step index attached.
    """
    _check_measure(track, weights)
    if all(isinstance(x, int) for x in weights.weights):
        # keep integral measures exact under the repeated renormalizations
        weights = BranchWeights(
            track, TRANSVERSE, [Fraction(x) for x in weights.weights]
        )
    total = weights.total()
    if not total > 0:
        raise ValueError("measure must have positive total weight")
    normalized = BranchWeights(
        track, TRANSVERSE, [x / total for x in weights.weights]
    )
    one = total / total
    steps = [SplitStep(track, {}, [], normalized, one)]
    current, current_w = track, normalized
    for i in range(n):
        try:
            current, current_w, ratio, directions, records = _full_split(
                current, current_w
            )
        except NonGenericMeasureError as err:
            raise NonGenericMeasureError(
                "%s on step %d" % (err.args[0], i + 1),
                branch=err.branch,
                step=i + 1,
            ) from err
        steps.append(SplitStep(current, directions, records, current_w, ratio))
    return SplittingSequence(steps)


def detect_periodicity(seq):
    r"""
    The first pair ``i < j`` of steps with isomorphic tracks whose
    isomorphism carries measure i onto a positive multiple of measure j,
    together with the isomorphism; None when no pair qualifies.

    Pairs are scanned in lexicographic order of ``(i, j)`` and the
    certificate is re-verified before being returned.
    """
    from .isomorphism import tracks_isomorphic

    m = len(seq.steps)
    for i in range(m):
        for j in range(i + 1, m):
            iso = tracks_isomorphic(seq.steps[i].track, seq.steps[j].track)
            if iso is None:
                continue
            pushed = iso.apply_measure(seq.steps[i].measure)
            target = seq.steps[j].measure
            scale = None
            ok = True
            for x, y in zip(pushed.weights, target.weights):
                xz, yz = not x, not y
                if xz != yz:
                    ok = False
                    break
                if xz:
                    continue
                r = x / y
                if scale is None:
                    scale = r
                elif r != scale:
                    ok = False
                    break
            if ok and scale is not None and scale > 0:
                iso.verify()
                return i, j, iso
    return None


def in_cylinder(seq, weights, target=None):
    r"""
    Does ``weights`` (a transverse measure on the sequence's initial
    track) drive through the same direction choices as the recorded
    sequence up to ``target``?

    ``target`` is a step index or an intermediate track (matched by
    structural equality); by default the whole sequence is checked.
    """
    if target is None:
        last = len(seq.steps) - 1
    elif isinstance(target, TrainTrack):
        hits = [i for i, s in enumerate(seq.steps) if s.track == target]
        if not hits:
            raise ValueError("target track does not appear in the sequence")
        last = hits[0]
    else:
        last = target
        if not 0 <= last < len(seq.steps):
            raise ValueError("target step out of range")
    track = seq.steps[0].track
    _check_measure(track, weights)
    current, current_w = track, weights
    for step in seq.steps[1 : last + 1]:
        current, current_w, _, directions, _ = _full_split(current, current_w)
        if directions != step.directions:
            return False
        if current != step.track:
            raise InternalInconsistencyError(
                "identical direction choices produced different tracks"
            )
    return True
