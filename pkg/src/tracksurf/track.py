r"""
Combinatorial train tracks.

A generic train track on an oriented surface of genus ``g`` with ``m``
punctures is encoded as a set of trivalent switches and a set of branches.
Each switch has exactly three half-branch slots:

- ``L`` -- the large slot (the single half-branch on the smooth side),
- ``SR`` / ``SL`` -- the two small slots, named right/left as seen standing
  on the switch facing along the small half-branches.

The surface orientation enters only through the fixed counterclockwise
rotation order ``L -> SR -> SL`` of the three slots around a switch; this is
what makes right and left splits well defined later on.

Complementary regions are recovered purely combinatorially.  Writing
``alpha`` for the involution swapping the two ends of every branch and
``sigma`` for the one-step slot rotation, the boundary walks of the regions
are the orbits of ``sigma . alpha`` on the set of darts (= branch ends).  A
walk turns through a cusp exactly when it turns the corner from ``SR`` to
``SL`` -- the zero-angle gap between the two small half-branches.  Each
switch therefore contributes exactly one cusp to the census.

A track is *valid* when every complementary region is a trigon (three cusps)
or a once-punctured monogon (one cusp); which monogons carry the punctures
is explicit input (``puncture_switches``: a monogon is named by the switch
holding its unique cusp), never guessed.
"""

from collections import Counter

from .errors import StructureError, InvalidTrackError

LARGE = "L"
SMALL_RIGHT = "SR"
SMALL_LEFT = "SL"

#: counterclockwise rotation order of the slots around a switch
SLOTS = (LARGE, SMALL_RIGHT, SMALL_LEFT)

_NEXT_SLOT = {LARGE: SMALL_RIGHT, SMALL_RIGHT: SMALL_LEFT, SMALL_LEFT: LARGE}


def _check_dart(dart, num_switches):
    if (
        not isinstance(dart, tuple)
        or len(dart) != 2
        or not isinstance(dart[0], int)
        or isinstance(dart[0], bool)
    ):
        raise StructureError("branch endpoint must be a (switch, slot) pair, got %r" % (dart,))
    s, slot = dart
    if not 0 <= s < num_switches:
        raise StructureError("switch index %r out of range [0, %d)" % (s, num_switches))
    if slot not in SLOTS:
        raise StructureError("unknown slot %r (expected one of %s)" % (slot, "/".join(SLOTS)))


class RegionDescriptor:
    """One complementary region, as recovered by the boundary walk.

    ``boundary`` is the cyclic list of traversal steps ``(branch, end)``: the
    walk runs along ``branch`` starting from its endpoint number ``end``.
    ``cusp_switches`` lists, in walk order, the switch at which each cusp
    sits; since every switch has exactly one cusp corner this identifies the
    region's cusps globally.  ``sides`` are the maximal smooth arcs between
    consecutive cusps, each given as the tuple of branches it runs over
    (with multiplicity); a region with no cusps has a single closed side.
    """

    __slots__ = ("boundary", "cusp_switches", "sides")

    def __init__(self, boundary, cusp_switches, sides):
        self.boundary = tuple(boundary)
        self.cusp_switches = tuple(cusp_switches)
        self.sides = tuple(tuple(s) for s in sides)

    @property
    def cusp_count(self):
        return len(self.cusp_switches)

    @property
    def kind(self):
        n = self.cusp_count
        if n == 3:
            return "trigon"
        if n == 1:
            return "monogon"
        return "%d-cusped" % n

    def branches(self):
        """Multiset of branches traversed by the boundary."""
        return Counter(b for b, _ in self.boundary)

    def __repr__(self):
        return "RegionDescriptor(%s, cusps at %s)" % (self.kind, list(self.cusp_switches))


class TrainTrack:
    """An immutable combinatorial train track.

    Parameters
    ----------
    genus, punctures : int
        The surface kind.
    num_switches : int
        Switches are ``0 .. num_switches-1``.
    branches : iterable of pairs of darts
        Branch ``i`` joins ``branches[i][0]`` to ``branches[i][1]``, each a
        ``(switch, slot)`` pair.  Loops at a single switch are permitted
        (they occupy two distinct slots).
    puncture_switches : iterable of int, optional
        For each puncture, the switch holding the cusp of the once-punctured
        monogon containing it.

    Construction checks only well-formedness (a malformed index raises
    :class:`StructureError`); semantic invariants are reported by
    :meth:`validate`.
    """

    def __init__(self, genus, punctures, num_switches, branches, puncture_switches=()):
        if not isinstance(genus, int) or genus < 0:
            raise StructureError("genus must be a nonnegative integer, got %r" % (genus,))
        if not isinstance(punctures, int) or punctures < 0:
            raise StructureError("punctures must be a nonnegative integer, got %r" % (punctures,))
        if not isinstance(num_switches, int) or num_switches <= 0:
            raise StructureError("num_switches must be a positive integer, got %r" % (num_switches,))
        self.genus = genus
        self.punctures = punctures
        self.num_switches = num_switches
        br = []
        for rec in branches:
            rec = tuple(rec)
            if len(rec) != 2:
                raise StructureError("branch record must have exactly two endpoints, got %r" % (rec,))
            d0, d1 = tuple(rec[0]), tuple(rec[1])
            _check_dart(d0, num_switches)
            _check_dart(d1, num_switches)
            if d0 == d1:
                raise StructureError("branch cannot have both endpoints in the same slot %r" % (d0,))
            br.append((d0, d1))
        self.branches = tuple(br)
        ps = []
        for s in puncture_switches:
            if not isinstance(s, int) or not 0 <= s < num_switches:
                raise StructureError("puncture-region switch %r out of range" % (s,))
            ps.append(s)
        if len(set(ps)) != len(ps):
            raise StructureError("duplicate puncture-region switch")
        self.puncture_switches = frozenset(ps)
        self._cache = {}

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (
            self.genus,
            self.punctures,
            self.num_switches,
            self.branches,
            self.puncture_switches,
        )

    def __eq__(self, other):
        if not isinstance(other, TrainTrack):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "TrainTrack(genus=%d, punctures=%d, switches=%d, branches=%d)" % (
            self.genus,
            self.punctures,
            self.num_switches,
            self.num_branches,
        )

    # -- basic structure ----------------------------------------------------

    @property
    def num_branches(self):
        return len(self.branches)

    def darts(self):
        """All ``3 * num_switches`` slots of the track."""
        return [(s, slot) for s in range(self.num_switches) for slot in SLOTS]

    def _dart_usage(self):
        if "usage" not in self._cache:
            self._cache["usage"] = Counter(d for rec in self.branches for d in rec)
        return self._cache["usage"]

    def has_proper_slots(self):
        """True when every slot of every switch carries exactly one branch end."""
        usage = self._dart_usage()
        return len(usage) == 3 * self.num_switches and all(
            usage[d] == 1 for d in self.darts()
        )

    def _dart_map(self):
        """dart -> (branch, end).  Requires proper slots."""
        if "dart_map" not in self._cache:
            if not self.has_proper_slots():
                raise InvalidTrackError(
                    "improper slot assignment (run validate() for details)",
                    self.validate(),
                )
            dm = {}
            for b, (d0, d1) in enumerate(self.branches):
                dm[d0] = (b, 0)
                dm[d1] = (b, 1)
            self._cache["dart_map"] = dm
        return self._cache["dart_map"]

    def alpha(self, dart):
        """The other end of the branch occupying ``dart``."""
        b, end = self._dart_map()[dart]
        return self.branches[b][1 - end]

    @staticmethod
    def sigma(dart):
        """The next slot counterclockwise at the same switch."""
        return (dart[0], _NEXT_SLOT[dart[1]])

    def branch_at(self, dart):
        """The (branch, end) occupying ``dart``."""
        return self._dart_map()[dart]

    def endpoints(self, b):
        return self.branches[b]

    def branch_kind(self, b):
        """'large', 'mixed' or 'small' by the slots of the two ends."""
        n_large = sum(1 for d in self.branches[b] if d[1] == LARGE)
        return ("small", "mixed", "large")[n_large]

    def large_branches(self):
        """Branches with both half-branches large, in index order."""
        return [b for b in range(self.num_branches) if self.branch_kind(b) == "large"]

    def is_connected(self):
        if self.num_switches == 1:
            return True
        parent = list(range(self.num_switches))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (s0, _), (s1, _) in self.branches:
            parent[find(s0)] = find(s1)
        return len({find(s) for s in range(self.num_switches)}) == 1

    # -- region census ------------------------------------------------------

    @property
    def regions(self):
        """Complementary regions, recomputed by boundary traversal.

        Each region is one orbit of ``sigma . alpha`` on darts.  The step at
        dart ``d`` runs along its branch to ``alpha(d)`` and turns the corner
        to the next slot; the corner is a cusp exactly when ``alpha(d)``
        sits in the ``SR`` slot.
        """
        if "regions" not in self._cache:
            dm = self._dart_map()
            seen = set()
            regions = []
            for start in self.darts():
                if start in seen:
                    continue
                boundary = []  # (branch, end) steps
                cusp_flags = []  # cusp after step i?
                cusp_switches = []
                d = start
                while True:
                    seen.add(d)
                    b, end = dm[d]
                    boundary.append((b, end))
                    a = self.branches[b][1 - end]
                    is_cusp = a[1] == SMALL_RIGHT
                    cusp_flags.append(is_cusp)
                    if is_cusp:
                        cusp_switches.append(a[0])
                    d = self.sigma(a)
                    if d == start:
                        break
                regions.append(
                    RegionDescriptor(
                        boundary, cusp_switches, _split_sides(boundary, cusp_flags)
                    )
                )
            self._cache["regions"] = tuple(regions)
        return self._cache["regions"]

    def trigons(self):
        return [r for r in self.regions if r.cusp_count == 3]

    def monogons(self):
        return [r for r in self.regions if r.cusp_count == 1]

    def monogon_by_cusp(self):
        """cusp switch -> monogon region (cusp switches are globally unique)."""
        return {r.cusp_switches[0]: r for r in self.monogons()}

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Recompute every invariant from scratch; return the violation list.

        An empty list means the track is valid.  The census is never trusted
        from input: regions, cusp counts and the Euler characteristic are all
        rebuilt by traversal.
        """
        violations = []
        if 3 * self.genus - 3 + self.punctures < 1:
            violations.append(
                "surface (g=%d, m=%d) violates 3g-3+m >= 1" % (self.genus, self.punctures)
            )
        usage = self._dart_usage()
        proper = True
        for s in range(self.num_switches):
            for slot in SLOTS:
                c = usage.get((s, slot), 0)
                if c == 1:
                    continue
                proper = False
                if slot == LARGE:
                    if c == 0:
                        violations.append("switch %d: no large half-branch (slot L unused)" % s)
                    else:
                        violations.append(
                            "switch %d: %d large half-branches (slot L used %d times)" % (s, c, c)
                        )
                else:
                    violations.append("switch %d: slot %s used %d times" % (s, slot, c))
        if not proper:
            return violations  # census is meaningless without a slot system

        if not self.is_connected():
            violations.append("track is disconnected")

        flagged = set(self.puncture_switches)
        n_trigons = 0
        for r in self.regions:
            k = r.cusp_count
            if k == 3:
                n_trigons += 1
                for s in r.cusp_switches:
                    if s in flagged:
                        violations.append(
                            "puncture-region names switch %d but its region is a trigon" % s
                        )
                        flagged.discard(s)
            elif k == 1:
                s = r.cusp_switches[0]
                if s in flagged:
                    flagged.discard(s)
                else:
                    violations.append("unpunctured monogon (cusp at switch %d)" % s)
            else:
                violations.append(
                    "region with %d cusps (only trigons and once-punctured monogons allowed)" % k
                )
        for s in sorted(flagged):
            violations.append("puncture-region names switch %d matching no monogon" % s)
        if len(self.puncture_switches) != self.punctures:
            violations.append(
                "%d puncture-region flags for %d punctures"
                % (len(self.puncture_switches), self.punctures)
            )
        # Euler characteristic with punctures restored: monogons count as
        # annuli (chi = 0), trigons as disks.
        chi = self.num_switches - self.num_branches + n_trigons
        expected = 2 - 2 * self.genus - self.punctures
        if chi == expected:
            pass
        else:
            violations.append(
                "euler characteristic %d != 2-2g-m = %d" % (chi, expected)
            )
        return violations

    def is_valid(self):
        return not self.validate()

    def require_valid(self):
        report = self.validate()
        if report:
            raise InvalidTrackError("invalid track: " + "; ".join(report), report)

    def require_operable(self):
        """The weaker precondition shared by the cone/splitting operations:
        a proper slot system on a connected track (census violations are
        tolerated so that degenerate test tracks remain usable)."""
        if not self.has_proper_slots():
            raise InvalidTrackError(
                "improper slot assignment: " + "; ".join(self.validate()), self.validate()
            )
        if not self.is_connected():
            raise InvalidTrackError("track is disconnected", ["track is disconnected"])


def _split_sides(boundary, cusp_flags):
    """Cut the cyclic boundary walk at its cusps.

    Returns one tuple of branch ids per cusp (the smooth side *after* that
    cusp in walk order); a cuspless boundary is a single closed side.
    """
    n = len(boundary)
    if not any(cusp_flags):
        return [tuple(b for b, _ in boundary)]
    start = next(i for i in range(n) if cusp_flags[i]) + 1
    sides = []
    side = []
    for j in range(n):
        i = (start + j) % n
        side.append(boundary[i][0])
        if cusp_flags[i]:
            sides.append(tuple(side))
            side = []
    return sides


def relabel_branches(track, perm):
    """The same track with branch ``b`` renamed ``perm[b]`` (a bijection)."""
    if sorted(perm) != list(range(track.num_branches)):
        raise StructureError("perm is not a bijection on branches")
    new = [None] * track.num_branches
    for b, rec in enumerate(track.branches):
        new[perm[b]] = rec
    return TrainTrack(
        track.genus,
        track.punctures,
        track.num_switches,
        new,
        track.puncture_switches,
    )


def relabel_switches(track, perm):
    """The same track with switch ``s`` renamed ``perm[s]`` (a bijection)."""
    if sorted(perm) != list(range(track.num_switches)):
        raise StructureError("perm is not a bijection on switches")
    return TrainTrack(
        track.genus,
        track.punctures,
        track.num_switches,
        [((perm[s0], sl0), (perm[s1], sl1)) for (s0, sl0), (s1, sl1) in track.branches],
        [perm[s] for s in track.puncture_switches],
    )
