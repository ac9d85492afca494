r"""
Combinatorial isomorphism of train tracks.

Two tracks are isomorphic when a bijection of switches and branches
carries one slot assignment onto the other with every slot label kept
(large to large, small-right to small-right) and matches the puncture
flags.  Since the three slots of a switch are totally ordered, a
breadth-first traversal that explores slots in their cyclic order visits
the whole track in a forced order once the start switch is fixed; taking
the lexicographically smallest traversal encoding over all start switches
yields a canonical form, and two tracks are isomorphic iff their
canonical forms agree.  This replaces general graph-isomorphism search,
which the rigid slot structure makes unnecessary.
"""

from .track import TrainTrack, SLOTS
from .cone import BranchWeights
from .errors import InternalInconsistencyError, MeasureMismatchError


class TrackIsomorphism(object):
    r"""
    A structure-preserving bijection between two train tracks.

    ``switch_map[s]`` is the target switch of source switch ``s`` and
    ``branch_map[b]`` the target branch of source branch ``b``; slots are
    preserved verbatim.
    """

    __slots__ = ("source", "target", "switch_map", "branch_map")

    def __init__(self, source, target, switch_map, branch_map):
        self.source = source
        self.target = target
        self.switch_map = tuple(switch_map)
        self.branch_map = tuple(branch_map)
        if sorted(self.switch_map) != list(range(source.num_switches)):
            raise ValueError("switch map is not a permutation")
        if sorted(self.branch_map) != list(range(source.num_branches)):
            raise ValueError("branch map is not a permutation")

    def __repr__(self):
        return "TrackIsomorphism(switches=%r, branches=%r)" % (
            list(self.switch_map),
            list(self.branch_map),
        )

    def __eq__(self, other):
        return (
            isinstance(other, TrackIsomorphism)
            and self.source == other.source
            and self.target == other.target
            and self.switch_map == other.switch_map
            and self.branch_map == other.branch_map
        )

    def __ne__(self, other):
        return not self == other

    def verify(self):
        r"""
        Check that the bijection preserves all structure; return self.

        Raises an internal-inconsistency error otherwise — callers use
        this to re-check certificates rather than trust them.
        """
        s, t = self.source, self.target
        if (s.genus, s.punctures) != (t.genus, t.punctures):
            raise InternalInconsistencyError("isomorphism across surface kinds")
        for b, (d0, d1) in enumerate(s.branches):
            mapped = {
                (self.switch_map[d0[0]], d0[1]),
                (self.switch_map[d1[0]], d1[1]),
            }
            image = set(t.branches[self.branch_map[b]])
            if mapped != image:
                raise InternalInconsistencyError(
                    "branch %d is not carried onto branch %d"
                    % (b, self.branch_map[b])
                )
        flags = {self.switch_map[x] for x in s.puncture_switches}
        if flags != set(t.puncture_switches):
            raise InternalInconsistencyError("puncture flags not preserved")
        return self

    @classmethod
    def identity(cls, track):
        return cls(
            track,
            track,
            range(track.num_switches),
            range(track.num_branches),
        )

    def invert(self):
        sw = [0] * len(self.switch_map)
        br = [0] * len(self.branch_map)
        for i, j in enumerate(self.switch_map):
            sw[j] = i
        for i, j in enumerate(self.branch_map):
            br[j] = i
        return TrackIsomorphism(self.target, self.source, sw, br)

    def compose(self, other):
        r"""The isomorphism ``other . self`` (first self, then other)."""
        if other.source != self.target:
            raise ValueError("isomorphisms do not chain")
        return TrackIsomorphism(
            self.source,
            other.target,
            [other.switch_map[j] for j in self.switch_map],
            [other.branch_map[j] for j in self.branch_map],
        )

    def apply_measure(self, weights):
        r"""Push a BranchWeights on the source forward to the target."""
        if weights.track != self.source:
            raise MeasureMismatchError("weights do not live on the source track")
        out = [None] * len(weights.weights)
        for b, w in enumerate(weights.weights):
            out[self.branch_map[b]] = w
        return BranchWeights(self.target, weights.kind, out)


def _bfs_encoding(track, start, dart_map):
    """Traversal encoding and switch relabeling for one start switch."""
    new_id = {start: 0}
    order = [start]
    i = 0
    enc = []
    while i < len(order):
        u = order[i]
        i += 1
        row = []
        for slot in SLOTS:
            v, vslot = dart_map[(u, slot)]
            if v not in new_id:
                new_id[v] = len(order)
                order.append(v)
            row.append((new_id[v], vslot))
        enc.append(tuple(row))
    flags = tuple(sorted(new_id[s] for s in track.puncture_switches))
    return (tuple(enc), flags), new_id


def canonical_form(track):
    r"""
    The canonical traversal encoding of a track, with the relabeling that
    realizes it.  Returns ``(encoding, switch relabel dict)``.
    """
    track.require_operable()
    dm = {}
    for d0, d1 in track.branches:
        dm[d0] = d1
        dm[d1] = d0
    best = None
    best_perm = None
    for s in range(track.num_switches):
        enc, perm = _bfs_encoding(track, s, dm)
        if best is None or enc < best:
            best, best_perm = enc, perm
    return best, best_perm


def tracks_isomorphic(t1, t2):
    r"""
    A TrackIsomorphism from ``t1`` to ``t2``, or None.

    Decided by comparing canonical forms; the returned bijection is
    re-verified before being handed out.
    """
    if (t1.genus, t1.punctures, t1.num_switches, t1.num_branches) != (
        t2.genus,
        t2.punctures,
        t2.num_switches,
        t2.num_branches,
    ):
        return None
    enc1, perm1 = canonical_form(t1)
    enc2, perm2 = canonical_form(t2)
    if enc1 != enc2:
        return None
    inv2 = {c: s for s, c in perm2.items()}
    switch_map = [inv2[perm1[s]] for s in range(t1.num_switches)]

    dart_to_branch = {}
    for b, (d0, d1) in enumerate(t2.branches):
        dart_to_branch[d0] = b
        dart_to_branch[d1] = b
    branch_map = []
    for d0, d1 in t1.branches:
        m0 = (switch_map[d0[0]], d0[1])
        m1 = (switch_map[d1[0]], d1[1])
        b0, b1 = dart_to_branch[m0], dart_to_branch[m1]
        if b0 != b1:
            raise InternalInconsistencyError(
                "canonical forms agree but darts map across branches"
            )
        branch_map.append(b0)
    return TrackIsomorphism(t1, t2, switch_map, branch_map).verify()
