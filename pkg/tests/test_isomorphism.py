r"""
Track isomorphism and the canonical form.

The canonical form must be a complete invariant for relabeling: any
shuffle of switch or branch names leaves it fixed, and two tracks are
isomorphic exactly when their encodings agree.  The bijections returned
are checked to transport branches slot by slot, and measure transport
along an isomorphism must preserve switch conditions.
"""

import random

import pytest

from tracksurf import (
    MeasureMismatchError,
    canonical_form,
    catalog,
    relabel_branches,
    relabel_switches,
    split,
    tracks_isomorphic,
    vertex_cycles,
)
from tracksurf.isomorphism import TrackIsomorphism
from tracksurf.splitting import LEFT, RIGHT

NAMES = [
    "punctured-torus",
    "four-punctured-sphere",
    "genus2",
    "twice-punctured-torus",
]


def shuffled(track, rng):
    bperm = list(range(track.num_branches))
    sperm = list(range(track.num_switches))
    rng.shuffle(bperm)
    rng.shuffle(sperm)
    return relabel_switches(relabel_branches(track, bperm), sperm)


@pytest.mark.parametrize("name", NAMES)
def test_canonical_form_is_relabel_invariant(name):
    rng = random.Random(hash(name) & 0xFFFF)
    t = catalog.CATALOG[name]()
    enc, _ = canonical_form(t)
    for _ in range(5):
        u = shuffled(t, rng)
        enc2, _ = canonical_form(u)
        assert enc2 == enc


@pytest.mark.parametrize("name", NAMES)
def test_relabeled_tracks_are_isomorphic(name):
    rng = random.Random(len(name))
    t = catalog.CATALOG[name]()
    u = shuffled(t, rng)
    iso = tracks_isomorphic(t, u)
    assert iso is not None
    iso.verify()
    # slots are preserved verbatim under the bijection
    for b, ((s0, slot0), (s1, slot1)) in enumerate(t.branches):
        mapped = u.endpoints(iso.branch_map[b])
        expected = ((iso.switch_map[s0], slot0), (iso.switch_map[s1], slot1))
        assert mapped in (expected, expected[::-1])


def test_distinct_catalog_tracks_are_not_isomorphic():
    tracks = [catalog.CATALOG[name]() for name in NAMES]
    for i, a in enumerate(tracks):
        for b in tracks[i + 1 :]:
            assert tracks_isomorphic(a, b) is None


def test_children_of_opposite_splits_differ():
    t = catalog.four_punctured_sphere_track()
    right = split(t, 0, RIGHT).child
    left = split(t, 0, LEFT).child
    assert tracks_isomorphic(right, left) is None
    # but each child is isomorphic to itself relabeled
    u = shuffled(right, random.Random(3))
    assert tracks_isomorphic(right, u) is not None


def test_identity_compose_invert():
    t = catalog.genus2_track()
    ident = TrackIsomorphism.identity(t)
    ident.verify()
    u = shuffled(t, random.Random(9))
    iso = tracks_isomorphic(t, u)
    inv = iso.invert()
    inv.verify()
    round_trip = iso.compose(inv)
    round_trip.verify()
    assert round_trip.switch_map == ident.switch_map
    assert round_trip.branch_map == ident.branch_map


def test_verify_rejects_slot_breaking_maps():
    t = catalog.punctured_torus_track()
    ident = TrackIsomorphism.identity(t)
    bad_branch = list(ident.branch_map)
    bad_branch[0], bad_branch[1] = bad_branch[1], bad_branch[0]
    broken = TrackIsomorphism(t, t, ident.switch_map, tuple(bad_branch))
    with pytest.raises(Exception):
        broken.verify()


def test_apply_measure_transports_cone_points():
    t = catalog.four_punctured_sphere_track()
    u = shuffled(t, random.Random(4))
    iso = tracks_isomorphic(t, u)
    for v in vertex_cycles(t):
        carried = iso.apply_measure(v)
        assert carried.track == u
        assert carried.is_valid()
        # transported entrywise along the branch bijection
        for b in range(t.num_branches):
            assert carried.weights[iso.branch_map[b]] == v.weights[b]


def test_apply_measure_rejects_foreign_weights():
    t = catalog.four_punctured_sphere_track()
    u = shuffled(t, random.Random(5))
    iso = tracks_isomorphic(t, u)
    foreign = vertex_cycles(catalog.genus2_track())[0]
    with pytest.raises(MeasureMismatchError):
        iso.apply_measure(foreign)
