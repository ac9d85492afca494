r"""
Combinatorics of trivalent train tracks.

The region census is the heart of the validator, so it is exercised
directly: every catalog track's complementary regions are recomputed and
compared against hand counts, and the slot involution/rotation pair is
checked for its defining properties.  Relabeling darts or branches must
never change any censused quantity.
"""

import itertools
import random

import pytest

from tracksurf import (
    InvalidTrackError,
    LARGE,
    SLOTS,
    SMALL_LEFT,
    SMALL_RIGHT,
    TrainTrack,
    catalog,
    relabel_branches,
    relabel_switches,
)

VALID_NAMES = [
    "punctured-torus",
    "four-punctured-sphere",
    "genus2",
    "twice-punctured-torus",
    "overwound-trigon",
]


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_catalog_tracks_are_connected_with_proper_slots(name):
    t = catalog.CATALOG[name]()
    assert t.has_proper_slots()
    assert t.is_connected()


@pytest.mark.parametrize("name", VALID_NAMES)
def test_catalog_tracks_validate(name):
    t = catalog.CATALOG[name]()
    assert t.validate() == []
    assert t.is_valid()
    t.require_valid()  # must not raise


def test_census_counts():
    # (switches, branches, monogons, trigons) recomputed from scratch
    expected = {
        "punctured-torus": (4, 6, 1, 1),
        "four-punctured-sphere": (4, 6, 4, 0),
        "genus2": (12, 18, 0, 4),
        "twice-punctured-torus": (8, 12, 2, 2),
    }
    for name, (sw, br, mono, tri) in expected.items():
        t = catalog.CATALOG[name]()
        assert (t.num_switches, t.num_branches) == (sw, br)
        assert len(t.monogons()) == mono
        assert len(t.trigons()) == tri
        # every region of a valid track is a trigon or punctured monogon
        assert len(t.regions) == mono + tri


def test_euler_characteristic_from_census():
    for name in VALID_NAMES:
        t = catalog.CATALOG[name]()
        chi = t.num_switches - t.num_branches + len(t.trigons())
        assert chi == 2 - 2 * t.genus - t.punctures


def test_branch_counts_are_extremal():
    # a trivalent track has 3s = 2b, and a complete one has 6g-6+2m+... slots
    for name in sorted(catalog.CATALOG):
        t = catalog.CATALOG[name]()
        assert 3 * t.num_switches == 2 * t.num_branches


def test_alpha_is_a_fixed_point_free_involution():
    for name in VALID_NAMES:
        t = catalog.CATALOG[name]()
        for d in t.darts():
            a = t.alpha(d)
            assert a != d
            assert t.alpha(a) == d


def test_sigma_is_a_three_cycle_on_each_switch():
    t = catalog.punctured_torus_track()
    for d in t.darts():
        d1 = t.sigma(d)
        d2 = t.sigma(d1)
        d3 = t.sigma(d2)
        assert d1[0] == d[0] and d1 != d
        assert d2 != d and d2 != d1
        assert d3 == d
    assert {d[1] for d in t.darts()} == set(SLOTS)


def test_regions_partition_darts():
    for name in VALID_NAMES:
        t = catalog.CATALOG[name]()
        steps = sum(len(r.boundary) for r in t.regions)
        assert steps == 2 * t.num_branches  # each branch is walked once per end


def test_cusps_are_small_right_turns():
    # a corner of a region is a cusp exactly when the incoming end sits in SR
    t = catalog.punctured_torus_track()
    total_cusps = sum(r.cusp_count for r in t.regions)
    n_sr = sum(1 for (d0, d1) in t.branches for d in (d0, d1) if d[1] == SMALL_RIGHT)
    assert total_cusps == n_sr


def test_monogon_by_cusp_indexes_punctures():
    t = catalog.four_punctured_sphere_track()
    by_cusp = t.monogon_by_cusp()
    assert set(by_cusp) == set(t.puncture_switches)
    assert len(by_cusp) == t.punctures


def test_branch_kinds():
    t = catalog.punctured_torus_track()
    kinds = [t.branch_kind(b) for b in range(t.num_branches)]
    assert kinds.count("large") == len(t.large_branches())
    for b in t.large_branches():
        d0, d1 = t.endpoints(b)
        assert d0[1] == LARGE and d1[1] == LARGE


def test_large_branch_census():
    expected = {
        "punctured-torus": [0],
        "four-punctured-sphere": [0],
        "genus2": [0, 7, 10, 12],
        "twice-punctured-torus": [0, 8],
    }
    for name, larges in expected.items():
        assert catalog.CATALOG[name]().large_branches() == larges


# -- broken fixtures ---------------------------------------------------------


def test_dumbbell_fails_validation_but_is_operable():
    t = catalog.dumbbell_track()
    report = t.validate()
    assert report  # nonempty violation list
    assert any("region with 0 cusps" in v for v in report)
    assert not t.is_valid()
    with pytest.raises(InvalidTrackError):
        t.require_valid()
    t.require_operable()  # proper slots + connected is all this needs


def test_zero_cone_track_violations():
    t = catalog.zero_cone_track()
    report = t.validate()
    assert any("unpunctured monogon" in v for v in report)
    assert any("euler characteristic" in v for v in report)


def test_overwound_trigon_is_valid():
    # validity is purely combinatorial; the defect of this track is measure-
    # theoretic (no positive tangential measure) and shows up in the cone tests
    t = catalog.overwound_trigon_track()
    assert t.validate() == []


def test_missing_large_slot_is_reported():
    # loop both ends of a branch into small slots at one switch
    t = TrainTrack(
        1,
        1,
        2,
        [
            ((0, "SR"), (0, "SL")),
            ((0, "L"), (1, "L")),
            ((1, "SR"), (1, "SL")),
        ],
    )
    assert t.has_proper_slots()
    assert not t.is_valid()


def test_duplicate_slot_is_reported():
    t = TrainTrack(
        1,
        1,
        2,
        [
            ((0, "L"), (1, "L")),
            ((0, "SR"), (1, "SL")),
            ((0, "SR"), (1, "SR")),  # slot (0, SR) used twice, (0, SL) never
        ],
    )
    assert not t.has_proper_slots()
    report = t.validate()
    assert any("slot SR used 2 times" in v for v in report)
    with pytest.raises(InvalidTrackError):
        t.require_operable()


def test_disconnected_track_is_reported():
    # two disjoint copies of the punctured-torus track
    base = catalog.punctured_torus_track()
    n = base.num_switches
    branches = list(base.branches) + [
        (((s0 + n), slot0), ((s1 + n), slot1))
        for ((s0, slot0), (s1, slot1)) in base.branches
    ]
    t = TrainTrack(2, 2, 2 * n, branches, (3, 3 + n))
    assert not t.is_connected()
    assert "track is disconnected" in t.validate()
    with pytest.raises(InvalidTrackError):
        t.require_operable()


# -- relabeling invariance -----------------------------------------------------


def census(t):
    return (
        t.num_switches,
        t.num_branches,
        len(t.monogons()),
        len(t.trigons()),
        sorted(r.cusp_count for r in t.regions),
        t.is_valid(),
    )


def test_relabel_branches_preserves_census():
    rng = random.Random(11)
    for name in VALID_NAMES:
        t = catalog.CATALOG[name]()
        perm = list(range(t.num_branches))
        rng.shuffle(perm)
        u = relabel_branches(t, perm)
        assert census(u) == census(t)
        # the branch perm[b] of u is the branch b of t
        for b in range(t.num_branches):
            assert u.endpoints(perm[b]) == t.endpoints(b)


def test_relabel_switches_preserves_census():
    rng = random.Random(13)
    for name in VALID_NAMES:
        t = catalog.CATALOG[name]()
        perm = list(range(t.num_switches))
        rng.shuffle(perm)
        u = relabel_switches(t, perm)
        assert census(u) == census(t)
        assert sorted(u.puncture_switches) == sorted(perm[s] for s in t.puncture_switches)


def test_relabel_rejects_non_bijections():
    t = catalog.punctured_torus_track()
    from tracksurf import StructureError

    with pytest.raises(StructureError):
        relabel_branches(t, [0] * t.num_branches)
    with pytest.raises(StructureError):
        relabel_switches(t, list(range(t.num_switches - 1)))


def test_constructor_rejects_malformed_input():
    with pytest.raises((ValueError, TypeError)):
        TrainTrack(1, 1, 0, [])  # no switches at all
    with pytest.raises((ValueError, TypeError)):
        TrainTrack(1, 1, 2, [((0, "L"), (5, "L"))])  # switch out of range
    with pytest.raises((ValueError, TypeError)):
        TrainTrack(1, 1, 2, [((0, "L"), (1, "X"))])  # no such slot
