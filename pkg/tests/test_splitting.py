r"""
Split moves, measure transport, and driven sequences.

The transport test is the load-bearing one: a thousand randomized
(track, measure, branch) trials check that projecting the lifted measure
returns the original exactly, and the split-branch weight relation
``parent(e) = child(e) + child(b) + child(d)`` (losers ``b, d``, a loser
loop counting twice) is re-evaluated from the raw record rather than
through the library's own projection.

The once-punctured-torus track is the degenerate end of the theory: the
functional comparing its quad weights vanishes identically on the
solution space, so *every* measure ties at the first full split.  The
four-punctured-sphere track carries the actual dynamics: a Fibonacci
measure drives a hundred exact steps, and the golden eigen-measure runs
into a two-step periodic orbit with expansion factor golden-ratio
squared.
"""

import random
from fractions import Fraction

import pytest

from tracksurf import (
    GOLDEN,
    LEFT,
    NonGenericMeasureError,
    NotSplittableError,
    RIGHT,
    catalog,
    detect_periodicity,
    drive_sequence,
    full_split,
    in_cylinder,
    lift_measure,
    project_measure,
    split,
    transverse_kernel_basis,
    vertex_cycles,
)
from tracksurf.cone import TRANSVERSE, BranchWeights
from tracksurf.splitting import UNDETERMINED

RECURRENT = [
    "punctured-torus",
    "four-punctured-sphere",
    "genus2",
    "twice-punctured-torus",
]


def cone_point(track, cycles, rng, top=12):
    """A random integral point of the transverse cone."""
    coeffs = [rng.randrange(0, top) for _ in cycles]
    if not any(coeffs):
        coeffs[rng.randrange(len(coeffs))] = 1
    w = [
        sum(c * v[i] for c, v in zip(coeffs, cycles))
        for i in range(track.num_branches)
    ]
    return BranchWeights(track, TRANSVERSE, w)


# -- a single split -----------------------------------------------------------


def test_split_record_anatomy():
    t = catalog.four_punctured_sphere_track()
    rec = split(t, 0, RIGHT)
    assert rec.parent is t
    assert rec.large_branch == 0
    assert rec.direction == RIGHT
    assert len(rec.quad) == 4
    assert set(rec.winners).isdisjoint(rec.losers)
    assert len(rec.winners) == len(rec.losers) == 2
    assert rec.correspondence == tuple(range(t.num_branches))
    assert rec.child.is_valid()


@pytest.mark.parametrize("name", RECURRENT)
def test_children_of_valid_tracks_are_valid(name):
    t = catalog.CATALOG[name]()
    for e in t.large_branches():
        for direction in (RIGHT, LEFT):
            child = split(t, e, direction).child
            assert child.validate() == []
            assert child.num_switches == t.num_switches
            assert child.num_branches == t.num_branches
            assert (child.genus, child.punctures) == (t.genus, t.punctures)


def test_split_rejects_non_large_branches():
    t = catalog.four_punctured_sphere_track()
    small = next(
        b for b in range(t.num_branches) if t.branch_kind(b) != "large"
    )
    with pytest.raises(NotSplittableError):
        split(t, small, RIGHT)


def test_split_rejects_bad_direction():
    t = catalog.four_punctured_sphere_track()
    with pytest.raises(ValueError):
        split(t, 0, "Sideways")


# -- measure transport --------------------------------------------------------


def test_lift_then_project_is_the_identity():
    rng = random.Random(20260815)
    tracks = []
    for name in RECURRENT:
        t = catalog.CATALOG[name]()
        tracks.append((t, [v.weights for v in vertex_cycles(t)]))

    checked = 0
    while checked < 1000:
        t, cycles = tracks[rng.randrange(len(tracks))]
        mu = cone_point(t, cycles, rng)
        e = rng.choice(t.large_branches())
        lifted = lift_measure(t, e, mu)
        rec_r = split(t, e, RIGHT)
        a, b, c, d = rec_r.quad
        if lifted is UNDETERMINED:
            # ties happen exactly when the competing quad weights agree
            assert mu.weights[a] == mu.weights[d]
            continue
        direction, child_mu = lifted
        delta = mu.weights[a] - mu.weights[d]
        assert delta != 0
        assert direction == (RIGHT if delta > 0 else LEFT)
        rec = split(t, e, direction)

        # the library's own inverse
        back = project_measure(rec, child_mu)
        assert back.weights == mu.weights
        assert back.exact

        # independent re-evaluation from the record: off the split branch
        # nothing moves, and on it the parent weight is the diagonal plus
        # the loser weights (a loser loop counts twice)
        for f in range(t.num_branches):
            if f != e:
                assert child_mu.weights[f] == mu.weights[f]
        loser_sum = sum(mu.weights[br] for br, _ in rec.losers)
        assert child_mu.weights[e] == mu.weights[e] - loser_sum
        assert child_mu.is_valid()
        checked += 1


def test_lift_tie_on_a_constructed_measure():
    # on this track the quad at branch 0 is (1, 1, 3, 2) and the second
    # vertex cycle gives branches 1 and 2 equal weight, so any multiple
    # of it ties the split
    t = catalog.four_punctured_sphere_track()
    a, _, _, d = split(t, 0, RIGHT).quad
    v2 = vertex_cycles(t)[1].weights
    mu = BranchWeights(t, TRANSVERSE, [3 * x for x in v2])
    assert mu.weights[a] == mu.weights[d]
    assert lift_measure(t, 0, mu) is UNDETERMINED


# -- the once-punctured torus wall ----------------------------------------------


def test_punctured_torus_quad_functional_vanishes_on_the_cone():
    # the functional mu(a) - mu(d) deciding the split at the large branch
    # is identically zero on the solution space, so no measure is generic
    t = catalog.punctured_torus_track()
    a, b, c, d = split(t, 0, RIGHT).quad
    for vec in transverse_kernel_basis(t):
        assert vec[a] - vec[d] == 0


def test_punctured_torus_every_drive_dies_immediately():
    t = catalog.punctured_torus_track()
    cycles = [v.weights for v in vertex_cycles(t)]
    for i in range(1, 7):
        for j in range(1, 7):
            w = [i * x + j * y for x, y in zip(*cycles)]
            mu = BranchWeights(t, TRANSVERSE, w)
            with pytest.raises(NonGenericMeasureError) as exc:
                drive_sequence(t, mu, 5)
            assert exc.value.step == 1
            assert exc.value.branch == 0


def test_catalog_measure_dies_with_step_attached():
    t = catalog.punctured_torus_track()
    with pytest.raises(NonGenericMeasureError) as exc:
        drive_sequence(t, catalog.punctured_torus_measure(), 10)
    assert exc.value.step <= 3


# -- driven sequences -----------------------------------------------------------


def test_hundred_step_drive_is_exact():
    t = catalog.four_punctured_sphere_track()
    mu = catalog.four_punctured_sphere_drive_measure()
    seq = drive_sequence(t, mu, 100)
    assert len(seq.steps) == 101
    assert seq.steps[0].directions == {}
    assert seq.steps[0].ratio == 1
    for step in seq.steps:
        assert step.measure.exact
        assert step.measure.total() == 1
        assert step.measure.is_valid()
        assert step.track.is_valid()
    for step in seq.steps[1:]:
        assert step.directions  # every full split resolves some branch
        assert 1 <= step.ratio <= 2


def test_full_split_ratio_from_raw_totals():
    t = catalog.four_punctured_sphere_track()
    mu = catalog.four_punctured_sphere_drive_measure()
    child, w, ratio = full_split(t, mu)
    assert w.total() == 1 and ratio >= 1

    # independent evaluation: the raw (unnormalized) child total is the
    # parent total minus the loser weights lost at each split branch
    lost = Fraction(0)
    for e in t.large_branches():
        direction, _ = lift_measure(t, e, mu)
        rec = split(t, e, direction)
        lost += sum(mu.weights[br] for br, _ in rec.losers)
    assert ratio == Fraction(mu.total()) / (mu.total() - lost)

    seq = drive_sequence(t, mu, 1)
    assert seq.steps[1].track.branches == child.branches
    assert seq.steps[1].measure.weights == w.weights
    assert seq.steps[1].ratio == ratio


def test_golden_measure_is_periodic():
    t = catalog.four_punctured_sphere_track()
    gold = catalog.four_punctured_sphere_golden_measure()
    seq = drive_sequence(t, gold, 12)
    hit = detect_periodicity(seq)
    assert hit is not None
    i, j, iso = hit
    assert (i, j) == (4, 6)
    iso.verify()  # raises on any defect
    # the isomorphism carries measure i to measure j on the nose
    carried = iso.apply_measure(seq.steps[i].measure)
    assert carried.weights == seq.steps[j].measure.weights
    # expansion over one period is the square of the golden ratio
    expansion = seq.steps[i + 1].ratio * seq.steps[j].ratio
    assert expansion == GOLDEN * GOLDEN


def test_golden_weights_are_an_eigenvector():
    t = catalog.four_punctured_sphere_track()
    gold = catalog.four_punctured_sphere_golden_measure()
    cycles = [v.weights for v in vertex_cycles(t)]
    # gold = a*v1 + b*v2 with slope a/b the golden ratio
    a = 2 * GOLDEN
    b = 2
    for g, x, y in zip(gold.weights, *cycles):
        assert g == a * x + b * y


def test_in_cylinder_classifies_shadowing():
    t = catalog.four_punctured_sphere_track()
    gold = catalog.four_punctured_sphere_golden_measure()
    gseq = drive_sequence(t, gold, 20)
    cycles = [v.weights for v in vertex_cycles(t)]
    v1, v2 = cycles

    def combo(a, b):
        return BranchWeights(
            t, TRANSVERSE, [Fraction(a * x + b * y) for x, y in zip(v1, v2)]
        )

    # the golden measure follows its own cylinder
    assert in_cylinder(gseq, gold)
    # a nearby convergent shadows the start of the orbit...
    assert in_cylinder(gseq, combo(13, 8), 3)
    # ...and a track can serve as the target instead of a step index
    assert in_cylinder(gseq, combo(13, 8), gseq.steps[3].track)
    # slopes on the wrong side of a wall leave the cylinder
    assert not in_cylinder(gseq, combo(1, 2))
    assert not in_cylinder(gseq, combo(3, 1))
    # running out of continued-fraction quotients raises the tie error
    with pytest.raises(NonGenericMeasureError):
        in_cylinder(gseq, combo(5, 3))


def test_drive_measure_shadows_golden():
    # the Fibonacci measure is a convergent of the golden slope, so the two
    # drives agree for many steps before the rational slope dies
    t = catalog.four_punctured_sphere_track()
    seq = drive_sequence(t, catalog.four_punctured_sphere_drive_measure(), 20)
    assert in_cylinder(seq, catalog.four_punctured_sphere_golden_measure())
