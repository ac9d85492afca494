r"""
Plain-text file formats.

Three line-oriented formats, each opened by a versioned magic line so old
readers reject files they do not understand:

- ``.ttk`` — a train track, optionally with a measure::

      ttk 1
      surface <genus> <punctures>
      switches <n>
      branch <switch> <slot> <switch> <slot>      # one line per branch
      puncture-region <switch>                    # one line per puncture
      weights <transverse|tangential> <w> ...     # optional

- ``.fsf`` — a flat surface::

      fsf 1
      polygon <x0> <y0> <x1> <y1> ...             # one line per polygon
      glue <p> <e> <q> <f> <translation|halfturn>

- ``.ssl`` — the log of a full splitting sequence::

      ssl 1
      step <i> <directions|-> <ratio> <w> ...

  where directions lists the split direction at each parent large branch
  as ``branch:R`` or ``branch:L``, comma separated in increasing branch
  order (``-`` when a step split nothing, i.e. the initial state).

Numbers are written as the simplest of: integer ``a``, fraction ``p/q``,
golden-field element ``a+br5`` (meaning a + b*sqrt(5), with rational parts),
or a float ``repr``.  Serializers emit a canonical form, so equal inputs
produce byte-identical files; parsers raise :class:`~tracksurf.errors.ParseError`
with the offending 1-based line number.  Lines starting with ``#`` and blank
lines are ignored.
"""

import re
from fractions import Fraction

from .cone import KINDS, BranchWeights
from .errors import ParseError
from .flatsurface import GLUING_KINDS, FlatSurface
from .quadfield import QuadNumber
from .splitting import LEFT, RIGHT
from .track import SLOTS, TrainTrack

_DIRECTION_CODE = {RIGHT: "R", LEFT: "L"}
_CODE_DIRECTION = {"R": RIGHT, "L": LEFT}

_RAT = r"-?\d+(?:/\d+)?"
_QUAD_RE = re.compile(r"^(%s)([+-]\d+(?:/\d+)?)r5$" % _RAT)
_RAT_RE = re.compile(r"^%s$" % _RAT)


def _parse_rat(tok):
    if "/" in tok:
        p, q = tok.split("/")
        return Fraction(int(p), int(q))
    return int(tok)


def parse_number(tok, line=0):
    r"""
    Parse a number token: integer, ``p/q``, ``a+br5``, or a float literal.
    """
    m = _QUAD_RE.match(tok)
    if m:
        return QuadNumber(_parse_rat(m.group(1)), _parse_rat(m.group(2)), 5)
    if _RAT_RE.match(tok):
        return _parse_rat(tok)
    try:
        val = float(tok)
    except ValueError:
        raise ParseError(line, "bad number token %r" % (tok,)) from None
    if val != val or val in (float("inf"), float("-inf")):
        raise ParseError(line, "non-finite number token %r" % (tok,))
    return val


def _rat_token(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def serialize_number(x):
    r"""
    The canonical token for a number: the simplest grammar class whose
    value equals ``x`` (a golden integer with b = 0 prints as a rational).
    """
    if isinstance(x, QuadNumber):
        if x.D != 5:
            raise ValueError("only Q(sqrt 5) weights have a file syntax, got D=%d" % x.D)
        if x.b == 0:
            return _rat_token(x.a)
        b = _rat_token(abs(x.b))
        return "%s%s%sr5" % (_rat_token(x.a), "-" if x.b < 0 else "+", b)
    if isinstance(x, bool):
        raise ValueError("bool is not a weight")
    if isinstance(x, (int, Fraction)):
        return _rat_token(x)
    if isinstance(x, float):
        return repr(x)
    raise ValueError("cannot serialize %r as a number" % (x,))


def _lines(text):
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield i, stripped.split()


def _expect_magic(items, name):
    try:
        i, words = next(items)
    except StopIteration:
        raise ParseError(0, "empty %s file" % name) from None
    if words[0] != name:
        raise ParseError(i, "expected magic line %r, got %r" % (name, " ".join(words)))
    if words[1:] != ["1"]:
        raise ParseError(i, "unsupported %s version %r" % (name, " ".join(words[1:])))


def _int(tok, i, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(i, "bad %s %r" % (what, tok)) from None


# -- train tracks (.ttk) -------------------------------------------------


def serialize_track(track, weights=None):
    r"""
    The ``.ttk`` text for a track, with its measure when one is given.
    """
    out = ["ttk 1"]
    out.append("surface %d %d" % (track.genus, track.punctures))
    out.append("switches %d" % track.num_switches)
    for (s0, a0), (s1, a1) in track.branches:
        out.append("branch %d %s %d %s" % (s0, a0, s1, a1))
    for s in sorted(track.puncture_switches):
        out.append("puncture-region %d" % s)
    if weights is not None:
        if weights.track != track:
            raise ValueError("weights belong to a different track")
        out.append(
            "weights %s %s"
            % (weights.kind, " ".join(serialize_number(w) for w in weights.weights))
        )
    return "\n".join(out) + "\n"


def parse_track(text):
    r"""
    Parse ``.ttk`` text into ``(track, weights-or-None)``.
    """
    items = _lines(text)
    _expect_magic(items, "ttk")
    surface = None
    num_switches = None
    branches = []
    punctures = []
    weights = None
    for i, words in items:
        key, args = words[0], words[1:]
        if key == "surface":
            if surface is not None:
                raise ParseError(i, "duplicate surface line")
            if len(args) != 2:
                raise ParseError(i, "surface line needs genus and punctures")
            surface = (_int(args[0], i, "genus"), _int(args[1], i, "puncture count"))
        elif key == "switches":
            if num_switches is not None:
                raise ParseError(i, "duplicate switches line")
            if len(args) != 1:
                raise ParseError(i, "switches line needs one count")
            num_switches = _int(args[0], i, "switch count")
        elif key == "branch":
            if len(args) != 4:
                raise ParseError(i, "branch line needs switch slot switch slot")
            if args[1] not in SLOTS or args[3] not in SLOTS:
                raise ParseError(i, "unknown slot in %r" % (" ".join(args),))
            branches.append(
                (
                    (_int(args[0], i, "switch"), args[1]),
                    (_int(args[2], i, "switch"), args[3]),
                )
            )
        elif key == "puncture-region":
            if len(args) != 1:
                raise ParseError(i, "puncture-region line needs one switch")
            punctures.append(_int(args[0], i, "switch"))
        elif key == "weights":
            if weights is not None:
                raise ParseError(i, "duplicate weights line")
            if not args or args[0] not in KINDS:
                raise ParseError(i, "weights line needs a kind (%s)" % "/".join(KINDS))
            weights = (i, args[0], [parse_number(t, i) for t in args[1:]])
        else:
            raise ParseError(i, "unknown directive %r" % (key,))
    if surface is None:
        raise ParseError(0, "missing surface line")
    if num_switches is None:
        raise ParseError(0, "missing switches line")
    try:
        track = TrainTrack(surface[0], surface[1], num_switches, branches, punctures)
    except ValueError as err:
        raise ParseError(0, str(err)) from None
    measure = None
    if weights is not None:
        i, kind, vals = weights
        if len(vals) != track.num_branches:
            raise ParseError(
                i, "expected %d weights, got %d" % (track.num_branches, len(vals))
            )
        measure = BranchWeights(track, kind, vals)
    return track, measure


# -- flat surfaces (.fsf) ------------------------------------------------


def serialize_surface(surface):
    r"""
    The ``.fsf`` text for a flat surface; gluings are listed once each, in
    sorted order of their smaller side.
    """
    out = ["fsf 1"]
    for coords in surface.polygons:
        toks = []
        for x, y in coords:
            toks.append(serialize_number(x))
            toks.append(serialize_number(y))
        out.append("polygon %s" % " ".join(toks))
    seen = set()
    for (p, e) in sorted(surface.gluings):
        if (p, e) in seen:
            continue
        (q, f), kind = surface.gluings[(p, e)]
        seen.add((p, e))
        seen.add((q, f))
        out.append("glue %d %d %d %d %s" % (p, e, q, f, kind))
    return "\n".join(out) + "\n"


def parse_surface(text):
    r"""
    Parse ``.fsf`` text into a :class:`~tracksurf.flatsurface.FlatSurface`.
    """
    items = _lines(text)
    _expect_magic(items, "fsf")
    polygons = []
    gluings = []
    for i, words in items:
        key, args = words[0], words[1:]
        if key == "polygon":
            if len(args) < 6 or len(args) % 2:
                raise ParseError(i, "polygon line needs at least three x y pairs")
            vals = [parse_number(t, i) for t in args]
            polygons.append(tuple(zip(vals[0::2], vals[1::2])))
        elif key == "glue":
            if len(args) != 5:
                raise ParseError(i, "glue line needs p e q f kind")
            if args[4] not in GLUING_KINDS:
                raise ParseError(i, "unknown gluing kind %r" % (args[4],))
            gluings.append(
                (
                    (_int(args[0], i, "polygon"), _int(args[1], i, "edge")),
                    (_int(args[2], i, "polygon"), _int(args[3], i, "edge")),
                    args[4],
                )
            )
        else:
            raise ParseError(i, "unknown directive %r" % (key,))
    if not polygons:
        raise ParseError(0, "no polygons")
    try:
        return FlatSurface(polygons, gluings)
    except ValueError as err:
        raise ParseError(0, str(err)) from None


# -- splitting logs (.ssl) -----------------------------------------------


class SequenceStep:
    r"""
    One parsed ``.ssl`` record: step index, ``{branch: direction}`` for the
    full split that produced it, its expansion ratio and its measure weights.
    """

    __slots__ = ("index", "directions", "ratio", "weights")

    def __init__(self, index, directions, ratio, weights):
        self.index = index
        self.directions = dict(directions)
        self.ratio = ratio
        self.weights = tuple(weights)

    def __eq__(self, other):
        if not isinstance(other, SequenceStep):
            return NotImplemented
        return (
            self.index == other.index
            and self.directions == other.directions
            and self.ratio == other.ratio
            and self.weights == other.weights
        )

    def __repr__(self):
        return "SequenceStep(%d, %r, ratio=%r)" % (self.index, self.directions, self.ratio)


def serialize_sequence(seq):
    r"""
    The ``.ssl`` text of a splitting run — either a live sequence object or
    a list of parsed :class:`SequenceStep` records.
    """
    steps = getattr(seq, "steps", seq)
    out = ["ssl 1"]
    for idx, step in enumerate(steps):
        directions = step.directions
        if directions:
            word = ",".join(
                "%d:%s" % (b, _DIRECTION_CODE.get(directions[b], directions[b]))
                for b in sorted(directions)
            )
        else:
            word = "-"
        weights = step.weights if isinstance(step, SequenceStep) else step.measure.weights
        out.append(
            "step %d %s %s %s"
            % (
                idx,
                word,
                serialize_number(step.ratio),
                " ".join(serialize_number(w) for w in weights),
            )
        )
    return "\n".join(out) + "\n"


def parse_sequence(text):
    r"""
    Parse ``.ssl`` text into a list of :class:`SequenceStep`.
    """
    items = _lines(text)
    _expect_magic(items, "ssl")
    steps = []
    for i, words in items:
        key, args = words[0], words[1:]
        if key != "step":
            raise ParseError(i, "unknown directive %r" % (key,))
        if len(args) < 4:
            raise ParseError(i, "step line needs index, directions, ratio, weights")
        index = _int(args[0], i, "step index")
        if index != len(steps):
            raise ParseError(i, "step index %d out of order (expected %d)" % (index, len(steps)))
        directions = {}
        if args[1] != "-":
            for item in args[1].split(","):
                b, _, d = item.partition(":")
                if d not in _CODE_DIRECTION:
                    raise ParseError(i, "bad direction item %r" % (item,))
                directions[_int(b, i, "branch")] = _CODE_DIRECTION[d]
        ratio = parse_number(args[2], i)
        weights = [parse_number(t, i) for t in args[3:]]
        steps.append(SequenceStep(index, directions, ratio, weights))
    return steps


# -- io helpers -----------------------------------------------------------


def read_text(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def write_text(path, text):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
