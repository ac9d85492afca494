r"""
tracksurf — train tracks, splitting sequences, and flat-surface dynamics.

The combinatorial half models measured train tracks on punctured surfaces:
building tracks (:mod:`~tracksurf.track`), their transverse/tangential weight
cones (:mod:`~tracksurf.cone`), and measure-driven full splitting sequences
with periodicity detection (:mod:`~tracksurf.splitting`).  The geometric half
models translation/half-translation surfaces: saddle-connection enumeration
(:mod:`~tracksurf.saddle`), the thick part K(epsilon) and horocycle averages
(:mod:`~tracksurf.nondivergence`), and the linear SL(2, Z) action
(:mod:`~tracksurf.sl2z`).  Everything runs on exact arithmetic whenever the
input is exact.
"""

__version__ = "1.0.0"

from .errors import (
    TracksurfError,
    StructureError,
    InvalidTrackError,
    EmptyConeError,
    NotSplittableError,
    NonGenericMeasureError,
    InternalInconsistencyError,
    MeasureMismatchError,
    ParseError,
)
from .quadfield import QuadNumber, sqrtD, GOLDEN
from .track import (
    TrainTrack,
    RegionDescriptor,
    LARGE,
    SMALL_RIGHT,
    SMALL_LEFT,
    SLOTS,
    relabel_branches,
    relabel_switches,
)
from .isomorphism import TrackIsomorphism, canonical_form, tracks_isomorphic
from .cone import (
    BranchWeights,
    TRANSVERSE,
    TANGENTIAL,
    switch_defects,
    switch_system,
    cone_dimension,
    is_recurrent,
    is_transversely_recurrent,
    vertex_cycles,
    transverse_kernel_basis,
    pair,
)
from .splitting import (
    RIGHT,
    LEFT,
    SplitRecord,
    SplitStep,
    SplittingSequence,
    split,
    lift_measure,
    project_measure,
    full_split,
    drive_sequence,
    detect_periodicity,
    in_cylinder,
)
from . import catalog
from .flatsurface import (
    FlatSurface,
    VertexClass,
    FlowState,
    TRANSLATION,
    HALF_TURN,
    transform_surface,
    as_float_surface,
    apply_matrix,
    geodesic_matrix,
    horocycle_matrix,
    three_square_surface,
    golden_l_surface,
    golden_l_minimal_state,
    pillowcase_surface,
)
from .saddle import SaddleConnection, saddle_connections, connections_disjoint
from .nondivergence import (
    KEpsilonReport,
    HorocycleSeries,
    in_K_epsilon,
    verify_circuit,
    systole_lower_bound,
    horocycle_average,
    disjoint_system_alpha,
)
from .sl2z import (
    OrbitPoint,
    SeedClass,
    RATIONAL_DEPENDENT,
    INDEPENDENT,
    UNKNOWN,
    classify_seed,
    evaluate_word,
    orbit_ball,
    discreteness_gap,
    discreteness_gap_sq,
    lebesgue_invariance_check,
)
from .formats import (
    parse_number,
    serialize_number,
    parse_track,
    serialize_track,
    parse_surface,
    serialize_surface,
    parse_sequence,
    serialize_sequence,
    SequenceStep,
)
