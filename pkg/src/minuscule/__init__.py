"""Quiver invariants and Gorenstein loci of minuscule Schubert varieties."""

from .analysis import (
    AnalysisReport,
    CanonicalPartition,
    QuiverClass,
    SingularComponent,
    analyze,
    canonical_partition,
    classify_simple_root_via_quiver,
    essential_holes,
    gorenstein_locus_contains,
    has_property_WY,
    is_gorenstein,
    is_gorenstein_hole,
    is_smooth,
    is_stable,
    reconstructs,
    singular_components,
    stable_hole_offsets,
)
from .heap import (
    AmbientQuiver,
    HoleRecord,
    Ideal,
    MinusculeSpace,
    NotAnIdealError,
    build_ambient_quiver,
    enumerate_ideals,
    heights,
    holes,
    ideal_count,
    make_ideal,
    peaks,
    reading_word,
    word_from_ideal,
)
from .rootsys import (
    DynkinType,
    RootClass,
    RootSystem,
    apply_word,
    build_root_system,
    classify_root,
    length_by_inversions,
    minuscule_nodes,
)
from .typea import (
    GrassmannianShape,
    Partition,
    ideal_to_partition,
    oracle_gorenstein,
    oracle_smooth,
    partition_to_ideal,
    partition_to_permutation,
    permutation_to_partition,
    word_to_permutation,
)

__version__ = "1.0.0"
