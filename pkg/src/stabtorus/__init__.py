"""Symbolic model of the simply connected region of the stability manifold
of a generic complex torus of dimension at least three.

The library models points as orbit labels moved by lifted linear
automorphisms, hearts as finitely presented sheaf data, and the wall and
escape structure at the orbit boundaries; everything is exact rational
arithmetic except where a phase genuinely needs an arctangent.
"""

from .charges import (
    CentralCharge,
    KClass,
    SKYSCRAPER_CLASS,
    charge_eval,
    charge_norm,
    check_dimension,
    deg_charge,
    is_stability_function,
    phase_in_strip,
    std_charge,
)
from .cover import (
    LiftedAuto,
    SHIFT_ONE,
    act_on_charge,
    gl_compose,
    gl_equal,
    gl_inverse,
    identity_auto,
    lift_eval,
    shift_auto,
)
from .errors import (
    Disconnected,
    DomainError,
    InconsistentMorphism,
    InvalidTorsionPair,
    MissingHNData,
    NeverEscapes,
    NoPhaseInWindow,
    NotInHeart,
    NotInU,
    NotNumericallyConsistent,
    OnSpectrum,
    StabTorusError,
    UnsupportedSpectrum,
    ZeroCharge,
)
from .hearts import (
    StandardHeart,
    TiltedHeart,
    TorsionPairSpec,
    canonical_decomposition,
    chain_stabilizes,
    heart_membership,
    hearts_agree_on,
    hrs_tilt,
    iterated_heart,
    standard_pair,
)
from .linalg import Matrix2
from .presentations import PresentedGroup, pi1, pi1_components, tietze_simplify
from .sheaves import (
    FormalObject,
    LocallyFree,
    Mixed,
    Torsion,
    TorsionFree,
    TorsionMorphism,
    ZERO_OBJECT,
    class_of,
    enumerate_objects,
    enumerate_sheaves,
    formal_object,
    make_locally_free,
    make_mixed,
    make_torsion,
    make_torsion_free,
    object_is_legal,
    object_mass,
    object_shift,
    object_sum,
    objects_isomorphic,
    sheaf_at,
    skyscraper,
    torsion_kernel_cokernel,
)
from .stability import (
    DegLabel,
    HNFactor,
    PhaseSeries,
    SpectrumDescriptor,
    StabPoint,
    StableFamily,
    StdLabel,
    act,
    classify,
    heart_phase,
    hn_filtration,
    ideal_family_phase,
    is_stable_in_model,
    make_deg,
    make_std,
    spectrum_of,
    stable_objects,
    subobject_classes,
)
from .svg import helix_svg
from .walls import (
    ComplexNode,
    FiberFamily,
    OrbitComplex,
    WallDecision,
    boundary_at,
    boundary_heart,
    fiber_types,
    gamma_pm,
    orbit_complex,
    phase_cut_pair,
    remove_node,
    twist_escape,
    wall_only_complex,
)

__version__ = "0.1.0"
