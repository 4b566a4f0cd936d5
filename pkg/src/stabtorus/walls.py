"""Wall-and-chamber structure at the boundary of the standard orbits.

Deforming a standard point so that the phase gap around a value gamma
collapses either runs into a genuine boundary family (a wall, reached in
finite distance) or escapes to infinity because twisting by degree-zero line
bundles pushes the relevant phases back apart. ``boundary_at`` records which
of the two happens; ``boundary_heart`` produces the heart carried by the
wall through a tilt; ``twist_escape`` exhibits the escape mechanism;
``orbit_complex`` assembles the resulting cell complex and ``fiber_types``
inverts the charge map over it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .charges import CentralCharge, KClass, charge_eval, check_dimension
from .errors import (
    DomainError,
    MissingHNData,
    NeverEscapes,
    OnSpectrum,
    ZeroCharge,
)
from .exactnum import HALF, TOL, as_number, gamma_from_cot, is_exact, phase_mod1
from .hearts import StandardHeart, TorsionPairSpec, hrs_tilt
from .sheaves import (
    LocallyFree,
    Torsion,
    TorsionFree,
    ZERO_OBJECT,
    make_mixed,
    make_torsion_free,
    positive_rank_part,
    sheaf_at,
    torsion_part,
)
from .stability import DegLabel, PhaseSeries, SpectrumDescriptor, StdLabel, spectrum_of

# reasons a deformation direction fails to reach a wall
GAMMA_PLUS_VACUOUS = "gamma-plus-vacuous"
GAMMA_MINUS_VACUOUS = "gamma-minus-vacuous"
TWIST_ESCAPE = "twist-escape"


# ---------------------------------------------------------------------------
# neighbouring phases in a spectrum


def _series_bracket(series: PhaseSeries, gamma: float):
    """(largest member < gamma, smallest member > gamma, hit) for the
    computable series; (None, None, False) otherwise."""
    if not series.computable:
        return (None, None, False)
    # members are atan(1/n)/pi for n >= 1, decreasing from 1/4 to 0
    g = float(gamma)
    if g <= 0:
        return (None, None, False)
    top = float(series.value(1))
    if g > top:
        return (series.value(1), None, False)
    cot = 1.0 / math.tan(math.pi * g)  # g <= 1/4 here, so tan > 0
    n_low = math.floor(cot) + 1  # smallest n with value(n) < gamma
    hit = False
    for n in range(max(1, n_low - 2), n_low + 3):
        if n >= 1 and abs(float(series.value(n)) - g) <= TOL:
            hit = True
            n_low = n + 1
    below = series.value(n_low)
    while float(below) >= g - TOL:
        n_low += 1
        below = series.value(n_low)
    above = series.value(n_low - 1) if n_low >= 2 else None
    if above is not None and abs(float(above) - g) <= TOL:
        hit = True
        above = series.value(n_low - 2) if n_low >= 3 else None
    return (below, above, hit)


def gamma_pm(spectrum: SpectrumDescriptor, gamma):
    """Nearest spectrum phases around gamma, with certainty flags.

    Returns (below, above, below_exact, above_exact) where the flags say
    whether the corresponding gap is certified free of further stable
    phases (no uncertain interval of the spectrum meets it, modulo integer
    shift). Raises OnSpectrum when gamma is a known stable phase and
    DomainError when gamma leaves (0, 1).
    """
    g = as_number(gamma)
    if not 0 < g < 1:
        raise DomainError("gamma must lie strictly between 0 and 1")
    candidates = []
    for q in spectrum.points:
        for k in (-1, 0, 1):
            candidates.append(q + k)
    for series in spectrum.series:
        below, above, hit = _series_bracket(series, float(g))
        if hit:
            raise OnSpectrum(f"gamma = {gamma} is a stable phase")
        if below is not None:
            candidates.append(below)
        if above is not None:
            candidates.append(above)
    for c in candidates:
        if is_exact(c) and is_exact(g):
            if c == g:
                raise OnSpectrum(f"gamma = {gamma} is a stable phase")
        elif abs(float(c) - float(g)) <= TOL:
            raise OnSpectrum(f"gamma = {gamma} is a stable phase")
    below = max((c for c in candidates if float(c) < float(g)), key=float)
    above = min((c for c in candidates if float(c) > float(g)), key=float)

    def certain(lo, hi):
        for a, b in spectrum.uncertain:
            for k in (-1, 0, 1):
                if float(a) + k < float(hi) and float(b) + k > float(lo):
                    return False
        return True

    return (below, above, certain(below, g), certain(g, above))


def on_spectrum(label, gamma, d: int) -> bool:
    try:
        gamma_pm(spectrum_of(label, d), gamma)
    except OnSpectrum:
        return True
    return False


# ---------------------------------------------------------------------------
# the boundary decision table


@dataclass(frozen=True)
class WallDecision:
    """Outcome of pushing a standard point against a phase gap at gamma.

    ``target`` is the boundary label when a wall is reached in finite
    distance, otherwise None and ``reason`` explains which mechanism makes
    the boundary empty there.
    """

    target: DegLabel | None
    reason: str | None = None

    @property
    def is_wall(self) -> bool:
        return self.target is not None


def boundary_at(p: int, gamma, d: int) -> WallDecision:
    """Decide the boundary behind the phase gap at gamma seen from Std(p).

    gamma must lie in (0, 1), off 1/2 and off the known stable phases. Below
    1/2 the wall carries the boundary family Deg(p, gamma) except at p = 0,
    where twisting by degree-zero line bundles escapes any wall; above 1/2
    the roles are mirrored with Deg(p + 1, 1 - gamma) and the escape at
    p = d - 1.
    """
    check_dimension(d)
    if isinstance(p, bool) or not isinstance(p, int) or not 0 <= p <= d - 1:
        raise DomainError(f"heart index must lie in 0..{d - 1}, got {p!r}")
    g = as_number(gamma)
    if not 0 < g < 1:
        raise DomainError("gamma must lie strictly between 0 and 1")
    if g == HALF or (not is_exact(g) and abs(float(g) - 0.5) <= TOL):
        raise DomainError("gamma = 1/2 sits on the shifted-bundle phase")
    if on_spectrum(StdLabel(p), g, d):
        raise DomainError(f"gamma = {gamma} is a stable phase of Std({p})")
    if float(g) < 0.5:
        if p == 0:
            return WallDecision(None, TWIST_ESCAPE)
        return WallDecision(DegLabel(p, g))
    if p == d - 1:
        return WallDecision(None, TWIST_ESCAPE)
    return WallDecision(DegLabel(p + 1, 1 - g))


# ---------------------------------------------------------------------------
# the tilt carried by a wall


def _declared_min_max_phase(F: TorsionFree):
    if F.hn is None:
        raise MissingHNData(
            "phase cut needs declared filtration data for torsion-free pieces"
        )
    phases = []
    for cls, _ in F.hn:
        re, im = charge_eval(CentralCharge(1, 0, 0, 1), cls)
        phases.append(phase_mod1(re, im))
    return (min(phases, key=float), max(phases, key=float))


def phase_cut_pair(p: int, gamma, d: int) -> TorsionPairSpec:
    """Torsion pair on the standard heart p cutting its objects at phase gamma:
    the torsion class keeps the filtration steps above gamma, the free class
    those below."""
    check_dimension(d)
    g = as_number(gamma)

    if p >= 1:
        # phases present: 1 on the torsion side, 1/2 on the shifted bundles
        def in_torsion(E):
            if E.is_zero():
                return True
            upper = E.component(-p)
            if upper is not None and float(g) > 0.5:
                return False
            return True

        def in_free(E):
            if E.is_zero():
                return True
            if float(g) < 0.5:
                return False
            if E.degrees() != (-p,):
                return False
            return hull_defect_free(E.component(-p))

        def decompose(E):
            if E.is_zero() or float(g) < 0.5:
                return (E, ZERO_OBJECT)
            upper = E.component(-p)
            lower = E.component(0)
            t_sheaf = lower
            hull = None
            if upper is not None:
                defect = _defect_torsion(upper)
                if defect is not None:
                    t_sheaf = (
                        Torsion(t_sheaf.points + defect.points)
                        if t_sheaf is not None
                        else defect
                    )
                hull = LocallyFree(upper.rank)
            return (
                sheaf_at(0, t_sheaf) if t_sheaf is not None else ZERO_OBJECT,
                sheaf_at(-p, hull) if hull is not None else ZERO_OBJECT,
            )

        return TorsionPairSpec(f"phase-cut-{p}-at-{gamma}", in_torsion, in_free, decompose)

    def in_torsion(E):
        if E.is_zero():
            return True
        S = E.component(0)
        F = positive_rank_part(S)
        if F is None:
            return True
        if float(g) > 0.5:
            return False
        if isinstance(F, LocallyFree):
            return True  # phase 1/2 > gamma
        lo, _ = _declared_min_max_phase(F)
        return float(lo) > float(g)

    def in_free(E):
        if E.is_zero():
            return True
        S = E.component(0)
        if torsion_part(S) is not None:
            return False
        F = positive_rank_part(S)
        if isinstance(F, LocallyFree):
            return float(g) > 0.5
        if float(g) > 0.5:
            return True
        _, hi = _declared_min_max_phase(F)
        return float(hi) < float(g)

    def decompose(E):
        if E.is_zero():
            return (E, ZERO_OBJECT)
        S = E.component(0)
        t = torsion_part(S)
        F = positive_rank_part(S)
        if F is None:
            return (E, ZERO_OBJECT)
        if float(g) > 0.5:
            return (
                sheaf_at(0, t) if t is not None else ZERO_OBJECT,
                sheaf_at(0, F),
            )
        if isinstance(F, LocallyFree):
            return (E, ZERO_OBJECT)
        prefix = []
        suffix = []
        for cls, stable in F.hn:
            re, im = charge_eval(CentralCharge(1, 0, 0, 1), cls)
            if float(phase_mod1(re, im)) > float(g):
                prefix.append((cls, stable))
            else:
                suffix.append((cls, stable))
        upper_sheaf = _assemble_tf(prefix)
        lower_sheaf = _assemble_tf(suffix)
        t_part = make_mixed(t, upper_sheaf) if (t or upper_sheaf) else None
        return (
            sheaf_at(0, t_part) if t_part is not None else ZERO_OBJECT,
            sheaf_at(0, lower_sheaf) if lower_sheaf is not None else ZERO_OBJECT,
        )

    return TorsionPairSpec(f"phase-cut-0-at-{gamma}", in_torsion, in_free, decompose)


def hull_defect_free(F) -> bool:
    return isinstance(F, LocallyFree)


def _defect_torsion(F):
    if isinstance(F, TorsionFree):
        from .hearts import DEFECT_POINT

        return Torsion(((DEFECT_POINT, F.colength),))
    return None


def _assemble_tf(steps):
    if not steps:
        return None
    rank = sum(cls.rk for cls, _ in steps)
    colength = -sum(cls.chd for cls, _ in steps)
    if colength == 0:
        return LocallyFree(rank)
    return make_torsion_free(rank, colength, hn=tuple(steps))


def boundary_heart(p: int, gamma, d: int):
    """The heart carried by the boundary behind the gap at gamma: the tilt of
    the standard heart p at the phase-cut pair. Below 1/2 the cut is trivial
    and the heart is unchanged; above 1/2 it reproduces the next standard
    heart."""
    boundary_at(p, gamma, d)  # validates p, gamma and the spectrum condition
    return hrs_tilt(StandardHeart(p, d), phase_cut_pair(p, gamma, d))


# ---------------------------------------------------------------------------
# the twisting escape


def twist_escape(ideal_class: KClass, twist_class: KClass, gamma_minus, Z: CentralCharge) -> int:
    """Least n >= 1 for which the phase of Z(ideal + n * twist) climbs back
    above gamma_minus, the record phase below the gap.

    Models the escape move: twisting by a degree-zero line bundle changes
    the class by multiples of twist_class, and since the twist's own phase
    sits above gamma_minus the iterates eventually cross. Raises
    NeverEscapes when the twist phase itself is not above gamma_minus,
    ZeroCharge when Z kills the starting class. Iterates with zero charge
    (at most one) are skipped.
    """
    gm = as_number(gamma_minus)
    zi = charge_eval(Z, ideal_class)
    if zi[0] == 0 and zi[1] == 0:
        raise ZeroCharge("the charge kills the starting class")
    ze = charge_eval(Z, twist_class)
    if ze[0] == 0 and ze[1] == 0:
        raise ZeroCharge("the charge kills the twisting class")
    if not float(phase_mod1(*ze)) > float(gm):
        raise NeverEscapes(
            "the twisting class sits at or below the record phase; iterates "
            "cannot cross it"
        )
    n = 1
    while n <= 10 ** 6:
        re = zi[0] + n * ze[0]
        im = zi[1] + n * ze[1]
        if re == 0 and im == 0:
            n += 1
            continue
        if float(phase_mod1(re, im)) > float(gm):
            return n
        n += 1
    raise NeverEscapes("no crossing found within the iteration guard")


# ---------------------------------------------------------------------------
# the orbit complex and the charge fibers


@dataclass(frozen=True)
class ComplexNode:
    name: str
    kind: str  # "cell" | "wall"
    index: int
    homotopy: str  # "contractible" | "circle"
    note: str = ""


@dataclass(frozen=True)
class OrbitComplex:
    nodes: tuple
    edges: tuple  # (wall name, cell name) incidences

    def node(self, name: str) -> ComplexNode:
        for nd in self.nodes:
            if nd.name == name:
                return nd
        raise DomainError(f"no node named {name!r}")


def orbit_complex(d: int) -> OrbitComplex:
    """Cells Std(0..d-1) joined in a path by the boundary families.

    Each cell is a free orbit of the covering group, hence contractible;
    each wall family retains a circle's worth of fundamental group from the
    stabilizer of its points.
    """
    check_dimension(d)
    nodes = []
    edges = []
    for p in range(d):
        nodes.append(
            ComplexNode(
                f"std-{p}", "cell", p, "contractible",
                "free orbit of the covering group",
            )
        )
    for k in range(1, d):
        nodes.append(
            ComplexNode(
                f"wall-{k}", "wall", k, "circle",
                "boundary family between std-%d and std-%d, parameter in (0, 1/2)"
                % (k - 1, k),
            )
        )
        edges.append((f"wall-{k}", f"std-{k - 1}"))
        edges.append((f"wall-{k}", f"std-{k}"))
    return OrbitComplex(tuple(nodes), tuple(edges))


def wall_only_complex(index: int = 1) -> OrbitComplex:
    """A single wall node with no cells glued in; its group survives."""
    node = ComplexNode(
        f"wall-{index}", "wall", index, "circle",
        "boundary family with nothing glued to it",
    )
    return OrbitComplex((node,), ())


def remove_node(cx: OrbitComplex, name: str) -> OrbitComplex:
    cx.node(name)  # raises when absent
    nodes = tuple(nd for nd in cx.nodes if nd.name != name)
    edges = tuple(e for e in cx.edges if name not in e)
    return OrbitComplex(nodes, edges)


@dataclass(frozen=True)
class FiberFamily:
    """One family of points over a charge: an orbit label pattern plus the
    structure of the fiber piece over it."""

    label: object
    structure: str  # "countable" | "positive-dimensional"
    note: str = ""


def fiber_types(Z: CentralCharge, d: int):
    """Patterns of points of the region hitting the given charge.

    A nondegenerate charge is reached from every standard orbit whose parity
    matches the orientation of its frame, one point for each winding. A
    degenerate rank-one charge lands on the boundary families of the matching
    parity, where the stabilizer makes the fiber positive-dimensional; the
    two functional directions that correspond to the excluded parameter
    values have empty fiber. The zero charge raises ZeroCharge.
    """
    check_dimension(d)
    if Z.a == 0 and Z.b == 0 and Z.c == 0 and Z.e == 0:
        raise ZeroCharge("the zero charge is hit nowhere")
    out = []
    if not Z.is_degenerate():
        det = Z.det()
        eps = 1 if det > 0 else -1
        for p in range(d):
            if (-1) ** p == eps:
                out.append(
                    FiberFamily(
                        StdLabel(p), "countable",
                        "one point in the orbit of std-%d per winding" % p,
                    )
                )
        return out
    if Z.a == 0 and Z.c == 0:
        return out  # pure rank functional, never a boundary charge
    rows = ((Z.a, Z.b), (Z.c, Z.e))
    row = rows[0] if rows[0] != (0, 0) else rows[1]
    w = row[1] / row[0]
    if w == 0:
        return out  # pure degree functional: parameter 1/2 is excluded
    gamma = gamma_from_cot(abs(w))
    want_odd = w > 0
    for p in range(1, d):
        if (p % 2 == 1) == want_odd:
            out.append(
                FiberFamily(
                    DegLabel(p, gamma), "positive-dimensional",
                    "stabilizer quotient over the boundary family",
                )
            )
    return out
