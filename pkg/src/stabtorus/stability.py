"""Points of the simply connected part of the stability manifold.

A point is an orbit label plus an element g of the covering group acting on
the right: StabPoint(label, g) is the base point of the labeled orbit moved
by g. Standard labels Std(p) name the points whose heart is the standard
heart p; boundary labels Deg(p, gamma) name the degenerate-charge families
separating consecutive standard orbits, with gamma in (0, 1/2).

Base-point data is normalized by two phases: phi_sky, the lifted phase of
the skyscraper class, equal to 1 at every base point, and psi_line, the
lifted phase of the rank ray, equal to 1/2 - p at Std(p) base points and to
1 - p on the boundary families. classify() inverts this normal form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .charges import (
    CentralCharge,
    KClass,
    SKYSCRAPER_CLASS,
    charge_eval,
    check_dimension,
    deg_charge,
    phase_in_strip,
    std_charge,
)
from .cover import (
    LiftedAuto,
    act_on_charge,
    gl_compose,
    gl_inverse,
    identity_auto,
    lift_eval,
)
from .errors import (
    DomainError,
    MissingHNData,
    NotInHeart,
    NotInU,
    NotNumericallyConsistent,
    UnsupportedSpectrum,
)
from .exactnum import HALF, as_number, direction_angle, gamma_from_cot, is_exact, phase_mod1
from .hearts import heart_membership
from .linalg import Matrix2
from .sheaves import (
    FormalObject,
    LocallyFree,
    Torsion,
    class_of,
    hull_defect_length,
    positive_rank_part,
    sheaf_at,
    torsion_part,
)


# ---------------------------------------------------------------------------
# labels and points


@dataclass(frozen=True)
class StdLabel:
    """Orbit of the standard point with heart index p."""

    p: int

    gamma = None

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int) or self.p < 0:
            raise DomainError(f"heart index must be a nonnegative integer, got {self.p!r}")


@dataclass(frozen=True)
class DegLabel:
    """Boundary family between the standard orbits p-1 and p, at parameter
    gamma in (0, 1/2)."""

    p: int
    gamma: object

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int) or self.p < 1:
            raise DomainError(f"boundary index must be an integer >= 1, got {self.p!r}")
        g = as_number(self.gamma)
        if not 0 < g < HALF:
            raise DomainError("boundary parameter gamma must lie in (0, 1/2)")
        object.__setattr__(self, "gamma", g)


@dataclass(frozen=True)
class StabPoint:
    label: object
    g: LiftedAuto

    def base_charge(self) -> CentralCharge:
        if isinstance(self.label, StdLabel):
            return std_charge(self.label.p)
        return deg_charge(self.label.p, self.label.gamma)

    def charge(self) -> CentralCharge:
        return act_on_charge(self.g, self.base_charge())

    def phi_sky(self):
        """Lifted skyscraper phase at this point."""
        return lift_eval(gl_inverse(self.g), 1)

    def psi_line(self):
        """Lifted phase of the positive rank ray at this point."""
        base = HALF - self.label.p if isinstance(self.label, StdLabel) else 1 - self.label.p
        return lift_eval(gl_inverse(self.g), base)


def make_std(p: int, d: int) -> StabPoint:
    """Base point of the standard orbit with heart index p, 0 <= p <= d-1."""
    check_dimension(d)
    if isinstance(p, bool) or not isinstance(p, int) or not 0 <= p <= d - 1:
        raise DomainError(f"heart index must lie in 0..{d - 1}, got {p!r}")
    return StabPoint(StdLabel(p), identity_auto())


def make_deg(p: int, gamma, d: int) -> StabPoint:
    """Base point of the boundary family Deg(p, gamma), 1 <= p <= d-1."""
    check_dimension(d)
    if isinstance(p, bool) or not isinstance(p, int) or not 1 <= p <= d - 1:
        raise DomainError(f"boundary index must lie in 1..{d - 1}, got {p!r}")
    return StabPoint(DegLabel(p, gamma), identity_auto())


def act(G: LiftedAuto, sigma: StabPoint) -> StabPoint:
    """Right action of the cover on points: the label is fixed and the group
    part composes on the right, so acting twice composes in order."""
    g = gl_compose(sigma.g, G)
    return StabPoint(sigma.label, g)


# ---------------------------------------------------------------------------
# stable objects and spectra


@dataclass(frozen=True)
class StableFamily:
    """One family of stable objects at a point.

    ``kind`` is one of "skyscraper", "shifted_line_bundle", "ideal_sheaves",
    "unclassified_tail". ``phase`` is the transported phase for the two
    single-phase families, None for the series (use ideal_family_phase).
    """

    kind: str
    shift: int
    kclass: KClass | None
    phase: object
    note: str = ""


@dataclass(frozen=True)
class PhaseSeries:
    """Accumulating series of stable phases in a spectrum.

    The ideal-sheaf series is computable: member n >= 1 has class (1, -n)
    and base phase arctan(1/n)/pi, decreasing to 0. The unclassified tail
    near the top of the window is not computable; only its monotone
    approach to the skyscraper phase is known.
    """

    kind: str
    computable: bool
    increasing: bool
    limit: object

    def value(self, n: int):
        if not self.computable:
            raise UnsupportedSpectrum(f"series {self.kind!r} has no computable members")
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise DomainError("series index must be an integer >= 1")
        if n == 1:
            return Fraction(1, 4)
        return math.atan2(1.0, float(n)) / math.pi


@dataclass(frozen=True)
class SpectrumDescriptor:
    """Stable phases of a point, understood modulo integer shift.

    ``points`` are isolated known phases in the base window (0, 1];
    ``series`` lists accumulating families; ``uncertain`` lists the open
    subintervals where the classification is not complete. ``complete`` says
    whether this accounts for every stable object.
    """

    points: tuple
    series: tuple
    uncertain: tuple
    complete: bool


def spectrum_of(label, d: int) -> SpectrumDescriptor:
    """Spectrum descriptor of a labeled base point in the window (0, 1]."""
    check_dimension(d)
    if isinstance(label, DegLabel):
        if not label.p <= d - 1:
            raise DomainError(f"boundary index {label.p} exceeds d-1 = {d - 1}")
        # every object of the boundary heart has phase 1; nothing else occurs
        return SpectrumDescriptor((Fraction(1),), (), (), True)
    p = label.p
    if not p <= d - 1:
        raise DomainError(f"heart index {p} exceeds d-1 = {d - 1}")
    points = (HALF, Fraction(1))
    if p == 0:
        series = (PhaseSeries("ideal_sheaves", True, False, Fraction(0)),)
        return SpectrumDescriptor(points, series, ((Fraction(0), HALF),), False)
    if p == d - 1:
        series = (PhaseSeries("unclassified_tail", False, True, Fraction(1)),)
        return SpectrumDescriptor(points, series, ((HALF, Fraction(1)),), False)
    return SpectrumDescriptor(points, (), (), True)


def stable_objects(sigma: StabPoint, d: int):
    """Families of stable objects at sigma with transported phases.

    Returns (SpectrumDescriptor, families). The descriptor stays in the base
    window of the label; family phases are transported through the group
    part of the point. Boundary points raise UnsupportedSpectrum since their
    stable objects are not classified.
    """
    check_dimension(d)
    if isinstance(sigma.label, DegLabel):
        raise UnsupportedSpectrum("stable objects on boundary families are not classified")
    p = sigma.label.p
    if not 0 <= p <= d - 1:
        raise DomainError(f"heart index {p} exceeds d-1 = {d - 1}")
    gi = gl_inverse(sigma.g)
    sky_phase = lift_eval(gi, 1)
    line_phase = lift_eval(gi, HALF)
    families = [
        StableFamily(
            "skyscraper", 0, SKYSCRAPER_CLASS, sky_phase,
            "length-one torsion sheaves, one for each point of the torus",
        ),
        StableFamily(
            "shifted_line_bundle", p, KClass((-1) ** p, 0), line_phase,
            "simple semihomogeneous bundles of degree zero, shifted into the heart",
        ),
    ]
    if p == 0:
        families.append(
            StableFamily(
                "ideal_sheaves", 0, None, None,
                "twisted ideal sheaves of n points, classes (1, -n); phases "
                "decrease to the bottom of the window",
            )
        )
    if p == d - 1:
        families.append(
            StableFamily(
                "unclassified_tail", d - 1, None, None,
                "an incomplete family with phases increasing toward the "
                "skyscraper phase",
            )
        )
    return (spectrum_of(sigma.label, d), tuple(families))


def ideal_family_phase(sigma: StabPoint, n: int, d: int):
    """Transported phase of the n-th ideal-sheaf stable at a Std(0) point."""
    check_dimension(d)
    if not isinstance(sigma.label, StdLabel) or sigma.label.p != 0:
        raise UnsupportedSpectrum("the ideal-sheaf family lives at index-0 points")
    series = PhaseSeries("ideal_sheaves", True, False, Fraction(0))
    return lift_eval(gl_inverse(sigma.g), series.value(n))


# ---------------------------------------------------------------------------
# Harder-Narasimhan data


@dataclass(frozen=True)
class HNFactor:
    """One semistable factor: its class, transported phase, a representative
    object of the model when one exists, and the declared stable flag when
    the input carried one."""

    kclass: KClass
    phase: object
    part: FormalObject | None = None
    stable: bool | None = None


def hn_filtration(sigma: StabPoint, E: FormalObject, d: int):
    """Harder-Narasimhan factors of E at the point sigma, top phase first.

    E is presented relative to the base heart of sigma's label; phases are
    transported through the group part. At a standard point with p >= 1 the
    torsion part (including the hull defect of the shifted piece) sits at
    transported phase 1 and the hull at transported phase 1/2. At p = 0 the
    torsion part leads and the torsion-free part contributes its declared
    filtration, without which MissingHNData is raised; locally free pieces
    need no declaration. On a boundary family every heart object is
    semistable of phase 1.
    """
    check_dimension(d)
    label = sigma.label
    gi = gl_inverse(sigma.g)

    def tr(x):
        return lift_eval(gi, x)

    if isinstance(label, DegLabel):
        p = label.p
        if not p <= d - 1:
            raise DomainError(f"boundary index {p} exceeds d-1 = {d - 1}")
        if not heart_membership(E, p, d):
            raise NotInHeart(f"object is not in the boundary heart at index {p}")
        if E.is_zero():
            return ()
        return (HNFactor(class_of(E), tr(1), E),)

    p = label.p
    if not p <= d - 1:
        raise DomainError(f"heart index {p} exceeds d-1 = {d - 1}")
    if not heart_membership(E, p, d):
        raise NotInHeart(f"object is not in the standard heart {p}")
    if E.is_zero():
        return ()

    if p >= 1:
        upper = E.component(-p)
        lower = E.component(0)
        factors = []
        t_len = (lower.total_length() if lower is not None else 0) + (
            hull_defect_length(upper) if upper is not None else 0
        )
        if t_len:
            pieces = lower.points if lower is not None else ()
            if upper is not None and hull_defect_length(upper):
                from .hearts import DEFECT_POINT

                pieces = pieces + ((DEFECT_POINT, hull_defect_length(upper)),)
            factors.append(
                HNFactor(KClass(0, t_len), tr(1), sheaf_at(0, Torsion(pieces)))
            )
        if upper is not None:
            factors.append(
                HNFactor(
                    KClass(((-1) ** p) * upper.rank, 0),
                    tr(HALF),
                    sheaf_at(-p, LocallyFree(upper.rank)),
                )
            )
        return tuple(factors)

    # p == 0: sheaves; torsion leads, then the declared filtration
    S = E.component(0)
    factors = []
    t = torsion_part(S)
    if t is not None:
        factors.append(HNFactor(KClass(0, t.total_length()), tr(1), sheaf_at(0, t)))
    F = positive_rank_part(S)
    if F is not None:
        Z0 = std_charge(0)
        if isinstance(F, LocallyFree):
            factors.append(
                HNFactor(KClass(F.rank, 0), tr(HALF), sheaf_at(0, F))
            )
        else:
            if F.hn is None:
                raise MissingHNData(
                    "torsion-free piece carries no declared filtration data"
                )
            for cls, stable in F.hn:
                factors.append(
                    HNFactor(cls, tr(phase_in_strip(Z0, cls, 0)), None, stable)
                )
    return tuple(factors)


# ---------------------------------------------------------------------------
# brute-force stability on the enumerable hearts


def subobject_classes(E: FormalObject, p: int, d: int) -> set:
    """Classes of proper nonzero subobjects of E in the standard heart p >= 1.

    For p >= 2 a heart object is a locally free shift plus torsion and its
    subobjects are exactly the pairs (sub-bundle shift, torsion subsheaf).
    For p = 1 long exact sequences allow mixing: writing the shifted piece
    as rank r with colength q and the torsion mass t, a subobject of class
    (-r', m) exists precisely when r' = 0 with 1 <= m <= q + t, or
    0 < r' < r with 0 <= m <= q + t, or r' = r with q <= m <= q + t.
    """
    check_dimension(d)
    if isinstance(p, bool) or not isinstance(p, int) or not 1 <= p <= d - 1:
        raise DomainError(f"heart index must lie in 1..{d - 1}, got {p!r}")
    if not heart_membership(E, p, d):
        raise NotInHeart(f"object is not in the standard heart {p}")
    upper = E.component(-p)
    lower = E.component(0)
    r = upper.rank if upper is not None else 0
    q = hull_defect_length(upper) if upper is not None else 0
    t = lower.total_length() if lower is not None else 0
    eps = (-1) ** p
    full = class_of(E)
    out = set()
    if p >= 2:
        for rp in range(r + 1):
            for tp in range(t + 1):
                cand = KClass(eps * rp, tp)
                if not cand.is_zero() and cand != full:
                    out.add(cand)
        return out
    for rp in range(r + 1):
        if rp == 0:
            lo, hi = 1, q + t
        elif rp < r:
            lo, hi = 0, q + t
        else:
            lo, hi = q, q + t
        for m in range(lo, hi + 1):
            cand = KClass(-rp, m)
            if not cand.is_zero() and cand != full:
                out.add(cand)
    return out


def heart_phase(v: KClass, p: int):
    """Phase in (0, 1] of a nonzero class under the index-p standard charge."""
    re, im = charge_eval(std_charge(p), v)
    return phase_mod1(re, im)


def is_stable_in_model(E: FormalObject, p: int, d: int) -> bool:
    """Stability of a heart-p object (p >= 1) by exhaustive subobject classes."""
    if E.is_zero():
        return False
    phi = heart_phase(class_of(E), p)
    for v in subobject_classes(E, p, d):
        if not (heart_phase(v, p) < phi):
            return False
    return True


# ---------------------------------------------------------------------------
# classification of normalized point data


def classify(Z: CentralCharge, phi_sky, psi_line, d: int) -> StabPoint:
    """Rebuild the unique point of the simply connected part with the given
    charge and normalized phases.

    phi_sky is the lifted skyscraper phase, psi_line the lifted phase of the
    positive rank ray. The pair determines the heart index through
    p = floor(phi_sky - psi_line) and the group element through the frame of
    Z; degenerate frames land on the boundary families. Raises NotInU when
    the data names no point of the region and NotNumericallyConsistent when
    the phases contradict the charge.
    """
    check_dimension(d)
    phi = as_number(phi_sky)
    psi = as_number(psi_line)
    re, im = charge_eval(Z, SKYSCRAPER_CLASS)
    if re == 0 and im == 0:
        raise NotInU("the skyscraper class has zero charge")
    theta = direction_angle(re, im)
    # phi must lift the actual direction of Z(skyscraper)
    gap = (float(phi) - float(theta)) / 2
    if abs(gap - round(gap)) > 1e-9:
        raise NotNumericallyConsistent(
            f"phi_sky = {phi} is not a lift of the skyscraper direction {theta}"
        )
    # nudge protects the floor against float fuzz on exact half-integer gaps
    p_hat = math.floor(float(phi) - float(psi) + 1e-12)
    window = float(psi) + p_hat - float(phi)
    if Z.is_degenerate():
        if not (abs(window) <= 1e-9 or abs(window + 1) <= 1e-9):
            # interior data cannot carry a degenerate charge
            raise NotInU("degenerate charge with interior phase data")
        if abs(window + 1) <= 1e-9:
            p_hat += 1
        if not 1 <= p_hat <= d - 1:
            raise NotInU(f"boundary index {p_hat} outside 1..{d - 1}")
        return _classify_degenerate(Z, phi, p_hat, d)
    if abs(window) <= 1e-9:
        raise NotNumericallyConsistent(
            "nondegenerate charge with boundary phase data"
        )
    if not 0 <= p_hat <= d - 1:
        raise NotInU(f"heart index {p_hat} outside 0..{d - 1}")
    M = Matrix2(1, 0, 0, (-1) ** p_hat) @ Z.frame().inverse()
    if M.det() <= 0:
        raise NotNumericallyConsistent(
            "charge orientation contradicts the inferred heart index"
        )
    w_val = (1 - float(lift_eval(LiftedAuto(M, 0), phi))) / 2
    w = round(w_val)
    if abs(w_val - w) > 1e-9:
        raise NotNumericallyConsistent("phi_sky is not a valid lift for this charge")
    G = LiftedAuto(M, w)
    check = lift_eval(G, psi)
    if abs(float(check) - (0.5 - p_hat)) > 1e-9:
        raise NotNumericallyConsistent(
            f"psi_line = {psi} disagrees with the rank-ray phase {check}"
        )
    return StabPoint(StdLabel(p_hat), G)


def _classify_degenerate(Z: CentralCharge, phi, p_hat: int, d: int) -> StabPoint:
    # the frame has rank one; both rows are multiples of a primitive (1, b0)
    rows = Z.frame().rows()
    row = rows[0] if rows[0] != (0, 0) else rows[1]
    if row == (0, 0):
        raise NotInU("zero charge")
    if row[0] == 0:
        raise NotInU("charge vanishes on the skyscraper ray")
    b0 = row[1] / row[0]
    cot = -((-1) ** p_hat) * b0
    if not cot > 0:
        raise NotInU("boundary parameter would leave (0, 1/2)")
    gamma = gamma_from_cot(cot)
    alpha, beta = rows[0][0], rows[1][0]
    norm = alpha * alpha + beta * beta
    # T0 sends (alpha, beta) to (1, 0) exactly and has determinant one
    T0 = Matrix2(alpha / norm, beta / norm, -beta, alpha)
    w_val = (1 - float(lift_eval(LiftedAuto(T0, 0), phi))) / 2
    w = round(w_val)
    if abs(w_val - w) > 1e-9:
        raise NotNumericallyConsistent("phi_sky is not a valid lift for this charge")
    return StabPoint(DegLabel(p_hat, gamma), LiftedAuto(T0, w))
