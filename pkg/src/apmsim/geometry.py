"""Sarcomere and myofibril kinematics.

Design rules tie the contraction-unit dimensions together: the I-band is 2/3
of the A-band, the actin thread rests as a semicircle spanning the I-band,
and the myosin height is bounded by the rest and fully-contracted actin
shapes. Lengths are in mm. The deformed actin is treated as a half ellipse
whose vertical chord grows with inflation; its horizontal semi-axis is
recovered numerically from the (fixed) arc length.

All functions are pure and thread-safe.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from scipy.optimize import brentq
from scipy.special import ellipe

from .errors import DomainError
from .material import YeohMaterial

# Allowed contraction/stretch band for the length ratio L/L_rest.
LENGTH_RATIO_MIN = 0.6
LENGTH_RATIO_MAX = 1.7

RATIO_VALID = "valid"
RATIO_OVER_CONTRACTED = "over-contracted"
RATIO_OVER_STRETCHED = "over-stretched"

# Relative tolerance at which an (arc, chord) pair is recognised as the exact
# semicircle; keeps the zero-deformation rest state bit-exact.
_CIRCLE_SNAP_REL = 1e-12

_ARC_SOLVE_XTOL = 1e-12


@dataclass(frozen=True)
class SpaGeometry:
    """Chamber and junction dimensions of one soft pneumatic actuator (mm).

    t_w: chamber wall thickness; a_ch/b_ch/h_ch: inner channel length, width
    and height; h_jz: junction-zone height between chamber arrays; a_hz/b_hz:
    H-zone cross-section length and width.
    """

    t_w: float
    a_ch: float
    b_ch: float
    h_ch: float
    h_jz: float
    a_hz: float
    b_hz: float

    def __post_init__(self) -> None:
        for name in ("t_w", "a_ch", "b_ch", "h_ch", "h_jz", "a_hz", "b_hz"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"SPA dimension {name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True)
class SarcomereGeometry:
    """Rest dimensions of one contraction unit (mm).

    a_band/i_band: myosin-spanning and actin-only region lengths; actin_arc:
    actin thread arc length; myosin_height: overall rest height of one myosin
    (None when not yet chosen); sarcomere_height is informational and never
    enters computations; junctions_per_myosin counts the junction zones
    stacked through the myosin height (two in the reference chamber stack).
    """

    a_band: float
    i_band: float
    actin_arc: float
    myosin_height: float | None = None
    sarcomere_height: float | None = None
    junctions_per_myosin: int = 2

    def __post_init__(self) -> None:
        for name in ("a_band", "i_band", "actin_arc"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"sarcomere dimension {name} must be positive")
        if self.myosin_height is not None and self.myosin_height <= 0.0:
            raise DomainError("myosin_height must be positive when given")
        if self.junctions_per_myosin < 1:
            raise DomainError("junctions_per_myosin must be >= 1")

    def conformity_warnings(self) -> list[str]:
        """Deviations from the design rules (I' = 2A'/3, rest semicircle).

        Non-conforming geometries remain simulatable; these are advisory.
        """
        msgs = []
        if abs(self.i_band - 2.0 * self.a_band / 3.0) > 1e-9:
            msgs.append(
                f"i_band={self.i_band:.6g} deviates from 2/3 of a_band "
                f"({2.0 * self.a_band / 3.0:.6g})"
            )
        if abs(self.actin_arc - math.pi / 2.0 * self.i_band) > 1e-9:
            msgs.append(
                f"actin_arc={self.actin_arc:.6g} deviates from the rest semicircle "
                f"length {math.pi / 2.0 * self.i_band:.6g}"
            )
        return msgs

    @property
    def rest_radius(self) -> float:
        """Rest major semi-axis of the actin half-ellipse (half the I-band)."""
        return self.i_band / 2.0


@dataclass(frozen=True)
class EllipseHalf:
    """A half ellipse with major semi-axis r1 >= minor semi-axis r2 > 0 (mm)."""

    r1: float
    r2: float
    eccentricity: float = field(init=False)

    def __post_init__(self) -> None:
        if self.r2 <= 0.0:
            raise DomainError(f"minor semi-axis must be positive, got {self.r2}")
        if self.r1 < self.r2:
            raise DomainError(
                f"major semi-axis {self.r1} must not be smaller than minor {self.r2}; "
                "orient the axes before constructing"
            )
        ratio = self.r2 / self.r1
        object.__setattr__(self, "eccentricity", math.sqrt(max(0.0, 1.0 - ratio * ratio)))

    def arc_length(self) -> float:
        """Arc length of the half ellipse, 2*r1*E(e)."""
        e = self.eccentricity
        return 2.0 * self.r1 * float(ellipe(e * e))


@dataclass(frozen=True)
class MyofibrilSpec:
    """A complete simulatable design: n sarcomeres of one geometry and material."""

    n: int
    sarcomere: SarcomereGeometry
    spa: SpaGeometry
    material: YeohMaterial

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"sarcomere count must be >= 1, got {self.n}")
        for msg in self.sarcomere.conformity_warnings():
            warnings.warn(msg, stacklevel=2)
        if self.sarcomere.myosin_height is not None:
            low, high = myosin_height_bounds(self.sarcomere.a_band, self.spa.t_w, self.spa.h_ch)
            h_m = self.sarcomere.myosin_height
            if not (low - 1e-9 <= h_m <= high + 1e-9):
                warnings.warn(
                    f"myosin_height={h_m:.6g} outside the design bounds "
                    f"[{low:.6g}, {high:.6g}]",
                    stacklevel=2,
                )


def resting_length(spec: MyofibrilSpec) -> float:
    """Rest length of the myofibril, n * (a_band + i_band), in mm."""
    return spec.n * (spec.sarcomere.a_band + spec.sarcomere.i_band)


def check_length_ratio(current: float, resting: float) -> str:
    """Classify a length ratio against the allowed contraction/stretch band.

    Returns "valid" for 0.6 <= current/resting <= 1.7, otherwise
    "over-contracted" or "over-stretched".
    """
    if resting <= 0.0:
        raise DomainError(f"resting length must be positive, got {resting}")
    ratio = current / resting
    if ratio < LENGTH_RATIO_MIN:
        return RATIO_OVER_CONTRACTED
    if ratio > LENGTH_RATIO_MAX:
        return RATIO_OVER_STRETCHED
    return RATIO_VALID


def design_from_a_band(a_band: float) -> SarcomereGeometry:
    """Derive a rule-conforming sarcomere geometry from the A-band length.

    i_band = (2/3)*a_band, the rest actin forms a semicircle of radius
    a_band/3 so actin_arc = (pi/3)*a_band. The myosin height is left unset;
    pick it within myosin_height_bounds once the chamber stack is known.
    """
    if a_band <= 0.0:
        raise DomainError(f"a_band must be positive, got {a_band}")
    i_band = 2.0 * a_band / 3.0
    return SarcomereGeometry(
        a_band=a_band,
        i_band=i_band,
        actin_arc=math.pi / 2.0 * i_band,
    )


def myosin_height_bounds(a_band: float, t_w: float, h_ch: float) -> tuple[float, float]:
    """Feasible [low, high] myosin height in mm for a given chamber stack.

    low corresponds to the rest semicircle, high to the fully contracted
    actin; both include the rigid 2*t_w + h_ch chamber sandwich.
    """
    if a_band <= 0.0 or t_w <= 0.0 or h_ch <= 0.0:
        raise DomainError("myosin height bounds require positive dimensions")
    stack = 2.0 * t_w + h_ch
    return 2.0 * a_band / 3.0 + stack, math.pi / 3.0 * a_band + stack


def semi_ellipse_arc_length(r1: float, r2: float) -> float:
    """Arc length of a half ellipse with semi-axes r1 >= r2 > 0, in mm.

    Equals 2*r1*E(e) with E the complete elliptic integral of the second
    kind and e the eccentricity; ranges from 2*r1 (degenerate) to pi*r1
    (circle).
    """
    return EllipseHalf(r1, r2).arc_length()


def solve_major_axis(arc_length: float, minor_diameter: float) -> float:
    """Horizontal semi-axis of the half ellipse with a given arc and vertical chord.

    minor_diameter is the vertical chord (twice the vertical semi-axis). In
    the usual regime (arc_length > pi/2 * minor_diameter) the horizontal
    semi-axis is the major one and satisfies
    semi_ellipse_arc_length(r1, minor_diameter/2) = arc_length. Past the
    semicircle point the ellipse is taller than wide and the swapped problem
    is solved instead; the returned horizontal semi-axis may then be smaller
    than minor_diameter/2 and tends to zero at full contraction. An exact
    semicircle (to 1e-12 relative) returns minor_diameter/2 directly.

    Raises DomainError when arc_length <= minor_diameter: no half ellipse has
    an arc that short for that chord.
    """
    if arc_length <= 0.0 or minor_diameter <= 0.0:
        raise DomainError("arc length and chord must be positive")
    if arc_length <= minor_diameter:
        raise DomainError(
            f"arc length {arc_length:.6g} must exceed the vertical chord "
            f"{minor_diameter:.6g}"
        )
    b = minor_diameter / 2.0
    circle_arc = math.pi * b
    if abs(arc_length - circle_arc) <= _CIRCLE_SNAP_REL * arc_length:
        return b

    if arc_length > circle_arc:
        # Wide regime: horizontal semi-axis is the major one, in (b, arc/2].
        lo, hi = b, arc_length / 2.0
        func = lambda r1: semi_ellipse_arc_length(r1, b) - arc_length
    else:
        # Tall regime: the chord is the major axis; solve for the horizontal
        # minor semi-axis in (0, b).
        lo, hi = 0.0, b
        func = lambda rh: _tall_arc_length(b, rh) - arc_length
    return brentq(func, lo, hi, xtol=_ARC_SOLVE_XTOL, rtol=8.9e-16, maxiter=200)


def _tall_arc_length(b: float, rh: float) -> float:
    # Arc length with vertical major semi-axis b and horizontal minor rh;
    # continuous limit 2*b at rh = 0.
    if rh <= 0.0:
        return 2.0 * b
    return semi_ellipse_arc_length(b, rh)


def _rest_chord(spec: MyofibrilSpec) -> float:
    # Deformable vertical chord of the actin half-ellipse at rest: the myosin
    # height minus the rigid 2*t_w + h_ch sandwich, or the I-band when no
    # myosin height was chosen (identical for rule-conforming designs).
    if spec.sarcomere.myosin_height is not None:
        chord = spec.sarcomere.myosin_height - 2.0 * spec.spa.t_w - spec.spa.h_ch
        if chord <= 0.0:
            raise DomainError(
                "myosin_height leaves no room for the actin chord "
                f"(chord={chord:.6g} mm)"
            )
        return chord
    return spec.sarcomere.i_band


def current_major_axis(spec: MyofibrilSpec, delta_hm: float) -> float:
    """Horizontal semi-axis r1 (mm) of the actin after the myosin grew by delta_hm."""
    if delta_hm < 0.0:
        raise DomainError(f"delta_hm must be non-negative, got {delta_hm}")
    chord = _rest_chord(spec) + delta_hm
    return solve_major_axis(spec.sarcomere.actin_arc, chord)


def myofibril_length(spec: MyofibrilSpec, delta_hm: float) -> float:
    """Myofibril length n * (a_band + 2*r1) in mm after a myosin height change.

    Strictly decreasing in delta_hm: a taller myosin pulls the actin ends
    together. At delta_hm = 0 a rule-conforming design reproduces
    resting_length exactly; the feasible range ends where the chord reaches
    the actin arc length (full contraction, length -> n * a_band).
    """
    r1 = current_major_axis(spec, delta_hm)
    return spec.n * (spec.sarcomere.a_band + 2.0 * r1)


def contraction_angle(spa: SpaGeometry, lambda_jz: float, actin_arc: float) -> float:
    """Angle theta (rad) between the actin chord approximation and the horizontal.

    theta = arccos((2*t_w + h_ch + 2*lambda_jz*h_jz) / actin_arc), strictly
    decreasing in lambda_jz. Raises DomainError when the stacked height
    reaches the arc length (argument >= 1) or the argument is non-positive.
    """
    if actin_arc <= 0.0:
        raise DomainError(f"actin arc must be positive, got {actin_arc}")
    stacked = 2.0 * spa.t_w + spa.h_ch + 2.0 * lambda_jz * spa.h_jz
    ratio = stacked / actin_arc
    if ratio >= 1.0:
        raise DomainError(
            f"actin arc {actin_arc:.6g} mm too short for the stacked height "
            f"{stacked:.6g} mm (cos(theta) >= 1)"
        )
    if ratio <= 0.0:
        raise DomainError(f"cos(theta) must be positive, got {ratio:.6g}")
    return math.acos(ratio)
