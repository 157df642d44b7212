"""Yeoh hyperelastic material model for silicone elastomers.

Uniaxial incompressible kinematics: the dominant stretch ratio lambda gives
the first invariant I1 = lambda^2 + 1/lambda^2 + 1, strain energy
W = sum_i Ci * (I1 - 3)^i (up to three terms) and Cauchy stress
sigma = dW/dlambda. Stresses are in MPa throughout, so stress times an area
in mm^2 yields newtons.

All functions are pure and thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from scipy.optimize import brentq

from .errors import DomainError, UnbracketedRootError

# Default upper end of the stretch bracket used for stress inversion and for
# the monotonicity check at construction time.
DEFAULT_LAMBDA_MAX = 5.0

_MONOTONICITY_SAMPLES = 256


@dataclass(frozen=True)
class StretchState:
    """A validated principal stretch ratio and its first invariant.

    lambda_ is the dominant stretch (>= 1 up to solver noise); i1 is derived
    under the incompressible uniaxial assumption.
    """

    lambda_: float
    i1: float = field(init=False)

    def __post_init__(self) -> None:
        if self.lambda_ < 1.0 - 1e-9:
            raise DomainError(f"stretch ratio must be >= 1, got {self.lambda_}")
        lam = self.lambda_
        object.__setattr__(self, "i1", lam * lam + 1.0 / (lam * lam) + 1.0)


@dataclass(frozen=True)
class YeohMaterial:
    """Yeoh coefficients (MPa) and density (kg/m^3, informational) of one elastomer.

    c3 is zero for second-order fits. The constructor rejects materials whose
    uniaxial Cauchy stress is not strictly increasing on the inversion bracket
    [1, DEFAULT_LAMBDA_MAX], since stress inversion requires a monotone curve.
    """

    name: str
    c1: float
    c2: float = 0.0
    c3: float = 0.0
    density: float = 0.0

    def __post_init__(self) -> None:
        if self.c1 <= 0.0:
            raise DomainError(f"{self.name}: c1 must be positive, got {self.c1}")
        prev = 0.0
        for k in range(1, _MONOTONICITY_SAMPLES + 1):
            lam = 1.0 + (DEFAULT_LAMBDA_MAX - 1.0) * k / _MONOTONICITY_SAMPLES
            cur = cauchy_stress(self, lam)
            if cur <= prev:
                raise DomainError(
                    f"{self.name}: Cauchy stress is not strictly increasing on "
                    f"[1, {DEFAULT_LAMBDA_MAX}] (sampled near lambda={lam:.4f})"
                )
            prev = cur


def strain_energy(material: YeohMaterial, lambda_: float) -> float:
    """Strain energy density W (MPa) at a uniaxial stretch ratio lambda_ >= 1.

    W = c1*u + c2*u^2 + c3*u^3 with u = I1 - 3 = lambda^2 + 1/lambda^2 - 2;
    W(1) = 0.
    """
    u = StretchState(lambda_).i1 - 3.0
    return material.c1 * u + material.c2 * u * u + material.c3 * u * u * u


def cauchy_stress(material: YeohMaterial, lambda_: float) -> float:
    """Uniaxial Cauchy stress sigma (MPa) at a stretch ratio lambda_ >= 1.

    sigma = dW/dlambda = (lambda - 1/lambda^3) * (2*c1 + 4*c2*u + 6*c3*u^2)
    with u = (lambda - 1/lambda)^2; sigma(1) = 0 and sigma is strictly
    increasing for any constructible material.
    """
    u = StretchState(lambda_).i1 - 3.0
    geo = lambda_ - 1.0 / lambda_**3
    return geo * (2.0 * material.c1 + 4.0 * material.c2 * u + 6.0 * material.c3 * u * u)


def _cauchy_stress_slope(material: YeohMaterial, lam: float) -> float:
    # d(sigma)/d(lambda); used to polish the inverse. At lambda = 1 this is 8*c1.
    u = lam * lam + 1.0 / (lam * lam) - 2.0
    geo = lam - 1.0 / lam**3
    poly = 2.0 * material.c1 + 4.0 * material.c2 * u + 6.0 * material.c3 * u * u
    dpoly = 4.0 * material.c2 + 12.0 * material.c3 * u
    return (1.0 + 3.0 / lam**4) * poly + 2.0 * geo * geo * dpoly


def inverse_cauchy_stress(
    material: YeohMaterial, sigma: float, lambda_max: float = DEFAULT_LAMBDA_MAX
) -> float:
    """Stretch ratio lambda in [1, lambda_max] such that cauchy_stress(lambda) = sigma.

    Solved by a bracketed root search (guaranteed for the monotone stress
    curve) and polished with Newton steps until the stress residual is below
    1e-12 * max(1, sigma); the contract is 1e-9 * max(1, sigma). Raises
    UnbracketedRootError when sigma exceeds the stress at lambda_max, in which
    case the caller may retry with a larger bracket.
    """
    if sigma < 0.0:
        raise DomainError(f"stress must be non-negative, got {sigma}")
    if sigma == 0.0:
        return 1.0
    sigma_cap = cauchy_stress(material, lambda_max)
    if sigma > sigma_cap:
        raise UnbracketedRootError(
            f"{material.name}: stress {sigma:.6g} MPa exceeds "
            f"{sigma_cap:.6g} MPa reachable at lambda_max={lambda_max}"
        )
    lam = brentq(
        lambda x: cauchy_stress(material, x) - sigma,
        1.0,
        lambda_max,
        xtol=1e-13,
        rtol=8.9e-16,
        maxiter=200,
    )
    tol = 1e-12 * max(1.0, sigma)
    for _ in range(3):
        resid = cauchy_stress(material, lam) - sigma
        if abs(resid) <= tol:
            break
        step = resid / _cauchy_stress_slope(material, lam)
        lam = min(max(lam - step, 1.0), lambda_max)
    return lam


def wall_stress_factor(t_w: float, h_ch: float) -> float:
    """Dimensionless factor K mapping fluid pressure to wall stress, sigma_w = P*K.

    Thin-walled chambers (strictly t_w < h_ch/4) use K = h_ch / (2*t_w);
    thicker walls use K = 1 + h_ch^2 / (2*t_w*(t_w + h_ch)). The jump at the
    branch boundary is intentional and is not smoothed.
    """
    if t_w <= 0.0 or h_ch <= 0.0:
        raise DomainError(f"wall dimensions must be positive, got t_w={t_w}, h_ch={h_ch}")
    if t_w < h_ch / 4.0:
        return h_ch / (2.0 * t_w)
    return 1.0 + h_ch * h_ch / (2.0 * t_w * (t_w + h_ch))


# Built-in elastomer table. Coefficients in MPa, densities in kg/m^3
# (the dragonskin-30 density is the vendor datasheet figure).
MATERIALS: dict[str, YeohMaterial] = {
    m.name: m
    for m in (
        YeohMaterial("ecoflex-00-30", c1=0.017, c2=-0.0002, c3=0.000023, density=1070.0),
        YeohMaterial("elastosil-m4601", c1=0.11, c2=0.02, density=1130.0),
        YeohMaterial("smooth-sil-950", c1=0.34, density=1240.0),
        YeohMaterial("dragonskin-30", c1=0.096, c2=0.0095, density=1080.0),
    )
}


def get_material(name: str) -> YeohMaterial:
    """Look up a built-in material by name; raises KeyError with the known names."""
    try:
        return MATERIALS[name]
    except KeyError:
        known = ", ".join(sorted(MATERIALS))
        raise KeyError(f"unknown material {name!r}; known materials: {known}") from None
