"""Conversions between theta-function notation conventions.

Covers the elliptic-integral normalization Theta_r(u) = theta_r(u/(2K))
with K = (pi/2)*theta_3(0)^2, the multiplicative coordinates (z, q),
and the two rescaled characteristic conventions found in the classical
literature.  Two further variations are documentation notes only: the
occasional "theta_0" in older books is our theta_4, and one classical
family takes pi*u where we take u.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_SETTINGS,
    PI,
    Characteristics,
    EvalSettings,
    ModularParameter,
    cexp,
    theta,
    theta_char,
)
from .reduction import eval_reduced

__all__ = [
    "EllipticK",
    "elliptic_k",
    "big_theta",
    "multiplicative_coords",
    "convert_characteristics",
]


@dataclass(frozen=True)
class EllipticK:
    """Complete elliptic integral of the first kind, K = (pi/2)*theta_3(0|tau)^2."""

    K: complex


def elliptic_k(
    tau: ModularParameter, settings: EvalSettings = DEFAULT_SETTINGS
) -> EllipticK:
    t3 = theta(3, 0.0, tau, settings)
    return EllipticK(0.5 * PI * t3 * t3)


def big_theta(
    r: int,
    u: complex,
    tau: ModularParameter,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """Theta_r(u|tau) = theta_r(u / (2K) | tau)."""
    k = elliptic_k(tau, settings).K
    return eval_reduced(r, complex(u) / (2.0 * k), tau, settings)


def multiplicative_coords(u: complex, tau: ModularParameter) -> tuple[complex, complex]:
    """(z, q) = (exp(2*pi*i*u), exp(pi*i*tau)); |q| < 1 always."""
    return cexp(2j * PI * complex(u)), tau.q


def convert_characteristics(
    convention: str,
    a: float,
    b: float,
    u: complex,
    tau: ModularParameter,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """Rescaled-characteristic theta values of the older conventions.

    "W":  exp(pi*i*a*b)    * theta_{-a/2, b/2}(u|tau)
    "HC": exp(-pi*i*a*b/2) * theta_{a/2, b/2}(u|tau)
    """
    if convention == "W":
        phase = cexp(1j * PI * a * b)
        chars = Characteristics(-a / 2.0, b / 2.0)
    elif convention == "HC":
        phase = cexp(-0.5j * PI * a * b)
        chars = Characteristics(a / 2.0, b / 2.0)
    else:
        raise ValueError(f"convention must be 'W' or 'HC', got {convention!r}")
    return phase * theta_char(chars, u, tau, settings)
