"""Direct numerical evaluation of Jacobi theta functions.

Implements the two-characteristic series

    theta_{a,b}(u|tau) = sum_k exp{pi*i*tau*(k+a)^2 + 2*pi*i*(k+a)*(u+b)}

together with the four classical functions theta_1..theta_4 (its
half-integer specializations), their infinite-product forms, and the
theta constants theta_1'(0), theta_2(0), theta_3(0), theta_4(0).

Truncation is certified, not heuristic: the symmetric window [-N, N] is
chosen so that a geometric majorant of the dropped tail stays below the
tolerance, scaled by the peak term magnitude.  All arithmetic is double
precision.  Convergence degrades as Im(tau) -> 0; callers who need that
regime should go through the reduction module, which maps any valid
(u, tau) into the fast-convergence cell first.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PI",
    "TruncationError",
    "ModularParameter",
    "Characteristics",
    "EvalSettings",
    "DEFAULT_SETTINGS",
    "cexp",
    "INDEX_CHARACTERISTICS",
    "truncation_index",
    "theta_char",
    "theta",
    "theta_product",
    "theta_constants",
    "theta1_prime0",
    "gauss_product_theta4",
]

PI = math.pi
_TWO_PI = 2.0 * math.pi

# exp() overflows just above this; used to saturate rather than raise.
_EXP_MAX = 709.0

# Window radius above which the series loops switch to vectorized summation.
_VECTOR_CUTOFF = 64


class TruncationError(ArithmeticError):
    """No admissible truncation index exists under the term cap.

    Signals the caller to reduce the arguments (see the reduction
    module) before evaluating.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


def cexp(z: complex) -> complex:
    """exp(z) saturating to a complex infinity instead of raising."""
    z = complex(z)
    if z.real > _EXP_MAX:
        return complex(math.inf * math.cos(z.imag), math.inf * math.sin(z.imag))
    return cmath.exp(z)


@dataclass(frozen=True)
class ModularParameter:
    """Modular parameter restricted to the open upper half-plane.

    The positivity of Im(tau) is enforced here, once, so every series
    built on top is guaranteed a nome with |q| < 1.
    """

    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        if not (math.isfinite(tau.real) and math.isfinite(tau.imag)):
            raise ValueError("tau must be finite")
        if tau.imag <= 0.0:
            raise ValueError(f"Im(tau) must be strictly positive, got {tau.imag!r}")

    @property
    def q(self) -> complex:
        """Nome exp(pi*i*tau); |q| < 1 by construction."""
        return cmath.exp(1j * PI * self.tau)

    def scaled(self, factor: int) -> "ModularParameter":
        """The parameter factor*tau (used for the tau <-> 2tau families)."""
        return ModularParameter(factor * self.tau)


@dataclass(frozen=True)
class Characteristics:
    """Real characteristic pair (a, b) of theta_{a,b}."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("characteristics must be finite reals")

    def canonical(self) -> tuple["Characteristics", complex]:
        """Equivalent characteristics in [0, 1) x [0, 1) and the relating factor.

        Returns (c0, factor) with theta_{a,b} = factor * theta_{c0.a, c0.b};
        shifting a by an integer is free, shifting b by k costs exp(2*pi*i*a*k).
        """
        ja = math.floor(self.a)
        jb = math.floor(self.b)
        a0 = self.a - ja
        b0 = self.b - jb
        factor = cexp(2j * PI * a0 * jb)
        return Characteristics(a0, b0), factor


@dataclass(frozen=True)
class EvalSettings:
    """Accuracy knobs: absolute tail target and hard window cap."""

    tol: float = 1e-15
    max_terms: int = 1000

    def __post_init__(self):
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_SETTINGS = EvalSettings()

# index r -> (a, b, prefactor) per theta_r = prefactor * theta_{a,b}
INDEX_CHARACTERISTICS = {
    1: (0.5, 0.5, -1.0),
    2: (0.5, 0.0, 1.0),
    3: (0.0, 0.0, 1.0),
    4: (0.0, 0.5, 1.0),
}


def _check_index(r: int) -> None:
    if r not in (1, 2, 3, 4):
        raise ValueError(f"theta index must be 1..4, got {r!r}")


def truncation_index(
    tau: ModularParameter, u: complex, a: float, tol: float, max_terms: int = 1000
) -> int:
    """Smallest N whose majorant tail over |k| >= N stays below tol.

    The term of index k is bounded by |q|^{(k+a)^2} * e^{2*pi*|Im u|*|k+a|};
    past the peak each step shrinks the bound by at least
    |q|^{2(k+a)} * e^{2*pi*|Im u|}, so the tail is summed geometrically.
    Finite for every Im(tau) > 0, but raises TruncationError when the
    needed N exceeds max_terms (reduce the arguments first).
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    t = tau.tau.imag
    y = abs(complex(u).imag)
    a0 = a - round(a)  # exact series reindexing; |a0| <= 1/2
    log_q = -PI * t
    tpy = _TWO_PI * y
    for n in range(1, max_terms + 1):
        bound = 0.0
        usable = True
        for x0 in (n + a0, n - a0):  # first right / left tail offsets, both >= 1/2
            lead = log_q * x0 * x0 + tpy * x0
            ratio = log_q * (2.0 * x0 + 1.0) + tpy
            if ratio >= 0.0 or lead >= _EXP_MAX:
                usable = False
                break
            bound += math.exp(lead) / -math.expm1(ratio)
        if usable and bound < tol:
            return n
    raise TruncationError(
        f"truncation window exceeds max_terms={max_terms} "
        f"(Im tau={t:.3g}, |Im u|={y:.3g}); reduce the arguments first",
        required=max_terms + 1,
    )


def _peak_log(t: float, y_signed: float, a0: float) -> float:
    """Log-magnitude of the largest series term (discrete peak)."""
    k0 = round(-y_signed / t - a0)
    best = -math.inf
    for k in (k0 - 1, k0, k0 + 1):
        x = k + a0
        best = max(best, -PI * t * x * x - _TWO_PI * x * y_signed)
    return best


def _window(tau: ModularParameter, u: complex, a: float, settings: EvalSettings) -> int:
    """Window radius for absolute error < tol * max(1, peak term)."""
    peak = _peak_log(tau.tau.imag, complex(u).imag, a - round(a))
    eff_tol = settings.tol
    if peak > 0.0:
        eff_tol *= math.exp(min(peak, _EXP_MAX))
    return truncation_index(tau, u, a, eff_tol, settings.max_terms)


def theta_char(
    chars: Characteristics,
    u: complex,
    tau: ModularParameter,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """theta_{a,b}(u|tau) by certified series summation."""
    u = complex(u)
    n = _window(tau, u, chars.a, settings)
    a0 = chars.a - round(chars.a)
    tv = tau.tau
    ub = u + chars.b
    if n <= _VECTOR_CUTOFF:
        s = 0j
        for k in range(-n, n + 1):
            x = k + a0
            s += cexp(1j * PI * (tv * x * x + 2.0 * x * ub))
        return s
    k = np.arange(-n, n + 1, dtype=np.float64)
    x = k + a0
    with np.errstate(over="ignore", invalid="ignore"):
        s = complex(np.exp(1j * PI * (tv * x * x + 2.0 * x * ub)).sum())
    return s


def theta(
    r: int,
    u: complex,
    tau: ModularParameter,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """theta_r(u|tau), r in {1,2,3,4}, by its own explicit series.

    Deliberately not routed through theta_char so the two summations
    cross-check each other.
    """
    _check_index(r)
    u = complex(u)
    shift = 0.5 if r in (1, 2) else 0.0
    alternating = r in (1, 4)
    n = _window(tau, u, shift, settings)
    tv = tau.tau
    if n <= _VECTOR_CUTOFF:
        s = 0j
        for k in range(-n, n + 1):
            x = k + shift
            term = cexp(1j * PI * (tv * x * x + 2.0 * x * u))
            if alternating and (k & 1):
                term = -term
            s += term
    else:
        k = np.arange(-n, n + 1, dtype=np.float64)
        x = k + shift
        with np.errstate(over="ignore", invalid="ignore"):
            terms = np.exp(1j * PI * (tv * x * x + 2.0 * x * u))
            if alternating:
                terms[(n + 1) % 2 :: 2] *= -1.0  # positions where k = i - n is odd
            s = complex(terms.sum())
    return -1j * s if r == 1 else s


def theta_product(
    r: int,
    u: complex,
    tau: ModularParameter,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """theta_r(u|tau) by the triple product; independent oracle for theta().

    Factors are multiplied until the remaining ones provably deviate
    from 1 by less than the tolerance.
    """
    _check_index(r)
    u = complex(u)
    tv = tau.tau
    t = tv.imag
    y = abs(u.imag)
    aq2 = math.exp(-2.0 * PI * t)  # |q|^2
    sign = -1.0 if r in (1, 4) else 1.0
    odd_exponent = r in (3, 4)  # q^{2n-1} in the u-dependent factors

    if r == 1:
        p = 2.0 * cexp(1j * PI * tv / 4.0) * cmath.sin(PI * u)
    elif r == 2:
        p = 2.0 * cexp(1j * PI * tv / 4.0) * cmath.cos(PI * u)
    else:
        p = 1.0 + 0j

    # q-powers and z are combined in one exponent so extreme |Im u|
    # cannot produce 0 * inf
    for n in range(1, settings.max_terms + 1):
        e = 2 * n - 1 if odd_exponent else 2 * n
        even = 1.0 - cexp(2j * PI * tv * n)
        plus = 1.0 + sign * cexp(1j * PI * (tv * e + 2.0 * u))
        minus = 1.0 + sign * cexp(1j * PI * (tv * e - 2.0 * u))
        p *= even * plus * minus
        # the remaining factors deviate from 1 by at most this much
        log_u_dev = -PI * t * (e + 2.0) + _TWO_PI * y
        next_dev = aq2 ** (n + 1) + (
            2.0 * math.exp(log_u_dev) if log_u_dev < 0.0 else math.inf
        )
        if next_dev / (1.0 - aq2) < settings.tol:
            return p
    raise TruncationError(
        f"product truncation exceeds max_terms={settings.max_terms} "
        f"(|q|={math.sqrt(aq2):.6f} or |Im u|={y:.3g} too large); "
        "reduce the arguments first",
        required=settings.max_terms + 1,
    )


def theta1_prime0(
    tau: ModularParameter, settings: EvalSettings = DEFAULT_SETTINGS
) -> complex:
    """theta_1'(0|tau) by term-wise differentiation of the theta_1 series:

        theta_1'(0) = pi * sum_k (-1)^k (2k+1) q^{(k+1/2)^2}
    """
    n = truncation_index(tau, 0.0, 0.5, settings.tol, settings.max_terms) + 2
    tv = tau.tau
    s = 0j
    for k in range(-n - 1, n + 1):  # pair k with -k-1 so both halves are kept
        x = k + 0.5
        term = (2 * k + 1) * cexp(1j * PI * tv * x * x)
        if k & 1:
            term = -term
        s += term
    return PI * s


def theta_constants(
    tau: ModularParameter, settings: EvalSettings = DEFAULT_SETTINGS
) -> tuple[complex, complex, complex, complex]:
    """(theta_1'(0), theta_2(0), theta_3(0), theta_4(0)) at the given tau."""
    return (
        theta1_prime0(tau, settings),
        theta(2, 0.0, tau, settings),
        theta(3, 0.0, tau, settings),
        theta(4, 0.0, tau, settings),
    )


def gauss_product_theta4(
    tau: ModularParameter, settings: EvalSettings = DEFAULT_SETTINGS
) -> complex:
    """theta_4(0|tau) as the alternating product prod (1-q^n)/(1+q^n).

    A route independent of both the series and the triple product.
    """
    q = tau.q
    aq = abs(q)
    p = 1.0 + 0j
    qn = 1.0 + 0j
    an = 1.0
    for n in range(1, settings.max_terms + 1):
        qn *= q
        an *= aq
        p *= (1.0 - qn) / (1.0 + qn)
        if 2.0 * an * aq / (1.0 - aq) < settings.tol:
            return p
    raise TruncationError(
        f"product truncation exceeds max_terms={settings.max_terms} "
        f"(|q|={aq:.6f} too close to 1)",
        required=settings.max_terms + 1,
    )
