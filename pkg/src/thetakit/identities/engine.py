"""Numerical evaluation and randomized verification of catalog identities.

Terms are evaluated in split form mantissa * exp(log_scale): the
reduction records supply log-form multipliers, so identities remain
checkable even where the raw theta values overflow the double range
(small Im tau with sizable Im u).  The relative residual of an identity
is |LHS - RHS| divided by the total magnitude of all terms on both
sides (plus a tiny floor), which stays meaningful under catastrophic
cancellation of large terms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..core import (
    DEFAULT_SETTINGS,
    PI,
    EvalSettings,
    ModularParameter,
    TruncationError,
    cexp,
    gauss_product_theta4,
    theta,
    theta1_prime0,
)
from ..reduction import HalfPeriod, eval_reduced, full_reduction, half_period_shift
from .catalog import catalog_by_id
from .dsl import DTHETA1, GAUSS4, PI_CONST, Identity, ThetaFactor

__all__ = [
    "UnknownIdentityError",
    "VariableBinding",
    "ResidualReport",
    "SamplingBox",
    "DEFAULT_BOX",
    "STRESS_BOX",
    "RESIDUAL_EPS",
    "dual_vars",
    "bracket_product",
    "evaluate_identity",
    "verify",
    "KoornwinderReport",
    "koornwinder_equivalence_check",
]

RESIDUAL_EPS = 1e-300

# both sides below this magnitude carry no information; resample
_DEGENERATE_LOG = math.log(1e-250)
_RESAMPLE_LIMIT = 64

_LOG_EPS = math.log(RESIDUAL_EPS)


class UnknownIdentityError(KeyError):
    """Requested identity id is not in the catalog."""


@dataclass
class VariableBinding:
    """Complex values for an identity's free variables plus the base tau."""

    values: dict[str, complex]
    tau: ModularParameter


@dataclass
class ResidualReport:
    """Worst residuals of one identity over a batch of random trials."""

    identity_id: str
    trials: int
    max_abs_residual: float
    max_rel_residual: float
    failing_binding: VariableBinding | None = None


@dataclass(frozen=True)
class SamplingBox:
    """Uniform sampling ranges for variables and tau."""

    var_re: tuple[float, float] = (-1.0, 1.0)
    var_im: tuple[float, float] = (-1.0, 1.0)
    tau_re: tuple[float, float] = (-0.5, 0.5)
    tau_im: tuple[float, float] = (0.5, 2.0)


DEFAULT_BOX = SamplingBox()
STRESS_BOX = SamplingBox(tau_im=(1e-3, 0.1))


def dual_vars(
    w: complex, x: complex, y: complex, z: complex
) -> tuple[complex, complex, complex, complex]:
    """The involutive map W' = (-W+X+Y+Z)/2 and cyclic companions."""
    h = (w + x + y + z) / 2.0
    return (h - w, h - x, h - y, h - z)


def bracket_product(
    indices: tuple[int, int, int, int],
    w: complex,
    x: complex,
    y: complex,
    z: complex,
    tau: ModularParameter,
    primed: bool = False,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """[pqrs] = t_p(W) t_q(X) t_r(Y) t_s(Z), at dual points when primed."""
    points = dual_vars(w, x, y, z) if primed else (w, x, y, z)
    value = 1.0 + 0j
    for r, point in zip(indices, points):
        value *= eval_reduced(r, point, tau, settings)
    return value


def _theta_scaled(
    r: int, u: complex, tau: ModularParameter, settings: EvalSettings
) -> tuple[complex, float]:
    """theta_r(u|tau) as (mantissa, log_scale) via full reduction."""
    record = full_reduction(r, u, tau)
    value = theta(record.map_index(r), record.new_u, record.new_tau, settings)
    mu = record.log_multiplier
    return value * cexp(1j * mu.imag), mu.real


def _factor_scaled(
    factor: ThetaFactor,
    binding: VariableBinding,
    settings: EvalSettings,
    use_reduction: bool,
) -> tuple[complex, float]:
    """One factor as (mantissa, log_scale)."""
    if factor.index == PI_CONST:
        return complex(PI), 0.0
    base = binding.tau if factor.tau_multiplier == 1 else binding.tau.scaled(2)
    if factor.index == DTHETA1:
        return theta1_prime0(base, settings), 0.0
    if factor.index == GAUSS4:
        return gauss_product_theta4(base, settings), 0.0

    lf = factor.argument
    w = complex(float(lf.const))
    for name, c in lf.var_coeffs:
        w += c * binding.values[name]
    # the argument's tau coefficient is relative to the base tau
    sigma = lf.tau_coeff / factor.tau_multiplier
    r = factor.index
    if not use_reduction:
        return theta(r, w + float(sigma) * base.tau, base, settings), 0.0
    if sigma.denominator == 2:
        # route the half-period part through the shift table: better
        # accuracy than summing on the Im cell boundary
        whole = sigma - Fraction(1, 2)
        point = w + float(whole) * base.tau
        record = half_period_shift(r, HalfPeriod.TAU_HALF, point, base)
        mantissa, scale = _theta_scaled(
            record.map_index(r), point, base, settings
        )
        mu = record.log_multiplier
        return mantissa * cexp(1j * mu.imag), scale + mu.real
    return _theta_scaled(r, w + float(sigma) * base.tau, base, settings)


@dataclass
class _EvalDetail:
    abs_residual: float
    rel_residual: float
    lhs_log_mag: float
    rhs_log_mag: float


def _evaluate_detail(
    identity: Identity,
    binding: VariableBinding,
    settings: EvalSettings,
    use_reduction: bool,
) -> _EvalDetail:
    cache: dict[ThetaFactor, tuple[complex, float]] = {}

    def factor_value(f: ThetaFactor) -> tuple[complex, float]:
        hit = cache.get(f)
        if hit is None:
            hit = _factor_scaled(f, binding, settings, use_reduction)
            cache[f] = hit
        return hit

    sides: list[list[tuple[complex, float]]] = []
    log_max = -math.inf
    finite = True
    for side in (identity.lhs, identity.rhs):
        evaluated = []
        for term in side:
            mantissa = complex(float(term.coefficient))
            scale = 0.0
            for f in term.factors:
                m, s = factor_value(f)
                mantissa *= m
                scale += s
            if not (math.isfinite(mantissa.real) and math.isfinite(mantissa.imag)):
                finite = False
            if mantissa != 0:
                log_max = max(log_max, scale)
            evaluated.append((mantissa, scale))
        sides.append(evaluated)

    if not finite:
        return _EvalDetail(math.inf, math.inf, math.inf, math.inf)
    if log_max == -math.inf:  # every term is exactly zero
        return _EvalDetail(0.0, 0.0, -math.inf, -math.inf)

    sums = []
    mags = []
    denom = 0.0
    for evaluated in sides:
        total = 0j
        mag = 0.0
        for mantissa, scale in evaluated:
            z = mantissa * math.exp(min(scale - log_max, 0.0))
            total += z
            mag += abs(z)
        sums.append(total)
        mags.append(mag)
        denom += mag

    diff = abs(sums[0] - sums[1])
    floor_log = _LOG_EPS - log_max
    floor = math.exp(floor_log) if floor_log < 700.0 else math.inf
    rel = diff / (floor + denom)
    if diff == 0.0:
        abs_res = 0.0
    elif log_max > 700.0:
        abs_res = math.inf
    else:
        abs_res = diff * math.exp(log_max)

    def side_log(mag: float) -> float:
        return log_max + math.log(mag) if mag > 0.0 else -math.inf

    return _EvalDetail(abs_res, rel, side_log(mags[0]), side_log(mags[1]))


def evaluate_identity(
    identity: Identity,
    binding: VariableBinding,
    settings: EvalSettings = DEFAULT_SETTINGS,
    use_reduction: bool = True,
) -> tuple[float, float]:
    """(absolute residual, relative residual) of the identity at the binding.

    With use_reduction=False every factor is summed directly, which is
    only viable where the raw series converges within max_terms.
    """
    detail = _evaluate_detail(identity, binding, settings, use_reduction)
    return detail.abs_residual, detail.rel_residual


def _sample_binding(
    rng: random.Random, variables: tuple[str, ...], box: SamplingBox
) -> VariableBinding:
    values = {
        name: complex(rng.uniform(*box.var_re), rng.uniform(*box.var_im))
        for name in variables
    }
    tau = ModularParameter(complex(rng.uniform(*box.tau_re), rng.uniform(*box.tau_im)))
    return VariableBinding(values, tau)


def verify(
    identity_ids,
    trials: int = 200,
    seed: int = 42,
    box: SamplingBox = DEFAULT_BOX,
    settings: EvalSettings = DEFAULT_SETTINGS,
    rel_tol: float = 1e-9,
    use_reduction: bool = True,
    catalog: dict[str, Identity] | None = None,
) -> list[ResidualReport]:
    """Randomized residual check, deterministic for a given seed.

    Each identity gets its own RNG stream derived from (seed, id), so
    report order and values do not depend on which other ids are
    selected.  Bindings where both sides are numerically negligible are
    resampled.  Raises UnknownIdentityError for ids not in the catalog
    (the built-in one unless another mapping is supplied).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    by_id = catalog_by_id() if catalog is None else catalog
    reports = []
    for identity_id in identity_ids:
        identity = by_id.get(identity_id)
        if identity is None:
            raise UnknownIdentityError(identity_id)
        rng = random.Random(f"{seed}:{identity_id}")
        max_abs = 0.0
        max_rel = 0.0
        failing = None
        for _ in range(trials):
            binding = _sample_binding(rng, identity.variables, box)
            detail = _evaluate_guarded(identity, binding, settings, use_reduction)
            resamples = 0
            while (
                max(detail.lhs_log_mag, detail.rhs_log_mag) < _DEGENERATE_LOG
                and resamples < _RESAMPLE_LIMIT
            ):
                binding = _sample_binding(rng, identity.variables, box)
                detail = _evaluate_guarded(identity, binding, settings, use_reduction)
                resamples += 1
            rel = detail.rel_residual
            if math.isnan(rel):
                rel = math.inf
            max_abs = max(max_abs, detail.abs_residual)
            if rel > max_rel:
                max_rel = rel
            if failing is None and rel > rel_tol:
                failing = binding
        reports.append(
            ResidualReport(identity_id, trials, max_abs, max_rel, failing)
        )
    return reports


def _evaluate_guarded(
    identity: Identity,
    binding: VariableBinding,
    settings: EvalSettings,
    use_reduction: bool,
) -> _EvalDetail:
    """Like _evaluate_detail, but an exhausted truncation counts as a
    failed trial instead of aborting the whole verification run."""
    try:
        return _evaluate_detail(identity, binding, settings, use_reduction)
    except TruncationError:
        return _EvalDetail(math.inf, math.inf, math.inf, math.inf)


@dataclass
class KoornwinderReport:
    """Numerical form of the addition/bracket equivalence argument.

    a_j, b_j, c_j are the three quad products of index j in {1, 2}; the
    five relations tie them together, the last two being the r = 1 and
    r = 2 asymmetric addition identities that make the linear system
    for (A2, B2, C2) degenerate.
    """

    a1: complex
    b1: complex
    c1: complex
    a2: complex
    b2: complex
    c2: complex
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def _quad(
    j: int,
    p1: complex,
    p2: complex,
    p3: complex,
    p4: complex,
    tau: ModularParameter,
    settings: EvalSettings,
) -> complex:
    value = 1.0 + 0j
    for point in (p1, p2, p3, p4):
        value *= eval_reduced(j, point, tau, settings)
    return value


def koornwinder_equivalence_check(
    u: complex,
    v: complex,
    x: complex,
    y: complex,
    tau: ModularParameter,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> KoornwinderReport:
    """Check the five linear relations among the quad products A_j, B_j, C_j.

    A_j pairs (u, x) with (v, y), B_j pairs (u, y) with (v, x), C_j
    pairs (u, v) with (x, y).  The three bracket-derived relations
    A1-B1 = B2-A2, A1-C1 = A2-C2, B1+C1 = B2-C2 form a degenerate
    system whose compatibility conditions A1-B1 = C1 and C1 = B2-A2
    are exactly the asymmetric addition identities with r = 1, 2.
    """
    a = {j: _quad(j, u + x, u - x, v + y, v - y, tau, settings) for j in (1, 2)}
    b = {j: _quad(j, u + y, u - y, v + x, v - x, tau, settings) for j in (1, 2)}
    c = {j: _quad(j, u + v, u - v, x + y, x - y, tau, settings) for j in (1, 2)}

    # quantities below the system's own rounding noise count as zero,
    # so fully degenerate relations read as 0 = 0
    noise = 1e-14 * sum(abs(q) for q in (*a.values(), *b.values(), *c.values()))

    def rel(defect: complex, *parts: complex) -> float:
        scale = sum(abs(p) for p in parts)
        return abs(defect) / (RESIDUAL_EPS + noise + scale)

    residuals = {
        "A1-B1=B2-A2": rel(a[1] - b[1] - (b[2] - a[2]), a[1], b[1], b[2], a[2]),
        "A1-C1=A2-C2": rel(a[1] - c[1] - (a[2] - c[2]), a[1], c[1], a[2], c[2]),
        "B1+C1=B2-C2": rel(b[1] + c[1] - (b[2] - c[2]), b[1], c[1], b[2], c[2]),
        "A1-B1=C1": rel(a[1] - b[1] - c[1], a[1], b[1], c[1]),
        "C1=B2-A2": rel(c[1] - (b[2] - a[2]), c[1], b[2], a[2]),
    }
    return KoornwinderReport(a[1], b[1], c[1], a[2], b[2], c[2], residuals)
