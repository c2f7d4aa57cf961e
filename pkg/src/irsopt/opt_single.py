"""Single-element optimization: joint closed form and semi-adaptive schemes.

Three schemes are implemented.

* Joint: the phase-aligned envelope decreases with the reflected path
  length, so the element goes to the link midpoint (shortest path) and the
  phase cancels the excess path delay there.
* Location at fixed phase: the received power oscillates in the path length
  through a cosine, so stationary points are extracted by substituting a
  quartic polynomial proxy for the cosine (valid on half-period windows
  around each constructive peak), differentiating, and solving the resulting
  quintic per window. Candidates — polished quintic roots, window edges, and
  the domain endpoints — are all scored with the exact power expression.
* Phase at fixed location: concave on the constructive half-period, with the
  closed-form aligner as its global maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .core import (
    TWO_PI,
    ScenarioConfig,
    location_from_path_length,
    two_ray_path_length,
    wrap_angle,
)
from .errors import NoFeasibleBranchError, OutOfRangeError
from .power import _single_power_at_path

__all__ = [
    "CosineFit",
    "PAPER_COS_FIT",
    "QuinticCandidate",
    "OptimizationOutcome",
    "joint_optimum_single",
    "compose_cos_polynomial",
    "optimal_location_fixed_phase",
    "optimal_phase_fixed_location",
]


@dataclass(frozen=True)
class CosineFit:
    """Even quartic approximation cos(z) ~ q4 z^4 + q2 z^2 + q0 on [-pi/2, pi/2]."""

    q4: float
    q2: float
    q0: float

    def as_polynomial(self) -> Polynomial:
        return Polynomial([self.q0, 0.0, self.q2, 0.0, self.q4])

    def __call__(self, z):
        return self.q4 * z**4 + self.q2 * z**2 + self.q0


#: Canonical quartic cosine fit; max absolute error about 0.023 on its window.
PAPER_COS_FIT = CosineFit(0.0259, -0.4507, 0.9772)


@dataclass(frozen=True)
class QuinticCandidate:
    """One examined maximizer candidate for the fixed-phase location scheme.

    ``kind`` is "stationary" for a polished quintic root and "edge" for a
    window or domain endpoint. ``x_pair_m`` holds the two locations (symmetric
    about the link midpoint) realizing ``d_root_m``.
    """

    d_root_m: float
    branch_m: int
    power_w: float
    x_pair_m: tuple[float, float]
    kind: str


@dataclass(frozen=True)
class OptimizationOutcome:
    """Result of one optimization scheme run."""

    optimizer: str
    x_star_m: float
    x_pair_m: tuple[float, float]
    theta_rad: float
    power_w: float
    candidates: tuple[QuinticCandidate, ...]


def joint_optimum_single(cfg: ScenarioConfig) -> tuple[float, float, float]:
    """Jointly optimal location, phase shift, and the power they achieve.

    The element sits at the link midpoint; the phase shift is the canonical
    wrap of ``k (d_min - D)``, which sets the interference cosine to one.
    """
    d_min = cfg.min_path_length()
    x_star = cfg.link_distance_m / 2.0
    theta_star = wrap_angle(cfg.wavenumber * (d_min - cfg.link_distance_m))
    power = float(_single_power_at_path(d_min, theta_star, cfg))
    return x_star, theta_star, power


def _compose_cos_poly(theta_eff: float, k: float, dist: float, fit: CosineFit) -> Polynomial:
    """Expand the quartic cosine proxy of cos(k d - theta_eff - k D) in d."""
    shift = Polynomial([-(theta_eff + k * dist), k])  # z as a polynomial in d
    return fit.as_polynomial()(shift)


def compose_cos_polynomial(
    theta_eff: float, cfg: ScenarioConfig, fit: CosineFit = PAPER_COS_FIT
) -> Polynomial:
    """Degree-4 polynomial in ``d`` matching the fitted cosine of the phase lag.

    Coefficients come from symbolic composition of the quartic with the
    linear map ``d -> k d - theta_eff - k D`` (binomial expansion), so the
    polynomial evaluates identically to the fitted quartic at any ``d``.
    """
    return _compose_cos_poly(theta_eff, cfg.wavenumber, cfg.link_distance_m, fit)


def _stationarity_quintic(quartic: Polynomial, cfg: ScenarioConfig) -> Polynomial:
    """Numerator polynomial of d(power)/dd after the cosine proxy is inserted.

    With power ~ 1/D^2 + g^2/d^2 + (2g/(dD)) Q(d), the derivative cleared of
    1/d^3 is (2g/D) d (d Q'(d) - Q(d)) - 2 g^2: degree five, with a
    structurally zero d^2 coefficient.
    """
    d = Polynomial([0.0, 1.0])
    g = cfg.gamma
    dist = cfg.link_distance_m
    return (2.0 * g / dist) * d * (d * quartic.deriv() - quartic) - 2.0 * g * g


def _true_power_derivatives(d: float, theta: float, cfg: ScenarioConfig):
    """First and second derivative of the exact power w.r.t. path length."""
    dist = cfg.link_distance_m
    k = cfg.wavenumber
    g = cfg.gamma
    amp = cfg.power_scale
    zeta = k * d - theta - k * dist
    c, s = math.cos(zeta), math.sin(zeta)
    first = amp * (-2.0 * g * g / d**3 + (2.0 * g / dist) * (-c / d**2 - k * s / d))
    second = amp * (
        6.0 * g * g / d**4
        + (2.0 * g / dist) * (2.0 * c / d**3 + 2.0 * k * s / d**2 - k * k * c / d)
    )
    return first, second


def _newton_polish(d: float, theta: float, cfg: ScenarioConfig) -> float:
    """One Newton step on the exact stationarity condition."""
    first, second = _true_power_derivatives(d, theta, cfg)
    if second == 0.0 or not math.isfinite(second):
        return d
    step = first / second
    if abs(step) > 0.5 * cfg.wavelength_m:  # runaway step: keep the raw root
        return d
    return d - step


def optimal_location_fixed_phase(
    theta: float, cfg: ScenarioConfig, fit: CosineFit = PAPER_COS_FIT
) -> OptimizationOutcome:
    """Best element location for a fixed reflection phase shift.

    Enumerates every half-period window of the phase lag
    ``z = k d - theta - k D`` that intersects the reachable path-length
    interval, solves the per-window stationarity quintic, polishes real
    in-window roots with one Newton step on the exact derivative, adds
    window edges and the domain endpoints as candidates, and returns the
    candidate with the highest exact power. Of the two locations realizing
    the winning path length the smaller is reported (deterministic
    tie-break); ties in power resolve to the lowest window index, then the
    smaller path length.
    """
    if not (0.0 <= theta < TWO_PI):
        raise OutOfRangeError(f"theta={theta} outside [0, 2*pi)")
    dist = cfg.link_distance_m
    k = cfg.wavenumber
    d_min = cfg.min_path_length()
    d_max = two_ray_path_length(0.0, cfg)
    half = math.pi / 2.0

    def lag(d: float) -> float:
        return k * d - theta - k * dist

    def path_at(z: float) -> float:
        return (z + theta + k * dist) / k

    z_lo, z_hi = lag(d_min), lag(d_max)
    m_lo = math.ceil((z_lo - half) / TWO_PI)
    m_hi = math.floor((z_hi + half) / TWO_PI)

    raw: list[tuple[float, int, str]] = []
    for m in range(m_lo, m_hi + 1):
        w_lo = max(z_lo, TWO_PI * m - half)
        w_hi = min(z_hi, TWO_PI * m + half)
        if w_lo > w_hi:
            continue
        d_a, d_b = path_at(w_lo), path_at(w_hi)
        quartic = _compose_cos_poly(theta + TWO_PI * m, k, dist, fit)
        quintic = _stationarity_quintic(quartic, cfg)
        lead_scale = abs(quintic.coef[-1])
        for root in quintic.roots():
            if abs(root.imag) > 1e-8 * max(1.0, abs(root)):
                continue
            r = float(root.real)
            if not (d_a - 1e-9 <= r <= d_b + 1e-9):
                continue
            if abs(quintic(r)) > 1e-9 * lead_scale * max(1.0, abs(r)) ** 5:
                continue
            r = _newton_polish(r, theta, cfg)
            r = min(max(r, d_a), d_b)
            raw.append((r, m, "stationary"))
        raw.append((d_a, m, "edge"))
        raw.append((d_b, m, "edge"))

    # Domain endpoints may sit in a half-period no window covers.
    for d_end in (d_min, d_max):
        m_end = round(lag(d_end) / TWO_PI)
        raw.append((d_end, m_end, "edge"))

    if not raw:
        raise NoFeasibleBranchError("no candidate window intersects the path range")

    candidates = []
    for d_cand, m, kind in raw:
        d_cand = min(max(d_cand, d_min), d_max)
        power = float(_single_power_at_path(d_cand, theta, cfg))
        pair = location_from_path_length(d_cand, cfg)
        candidates.append(
            QuinticCandidate(
                d_root_m=d_cand,
                branch_m=m,
                power_w=power,
                x_pair_m=pair,
                kind=kind,
            )
        )

    best = min(candidates, key=lambda c: (-c.power_w, c.branch_m, c.d_root_m))
    return OptimizationOutcome(
        optimizer="location_fixed_phase",
        x_star_m=best.x_pair_m[0],
        x_pair_m=best.x_pair_m,
        theta_rad=theta,
        power_w=best.power_w,
        candidates=tuple(candidates),
    )


def optimal_phase_fixed_location(x: float, cfg: ScenarioConfig) -> tuple[float, float]:
    """Best phase shift for a fixed element location, and the power achieved.

    The aligner ``k (d - D)`` wrapped to [0, 2*pi) pins the interference
    cosine at one; the power is concave in the phase on that half-period,
    making the aligner the global maximizer.
    """
    d = two_ray_path_length(x, cfg)
    theta_star = wrap_angle(cfg.wavenumber * (d - cfg.link_distance_m))
    power = float(_single_power_at_path(d, theta_star, cfg))
    return theta_star, power
