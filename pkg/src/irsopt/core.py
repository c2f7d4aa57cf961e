"""Domain types, reflection-coefficient model, and path-length geometry.

Units are SI throughout (watts, meters, radians); no unit conversion happens
inside any operation. All types are immutable value objects and all
operations are pure functions, so everything here is safe for concurrent
read access.

Geometry convention: the access point sits at the origin, the user at
``(D, 0, 0)``, and the reflecting panel above the direct path. The
single-element model places the element at height ``h`` over location ``x``;
the multi-element model places an ``M x N`` grid of square elements (side
``2a``) whose ``(i, j)`` element is centered at
``(x' + (2j+1)a, y', h' + (2i+1)a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    DegenerateSystemError,
    IndexOutOfBoundsError,
    InfeasibleError,
    NegativeRcsError,
    OutOfRangeError,
    ValidationError,
)

TWO_PI = 2.0 * math.pi

__all__ = [
    "TWO_PI",
    "wrap_angle",
    "RcsFit",
    "PAPER_RCS_FIT",
    "AIRCRAFT_RCS_POINTS",
    "rcs_from_area",
    "reflection_coefficient_from_area",
    "fit_rcs_quadratic",
    "ScenarioConfig",
    "PanelGeometry",
    "PhaseProfile",
    "two_ray_path_length",
    "element_path_length",
    "element_path_lengths",
    "element_path_length_grid",
    "location_from_path_length",
]


def wrap_angle(theta: float) -> float:
    """Wrap an angle into [0, 2*pi) using floored modulo."""
    return float(np.mod(theta, TWO_PI))


@dataclass(frozen=True)
class RcsFit:
    """Quadratic radar-cross-section model sigma(s) = c2*s^2 + c1*s + c0."""

    c2: float
    c1: float
    c0: float

    def __call__(self, s):
        return self.c2 * s * s + self.c1 * s + self.c0


#: Canonical quadratic used to derive the panel reflection coefficient from
#: its area. Kept verbatim (it is what downstream numbers are built on) even
#: though refitting the aircraft data below yields different coefficients;
#: use :func:`fit_rcs_quadratic` to audit.
PAPER_RCS_FIT = RcsFit(0.2, -0.0961, -0.76)

#: Radar detectability data (area m^2, cross-section m^2) for four aircraft
#: classes; the audit input for :func:`fit_rcs_quadratic`.
AIRCRAFT_RCS_POINTS = (
    (96.0, 6.0),
    (68.64, 2.0),
    (39.862, 1.0),
    (20.224, 0.5),
)


def rcs_from_area(s: float, fit: RcsFit = PAPER_RCS_FIT) -> float:
    """Radar cross section (m^2) of an object of area ``s`` under ``fit``.

    May return a negative value below the fit's positive root; the caller
    decides how to treat that (see
    :func:`reflection_coefficient_from_area`).
    """
    if s <= 0:
        raise ValidationError(f"area must be positive, got {s}")
    return float(fit(s))


def reflection_coefficient_from_area(s: float, fit: RcsFit = PAPER_RCS_FIT) -> float:
    """Amplitude reflection coefficient sqrt(sigma(s)).

    Raises
    ------
    NegativeRcsError
        When the quadratic evaluates negative, i.e. ``s`` lies below the
        fit's positive root (about 2.2043 m^2 for the canonical fit) and
        the model's domain is violated. Values above 1 are accepted
        unclamped; the fit is empirical and not energy-normalized.
    """
    sigma = rcs_from_area(s, fit)
    if sigma < 0:
        raise NegativeRcsError(
            f"cross-section quadratic is negative at s={s} m^2; "
            "below the fit's validity domain"
        )
    return math.sqrt(sigma)


def fit_rcs_quadratic(points) -> RcsFit:
    """Least-squares quadratic through (area, cross-section) pairs.

    Audit tool: fits sigma = c2*s^2 + c1*s + c0 minimizing the squared
    residual sum, so the canonical coefficients can be checked against raw
    data.

    Raises
    ------
    DegenerateSystemError
        Fewer than 3 points, duplicate areas, or a singular system.
    """
    pts = [(float(s), float(sigma)) for s, sigma in points]
    if len(pts) < 3:
        raise DegenerateSystemError("need at least 3 points for a quadratic fit")
    areas = np.array([p[0] for p in pts])
    if len(np.unique(areas)) < 3:
        raise DegenerateSystemError("areas must contain at least 3 distinct values")
    rcs = np.array([p[1] for p in pts])
    vand = np.column_stack([areas**2, areas, np.ones_like(areas)])
    coeffs, _, rank, _ = np.linalg.lstsq(vand, rcs, rcond=None)
    if rank < 3:
        raise DegenerateSystemError("normal equations are singular")
    return RcsFit(float(coeffs[0]), float(coeffs[1]), float(coeffs[2]))


@dataclass(frozen=True)
class ScenarioConfig:
    """Link-level constants for one scenario.

    ``reflection_coeff`` may be given directly or derived from
    ``panel_area_m2`` through the canonical cross-section fit (an explicit
    coefficient wins when both are present). Antenna gains and end-node
    reflection coefficients default to the free-space assumption (unit
    gains, perfectly matched ends) under which the power model below is
    derived; they are carried for completeness but do not enter the model.
    """

    transmit_power_w: float
    link_distance_m: float
    wavelength_m: float
    offset_height_m: float | None = None
    panel_area_m2: float | None = None
    reflection_coeff: float | None = None
    tx_gain: float = 1.0
    rx_gain: float = 1.0
    end_reflection_coeffs: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        for name in ("transmit_power_w", "link_distance_m", "wavelength_m"):
            value = getattr(self, name)
            if not (value > 0):
                raise ValidationError(f"{name} must be positive, got {value}")
        if self.offset_height_m is not None and self.offset_height_m < 0:
            raise ValidationError(
                f"offset_height_m must be nonnegative, got {self.offset_height_m}"
            )
        if self.reflection_coeff is None and self.panel_area_m2 is not None:
            object.__setattr__(
                self,
                "reflection_coeff",
                reflection_coefficient_from_area(self.panel_area_m2),
            )
        if self.reflection_coeff is not None and self.reflection_coeff < 0:
            raise ValidationError(
                f"reflection_coeff must be nonnegative, got {self.reflection_coeff}"
            )

    @property
    def wavenumber(self) -> float:
        """Spatial angular frequency k = 2*pi / wavelength, rad/m."""
        return TWO_PI / self.wavelength_m

    @property
    def gamma(self) -> float:
        """Resolved amplitude reflection coefficient of the panel."""
        if self.reflection_coeff is None:
            raise ValidationError(
                "reflection_coeff unresolved: supply it or panel_area_m2"
            )
        return self.reflection_coeff

    @property
    def height(self) -> float:
        """Panel offset height for the single-element two-ray model."""
        if self.offset_height_m is None:
            raise ValidationError("offset_height_m is required for the two-ray model")
        return self.offset_height_m

    @property
    def power_scale(self) -> float:
        """Common prefactor P_t * (wavelength / 4 pi)^2 of every power term."""
        return self.transmit_power_w * (self.wavelength_m / (4.0 * math.pi)) ** 2

    def min_path_length(self) -> float:
        """Smallest achievable reflected path length, at the link midpoint."""
        h = self.height
        return 2.0 * math.sqrt(h * h + 0.25 * self.link_distance_m**2)

    def max_path_length(self) -> float:
        """Largest reflected path length on [0, D], attained at either end."""
        h = self.height
        d = self.link_distance_m
        return h + math.sqrt(d * d + h * h)


@dataclass(frozen=True)
class PanelGeometry:
    """An M x N grid of square reflecting elements of half-width ``a``.

    ``corner_x_m`` is the distance of the panel's leftmost point from the
    access point, ``lateral_offset_m`` its sideways offset from the direct
    path, and ``corner_height_m`` the height of its bottom-most point above
    the direct path.
    """

    rows: int
    cols: int
    half_width_m: float
    corner_x_m: float = 0.0
    lateral_offset_m: float = 0.0
    corner_height_m: float = 0.0

    def __post_init__(self):
        if self.rows < 1:
            raise ValidationError(f"rows must be >= 1, got {self.rows}")
        if self.cols < 1:
            raise ValidationError(f"cols must be >= 1, got {self.cols}")
        if not (self.half_width_m > 0):
            raise ValidationError(
                f"half_width_m must be positive, got {self.half_width_m}"
            )
        if self.corner_height_m < 0:
            raise ValidationError(
                f"corner_height_m must be nonnegative, got {self.corner_height_m}"
            )

    @property
    def element_count(self) -> int:
        return self.rows * self.cols

    def column_x_m(self) -> np.ndarray:
        """Element-center x coordinates per column, shape (cols,)."""
        j = np.arange(self.cols)
        return self.corner_x_m + (2 * j + 1) * self.half_width_m

    def row_height_m(self) -> np.ndarray:
        """Element-center heights per row, shape (rows,)."""
        i = np.arange(self.rows)
        return self.corner_height_m + (2 * i + 1) * self.half_width_m

    def at_corner_x(self, x: float) -> "PanelGeometry":
        """Copy of this panel translated so its leftmost point is at ``x``."""
        return replace(self, corner_x_m=float(x))


class PhaseProfile:
    """Per-element reflection phase shifts, wrapped canonically to [0, 2*pi).

    Wrapping happens once, at construction; the stored matrix is read-only.
    """

    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.array(values, dtype=float)
        if arr.ndim != 2:
            raise ValidationError("phase values must form a 2-D matrix")
        arr = np.mod(arr, TWO_PI)
        arr.flags.writeable = False
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def shape(self) -> tuple[int, int]:
        return self._values.shape

    @classmethod
    def uniform(cls, rows: int, cols: int, angle: float) -> "PhaseProfile":
        return cls(np.full((rows, cols), float(angle)))

    def matches(self, panel: PanelGeometry) -> bool:
        return self.shape == (panel.rows, panel.cols)

    def __repr__(self):
        return f"PhaseProfile(shape={self.shape})"


def two_ray_path_length(x: float, cfg: ScenarioConfig) -> float:
    """Reflected path length through a single element at location ``x``.

    Sum of the distances from the access point and from the user to the
    element placed at height ``h`` above location ``x`` on the direct path.

    Raises
    ------
    OutOfRangeError
        When ``x`` is outside [0, D].
    """
    d = cfg.link_distance_m
    if not (0.0 <= x <= d):
        raise OutOfRangeError(f"x={x} outside the link interval [0, {d}]")
    h = cfg.height
    return math.sqrt(x * x + h * h) + math.sqrt((d - x) ** 2 + h * h)


def _two_ray_lengths(xs: np.ndarray, cfg: ScenarioConfig) -> np.ndarray:
    """Vectorized two_ray_path_length with one range check for the grid."""
    xs = np.asarray(xs, dtype=float)
    if xs.size and (xs.min() < 0.0 or xs.max() > cfg.link_distance_m):
        raise OutOfRangeError("x grid extends outside [0, D]")
    h = cfg.height
    d = cfg.link_distance_m
    return np.sqrt(xs * xs + h * h) + np.sqrt((d - xs) ** 2 + h * h)


def element_path_length(
    i: int, j: int, panel: PanelGeometry, cfg: ScenarioConfig
) -> float:
    """Reflected path length through the (i, j) element of ``panel``."""
    if not (0 <= i < panel.rows and 0 <= j < panel.cols):
        raise IndexOutOfBoundsError(
            f"element ({i}, {j}) outside {panel.rows} x {panel.cols} grid"
        )
    a = panel.half_width_m
    ex = panel.corner_x_m + (2 * j + 1) * a
    ez = panel.corner_height_m + (2 * i + 1) * a
    y2 = panel.lateral_offset_m**2
    d = cfg.link_distance_m
    return math.sqrt(ex * ex + y2 + ez * ez) + math.sqrt(
        (d - ex) ** 2 + y2 + ez * ez
    )


def element_path_lengths(panel: PanelGeometry, cfg: ScenarioConfig) -> np.ndarray:
    """All element path lengths at once, shape (rows, cols)."""
    ex = panel.column_x_m()[None, :]
    ez = panel.row_height_m()[:, None]
    y2 = panel.lateral_offset_m**2
    d = cfg.link_distance_m
    return np.sqrt(ex * ex + y2 + ez * ez) + np.sqrt((d - ex) ** 2 + y2 + ez * ez)


def element_path_length_grid(
    xs: np.ndarray, panel: PanelGeometry, cfg: ScenarioConfig
) -> np.ndarray:
    """Element path lengths for every panel corner position in ``xs``.

    Returns shape (len(xs), rows, cols); used by location sweeps.
    """
    xs = np.asarray(xs, dtype=float)[:, None, None]
    a = panel.half_width_m
    col = ((2 * np.arange(panel.cols) + 1) * a)[None, None, :]
    ez = (panel.corner_height_m + (2 * np.arange(panel.rows) + 1) * a)[None, :, None]
    y2 = panel.lateral_offset_m**2
    d = cfg.link_distance_m
    ex = xs + col
    return np.sqrt(ex * ex + y2 + ez * ez) + np.sqrt((d - ex) ** 2 + y2 + ez * ez)


def location_from_path_length(d: float, cfg: ScenarioConfig) -> tuple[float, float]:
    """Invert the two-ray path length: locations whose reflected path is ``d``.

    The element at height ``h`` lies on an ellipse with foci at the two link
    ends; with semi-major axis ``d/2`` and focal half-distance ``D/2`` the
    two intersections with the height-``h`` line are symmetric about the
    midpoint. Both returned locations reproduce ``d`` to 1e-9 relative.

    Raises
    ------
    InfeasibleError
        When ``d`` is below the midpoint minimum or both intersections fall
        outside [0, D].
    """
    dist = cfg.link_distance_m
    h = cfg.height
    d_min = cfg.min_path_length()
    if d < d_min * (1.0 - 1e-12):
        raise InfeasibleError(f"path length {d} below the minimum {d_min}")
    if h == 0.0:
        # Degenerate ellipse: every location on the direct path has d == D.
        if abs(d - dist) <= 1e-9 * dist:
            return (0.0, dist)
        raise InfeasibleError(f"path length {d} unreachable at zero height")
    semi_major = max(d, d_min) / 2.0
    b2 = semi_major**2 - (dist / 2.0) ** 2
    radicand = max(1.0 - h * h / b2, 0.0)
    offset = semi_major * math.sqrt(radicand)
    grace = 1e-9 * max(dist, 1.0)
    if offset > dist / 2.0 + grace:
        raise InfeasibleError(
            f"path length {d} exceeds the maximum {cfg.max_path_length()} on [0, D]"
        )
    x1 = min(max(dist / 2.0 - offset, 0.0), dist)
    x2 = min(max(dist / 2.0 + offset, 0.0), dist)
    for x in (x1, x2):
        if abs(two_ray_path_length(x, cfg) - d) > 1e-9 * d:
            raise InfeasibleError(
                f"no location in [0, D] reproduces path length {d}"
            )
    return (x1, x2)
