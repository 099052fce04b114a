"""WGS84 geodesic primitives: distances, destination points, local planar frames.

All game geometry (edge lengths, cookie spacing, proximity checks, ghost
movement interpolation) is measured on the WGS84 ellipsoid with Vincenty's
iterative inverse/direct solutions (Vincenty 1975, Survey Review 23(176)).
Point-to-segment work happens in a local tangent-plane frame (``LocalXY``)
whose error is sub-centimeter at the few-hundred-meter scale of a game space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# WGS84 ellipsoid parameters
WGS84_A = 6378137.0
WGS84_F = 1.0 / 298.257223563
WGS84_B = WGS84_A * (1.0 - WGS84_F)

# Standard published termination values for the lambda/sigma iterations.
CONVERGENCE_RAD = 1e-12
MAX_ITERATIONS = 200

# A game space is <= 1 km across; anything projected farther than this from
# its origin indicates misuse of the planar frame.
MAX_PROJECTION_METERS = 10_000.0


class NonConvergenceError(Exception):
    """Vincenty iteration exceeded its iteration cap (near-antipodal input)."""


class OutOfProjectionRangeError(Exception):
    """A point too far from the frame origin was pushed through ``to_local``."""


def _normalize_lon(lon: float) -> float:
    if -180.0 < lon <= 180.0:
        return lon
    wrapped = math.fmod(lon, 360.0)
    if wrapped <= -180.0:
        wrapped += 360.0
    elif wrapped > 180.0:
        wrapped -= 360.0
    return wrapped


@dataclass(frozen=True)
class GeoPoint:
    """WGS84 position in decimal degrees.

    Latitude must lie in [-90, 90]; longitude is normalized into (-180, 180].
    """

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.lat) or not (-90.0 <= self.lat <= 90.0):
            raise ValueError(f"latitude out of range [-90, 90]: {self.lat!r}")
        if not math.isfinite(self.lon):
            raise ValueError(f"longitude must be finite: {self.lon!r}")
        object.__setattr__(self, "lon", _normalize_lon(self.lon))


@dataclass(frozen=True)
class LocalXY:
    """Planar meters east (x) / north (y) of a fixed geographic origin."""

    x: float
    y: float
    origin: GeoPoint


def _inverse(a: GeoPoint, b: GeoPoint) -> tuple[float, float]:
    """Distance in meters and initial bearing in degrees from a to b.

    Vincenty's inverse solution on WGS84. Coincident points yield (0, 0).
    """
    if a.lat == b.lat and a.lon == b.lon:
        return 0.0, 0.0

    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    big_l = math.radians(_normalize_lon(b.lon - a.lon))

    u1 = math.atan((1.0 - WGS84_F) * math.tan(phi1))
    u2 = math.atan((1.0 - WGS84_F) * math.tan(phi2))
    sin_u1, cos_u1 = math.sin(u1), math.cos(u1)
    sin_u2, cos_u2 = math.sin(u2), math.cos(u2)

    lam = big_l
    for _ in range(MAX_ITERATIONS):
        sin_lam, cos_lam = math.sin(lam), math.cos(lam)
        sin_sigma = math.sqrt(
            (cos_u2 * sin_lam) ** 2
            + (cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lam) ** 2
        )
        if sin_sigma == 0.0:
            return 0.0, 0.0  # coincident after reduction
        cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_lam
        sigma = math.atan2(sin_sigma, cos_sigma)
        sin_alpha = cos_u1 * cos_u2 * sin_lam / sin_sigma
        cos_sq_alpha = 1.0 - sin_alpha * sin_alpha
        if cos_sq_alpha == 0.0:
            cos_2sigma_m = 0.0  # equatorial line
        else:
            cos_2sigma_m = cos_sigma - 2.0 * sin_u1 * sin_u2 / cos_sq_alpha
        c = WGS84_F / 16.0 * cos_sq_alpha * (4.0 + WGS84_F * (4.0 - 3.0 * cos_sq_alpha))
        lam_prev = lam
        lam = big_l + (1.0 - c) * WGS84_F * sin_alpha * (
            sigma
            + c * sin_sigma * (cos_2sigma_m + c * cos_sigma * (-1.0 + 2.0 * cos_2sigma_m**2))
        )
        if abs(lam - lam_prev) < CONVERGENCE_RAD:
            break
    else:
        raise NonConvergenceError(
            f"inverse geodesic did not converge within {MAX_ITERATIONS} iterations "
            f"for {a} -> {b} (near-antipodal input?)"
        )

    u_sq = cos_sq_alpha * (WGS84_A**2 - WGS84_B**2) / WGS84_B**2
    big_a = 1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)))
    big_b = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)))
    delta_sigma = big_b * sin_sigma * (
        cos_2sigma_m
        + big_b / 4.0 * (
            cos_sigma * (-1.0 + 2.0 * cos_2sigma_m**2)
            - big_b / 6.0 * cos_2sigma_m
            * (-3.0 + 4.0 * sin_sigma**2)
            * (-3.0 + 4.0 * cos_2sigma_m**2)
        )
    )
    distance = WGS84_B * big_a * (sigma - delta_sigma)

    alpha1 = math.atan2(cos_u2 * sin_lam, cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lam)
    bearing = math.degrees(alpha1) % 360.0
    return distance, bearing


def vincenty_inverse(a: GeoPoint, b: GeoPoint) -> float:
    """Geodesic distance in meters between two WGS84 points.

    Raises NonConvergenceError for near-antipodal pairs, which cannot occur
    inside a game space but are guarded against anyway.
    """
    return _inverse(a, b)[0]


def initial_bearing(a: GeoPoint, b: GeoPoint) -> float:
    """Forward azimuth in degrees [0, 360) of the geodesic from a to b."""
    return _inverse(a, b)[1]


def vincenty_direct(start: GeoPoint, bearing_deg: float, distance: float) -> GeoPoint:
    """Destination point at a geodesic distance along an initial bearing.

    The direct companion of the inverse solution: for d <= 500 m the
    round trip ``vincenty_inverse(start, vincenty_direct(start, b, d))``
    recovers d to well under a millimeter.
    """
    if distance < 0.0 or not math.isfinite(distance):
        raise ValueError(f"distance must be a non-negative real: {distance!r}")
    if distance == 0.0:
        return start

    alpha1 = math.radians(bearing_deg % 360.0)
    sin_alpha1, cos_alpha1 = math.sin(alpha1), math.cos(alpha1)

    tan_u1 = (1.0 - WGS84_F) * math.tan(math.radians(start.lat))
    cos_u1 = 1.0 / math.sqrt(1.0 + tan_u1 * tan_u1)
    sin_u1 = tan_u1 * cos_u1

    sigma1 = math.atan2(tan_u1, cos_alpha1)
    sin_alpha = cos_u1 * sin_alpha1
    cos_sq_alpha = 1.0 - sin_alpha * sin_alpha
    u_sq = cos_sq_alpha * (WGS84_A**2 - WGS84_B**2) / WGS84_B**2
    big_a = 1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)))
    big_b = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)))

    sigma = distance / (WGS84_B * big_a)
    for _ in range(MAX_ITERATIONS):
        cos_2sigma_m = math.cos(2.0 * sigma1 + sigma)
        sin_sigma, cos_sigma = math.sin(sigma), math.cos(sigma)
        delta_sigma = big_b * sin_sigma * (
            cos_2sigma_m
            + big_b / 4.0 * (
                cos_sigma * (-1.0 + 2.0 * cos_2sigma_m**2)
                - big_b / 6.0 * cos_2sigma_m
                * (-3.0 + 4.0 * sin_sigma**2)
                * (-3.0 + 4.0 * cos_2sigma_m**2)
            )
        )
        sigma_prev = sigma
        sigma = distance / (WGS84_B * big_a) + delta_sigma
        if abs(sigma - sigma_prev) < CONVERGENCE_RAD:
            break
    else:
        raise NonConvergenceError(
            f"direct geodesic did not converge within {MAX_ITERATIONS} iterations"
        )

    sin_sigma, cos_sigma = math.sin(sigma), math.cos(sigma)
    cos_2sigma_m = math.cos(2.0 * sigma1 + sigma)
    phi2 = math.atan2(
        sin_u1 * cos_sigma + cos_u1 * sin_sigma * cos_alpha1,
        (1.0 - WGS84_F)
        * math.sqrt(sin_alpha**2 + (sin_u1 * sin_sigma - cos_u1 * cos_sigma * cos_alpha1) ** 2),
    )
    lam = math.atan2(
        sin_sigma * sin_alpha1,
        cos_u1 * cos_sigma - sin_u1 * sin_sigma * cos_alpha1,
    )
    c = WGS84_F / 16.0 * cos_sq_alpha * (4.0 + WGS84_F * (4.0 - 3.0 * cos_sq_alpha))
    big_l = lam - (1.0 - c) * WGS84_F * sin_alpha * (
        sigma + c * sin_sigma * (cos_2sigma_m + c * cos_sigma * (-1.0 + 2.0 * cos_2sigma_m**2))
    )
    return GeoPoint(math.degrees(phi2), start.lon + math.degrees(big_l))


def _curvature_radii(lat_deg: float) -> tuple[float, float]:
    """Meridional and prime-vertical radii of curvature at a latitude."""
    e2 = WGS84_F * (2.0 - WGS84_F)
    s = math.sin(math.radians(lat_deg))
    den = 1.0 - e2 * s * s
    meridional = WGS84_A * (1.0 - e2) / den**1.5
    prime_vertical = WGS84_A / math.sqrt(den)
    return meridional, prime_vertical


def to_local(p: GeoPoint, origin: GeoPoint) -> LocalXY:
    """Project a point into planar meters about ``origin``.

    Equirectangular about the origin using the local radii of curvature;
    round-trip error is under a centimeter within 1 km of the origin.
    """
    m, n = _curvature_radii(origin.lat)
    dlon = _normalize_lon(p.lon - origin.lon)
    x = math.radians(dlon) * n * math.cos(math.radians(origin.lat))
    y = math.radians(p.lat - origin.lat) * m
    if math.hypot(x, y) > MAX_PROJECTION_METERS:
        raise OutOfProjectionRangeError(
            f"{p} is {math.hypot(x, y):.0f} m from {origin}; planar frame is "
            f"only valid within {MAX_PROJECTION_METERS:.0f} m"
        )
    return LocalXY(x, y, origin)


def from_local(xy: LocalXY) -> GeoPoint:
    """Invert ``to_local`` exactly (up to float rounding)."""
    origin = xy.origin
    m, n = _curvature_radii(origin.lat)
    lat = origin.lat + math.degrees(xy.y / m)
    lon = origin.lon + math.degrees(xy.x / (n * math.cos(math.radians(origin.lat))))
    return GeoPoint(lat, lon)


def cumulative_lengths(points: tuple[GeoPoint, ...] | list[GeoPoint]) -> list[float]:
    """Running geodesic arc length at each polyline vertex (starts at 0)."""
    cum = [0.0]
    for p, q in zip(points, points[1:]):
        cum.append(cum[-1] + vincenty_inverse(p, q))
    return cum


def interpolate_along(
    points: tuple[GeoPoint, ...] | list[GeoPoint],
    cum: list[float],
    arc: float,
) -> GeoPoint:
    """Point at arc-length ``arc`` along a polyline with precomputed ``cum``.

    Within a segment the interpolation is linear in the local planar frame of
    the segment start, which stays within 5 cm of the true geodesic at game
    scale. ``arc`` is clamped into [0, total].
    """
    if len(points) == 1 or cum[-1] == 0.0:
        return points[0]
    arc = min(max(arc, 0.0), cum[-1])
    # Find enclosing segment; cum is sorted, polylines are short.
    i = 0
    while i < len(cum) - 2 and cum[i + 1] < arc:
        i += 1
    seg_len = cum[i + 1] - cum[i]
    if seg_len <= 0.0:
        return points[i]
    f = (arc - cum[i]) / seg_len
    end_xy = to_local(points[i + 1], points[i])
    return from_local(LocalXY(end_xy.x * f, end_xy.y * f, points[i]))
