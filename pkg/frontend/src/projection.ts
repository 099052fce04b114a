// Local planar frame (meters east/north of a fixed origin) matching the
// server's projection: equirectangular with WGS84 curvature radii. Error is
// sub-centimeter at game-space scale, far below one canvas pixel.

const WGS84_A = 6378137.0;
const WGS84_F = 1.0 / 298.257223563;
const E2 = WGS84_F * (2.0 - WGS84_F);
const DEG = Math.PI / 180.0;

export interface LocalPoint {
  x: number;
  y: number;
}

export class LocalFrame {
  private readonly meridional: number;
  private readonly primeVerticalCos: number;

  constructor(readonly lat0: number, readonly lon0: number) {
    const s = Math.sin(lat0 * DEG);
    const den = 1.0 - E2 * s * s;
    this.meridional = (WGS84_A * (1.0 - E2)) / Math.pow(den, 1.5);
    this.primeVerticalCos = (WGS84_A / Math.sqrt(den)) * Math.cos(lat0 * DEG);
  }

  toLocal(lat: number, lon: number): LocalPoint {
    let dlon = lon - this.lon0;
    if (dlon > 180) dlon -= 360;
    if (dlon <= -180) dlon += 360;
    return {
      x: dlon * DEG * this.primeVerticalCos,
      y: (lat - this.lat0) * DEG * this.meridional,
    };
  }

  toGeo(x: number, y: number): { lat: number; lon: number } {
    return {
      lat: this.lat0 + y / this.meridional / DEG,
      lon: this.lon0 + x / this.primeVerticalCos / DEG,
    };
  }
}

export function distance(a: LocalPoint, b: LocalPoint): number {
  return Math.hypot(b.x - a.x, b.y - a.y);
}

/** Closest point to p on segment [a, b]. */
export function projectOntoSegment(
  p: LocalPoint,
  a: LocalPoint,
  b: LocalPoint,
): LocalPoint {
  const vx = b.x - a.x;
  const vy = b.y - a.y;
  const segSq = vx * vx + vy * vy;
  if (segSq === 0) return a;
  const t = Math.max(0, Math.min(1, ((p.x - a.x) * vx + (p.y - a.y) * vy) / segSq));
  return { x: a.x + t * vx, y: a.y + t * vy };
}
