// Desk-play movement: arrow keys (or a click target) drive a simulated
// walker at 1.4 m/s that is gently pulled toward the nearest road, and a
// 1 Hz fix stream with strictly increasing timestamps feeds the server.

import { FixMessage, Stage } from "./protocol";
import { LocalFrame, LocalPoint, distance, projectOntoSegment } from "./projection";

export const WALK_SPEED = 1.4; // m/s, smartphone walking pace
export const SNAP_RADIUS = 12.0; // roads closer than this attract the walker
export const SNAP_PULL = 0.35; // fraction of the gap closed per step
export const TARGET_REACHED = 1.0; // m

export interface KeyInput {
  up: boolean;
  down: boolean;
  left: boolean;
  right: boolean;
}

export class Steering {
  private readonly frame: LocalFrame;
  private readonly edgePolylines: LocalPoint[][];
  private position: LocalPoint;
  private keys: KeyInput = { up: false, down: false, left: false, right: false };
  private target: LocalPoint | null = null;
  private nextT = 0;

  constructor(stage: Stage, start: { lat: number; lon: number }) {
    this.frame = new LocalFrame(stage.center.lat, stage.center.lon);
    this.position = this.frame.toLocal(start.lat, start.lon);
    this.edgePolylines = stage.edges.map((e) =>
      e.geometry.map(([lat, lon]) => this.frame.toLocal(lat, lon)),
    );
  }

  setKeys(keys: KeyInput): void {
    this.keys = { ...keys };
    if (keys.up || keys.down || keys.left || keys.right) {
      this.target = null; // keyboard overrides a click target
    }
  }

  setTargetGeo(lat: number, lon: number): void {
    this.target = this.frame.toLocal(lat, lon);
  }

  clearTarget(): void {
    this.target = null;
  }

  get positionLocal(): LocalPoint {
    return { ...this.position };
  }

  private direction(): LocalPoint | null {
    let dx = (this.keys.right ? 1 : 0) - (this.keys.left ? 1 : 0);
    let dy = (this.keys.up ? 1 : 0) - (this.keys.down ? 1 : 0);
    if (dx === 0 && dy === 0 && this.target) {
      dx = this.target.x - this.position.x;
      dy = this.target.y - this.position.y;
      if (Math.hypot(dx, dy) <= TARGET_REACHED) {
        this.target = null;
        return null;
      }
    }
    const norm = Math.hypot(dx, dy);
    if (norm === 0) return null;
    return { x: dx / norm, y: dy / norm };
  }

  private nearestRoadPoint(p: LocalPoint): LocalPoint | null {
    let best: LocalPoint | null = null;
    let bestDist = Infinity;
    for (const polyline of this.edgePolylines) {
      for (let i = 0; i < polyline.length - 1; i++) {
        const proj = projectOntoSegment(p, polyline[i], polyline[i + 1]);
        const d = distance(p, proj);
        if (d < bestDist) {
          bestDist = d;
          best = proj;
        }
      }
    }
    return bestDist <= SNAP_RADIUS ? best : null;
  }

  /** Advance the simulated walk by dt seconds. */
  step(dt: number): void {
    const dir = this.direction();
    if (!dir) return;
    let stepLen = WALK_SPEED * dt;
    if (this.target) {
      stepLen = Math.min(stepLen, distance(this.position, this.target));
    }
    const candidate = {
      x: this.position.x + dir.x * stepLen,
      y: this.position.y + dir.y * stepLen,
    };
    const road = this.nearestRoadPoint(candidate);
    this.position = road
      ? {
          x: candidate.x + (road.x - candidate.x) * SNAP_PULL,
          y: candidate.y + (road.y - candidate.y) * SNAP_PULL,
        }
      : candidate;
  }

  /** Produce the next 1 Hz fix; timestamps are strictly increasing. */
  nextFix(): FixMessage {
    const geo = this.frame.toGeo(this.position.x, this.position.y);
    const fix: FixMessage = {
      type: "fix",
      lat: Number(geo.lat.toFixed(7)),
      lon: Number(geo.lon.toFixed(7)),
      t: this.nextT,
    };
    this.nextT += 1;
    return fix;
  }
}
