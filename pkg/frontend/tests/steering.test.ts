import { beforeEach, describe, expect, it } from "vitest";

import { LocalFrame } from "../src/projection";
import type { CreateResponse } from "../src/protocol";
import { Steering, WALK_SPEED } from "../src/steering";
import transcript from "./fixtures/transcript.json";

const created = transcript.create_response as unknown as CreateResponse;
const stage = created.stage;
const frame = new LocalFrame(stage.center.lat, stage.center.lon);

function steeringAtCenter(): Steering {
  return new Steering(stage, stage.center);
}

describe("Steering", () => {
  let steering: Steering;

  beforeEach(() => {
    steering = steeringAtCenter();
  });

  it("holding right for 10 s walks ~14 m east along the street", () => {
    steering.setKeys({ up: false, down: false, left: false, right: true });
    const fixes = [];
    for (let i = 0; i < 10; i++) {
      steering.step(1.0);
      fixes.push(steering.nextFix());
    }
    const last = frame.toLocal(fixes[9].lat, fixes[9].lon);
    expect(last.x).toBeGreaterThan(12);
    expect(last.x).toBeLessThan(15);
    // The walk follows Main Street, so it stays on the road.
    expect(Math.abs(last.y)).toBeLessThan(0.5);
    expect(fixes.map((f) => f.t)).toEqual([0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
  });

  it("no input repeats the same position with increasing timestamps", () => {
    const fixes = [];
    for (let i = 0; i < 3; i++) {
      steering.step(1.0);
      fixes.push(steering.nextFix());
    }
    expect(fixes[0].lat).toBe(fixes[2].lat);
    expect(fixes[0].lon).toBe(fixes[2].lon);
    expect(fixes[0].t).toBeLessThan(fixes[1].t);
    expect(fixes[1].t).toBeLessThan(fixes[2].t);
  });

  it("click target walks toward the point and stops on arrival", () => {
    const target = frame.toGeo(10, 0);
    steering.setTargetGeo(target.lat, target.lon);
    const distances = [];
    for (let i = 0; i < 12; i++) {
      steering.step(1.0);
      distances.push(Math.hypot(steering.positionLocal.x - 10, steering.positionLocal.y));
    }
    for (let i = 1; i < 8; i++) {
      expect(distances[i]).toBeLessThanOrEqual(distances[i - 1] + 1e-9);
    }
    expect(distances[11]).toBeLessThan(1.5);
    // Arrived: further steps stay put.
    const before = steering.positionLocal;
    steering.step(1.0);
    steering.step(1.0);
    expect(steering.positionLocal.x).toBeCloseTo(before.x, 6);
  });

  it("keyboard input overrides a pending click target", () => {
    const target = frame.toGeo(0, 50);
    steering.setTargetGeo(target.lat, target.lon);
    steering.setKeys({ up: false, down: false, left: true, right: false });
    steering.step(1.0);
    expect(steering.positionLocal.x).toBeLessThan(0);
  });

  it("drifts back toward the road when walking beside it", () => {
    // Start 8 m north of Main Street and walk east: the soft snap pulls the
    // walker toward the centerline.
    const offRoad = frame.toGeo(20, 8);
    const s = new Steering(stage, offRoad);
    s.setKeys({ up: false, down: false, left: false, right: true });
    const startY = s.positionLocal.y;
    for (let i = 0; i < 6; i++) s.step(1.0);
    expect(Math.abs(s.positionLocal.y)).toBeLessThan(Math.abs(startY));
    expect(s.positionLocal.x).toBeGreaterThan(20 + 0.5 * WALK_SPEED * 6 - 1);
  });
});
