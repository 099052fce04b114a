import { describe, expect, it } from "vitest";

import { LocalFrame, distance, projectOntoSegment } from "../src/projection";
import transcript from "./fixtures/transcript.json";
import type { CreateResponse } from "../src/protocol";

const stage = (transcript.create_response as unknown as CreateResponse).stage;

describe("LocalFrame", () => {
  it("maps the origin to (0,0) and round-trips", () => {
    const frame = new LocalFrame(stage.center.lat, stage.center.lon);
    const zero = frame.toLocal(stage.center.lat, stage.center.lon);
    expect(zero.x).toBeCloseTo(0, 9);
    expect(zero.y).toBeCloseTo(0, 9);
    for (const node of stage.nodes) {
      const p = frame.toLocal(node.lat, node.lon);
      const geo = frame.toGeo(p.x, p.y);
      expect(geo.lat).toBeCloseTo(node.lat, 9);
      expect(geo.lon).toBeCloseTo(node.lon, 9);
    }
  });

  it("agrees with the server's geodesic edge lengths to centimeters", () => {
    const frame = new LocalFrame(stage.center.lat, stage.center.lon);
    for (const edge of stage.edges) {
      let planar = 0;
      for (let i = 0; i < edge.geometry.length - 1; i++) {
        const a = frame.toLocal(edge.geometry[i][0], edge.geometry[i][1]);
        const b = frame.toLocal(edge.geometry[i + 1][0], edge.geometry[i + 1][1]);
        planar += distance(a, b);
      }
      expect(Math.abs(planar - edge.length)).toBeLessThan(0.05);
    }
  });

  it("keeps every stage element inside the configured radius", () => {
    const frame = new LocalFrame(stage.center.lat, stage.center.lon);
    for (const cookie of stage.cookies) {
      const p = frame.toLocal(cookie.lat, cookie.lon);
      expect(Math.hypot(p.x, p.y)).toBeLessThanOrEqual(stage.config.radius + 0.1);
    }
  });
});

describe("projectOntoSegment", () => {
  it("clamps to the segment and finds perpendicular feet", () => {
    const a = { x: 0, y: 0 };
    const b = { x: 10, y: 0 };
    expect(projectOntoSegment({ x: 5, y: 3 }, a, b)).toEqual({ x: 5, y: 0 });
    expect(projectOntoSegment({ x: -4, y: 2 }, a, b)).toEqual(a);
    expect(projectOntoSegment({ x: 14, y: -2 }, a, b)).toEqual(b);
    expect(projectOntoSegment({ x: 1, y: 1 }, a, a)).toEqual(a);
  });
});
