// Scene construction is pure (local meters in, draw commands out) so tests
// can assert what gets drawn without a canvas; paint() maps meters to pixels
// on a real 2D context.

import { ViewState, remainingCookies, hud } from "./gameStore";
import { LocalFrame, LocalPoint } from "./projection";

export interface Viewport {
  widthPx: number;
  heightPx: number;
  metersPerPx: number;
}

export type DrawCommand =
  | { op: "clear"; color: string }
  | { op: "polyline"; points: LocalPoint[]; stroke: string; width: number }
  | { op: "circle"; at: LocalPoint; r: number; stroke: string; width: number }
  | { op: "disc"; at: LocalPoint; r: number; fill: string; tag: string }
  | { op: "dim"; alpha: number }
  | { op: "banner"; text: string };

const GHOST_COLORS: Record<string, string> = {
  red: "#e53935",
  purple: "#8e24aa",
  orange: "#fb8c00",
  blue: "#1e88e5",
};

const POI_COLORS = { life_boost: "#43a047", visibility_trap: "#6d4c41" };

export function buildScene(view: ViewState): DrawCommand[] {
  const commands: DrawCommand[] = [{ op: "clear", color: "#10141a" }];
  if (view.schemaMismatch) {
    commands.push({ op: "banner", text: "protocol version mismatch - update the client" });
    return commands;
  }
  const stage = view.stage;
  if (!stage) {
    commands.push({ op: "banner", text: "no stage loaded" });
    return commands;
  }
  const frame = new LocalFrame(stage.center.lat, stage.center.lon);
  const local = (lat: number, lon: number) => frame.toLocal(lat, lon);

  for (const edge of stage.edges) {
    commands.push({
      op: "polyline",
      points: edge.geometry.map(([lat, lon]) => local(lat, lon)),
      stroke: "#3a4454",
      width: 5,
    });
  }
  commands.push({
    op: "circle",
    at: { x: 0, y: 0 },
    r: stage.config.radius,
    stroke: "#5c6bc0",
    width: 1.5,
  });

  for (const cookie of remainingCookies(view)) {
    commands.push({
      op: "disc", at: local(cookie.lat, cookie.lon), r: 1.6,
      fill: "#ffd54f", tag: `cookie:${cookie.id}`,
    });
  }

  const consumed = new Set(view.snapshot?.consumed_pois ?? []);
  for (const poi of stage.pois) {
    const spent = consumed.has(poi.id) || poi.consumed;
    commands.push({
      op: "disc", at: local(poi.lat, poi.lon), r: 4.5,
      fill: spent ? "#546e7a" : POI_COLORS[poi.category],
      tag: `poi:${poi.category}:${poi.id}${spent ? ":consumed" : ""}`,
    });
  }

  const snapshot = view.snapshot;
  if (snapshot) {
    for (const ghost of snapshot.ghosts) {
      commands.push({
        op: "disc", at: local(ghost.lat, ghost.lon), r: 3.5,
        fill: GHOST_COLORS[ghost.id] ?? "#ffffff", tag: `ghost:${ghost.id}`,
      });
    }
    commands.push({
      op: "disc", at: local(snapshot.player.lat, snapshot.player.lon), r: 3.5,
      fill: "#ffee58", tag: "player",
    });
  }

  if (view.visibility < 1) {
    commands.push({ op: "dim", alpha: 1 - view.visibility });
  }
  if (view.ended) {
    commands.push({ op: "banner", text: `game ${view.ended.phase} - score ${view.ended.score}` });
  }
  return commands;
}

export function paint(
  ctx: CanvasRenderingContext2D,
  commands: DrawCommand[],
  vp: Viewport,
): void {
  const px = (p: LocalPoint) => ({
    x: vp.widthPx / 2 + p.x / vp.metersPerPx,
    y: vp.heightPx / 2 - p.y / vp.metersPerPx,
  });
  const rpx = (r: number) => Math.max(1.5, r / vp.metersPerPx);
  for (const cmd of commands) {
    switch (cmd.op) {
      case "clear":
        ctx.fillStyle = cmd.color;
        ctx.fillRect(0, 0, vp.widthPx, vp.heightPx);
        break;
      case "polyline": {
        ctx.strokeStyle = cmd.stroke;
        ctx.lineWidth = Math.max(1, cmd.width / vp.metersPerPx);
        ctx.lineCap = "round";
        ctx.beginPath();
        cmd.points.forEach((p, i) => {
          const q = px(p);
          if (i === 0) ctx.moveTo(q.x, q.y);
          else ctx.lineTo(q.x, q.y);
        });
        ctx.stroke();
        break;
      }
      case "circle": {
        const c = px(cmd.at);
        ctx.strokeStyle = cmd.stroke;
        ctx.lineWidth = cmd.width;
        ctx.beginPath();
        ctx.arc(c.x, c.y, cmd.r / vp.metersPerPx, 0, 2 * Math.PI);
        ctx.stroke();
        break;
      }
      case "disc": {
        const c = px(cmd.at);
        ctx.fillStyle = cmd.fill;
        ctx.beginPath();
        ctx.arc(c.x, c.y, rpx(cmd.r), 0, 2 * Math.PI);
        ctx.fill();
        break;
      }
      case "dim":
        ctx.fillStyle = `rgba(4, 6, 10, ${cmd.alpha})`;
        ctx.fillRect(0, 0, vp.widthPx, vp.heightPx);
        break;
      case "banner":
        ctx.fillStyle = "#eceff1";
        ctx.font = "16px system-ui, sans-serif";
        ctx.textAlign = "center";
        ctx.fillText(cmd.text, vp.widthPx / 2, 28);
        break;
    }
  }
}

export function hudText(view: ViewState): string {
  const h = hud(view);
  return `lives ${h.lives}  score ${h.score}  ${h.phase}`;
}
