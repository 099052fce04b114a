// Browser bootstrap: canvas, keyboard/click input, render loop.

import { GameClient } from "./client";
import { buildScene, hudText, paint, Viewport } from "./renderer";
import { LocalFrame } from "./projection";
import { KeyInput } from "./steering";

const params = new URLSearchParams(window.location.search);
const server = params.get("server") ?? "http://127.0.0.1:8000";
const lat = Number(params.get("lat") ?? "40.0");
const lon = Number(params.get("lon") ?? "-75.0");

const canvas = document.getElementById("stage") as HTMLCanvasElement;
const hudEl = document.getElementById("hud") as HTMLDivElement;
const ctx = canvas.getContext("2d")!;

const client = new GameClient(server, () => {
  hudEl.textContent = hudText(client.state);
});

const keys: KeyInput = { up: false, down: false, left: false, right: false };
const keyMap: Record<string, keyof KeyInput> = {
  ArrowUp: "up",
  ArrowDown: "down",
  ArrowLeft: "left",
  ArrowRight: "right",
};

window.addEventListener("keydown", (ev) => {
  const key = keyMap[ev.key];
  if (key && client.steering) {
    keys[key] = true;
    client.steering.setKeys(keys);
    ev.preventDefault();
  }
});
window.addEventListener("keyup", (ev) => {
  const key = keyMap[ev.key];
  if (key && client.steering) {
    keys[key] = false;
    client.steering.setKeys(keys);
  }
});

canvas.addEventListener("click", (ev) => {
  const stage = client.state.stage;
  if (!stage || !client.steering) return;
  const vp = viewport();
  const rect = canvas.getBoundingClientRect();
  const xm = (ev.clientX - rect.left - vp.widthPx / 2) * vp.metersPerPx;
  const ym = (vp.heightPx / 2 - (ev.clientY - rect.top)) * vp.metersPerPx;
  const frame = new LocalFrame(stage.center.lat, stage.center.lon);
  const geo = frame.toGeo(xm, ym);
  client.steering.setTargetGeo(geo.lat, geo.lon);
});

function viewport(): Viewport {
  const radius = client.state.stage?.config.radius ?? 200;
  const span = Math.min(canvas.width, canvas.height);
  return {
    widthPx: canvas.width,
    heightPx: canvas.height,
    metersPerPx: (2.2 * radius) / span,
  };
}

function frameLoop() {
  paint(ctx, buildScene(client.state), viewport());
  requestAnimationFrame(frameLoop);
}

async function start() {
  const created = await client.create({ lat, lon });
  client.connect(created.session);
  frameLoop();
}

start().catch((err) => {
  hudEl.textContent = String(err);
});
