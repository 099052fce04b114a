// Server wiring: create a game over HTTP, stream play over the WebSocket,
// and pump 1 Hz fixes from the steering simulator while the game runs.

import { applyCreate, applyMessage, initialState, ViewState } from "./gameStore";
import { CreateResponse, ServerMessage } from "./protocol";
import { Steering } from "./steering";

export const FIX_INTERVAL_MS = 1000;

export class GameClient {
  state: ViewState = initialState();
  steering: Steering | null = null;
  private ws: WebSocket | null = null;
  private fixTimer: ReturnType<typeof setInterval> | null = null;

  constructor(
    readonly baseUrl: string,
    private readonly onChange: (state: ViewState) => void,
  ) {}

  async create(center: { lat: number; lon: number }): Promise<CreateResponse> {
    const resp = await fetch(`${this.baseUrl}/games`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ center }),
    });
    if (!resp.ok) {
      throw new Error(`create failed: ${resp.status} ${await resp.text()}`);
    }
    const doc = (await resp.json()) as CreateResponse;
    this.state = applyCreate(this.state, doc);
    this.steering = new Steering(doc.stage, {
      lat: doc.snapshot.player.lat,
      lon: doc.snapshot.player.lon,
    });
    this.onChange(this.state);
    return doc;
  }

  connect(sessionId: string): void {
    const wsUrl = this.baseUrl.replace(/^http/, "ws");
    this.ws = new WebSocket(`${wsUrl}/games/${sessionId}/play`);
    this.ws.onmessage = (raw) => {
      const msg = JSON.parse(raw.data as string) as ServerMessage;
      this.state = applyMessage(this.state, msg);
      if (msg.type === "end") this.stopFixes();
      this.onChange(this.state);
    };
    this.ws.onclose = () => this.stopFixes();
    this.startFixes();
  }

  private startFixes(): void {
    this.fixTimer = setInterval(() => {
      if (!this.steering || !this.ws || this.ws.readyState !== WebSocket.OPEN) return;
      if (this.state.ended) return; // inputs ignored after terminal phase
      this.steering.step(FIX_INTERVAL_MS / 1000);
      this.ws.send(JSON.stringify(this.steering.nextFix()));
    }, FIX_INTERVAL_MS);
  }

  private stopFixes(): void {
    if (this.fixTimer !== null) {
      clearInterval(this.fixTimer);
      this.fixTimer = null;
    }
  }
}
