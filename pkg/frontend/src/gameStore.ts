// Pure reducer for everything shown on screen. The UI computes no game
// rules: entity positions, score, lives, and phase come only from the latest
// server snapshot; events are kept for the feed and for consistency checks.

import {
  CreateResponse,
  EndMessage,
  GameEvent,
  PROTOCOL_VERSION,
  ServerMessage,
  Snapshot,
  Stage,
} from "./protocol";

export const TRAP_DIM = 0.25;

export interface ViewState {
  stage: Stage | null;
  snapshot: Snapshot | null;
  events: GameEvent[];
  cookieEventsSeen: number;
  phase: string;
  /** 1 = clear; TRAP_DIM while the latest snapshot says the player is trapped. */
  visibility: number;
  ended: EndMessage | null;
  lastError: string | null;
  schemaMismatch: boolean;
}

export function initialState(): ViewState {
  return {
    stage: null,
    snapshot: null,
    events: [],
    cookieEventsSeen: 0,
    phase: "running",
    visibility: 1.0,
    ended: null,
    lastError: null,
    schemaMismatch: false,
  };
}

export function applyCreate(state: ViewState, resp: CreateResponse): ViewState {
  if (resp.v !== PROTOCOL_VERSION) {
    return { ...state, schemaMismatch: true };
  }
  return {
    ...state,
    stage: resp.stage,
    snapshot: resp.snapshot,
    phase: resp.snapshot.phase,
    visibility: visibilityOf(resp.snapshot),
  };
}

function visibilityOf(snapshot: Snapshot): number {
  const until = snapshot.player.trapped_until;
  return until !== null && snapshot.t < until ? TRAP_DIM : 1.0;
}

export function applyMessage(state: ViewState, msg: ServerMessage): ViewState {
  if (msg.v !== PROTOCOL_VERSION) {
    return { ...state, schemaMismatch: true };
  }
  switch (msg.type) {
    case "snapshot":
      return {
        ...state,
        snapshot: msg,
        phase: msg.phase,
        visibility: visibilityOf(msg),
      };
    case "event": {
      const event = msg.event;
      return {
        ...state,
        events: [...state.events, event],
        cookieEventsSeen:
          state.cookieEventsSeen + (event.kind === "cookie_collected" ? 1 : 0),
      };
    }
    case "end":
      return { ...state, ended: msg, phase: msg.phase };
    case "error":
      return { ...state, lastError: msg.error };
  }
}

/** Cookies still on the map according to the latest snapshot. */
export function remainingCookies(state: ViewState) {
  if (!state.stage) return [];
  const collected = new Set(state.snapshot?.collected_cookies ?? []);
  return state.stage.cookies.filter((c) => !collected.has(c.id) && !c.collected);
}

/** HUD line derived exclusively from server data. */
export function hud(state: ViewState): { lives: number; score: number; phase: string } {
  return {
    lives: state.snapshot?.player.lives ?? 0,
    score: state.snapshot?.player.score ?? 0,
    phase: state.ended?.phase ?? state.phase,
  };
}
