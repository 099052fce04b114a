// Wire types for the game server protocol (see ../docs/protocol.md).

export const PROTOCOL_VERSION = 1;

export interface LatLon {
  lat: number;
  lon: number;
}

export interface StageNode extends LatLon {
  id: number;
}

export interface StageEdge {
  id: number;
  a: number;
  b: number;
  length: number;
  geometry: [number, number][]; // [lat, lon] pairs from endpoint a to b
}

export interface StageCookie extends LatLon {
  id: number;
  edge: number;
  offset: number;
  collected: boolean;
}

export type PoiCategory = "life_boost" | "visibility_trap";

export interface StagePoi extends LatLon {
  id: number;
  category: PoiCategory;
  consumed: boolean;
}

export interface Stage {
  v: number;
  center: LatLon;
  config: {
    radius: number;
    cookie_spacing: number;
    min_edge_cookie_margin: number;
  };
  nodes: StageNode[];
  edges: StageEdge[];
  cookies: StageCookie[];
  pois: StagePoi[];
}

export interface PlayerView extends LatLon {
  edge: number;
  offset: number;
  heading: number;
  lives: number;
  score: number;
  trapped_until: number | null;
}

export interface GhostView extends LatLon {
  id: string;
  kind: string;
}

export interface Snapshot {
  v: number;
  type: "snapshot";
  t: number;
  phase: string;
  player: PlayerView;
  ghosts: GhostView[];
  collected_cookies: number[];
  consumed_pois: number[];
  cookies_remaining: number;
}

export interface GameEvent {
  v: number;
  seq: number;
  t: number;
  kind: string;
  [field: string]: unknown;
}

export interface EventMessage {
  v: number;
  type: "event";
  event: GameEvent;
}

export interface EndMessage {
  v: number;
  type: "end";
  phase: string;
  score: number;
}

export interface ErrorMessage {
  v: number;
  type: "error";
  error: string;
}

export type ServerMessage = Snapshot | EventMessage | EndMessage | ErrorMessage;

export interface CreateResponse {
  v: number;
  session: string;
  stage: Stage;
  snapshot: Snapshot;
}

export interface FixMessage {
  type: "fix";
  lat: number;
  lon: number;
  t: number;
}
