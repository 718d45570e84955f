// Wire protocol: one JSON envelope per websocket frame, mirroring the
// server's message vocabulary. Client msg_ids must strictly increase per
// connection; the EnvelopeFactory owns that counter.

export type ClientMessageType =
  | "hello"
  | "create"
  | "join"
  | "add_bot"
  | "start"
  | "action"
  | "vote"
  | "resume";

export type ServerMessageType =
  | "welcome"
  | "lobby"
  | "view"
  | "event"
  | "error"
  | "game_over";

export interface Envelope<P = unknown> {
  type: string;
  msg_id: number;
  game_id?: string;
  payload: P;
}

export interface ActionData {
  type: string;
  card?: string;
  defender?: number;
  target?: string;
  approve?: boolean;
  narrative?: string;
}

export interface CardRef {
  uid: string;
  kind: number;
}

export interface PlayerRow {
  player: number;
  eliminated: boolean;
  business_hand_count: number;
  harm_hand_count: number;
  feature_hand_count: number;
  in_play_count: number;
  in_play: CardRef[] | null;
}

export interface ChallengeView {
  challenger: number;
  defender: number;
  target_uid: string;
  target_kind: number;
  harm_kind: number;
  wild: boolean;
  narrative: string | null;
}

export interface VoteView {
  subject: string;
  proposer: number;
  voters_total: number;
  ballots_cast: number;
  approvals: number;
  rejections: number;
  defense_feature_kind: number | null;
  defense_narrative: string | null;
  you_voted: boolean | null;
}

export interface OutcomeView {
  kind: "win" | "stalemate";
  winner: number | null;
  ranking: number[][];
}

export interface View {
  viewer: number | string;
  player_count: number;
  turn_counter: number;
  turn_player: number | null;
  phase: "setup" | "turn" | "defense" | "vote" | "terminal";
  active_player: number | null;
  setups_done: number;
  players: PlayerRow[];
  your_hand: {
    businesses: CardRef[];
    harms: CardRef[];
    features: CardRef[];
  } | null;
  harm_deck_count: number;
  feature_deck_count: number;
  box_count: number;
  discard: CardRef[];
  challenge: ChallengeView | null;
  vote: VoteView | null;
  outcome: OutcomeView | null;
  legal_actions: ActionData[];
  events: GameEvent[];
  guide: string | null;
}

export interface GameEvent {
  type: string;
  [key: string]: unknown;
}

export interface LobbySeat {
  index: number;
  kind: "open" | "human" | "bot";
  name: string;
  connected: boolean | null;
}

export interface LobbyPayload {
  game_id: string;
  started: boolean;
  config: Record<string, unknown>;
  seats: LobbySeat[];
  spectators: { name: string; role: string }[];
}

export interface WelcomePayload {
  resume_token: string;
  seat?: number;
  role?: string;
  name?: string;
}

export interface ErrorPayload {
  code: string;
  text: string;
  spectate_offer?: boolean;
}

export interface GameOverPayload {
  outcome: OutcomeView;
  seed: number;
  action_log: Record<string, unknown>;
  final_state: Record<string, unknown>;
}

export const MAX_NARRATIVE_LEN = 500;

export function narrativeProblem(text: string): string | null {
  if (!text.trim()) {
    return "a narrative is required for wild and narrated cards";
  }
  if (text.length > MAX_NARRATIVE_LEN) {
    return `narratives are capped at ${MAX_NARRATIVE_LEN} characters`;
  }
  return null;
}

export class EnvelopeFactory {
  private nextId = 0;

  make<P>(type: ClientMessageType, payload: P, gameId?: string): Envelope<P> {
    this.nextId += 1;
    const envelope: Envelope<P> = { type, msg_id: this.nextId, payload };
    if (gameId !== undefined) {
      envelope.game_id = gameId;
    }
    return envelope;
  }
}
