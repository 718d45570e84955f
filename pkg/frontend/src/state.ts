// Client state machine. A pure reducer folds server frames into ClientState;
// everything rendered comes from here, and everything here comes from server
// messages (the client never infers hidden cards). The pending prompt is
// derived from the current view's legal actions, so a reconnect that replays
// the view restores the exact prompt.

import {
  ActionData,
  Envelope,
  ErrorPayload,
  GameEvent,
  GameOverPayload,
  LobbyPayload,
  View,
  WelcomePayload,
} from "./protocol.js";

export type PromptKind = "setup" | "turn" | "defense" | "vote";

export interface Prompt {
  kind: PromptKind;
  actions: ActionData[];
}

export interface ClientState {
  connection: "idle" | "connecting" | "open" | "closed";
  resumeToken: string | null;
  gameId: string | null;
  seat: number | null;
  role: "player" | "spectator" | "educator";
  lobby: LobbyPayload | null;
  view: View | null;
  prompt: Prompt | null;
  awaitingAck: boolean;
  lastError: ErrorPayload | null;
  feed: GameEvent[];
  gameOver: GameOverPayload | null;
}

export function initialState(): ClientState {
  return {
    connection: "idle",
    resumeToken: null,
    gameId: null,
    seat: null,
    role: "player",
    lobby: null,
    view: null,
    prompt: null,
    awaitingAck: false,
    lastError: null,
    feed: [],
    gameOver: null,
  };
}

export function derivePrompt(view: View | null): Prompt | null {
  if (!view || !view.legal_actions.length) {
    return null;
  }
  if (view.phase === "vote") {
    return { kind: "vote", actions: view.legal_actions };
  }
  if (view.phase === "defense") {
    return { kind: "defense", actions: view.legal_actions };
  }
  if (view.phase === "setup") {
    return { kind: "setup", actions: view.legal_actions };
  }
  return { kind: "turn", actions: view.legal_actions };
}

export function reduce(state: ClientState, frame: Envelope): ClientState {
  switch (frame.type) {
    case "welcome": {
      const payload = frame.payload as WelcomePayload;
      return {
        ...state,
        resumeToken: payload.resume_token,
        gameId: frame.game_id ?? state.gameId,
        seat: payload.seat ?? state.seat,
        role:
          payload.role === "spectator" || payload.role === "educator"
            ? payload.role
            : state.role,
        lastError: null,
      };
    }
    case "lobby":
      return {
        ...state,
        gameId: frame.game_id ?? state.gameId,
        lobby: frame.payload as LobbyPayload,
      };
    case "view": {
      const view = frame.payload as View;
      // A fresh view acknowledges whatever action we had in flight.
      return {
        ...state,
        view,
        prompt: derivePrompt(view),
        awaitingAck: false,
        feed: view.events.slice(),
      };
    }
    case "event":
      return { ...state, feed: [...state.feed, frame.payload as GameEvent] };
    case "error": {
      // The prompt stays armed so the player can answer again.
      return {
        ...state,
        lastError: frame.payload as ErrorPayload,
        awaitingAck: false,
      };
    }
    case "game_over":
      return {
        ...state,
        gameOver: frame.payload as GameOverPayload,
        prompt: null,
        awaitingAck: false,
      };
    default:
      return state;
  }
}

export function markSubmitted(state: ClientState): ClientState {
  return { ...state, awaitingAck: true, lastError: null };
}

/** Defense options grouped for the dialog, in menu order. */
export interface DefenseGroups {
  matching: ActionData[];  // regular features the server says may answer
  narrated: ActionData[];  // regular features needing a narrative (wild harm)
  wilds: ActionData[];
  decline: ActionData | null;
}

export function groupDefenseOptions(actions: ActionData[]): DefenseGroups {
  const groups: DefenseGroups = {
    matching: [],
    narrated: [],
    wilds: [],
    decline: null,
  };
  for (const action of actions) {
    if (action.type === "defend") {
      groups.matching.push(action);
    } else if (action.type === "defend_narrative") {
      groups.narrated.push(action);
    } else if (action.type === "defend_wild") {
      groups.wilds.push(action);
    } else if (action.type === "decline") {
      groups.decline = action;
    }
  }
  return groups;
}
