// Bootstrap: one SocketClient, one ClientState, full re-render per change.
// Clicks are delegated from the root; the resume token persists in
// localStorage so a reloaded tab (or a dropped connection) lands back in
// its seat with the pending prompt intact.

import { SocketClient } from "./net.js";
import { ActionData, narrativeProblem } from "./protocol.js";
import { needsNarrative, renderApp, UiState } from "./render.js";
import {
  ClientState,
  initialState,
  markSubmitted,
  reduce,
} from "./state.js";

const TOKEN_KEY = "ai-audit-resume-token";
const GAME_KEY = "ai-audit-game-id";

const root = document.getElementById("app")!;
let state: ClientState = initialState();
const ui: UiState = { narrativeFor: null, notice: null };

const wsUrl =
  (location.protocol === "https:" ? "wss://" : "ws://") + location.host + "/ws";

const socket = new SocketClient(wsUrl, {
  onFrame(frame) {
    state = reduce(state, frame);
    if (frame.type === "welcome") {
      localStorage.setItem(TOKEN_KEY, state.resumeToken ?? "");
      if (state.gameId) {
        localStorage.setItem(GAME_KEY, state.gameId);
      }
      socket.bindSession(state.resumeToken, state.gameId);
    }
    if (frame.type === "view") {
      ui.narrativeFor = null;
    }
    if (frame.type === "error") {
      const payload = frame.payload as { code: string; text: string };
      ui.notice = payload.code === "session-expired"
        ? "That session is gone; start or join a new game."
        : payload.text;
      if (payload.code === "session-expired") {
        localStorage.removeItem(TOKEN_KEY);
        localStorage.removeItem(GAME_KEY);
        state = { ...initialState(), connection: state.connection };
      }
    }
    render();
  },
  onStatus(status) {
    state = { ...state, connection: status };
    render();
  },
});

function render(): void {
  root.innerHTML = renderApp(state, ui);
}

function submit(action: ActionData): void {
  state = markSubmitted(state);
  ui.notice = null;
  socket.send("action", { action }, state.gameId ?? undefined);
  render();
}

root.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest<HTMLElement>(
    "[data-ui], [data-action-index]",
  );
  if (!target) {
    return;
  }

  const actionIndex = target.dataset.actionIndex;
  if (actionIndex !== undefined && state.prompt) {
    const action = state.prompt.actions[Number(actionIndex)];
    if (!action) {
      return;
    }
    if (needsNarrative(action)) {
      ui.narrativeFor = Number(actionIndex);
      render();
      return;
    }
    submit(action);
    return;
  }

  switch (target.dataset.ui) {
    case "create": {
      const name = value("name-input") || "player";
      const count = Number(value("count-input") || "4");
      socket.send("create", { name, config: { player_count: count } });
      break;
    }
    case "join":
    case "spectate":
    case "educate": {
      const gameId = value("join-input").trim();
      if (!gameId) {
        ui.notice = "enter the game id to join";
        render();
        return;
      }
      const role =
        target.dataset.ui === "join"
          ? "player"
          : target.dataset.ui === "spectate"
            ? "spectator"
            : "educator";
      socket.send("join", { name: value("name-input") || "guest", role }, gameId);
      break;
    }
    case "add-bot":
      socket.send("add_bot", { strategy: value("bot-strategy") || "random" },
                  state.gameId ?? undefined);
      break;
    case "start":
      socket.send("start", {}, state.gameId ?? undefined);
      break;
    case "confirm-narrative": {
      if (ui.narrativeFor === null || !state.prompt) {
        return;
      }
      const text = value("narrative-input");
      const problem = narrativeProblem(text);
      if (problem) {
        ui.notice = problem;
        render();
        return;
      }
      const action = { ...state.prompt.actions[ui.narrativeFor], narrative: text };
      ui.narrativeFor = null;
      submit(action);
      break;
    }
    case "cancel-narrative":
      ui.narrativeFor = null;
      render();
      break;
    case "leave":
      localStorage.removeItem(TOKEN_KEY);
      localStorage.removeItem(GAME_KEY);
      state = { ...initialState(), connection: state.connection };
      render();
      break;
  }
});

function value(id: string): string {
  const element = document.getElementById(id) as
    | HTMLInputElement
    | HTMLSelectElement
    | HTMLTextAreaElement
    | null;
  return element ? element.value : "";
}

const savedToken = localStorage.getItem(TOKEN_KEY);
const savedGame = localStorage.getItem(GAME_KEY);
if (savedToken) {
  socket.bindSession(savedToken, savedGame);
}
socket.connect();
render();
