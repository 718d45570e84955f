// HTML renderers: pure functions from client state to markup strings.
// Interactivity is wired by data attributes (data-ui for commands,
// data-action-index for answering the active prompt); main.ts delegates
// clicks. Harm identification is always color + shape + id, never color
// alone.

import {
  businessHarms,
  businessTitle,
  escapeHtml,
  featureCountersHarm,
  featureTitle,
  harmBadge,
  harmPresentation,
  WILD_KIND,
} from "./cards.js";
import { ActionData, GameEvent, View } from "./protocol.js";
import { ClientState, groupDefenseOptions } from "./state.js";

export interface UiState {
  narrativeFor: number | null;  // index into prompt.actions
  notice: string | null;
}

function kindOfUid(uid: string): number {
  return Number(uid.slice(1).split(".")[0]);
}

function businessCard(kind: number, selectable = ""): string {
  const badges = businessHarms(kind).map((h) => harmBadge(h)).join("");
  return (
    `<div class="card business" ${selectable}>` +
    `<div class="card-title">${escapeHtml(businessTitle(kind))}</div>` +
    `<div class="card-badges">${badges}</div></div>`
  );
}

export function actionLabel(action: ActionData): string {
  switch (action.type) {
    case "setup_business":
      return `Set up: ${businessTitle(kindOfUid(action.card!))}`;
    case "play_harm": {
      const harm = harmPresentation(kindOfUid(action.card!));
      const target = businessTitle(kindOfUid(action.target!));
      return `Challenge P${action.defender}'s "${target}" with ${harm.title}`;
    }
    case "play_wild_harm":
      return `Play the WILD harm against P${action.defender}'s ` +
        `"${businessTitle(kindOfUid(action.target!))}" (narrate)`;
    case "defend":
      return `Defend with ${featureTitle(kindOfUid(action.card!))}`;
    case "defend_narrative":
      return `Defend with ${featureTitle(kindOfUid(action.card!))} (narrate)`;
    case "defend_wild":
      return "Defend with the WILD feature (narrate)";
    case "decline":
      return "Decline - let the challenge succeed";
    case "exchange_harm":
      return `Exchange ${harmPresentation(kindOfUid(action.card!)).title}`;
    case "cast_vote":
      return action.approve ? "Approve" : "Reject";
    case "end_turn":
      return "End turn";
    case "pass":
      return "Pass";
    default:
      return action.type;
  }
}

export function needsNarrative(action: ActionData): boolean {
  return (
    action.type === "play_wild_harm" ||
    action.type === "defend_wild" ||
    action.type === "defend_narrative"
  );
}

export function describeEvent(event: GameEvent): string | null {
  switch (event.type) {
    case "turn_started":
      return `Turn ${event.turn}: P${event.player} to act`;
    case "business_setup":
      return event.business == null
        ? `P${event.player} set up a hidden business`
        : `P${event.player} set up "${businessTitle(event.business as number)}"`;
    case "harm_played": {
      const harm = event.harm_kind === WILD_KIND
        ? "a WILD harm"
        : `"${harmPresentation(event.harm_kind as number).title}"`;
      return `P${event.challenger} challenges P${event.defender}'s ` +
        `"${businessTitle(event.target_kind as number)}" with ${harm}`;
    }
    case "defense_played":
      return event.feature_kind === WILD_KIND
        ? `P${event.defender} answers with a WILD feature`
        : `P${event.defender} answers with ` +
          `"${featureTitle(event.feature_kind as number)}"`;
    case "defense_declined":
      return `P${event.defender} declines to defend`;
    case "challenge_resolved":
      return event.success
        ? "The defense holds - challenge defeated"
        : `The challenge succeeds - ` +
          `"${businessTitle(event.business_discarded as number)}" is discarded`;
    case "challenge_fizzled":
      return "The wild harm is voted down - no effect";
    case "vote_opened":
      return `Vote opened (${String(event.subject).replace(/_/g, " ")})`;
    case "vote_resolved":
      return `Vote ${event.approved ? "APPROVED" : "REJECTED"} ` +
        `(${event.approvals} for, ${event.rejections} against)`;
    case "harm_exchanged":
      return `P${event.player} exchanges a harm card`;
    case "player_eliminated":
      return `P${event.player} is out of the game`;
    case "game_over":
      return event.kind === "win"
        ? `Game over - P${event.winner} wins`
        : "Game over - stalemate at the turn cap";
    default:
      return null;
  }
}

// -- screens -----------------------------------------------------------------

export function renderConnect(ui: UiState): string {
  return `
  <section class="panel connect">
    <h1>AI Audit</h1>
    <p>Run an AI business, challenge your rivals' with societal harms,
       defend with responsible-design features.</p>
    ${ui.notice ? `<p class="notice">${escapeHtml(ui.notice)}</p>` : ""}
    <label>Your name <input id="name-input" maxlength="24" value="player"></label>
    <label>Players <select id="count-input">
      ${[2, 3, 4, 5, 6, 7].map((n) => `<option ${n === 4 ? "selected" : ""}>${n}</option>`).join("")}
    </select></label>
    <button data-ui="create">Create a lobby</button>
    <div class="join-row">
      <input id="join-input" placeholder="game id">
      <button data-ui="join">Join</button>
      <button data-ui="spectate">Watch</button>
      <button data-ui="educate">Watch as educator</button>
    </div>
  </section>`;
}

export function renderLobby(state: ClientState): string {
  const lobby = state.lobby!;
  const isHost = state.seat === 0;
  const seats = lobby.seats
    .map((seat) => {
      const status =
        seat.kind === "open"
          ? "open"
          : seat.kind === "bot"
            ? `bot: ${escapeHtml(seat.name)}`
            : `${escapeHtml(seat.name)}${seat.connected === false ? " (away)" : ""}`;
      return `<li class="seat-${seat.kind}">seat ${seat.index}: ${status}</li>`;
    })
    .join("");
  const openSeats = lobby.seats.some((s) => s.kind === "open");
  return `
  <section class="panel lobby">
    <h2>Lobby <code>${escapeHtml(lobby.game_id)}</code></h2>
    <p>Share the game id; friends join with it. Fill empty seats with bots.</p>
    <ul class="seats">${seats}</ul>
    ${isHost && openSeats ? `
      <div class="host-controls">
        <select id="bot-strategy">
          ${["random", "least_harm_first", "backup_overlap", "mimic", "greedy_defender"]
            .map((s) => `<option>${s}</option>`).join("")}
        </select>
        <button data-ui="add-bot">Add a bot</button>
      </div>` : ""}
    ${isHost ? `<button data-ui="start" ${openSeats ? "disabled" : ""}>Start the game</button>` : ""}
  </section>`;
}

function playerPanel(state: ClientState, row: View["players"][number]): string {
  const view = state.view!;
  const you = row.player === state.seat;
  const active = view.active_player === row.player;
  const table =
    row.in_play === null
      ? `<em>${row.in_play_count} hidden business(es)</em>`
      : row.in_play.map((c) => businessCard(c.kind)).join("") || "<em>nothing in play</em>";
  return `
  <div class="player ${you ? "you" : ""} ${active ? "active" : ""} ${row.eliminated ? "eliminated" : ""}">
    <h3>${you ? "You" : `P${row.player}`}${row.eliminated ? " (out)" : ""}</h3>
    <div class="counts">${row.business_hand_count}b / ${row.harm_hand_count}h / ${row.feature_hand_count}f in hand</div>
    <div class="table-cards">${table}</div>
  </div>`;
}

function handPanel(state: ClientState): string {
  const hand = state.view!.your_hand;
  if (!hand) {
    return "";
  }
  const businesses = hand.businesses
    .map((c) => businessCard(c.kind))
    .join("") || "<em>none</em>";
  const harms = hand.harms
    .map((c) => `<div class="card harm">${harmBadge(c.kind)}
       <span>${escapeHtml(harmPresentation(c.kind).title)}</span></div>`)
    .join("") || "<em>none</em>";
  const features = hand.features
    .map((c) => {
      const badges = c.kind === WILD_KIND
        ? harmBadge(WILD_KIND)
        : featureBadges(c.kind);
      return `<div class="card feature"><span>${escapeHtml(featureTitle(c.kind))}</span>
        <div class="card-badges">${badges}</div></div>`;
    })
    .join("") || "<em>none</em>";
  return `
  <section class="hand">
    <h3>Your hand</h3>
    <div class="hand-group"><h4>Businesses</h4>${businesses}</div>
    <div class="hand-group"><h4>Harms</h4>${harms}</div>
    <div class="hand-group"><h4>Features</h4>${features}</div>
  </section>`;
}

function featureBadges(featureKind: number): string {
  const counters: number[] = [];
  for (let harm = 1; harm <= 13; harm += 1) {
    if (featureCountersHarm(featureKind, harm)) {
      counters.push(harm);
    }
  }
  return counters.map((h) => harmBadge(h)).join("");
}

function challengeBanner(view: View): string {
  if (!view.challenge) {
    return "";
  }
  const ch = view.challenge;
  const harm = ch.wild
    ? "a WILD harm"
    : `${harmBadge(ch.harm_kind)} "${escapeHtml(harmPresentation(ch.harm_kind).title)}"`;
  return `
  <div class="challenge-banner">
    P${ch.challenger} challenges P${ch.defender}'s
    "${escapeHtml(businessTitle(ch.target_kind))}" with ${harm}
    ${ch.narrative ? `<blockquote>${escapeHtml(ch.narrative)}</blockquote>` : ""}
  </div>`;
}

function promptDialog(state: ClientState, ui: UiState): string {
  const prompt = state.prompt;
  if (!prompt || state.awaitingAck) {
    return state.awaitingAck ? `<div class="dialog">waiting for the server...</div>` : "";
  }
  if (ui.narrativeFor !== null) {
    const action = prompt.actions[ui.narrativeFor];
    return `
    <div class="dialog narrative-dialog">
      <h3>${escapeHtml(actionLabel(action))}</h3>
      <p>Tell the table how this ${action.type === "play_wild_harm" ? "harm" : "feature"}
         applies; a majority must be convinced.</p>
      <textarea id="narrative-input" maxlength="500" rows="3"
        placeholder="required narrative (max 500 characters)"></textarea>
      <button data-ui="confirm-narrative">Submit</button>
      <button data-ui="cancel-narrative">Back</button>
    </div>`;
  }
  if (prompt.kind === "vote") {
    const vote = state.view!.vote!;
    const defense = vote.defense_feature_kind !== null
      ? `<p>Defense: ${vote.defense_feature_kind === WILD_KIND
          ? "WILD feature"
          : escapeHtml(featureTitle(vote.defense_feature_kind))}</p>`
      : "";
    return `
    <div class="dialog vote-dialog">
      <h3>Vote: does the story hold up?</h3>
      ${defense}
      ${vote.defense_narrative ? `<blockquote>${escapeHtml(vote.defense_narrative)}</blockquote>` : ""}
      <p>${vote.ballots_cast}/${vote.voters_total} ballots in</p>
      ${prompt.actions
        .map((a, i) => `<button data-action-index="${i}">${actionLabel(a)}</button>`)
        .join("")}
    </div>`;
  }
  if (prompt.kind === "defense") {
    const groups = groupDefenseOptions(prompt.actions);
    const index = (a: ActionData) => prompt.actions.indexOf(a);
    const section = (title: string, actions: ActionData[]) =>
      actions.length
        ? `<h4>${title}</h4>` + actions
            .map((a) => `<button data-action-index="${index(a)}">${actionLabel(a)}</button>`)
            .join("")
        : "";
    return `
    <div class="dialog defense-dialog">
      <h3>You are challenged!</h3>
      ${section("Matching features", groups.matching)}
      ${section("Features (narrate to convince the table)", groups.narrated)}
      ${section("Wild card", groups.wilds)}
      ${groups.decline
        ? `<button class="decline" data-action-index="${index(groups.decline)}">${actionLabel(groups.decline)}</button>`
        : ""}
    </div>`;
  }
  return `
  <div class="dialog turn-dialog">
    <h3>${prompt.kind === "setup" ? "Set up your opening business" : "Your turn"}</h3>
    ${prompt.actions
      .map((a, i) => `<button data-action-index="${i}">${actionLabel(a)}</button>`)
      .join("")}
  </div>`;
}

export function renderTable(state: ClientState, ui: UiState): string {
  const view = state.view!;
  const phaseLine =
    view.phase === "terminal"
      ? "game over"
      : `turn ${view.turn_counter} - ${view.phase} phase` +
        (view.active_player !== null ? ` - P${view.active_player} to act` : "");
  const feed = state.feed
    .map(describeEvent)
    .filter((line): line is string => line !== null)
    .slice(-10)
    .map((line) => `<li>${escapeHtml(line)}</li>`)
    .join("");
  return `
  <section class="game">
    <header class="phase-banner">
      <span>${escapeHtml(phaseLine)}</span>
      <span class="decks">harm deck ${view.harm_deck_count} |
        feature deck ${view.feature_deck_count} |
        discard ${view.discard.length}</span>
    </header>
    ${ui.notice ? `<p class="notice">${escapeHtml(ui.notice)}</p>` : ""}
    ${state.lastError ? `<p class="error-toast">${escapeHtml(state.lastError.text)}</p>` : ""}
    ${challengeBanner(view)}
    ${view.guide ? `<aside class="guide"><h4>AI Audit guide</h4><p>${escapeHtml(view.guide)}</p></aside>` : ""}
    <div class="players">${view.players.map((p) => playerPanel(state, p)).join("")}</div>
    ${handPanel(state)}
    ${promptDialog(state, ui)}
    <aside class="feed"><h4>Log</h4><ul>${feed}</ul></aside>
    ${state.gameOver ? renderGameOver(state) : ""}
  </section>`;
}

export function renderGameOver(state: ClientState): string {
  const over = state.gameOver!;
  const headline =
    over.outcome.kind === "win"
      ? over.outcome.winner === state.seat
        ? "You win!"
        : `P${over.outcome.winner} wins`
      : "Stalemate at the turn cap";
  return `
  <div class="dialog game-over">
    <h3>${escapeHtml(headline)}</h3>
    <p>Seed ${over.seed}; the action log below replays to the same game
       (verify with <code>ai-audit replay</code>).</p>
    <details><summary>action log</summary>
      <pre>${escapeHtml(JSON.stringify(over.action_log, null, 2).slice(0, 4000))}</pre>
    </details>
    <button data-ui="leave">Back to the lobby screen</button>
  </div>`;
}

export function renderApp(state: ClientState, ui: UiState): string {
  const status =
    state.connection === "open"
      ? ""
      : `<div class="conn-banner">connection ${state.connection}... hang tight</div>`;
  if (state.view) {
    return status + renderTable(state, ui);
  }
  if (state.lobby) {
    return status + renderLobby(state);
  }
  return status + renderConnect(ui);
}
