import { describe, expect, it } from "vitest";

import { featureCountersHarm } from "../src/cards.js";
import {
  actionLabel,
  describeEvent,
  needsNarrative,
  renderApp,
  renderTable,
  UiState,
} from "../src/render.js";
import { initialState, reduce } from "../src/state.js";
import { Envelope } from "../src/protocol.js";
import { defenseView, makeView } from "./fixtures.js";

const ui: UiState = { narrativeFor: null, notice: null };

function stateWithView(view: unknown) {
  return reduce(
    { ...initialState(), seat: 0 },
    { type: "view", msg_id: 1, payload: view } as Envelope,
  );
}

describe("table rendering", () => {
  it("shows phase banner, players, decks and hand groups", () => {
    const html = renderTable(stateWithView(makeView()), ui);
    expect(html).toContain("turn 3 - turn phase");
    expect(html).toContain("P1 to act");
    expect(html).toContain("harm deck 30");
    expect(html).toContain("Personalized advertisement");  // own table card
    expect(html).toContain("Your hand");
    expect(html).toContain("End to end encryption");       // feature in hand
  });

  it("hides other tables during the hidden setup round", () => {
    const view = makeView({ phase: "setup" });
    view.players[1].in_play = null;
    view.players[1].in_play_count = 1;
    const html = renderTable(stateWithView(view), ui);
    expect(html).toContain("1 hidden business(es)");
  });

  it("renders the challenge banner with color-and-shape badge", () => {
    const html = renderTable(stateWithView(defenseView()), ui);
    expect(html).toContain("challenges");
    expect(html).toContain("Leaking your personal details");
    expect(html).toContain('<svg');
    expect(html).toContain("badge-id");
  });

  it("educator guide panel appears when the view carries it", () => {
    const view = makeView({ guide: "Resume sorters often make use of history." });
    const html = renderTable(stateWithView(view), ui);
    expect(html).toContain("AI Audit guide");
    expect(html).toContain("Resume sorters");
  });
});

describe("defense dialog", () => {
  it("lists exactly the server-offered matching features", () => {
    const view = defenseView();
    const html = renderTable(stateWithView(view), ui);
    expect(html).toContain("You are challenged!");
    expect(html).toContain("Matching features");
    expect(html).toContain("Defend with End to end encryption");
    // Feature 5 is in hand but does not counter harm 5: no button for it.
    expect(html).not.toContain("Defend with Employing a diverse team");
    expect(html).toContain("WILD feature");
    expect(html).toContain("Decline");
  });

  it("every offered matching feature truly counters the table harm", () => {
    const view = defenseView();
    const harm = view.challenge!.harm_kind;
    for (const action of view.legal_actions) {
      if (action.type === "defend") {
        const kind = Number(action.card!.slice(1).split(".")[0]);
        expect(featureCountersHarm(kind, harm)).toBe(true);
      }
    }
  });
});

describe("vote dialog", () => {
  it("shows the narrative being judged and both ballots", () => {
    const view = makeView({
      phase: "vote",
      challenge: {
        challenger: 1, defender: 0, target_uid: "b3.1", target_kind: 3,
        harm_kind: 0, wild: true, narrative: "An invented harm story.",
      },
      vote: {
        subject: "wild_harm_validity", proposer: 1, voters_total: 1,
        ballots_cast: 0, approvals: 0, rejections: 0,
        defense_feature_kind: null, defense_narrative: null, you_voted: false,
      },
      legal_actions: [
        { type: "cast_vote", approve: true },
        { type: "cast_vote", approve: false },
      ],
    });
    const html = renderTable(stateWithView(view), ui);
    expect(html).toContain("does the story hold up?");
    expect(html).toContain("An invented harm story.");
    expect(html).toContain(">Approve<");
    expect(html).toContain(">Reject<");
  });
});

describe("labels and narration", () => {
  it("labels actions with real card titles", () => {
    expect(actionLabel({ type: "defend", card: "f2.1" }))
      .toContain("End to end encryption");
    expect(actionLabel({ type: "play_harm", card: "h5.1", defender: 1,
                         target: "b6.1" })).toContain("Self-driving cars");
    expect(actionLabel({ type: "cast_vote", approve: false })).toBe("Reject");
  });

  it("knows which actions need a narrative", () => {
    expect(needsNarrative({ type: "defend_wild", card: "f0.1" })).toBe(true);
    expect(needsNarrative({ type: "defend", card: "f2.1" })).toBe(false);
  });

  it("humanizes events", () => {
    expect(describeEvent({ type: "harm_played", challenger: 0, defender: 1,
                           target_kind: 12, harm_kind: 8 }))
      .toContain("Face filters");
    expect(describeEvent({ type: "challenge_resolved", success: true }))
      .toContain("defense holds");
    expect(describeEvent({ type: "weird_unknown" })).toBeNull();
  });
});

describe("screen routing", () => {
  it("shows the connect screen before any lobby", () => {
    const html = renderApp(initialState(), ui);
    expect(html).toContain("Create a lobby");
  });

  it("escapes untrusted narrative text", () => {
    const view = defenseView();
    view.challenge!.narrative = "<script>alert(1)</script>";
    const html = renderTable(stateWithView(view), ui);
    expect(html).not.toContain("<script>alert(1)</script>");
    expect(html).toContain("&lt;script&gt;");
  });
});
