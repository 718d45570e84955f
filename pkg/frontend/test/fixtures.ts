import { ActionData, View } from "../src/protocol.js";

export function makeView(overrides: Partial<View> = {}): View {
  return {
    viewer: 0,
    player_count: 2,
    turn_counter: 3,
    turn_player: 1,
    phase: "turn",
    active_player: 1,
    setups_done: 0,
    players: [
      {
        player: 0,
        eliminated: false,
        business_hand_count: 1,
        harm_hand_count: 2,
        feature_hand_count: 3,
        in_play_count: 1,
        in_play: [{ uid: "b3.1", kind: 3 }],
      },
      {
        player: 1,
        eliminated: false,
        business_hand_count: 2,
        harm_hand_count: 2,
        feature_hand_count: 3,
        in_play_count: 1,
        in_play: [{ uid: "b6.1", kind: 6 }],
      },
    ],
    your_hand: {
      businesses: [{ uid: "b5.1", kind: 5 }],
      harms: [{ uid: "h5.1", kind: 5 }, { uid: "h9.1", kind: 9 }],
      features: [
        { uid: "f2.1", kind: 2 },
        { uid: "f5.1", kind: 5 },
        { uid: "f0.1", kind: 0 },
      ],
    },
    harm_deck_count: 30,
    feature_deck_count: 8,
    box_count: 2,
    discard: [],
    challenge: null,
    vote: null,
    outcome: null,
    legal_actions: [],
    events: [],
    guide: null,
    ...overrides,
  };
}

export const DEFENSE_ACTIONS: ActionData[] = [
  { type: "defend", card: "f2.1" },
  { type: "defend_wild", card: "f0.1" },
  { type: "decline" },
];

export function defenseView(overrides: Partial<View> = {}): View {
  return makeView({
    phase: "defense",
    active_player: 0,
    challenge: {
      challenger: 1,
      defender: 0,
      target_uid: "b3.1",
      target_kind: 3,
      harm_kind: 5,
      wild: false,
      narrative: null,
    },
    legal_actions: DEFENSE_ACTIONS,
    ...overrides,
  });
}
