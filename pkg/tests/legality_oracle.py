"""Independent brute-force legality oracle.

A direct transcription of the gameplay rules, written against the raw state
fields and never calling the engine's own legal_actions. It enumerates every
conceivable action from the card universe and keeps the ones the rules text
admits. Slow and blunt on purpose: its value is that it shares no code path
with the implementation it checks.
"""

from __future__ import annotations

from ai_audit.engine import Action, GameState, uid_parts


def _kind(uid: str) -> int:
    return uid_parts(uid)[1]


def _is_wild(uid: str) -> bool:
    return _kind(uid) == 0


def oracle_legal_actions(state: GameState, player: int) -> set[Action]:
    if player not in state.turn_order:
        return set()
    if player in state.eliminated:
        return set()
    phase = state.phase

    if phase.kind == "terminal":
        return set()

    if phase.kind == "setup":
        # Rule: in the first round each player, in order, sets up exactly one
        # business from hand.
        if phase.active != player:
            return set()
        return {
            Action("setup_business", card=uid)
            for uid in state.zones.players[player].business_hand
        }

    if phase.kind == "turn":
        if phase.active != player:
            return set()
        return _oracle_turn(state, player)

    if phase.kind == "defense":
        if phase.challenge.defender != player:
            return set()
        return _oracle_defense(state, player)

    if phase.kind == "vote":
        # Rule: every non-eliminated player except the proposer holds one
        # ballot; a ballot may be cast once.
        vote = phase.vote
        if player in vote.voters and player not in vote.ballots:
            return {Action("cast_vote", approve=True),
                    Action("cast_vote", approve=False)}
        return set()

    raise AssertionError(f"oracle does not know phase {phase.kind}")


def _oracle_turn(state: GameState, player: int) -> set[Action]:
    config = state.config
    catalog = state.catalog
    mine = state.zones.players[player]
    legal: set[Action] = set()

    # Rule: with no running business, the player must set one up.
    must_setup = not mine.in_play and bool(mine.business_hand)

    # Candidate setups: any business card in hand, bounded per turn.
    if mine.business_hand:
        if must_setup or phase_setups(state) < config.max_setups_per_turn:
            for uid in mine.business_hand:
                legal.add(Action("setup_business", card=uid))
    if must_setup:
        return legal

    # Candidate harm plays: every harm card in hand against every business
    # another (surviving) player has in play. A turn that already set up a
    # business cannot also play a harm ("either ... or").
    if phase_setups(state) == 0:
        any_regular_play = False
        for harm_uid in mine.harm_hand:
            for opponent in state.turn_order:
                if opponent == player or opponent in state.eliminated:
                    continue
                for business_uid in state.zones.players[opponent].in_play:
                    if _is_wild(harm_uid):
                        legal.add(Action(
                            "play_wild_harm", card=harm_uid,
                            defender=opponent, target=business_uid,
                        ))
                    else:
                        business = catalog.business_by_id[_kind(business_uid)]
                        if _kind(harm_uid) in business.vulnerable_harms:
                            any_regular_play = True
                            legal.add(Action(
                                "play_harm", card=harm_uid,
                                defender=opponent, target=business_uid,
                            ))
        # Rule (redundant-hand fix): with no regular play available, a harm
        # card may be exchanged for the top of the pile, consuming the turn.
        if (config.harm_exchange_enabled and not any_regular_play
                and mine.harm_hand):
            for uid in mine.harm_hand:
                legal.add(Action("exchange_harm", card=uid))

    if phase_setups(state) >= 1:
        legal.add(Action("end_turn"))
    if not legal:
        legal.add(Action("pass"))
    return legal


def phase_setups(state: GameState) -> int:
    return state.phase.setups_done


def _oracle_defense(state: GameState, player: int) -> set[Action]:
    catalog = state.catalog
    challenge = state.phase.challenge
    mine = state.zones.players[player]
    legal: set[Action] = set()

    for uid in mine.feature_hand:
        if _is_wild(uid):
            # Rule: wild features can be played against any harm (with a
            # narrative judged by vote).
            legal.add(Action("defend_wild", card=uid))
        elif _is_wild(challenge.harm):
            # Rule: an invented harm is answered by any feature whose story
            # convinces the table, so every regular feature is offerable.
            legal.add(Action("defend_narrative", card=uid))
        else:
            feature = catalog.feature_by_id[_kind(uid)]
            if _kind(challenge.harm) in feature.counters:
                legal.add(Action("defend", card=uid))

    # Rule: declining is always possible when the variant allows it, and
    # unavoidable when nothing in hand can answer.
    if state.config.decline_defense_allowed or not legal:
        legal.add(Action("decline"))
    return legal
