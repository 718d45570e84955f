"""Websocket multiplayer server.

One process, one event loop. Each game session owns its state behind an
asyncio lock, so every action in a session applies in a single total order.
Connections speak JSON envelopes ``{type, msg_id, game_id?, payload}`` over
``/ws``; ``GET /health`` answers liveness; an optional static directory
serves the browser client.

Client -> server types: hello, create, join, add_bot, start, action, vote,
resume. Server -> client: welcome, lobby, view, event, error, game_over.
Client msg_ids must strictly increase per connection; a repeat of an already
processed id is dropped (the first submission's effects stand).

Sessions are in-memory and expire after inactivity. Humans who vanish
mid-game are replaced by a random bot after three vote timeouts, which keeps
games live; the vote timeout itself records missing ballots as rejections.
"""

from __future__ import annotations

import asyncio
import json
import secrets
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from aiohttp import WSMsgType, web

from .bots import BotContext, Strategy, choose_action, parse_strategy
from .catalog import Catalog, default_catalog, guide_excerpt
from .engine import (
    Action,
    GameConfig,
    WILD_KIND,
    actors_due,
    is_terminal,
)
from .errors import (
    GameRuleError,
    IllegalActionError,
    InvalidConfigError,
)
from .rng import split_seed
from .serialize import GameRecorder, state_to_dict
from .views import EDUCATOR, SPECTATOR, view_for


@dataclass
class ServerOptions:
    vote_timeout: float = 120.0      # missing ballots count as reject
    disconnect_grace: float = 360.0  # vote_timeout x 3 by default
    session_ttl: float = 3600.0
    sweep_interval: float = 60.0
    static_dir: Optional[str] = None

    @classmethod
    def with_vote_timeout(cls, vote_timeout: float, **kwargs) -> "ServerOptions":
        kwargs.setdefault("disconnect_grace", vote_timeout * 3)
        return cls(vote_timeout=vote_timeout, **kwargs)


@dataclass
class Seat:
    index: int
    kind: str = "open"               # open | human | bot
    name: str = ""
    token: Optional[str] = None
    ws: Optional[web.WebSocketResponse] = None
    bot: Optional[BotContext] = None
    strategy: Optional[Strategy] = None
    disconnect_epoch: int = 0

    @property
    def connected(self) -> bool:
        return self.ws is not None and not self.ws.closed


@dataclass
class Spectator:
    token: str
    name: str
    role: str                        # spectator | educator
    ws: Optional[web.WebSocketResponse] = None


class Session:
    def __init__(self, game_id: str, config: GameConfig, catalog: Catalog,
                 creator_token: str, seed: Optional[int]):
        self.game_id = game_id
        self.config = config
        self.catalog = catalog
        self.creator_token = creator_token
        self.requested_seed = seed
        self.seats = [Seat(i) for i in range(config.player_count)]
        self.spectators: dict[str, Spectator] = {}
        self.recorder: Optional[GameRecorder] = None
        self.lock = asyncio.Lock()
        self.last_activity = time.monotonic()
        self.phase_epoch = 0
        self.over_sent = False

    @property
    def started(self) -> bool:
        return self.recorder is not None

    @property
    def state(self):
        return self.recorder.state if self.recorder else None

    def touch(self) -> None:
        self.last_activity = time.monotonic()

    def seat_by_token(self, token: str) -> Optional[Seat]:
        for seat in self.seats:
            if seat.token == token:
                return seat
        return None

    def open_seats(self) -> list[Seat]:
        return [s for s in self.seats if s.kind == "open"]

    def lobby_payload(self) -> dict:
        return {
            "game_id": self.game_id,
            "started": self.started,
            "config": self.config.to_dict(),
            "seats": [
                {
                    "index": s.index,
                    "kind": s.kind,
                    "name": s.name,
                    "connected": s.connected if s.kind == "human" else None,
                }
                for s in self.seats
            ],
            "spectators": [
                {"name": sp.name, "role": sp.role}
                for sp in self.spectators.values()
            ],
        }


class GameServer:
    """All live sessions plus the wiring between websockets and the engine."""

    def __init__(self, catalog: Optional[Catalog] = None,
                 options: Optional[ServerOptions] = None):
        self.catalog = catalog or default_catalog()
        self.options = options or ServerOptions()
        self.sessions: dict[str, Session] = {}
        self._sweeper: Optional[asyncio.Task] = None

    # -- app wiring -----------------------------------------------------------

    def make_app(self) -> web.Application:
        app = web.Application()
        app.router.add_get("/health", self._handle_health)
        app.router.add_get("/ws", self._handle_ws)
        static = self.options.static_dir
        if static:
            root = Path(static)

            async def index(_request):
                return web.FileResponse(root / "index.html")

            app.router.add_get("/", index)
            app.router.add_static("/", root)
        app.on_startup.append(self._on_startup)
        app.on_cleanup.append(self._on_cleanup)
        return app

    async def _on_startup(self, _app):
        self._sweeper = asyncio.create_task(self._sweep_sessions())

    async def _on_cleanup(self, _app):
        if self._sweeper:
            self._sweeper.cancel()

    async def _sweep_sessions(self):
        while True:
            await asyncio.sleep(self.options.sweep_interval)
            now = time.monotonic()
            expired = [
                gid for gid, s in self.sessions.items()
                if now - s.last_activity > self.options.session_ttl
            ]
            for gid in expired:
                del self.sessions[gid]

    async def _handle_health(self, _request):
        return web.json_response(
            {"status": "ok", "sessions": len(self.sessions)}
        )

    # -- connection loop ------------------------------------------------------

    async def _handle_ws(self, request):
        ws = web.WebSocketResponse(heartbeat=30)
        await ws.prepare(request)
        conn = {"ws": ws, "token": None, "last_msg_id": 0, "out_msg_id": 0}
        try:
            async for msg in ws:
                if msg.type != WSMsgType.TEXT:
                    continue
                try:
                    envelope = json.loads(msg.data)
                except json.JSONDecodeError:
                    await self._send(conn, "error",
                                     {"code": "bad-frame",
                                      "text": "frames must be JSON objects"})
                    continue
                await self._dispatch(conn, envelope)
        finally:
            await self._on_disconnect(conn)
        return ws

    async def _send(self, conn, type_: str, payload: dict,
                    game_id: Optional[str] = None) -> None:
        ws = conn["ws"]
        if ws is None or ws.closed:
            return
        conn["out_msg_id"] += 1
        frame = {"type": type_, "msg_id": conn["out_msg_id"], "payload": payload}
        if game_id is not None:
            frame["game_id"] = game_id
        try:
            await ws.send_json(frame)
        except (ConnectionError, RuntimeError):
            pass

    async def _error(self, conn, code: str, text: str,
                     game_id: Optional[str] = None, **extra) -> None:
        payload = {"code": code, "text": text}
        payload.update(extra)
        await self._send(conn, "error", payload, game_id)

    async def _dispatch(self, conn, envelope) -> None:
        if not isinstance(envelope, dict):
            await self._error(conn, "bad-frame", "envelope must be an object")
            return
        msg_type = envelope.get("type")
        msg_id = envelope.get("msg_id")
        payload = envelope.get("payload") or {}
        if not isinstance(msg_id, int):
            await self._error(conn, "bad-frame", "msg_id must be an integer")
            return
        if msg_id <= conn["last_msg_id"]:
            return  # duplicate or stale: the first submission already stands
        conn["last_msg_id"] = msg_id

        handler = {
            "hello": self._handle_hello,
            "create": self._handle_create,
            "join": self._handle_join,
            "add_bot": self._handle_add_bot,
            "start": self._handle_start,
            "action": self._handle_action,
            "vote": self._handle_vote,
            "resume": self._handle_resume,
        }.get(msg_type)
        if handler is None:
            await self._error(conn, "unknown-type",
                              f"unknown message type {msg_type!r}")
            return
        await handler(conn, envelope.get("game_id"), payload)

    # -- identity -------------------------------------------------------------

    async def _handle_hello(self, conn, _game_id, payload) -> None:
        if conn["token"] is None:
            conn["token"] = secrets.token_urlsafe(16)
        await self._send(conn, "welcome", {
            "resume_token": conn["token"],
            "name": payload.get("name", ""),
        })

    def _require_token(self, conn) -> str:
        if conn["token"] is None:
            conn["token"] = secrets.token_urlsafe(16)
        return conn["token"]

    def _session_or_none(self, game_id) -> Optional[Session]:
        return self.sessions.get(game_id) if game_id else None

    # -- lobby ----------------------------------------------------------------

    async def _handle_create(self, conn, _game_id, payload) -> None:
        token = self._require_token(conn)
        try:
            config = GameConfig.from_dict(payload.get("config") or {})
            config.validate()
        except InvalidConfigError as exc:
            await self._error(conn, "invalid-config", str(exc))
            return
        game_id = secrets.token_urlsafe(6)
        while game_id in self.sessions:
            game_id = secrets.token_urlsafe(6)
        seed = payload.get("seed")
        session = Session(game_id, config, self.catalog, token, seed)
        seat = session.seats[0]
        seat.kind = "human"
        seat.name = payload.get("name") or "player-0"
        seat.token = token
        seat.ws = conn["ws"]
        self.sessions[game_id] = session
        await self._send(conn, "welcome",
                         {"resume_token": token, "seat": 0}, game_id)
        await self._broadcast_lobby(session)

    async def _handle_join(self, conn, game_id, payload) -> None:
        session = self._session_or_none(game_id)
        if session is None:
            await self._error(conn, "unknown-game", f"no game {game_id!r}")
            return
        token = self._require_token(conn)
        role = payload.get("role", "player")
        name = payload.get("name") or "guest"
        session.touch()

        if role in (SPECTATOR, EDUCATOR):
            spectator = Spectator(token=token, name=name, role=role,
                                  ws=conn["ws"])
            session.spectators[token] = spectator
            await self._send(conn, "welcome",
                             {"resume_token": token, "role": role}, game_id)
            await self._broadcast_lobby(session)
            if session.started:
                await self._push_view_to(session, conn, role)
            return

        if session.started:
            await self._error(
                conn, "game-started",
                "game already started; you can join as a spectator",
                game_id, spectate_offer=True,
            )
            return
        open_seats = session.open_seats()
        if not open_seats:
            await self._error(conn, "full-lobby", "no open seats", game_id)
            return
        seat = open_seats[0]
        seat.kind = "human"
        seat.name = name
        seat.token = token
        seat.ws = conn["ws"]
        await self._send(conn, "welcome",
                         {"resume_token": token, "seat": seat.index}, game_id)
        await self._broadcast_lobby(session)

    async def _handle_add_bot(self, conn, game_id, payload) -> None:
        session = self._session_or_none(game_id)
        if session is None:
            await self._error(conn, "unknown-game", f"no game {game_id!r}")
            return
        if conn["token"] != session.creator_token:
            await self._error(conn, "not-creator",
                              "only the creator may add bots", game_id)
            return
        if session.started:
            await self._error(conn, "game-started", "game already started",
                              game_id)
            return
        open_seats = session.open_seats()
        if not open_seats:
            await self._error(conn, "full-lobby", "no open seats", game_id)
            return
        try:
            strategy = parse_strategy(payload.get("strategy", "random"))
        except ValueError as exc:
            await self._error(conn, "invalid-config", str(exc), game_id)
            return
        seat = open_seats[0]
        seat.kind = "bot"
        seat.name = f"{strategy.name}-bot-{seat.index}"
        seat.token = secrets.token_urlsafe(8)
        seat.bot = None  # seeded at start
        seat.strategy = strategy
        session.touch()
        await self._broadcast_lobby(session)

    async def _handle_start(self, conn, game_id, payload) -> None:
        session = self._session_or_none(game_id)
        if session is None:
            await self._error(conn, "unknown-game", f"no game {game_id!r}")
            return
        if conn["token"] != session.creator_token:
            await self._error(conn, "not-creator",
                              "only the creator may start", game_id)
            return
        if session.started:
            await self._error(conn, "game-started", "already started", game_id)
            return
        if session.open_seats():
            await self._error(conn, "full-lobby",
                              "every seat must be filled to start", game_id)
            return
        async with session.lock:
            seed = session.requested_seed
            if seed is None:
                seed = secrets.randbits(63)
            config = GameConfig.from_dict(
                {**session.config.to_dict(), "seed": seed}
            )
            session.config = config
            session.recorder = GameRecorder(config, session.catalog)
            for seat in session.seats:
                if seat.kind == "bot":
                    seat.bot = BotContext(
                        getattr(seat, "strategy", Strategy("random")),
                        seed=split_seed(seed, seat.index + 1),
                        catalog=session.catalog,
                    )
            session.touch()
            await self._broadcast_events(session, session.state.event_log)
            await self._run_bots(session)
            await self._after_change(session)

    # -- game traffic ----------------------------------------------------------

    async def _handle_action(self, conn, game_id, payload) -> None:
        await self._submit(conn, game_id, payload.get("action"))

    async def _handle_vote(self, conn, game_id, payload) -> None:
        await self._submit(conn, game_id,
                           {"type": "cast_vote",
                            "approve": bool(payload.get("approve"))})

    async def _submit(self, conn, game_id, action_data) -> None:
        session = self._session_or_none(game_id)
        if session is None:
            await self._error(conn, "unknown-game", f"no game {game_id!r}")
            return
        if not session.started:
            await self._error(conn, "not-your-phase",
                              "game has not started", game_id)
            return
        seat = session.seat_by_token(conn["token"]) if conn["token"] else None
        if seat is None or seat.kind != "human":
            await self._error(conn, "not-your-phase",
                              "this connection holds no seat in the game",
                              game_id)
            return
        try:
            action = Action.from_dict(action_data or {})
        except ValueError as exc:
            await self._error(conn, "illegal-action", str(exc), game_id)
            return
        async with session.lock:
            session.touch()
            try:
                events = session.recorder.apply(seat.index, action)
            except IllegalActionError as exc:
                await self._error(conn, "illegal-action", str(exc), game_id)
                return
            except GameRuleError as exc:
                await self._error(conn, "not-your-phase", str(exc), game_id)
                return
            await self._broadcast_events(session, events)
            await self._run_bots(session)
            await self._after_change(session)

    async def _handle_resume(self, conn, game_id, payload) -> None:
        token = payload.get("token")
        if not token:
            await self._error(conn, "unknown-token", "resume needs a token")
            return
        candidates = [
            s for s in self.sessions.values()
            if (game_id is None or s.game_id == game_id)
            and (s.seat_by_token(token) or token in s.spectators)
        ]
        if not candidates:
            await self._error(conn, "session-expired",
                              "no live session knows this token")
            return
        session = max(candidates, key=lambda s: s.last_activity)
        conn["token"] = token
        session.touch()
        seat = session.seat_by_token(token)
        if seat is not None:
            seat.ws = conn["ws"]
            seat.disconnect_epoch += 1  # cancel pending bot conversion
            await self._send(conn, "welcome",
                             {"resume_token": token, "seat": seat.index},
                             session.game_id)
            viewer = seat.index
        else:
            spectator = session.spectators[token]
            spectator.ws = conn["ws"]
            await self._send(conn, "welcome",
                             {"resume_token": token, "role": spectator.role},
                             session.game_id)
            viewer = spectator.role
        await self._send(conn, "lobby", session.lobby_payload(),
                         session.game_id)
        if session.started:
            await self._push_view_to(session, conn, viewer)
            if session.over_sent:
                await self._send(conn, "game_over",
                                 self._game_over_payload(session),
                                 session.game_id)

    # -- broadcasting -----------------------------------------------------------

    def _recipients(self, session: Session):
        for seat in session.seats:
            if seat.kind == "human" and seat.connected:
                yield seat.ws, seat.index
        for spectator in session.spectators.values():
            if spectator.ws is not None and not spectator.ws.closed:
                yield spectator.ws, spectator.role

    async def _broadcast_lobby(self, session: Session) -> None:
        payload = session.lobby_payload()
        for ws, _viewer in self._recipients(session):
            await self._raw_send(ws, "lobby", payload, session.game_id)

    async def _raw_send(self, ws, type_: str, payload, game_id) -> None:
        try:
            await ws.send_json(
                {"type": type_, "msg_id": 0, "payload": payload,
                 "game_id": game_id}
            )
        except (ConnectionError, RuntimeError):
            pass

    def _enrich_event(self, session: Session, event: dict) -> dict:
        event = dict(event)
        catalog = session.catalog
        if event["type"] == "harm_played":
            business = catalog.business_by_id[event["target_kind"]]
            event["business_title"] = business.title
            if event["harm_kind"] != WILD_KIND:
                event["harm_title"] = catalog.harm_by_id[event["harm_kind"]].title
                event["guide_excerpt"] = guide_excerpt(
                    catalog, event["target_kind"], event["harm_kind"]
                )
            else:
                event["harm_title"] = None
                event["guide_excerpt"] = None
        elif event["type"] == "defense_played":
            if event["feature_kind"] != WILD_KIND:
                event["feature_title"] = catalog.feature_by_id[
                    event["feature_kind"]
                ].title
            else:
                event["feature_title"] = None
        return event

    async def _broadcast_events(self, session: Session, events) -> None:
        for event in events:
            payload = self._enrich_event(session, event)
            for ws, _viewer in self._recipients(session):
                await self._raw_send(ws, "event", payload, session.game_id)

    async def _push_view_to(self, session: Session, conn, viewer) -> None:
        view = view_for(session.state, viewer).to_dict()
        await self._send(conn, "view", view, session.game_id)

    async def _push_views(self, session: Session) -> None:
        for ws, viewer in self._recipients(session):
            view = view_for(session.state, viewer).to_dict()
            await self._raw_send(ws, "view", view, session.game_id)

    def _game_over_payload(self, session: Session) -> dict:
        outcome = is_terminal(session.state)
        return {
            "outcome": {
                "kind": outcome.kind,
                "winner": outcome.winner,
                "ranking": [list(g) for g in outcome.ranking],
            },
            "seed": session.config.seed,
            "action_log": session.recorder.log_document(),
            "final_state": state_to_dict(session.state),
        }

    async def _after_change(self, session: Session) -> None:
        """Push views, arm timers, and announce the end. Call under lock."""
        session.phase_epoch += 1
        await self._push_views(session)
        if is_terminal(session.state) is not None:
            if not session.over_sent:
                session.over_sent = True
                payload = self._game_over_payload(session)
                for ws, _viewer in self._recipients(session):
                    await self._raw_send(ws, "game_over", payload,
                                         session.game_id)
            return
        if session.state.phase.kind == "vote":
            asyncio.create_task(
                self._vote_timeout(session, session.phase_epoch)
            )

    # -- automation ---------------------------------------------------------------

    async def _run_bots(self, session: Session) -> None:
        """Advance the game while every pending actor is a bot."""
        state = session.state
        while is_terminal(state) is None:
            due = actors_due(state)
            bot_seats = [p for p in due if session.seats[p].kind == "bot"]
            if not bot_seats:
                break
            actor = bot_seats[0]
            bot = session.seats[actor].bot
            action = choose_action(bot, view_for(state, actor))
            events = session.recorder.apply(actor, action)
            await self._broadcast_events(session, events)

    async def _vote_timeout(self, session: Session, epoch: int) -> None:
        await asyncio.sleep(self.options.vote_timeout)
        async with session.lock:
            state = session.state
            if state is None or session.phase_epoch != epoch:
                return
            if state.phase.kind != "vote":
                return
            # Expired ballots count as rejections.
            for voter in list(actors_due(state)):
                events = session.recorder.apply(
                    voter, Action.cast_vote(False)
                )
                await self._broadcast_events(session, events)
                if state.phase.kind != "vote":
                    break
            await self._run_bots(session)
            await self._after_change(session)

    async def _on_disconnect(self, conn) -> None:
        token = conn["token"]
        if token is None:
            return
        for session in self.sessions.values():
            seat = session.seat_by_token(token)
            if seat is not None and seat.ws is conn["ws"]:
                seat.ws = None
                seat.disconnect_epoch += 1
                if session.started and is_terminal(session.state) is None:
                    asyncio.create_task(
                        self._convert_disconnected_seat(
                            session, seat, seat.disconnect_epoch
                        )
                    )
            spectator = session.spectators.get(token)
            if spectator is not None and spectator.ws is conn["ws"]:
                spectator.ws = None

    async def _convert_disconnected_seat(self, session: Session, seat: Seat,
                                         epoch: int) -> None:
        await asyncio.sleep(self.options.disconnect_grace)
        async with session.lock:
            if seat.disconnect_epoch != epoch or seat.kind != "human":
                return
            if not session.started or is_terminal(session.state) is not None:
                return
            seat.kind = "bot"
            seat.bot = BotContext(
                Strategy("random"),
                seed=split_seed(session.config.seed, 101 + seat.index),
                catalog=session.catalog,
            )
            seat.name = f"{seat.name} (bot)"
            await self._broadcast_lobby(session)
            await self._run_bots(session)
            await self._after_change(session)


def run_server(host: str, port: int, catalog: Optional[Catalog] = None,
               options: Optional[ServerOptions] = None) -> None:
    """Blocking entry point used by the CLI."""
    server = GameServer(catalog=catalog, options=options)
    web.run_app(server.make_app(), host=host, port=port, print=None)
