"""
An online match, end to end
===========================

Boots the multiplayer server in-process, connects two websocket clients,
fills the remaining seats with bots, and plays the opening moves over the
wire. The same protocol drives the browser client; `ai-audit serve` runs
this server standalone.
"""

import asyncio
import json

import aiohttp
from aiohttp.test_utils import TestClient, TestServer

from ai_audit.server import GameServer


async def send(ws, msg_id, type_, payload, game_id=None):
    frame = {"type": type_, "msg_id": msg_id, "payload": payload}
    if game_id:
        frame["game_id"] = game_id
    await ws.send_json(frame)


async def recv(ws, want):
    while True:
        frame = json.loads((await ws.receive()).data)
        if frame["type"] == want:
            return frame
        if frame["type"] == "error":
            raise RuntimeError(frame["payload"])


async def main():
    server = GameServer()
    client = TestClient(TestServer(server.make_app()))
    await client.start_server()
    try:
        health = await (await client.get("/health")).json()
        print("health:", health)

        alice = await client.ws_connect("/ws")
        await send(alice, 1, "hello", {"name": "alice"})
        token = (await recv(alice, "welcome"))["payload"]["resume_token"]
        print("alice got resume token:", token[:8], "...")

        await send(alice, 2, "create",
                   {"config": {"player_count": 3}, "name": "alice", "seed": 5})
        game_id = (await recv(alice, "welcome"))["game_id"]
        print("lobby created:", game_id)

        bob = await client.ws_connect("/ws")
        await send(bob, 1, "hello", {"name": "bob"})
        await recv(bob, "welcome")
        await send(bob, 2, "join", {"name": "bob"}, game_id)
        await recv(bob, "welcome")

        await send(alice, 3, "add_bot", {"strategy": "mimic"}, game_id)
        await send(alice, 4, "start", {}, game_id)

        # Both humans place their opening business when their view says so.
        for mover, ws, msg_id in (("alice", alice, 5), ("bob", bob, 3)):
            while True:
                view = (await recv(ws, "view"))["payload"]
                if view["legal_actions"]:
                    break
            action = view["legal_actions"][0]
            await send(ws, msg_id, "action", {"action": action}, game_id)
            print(f"{mover} set up a business "
                  f"(phase was {view['phase']}, seat {view['viewer']})")

        view = (await recv(alice, "view"))["payload"]
        print("phase now:", view["phase"], "| deck sizes:",
              view["harm_deck_count"], "harms /",
              view["feature_deck_count"], "features")
        print("the bot's seat plays automatically; humans play on from here.")
        await alice.close()
        await bob.close()
    finally:
        await client.close()


if __name__ == "__main__":
    asyncio.run(main())
