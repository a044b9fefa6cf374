"""Live teleoperation service: WebSocket command channel plus telemetry.

One authoritative simulator advances on a fixed tick inside a background
task; console connections submit commands through a serialized queue and
every connection receives state broadcasts each tick. Interpretation
settings (mode, language filter) are per-connection.
"""
from __future__ import annotations

import asyncio
import json
from contextlib import asynccontextmanager, suppress
from dataclasses import dataclass, field, replace
from typing import Callable

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .controller import ControllerConfig, InterpretationOutcome, check_exit_disjoint, interpret
from .lexicon import Language, Lexicon, default_lexicon
from .providers import Hypothesis
from .sim import DroneState, Pose, SimConfig, Simulator

LogSink = Callable[[dict], None]


@dataclass
class _Hub:
    """Shared service state: the single-writer simulator, the command
    queue its tick task drains, and the connected sockets."""

    sim: Simulator
    lexicon: Lexicon
    base_config: ControllerConfig
    log_sink: LogSink | None = None
    queue: asyncio.Queue = field(default_factory=asyncio.Queue)
    connections: dict[WebSocket, asyncio.Lock] = field(default_factory=dict)

    def state_message(self) -> dict:
        state = self.sim.state
        return {
            "type": "state",
            "x": state.pose.x,
            "y": state.pose.y,
            "z": state.pose.z,
            "yaw": state.pose.yaw,
            "active_action": (
                state.active_action.value if state.active_action is not None else None
            ),
            "tick": self.sim.tick_count,
        }


def interpretation_message(outcome: InterpretationOutcome, mode: str) -> dict:
    """Protocol rendering of one interpretation outcome."""
    result = outcome.result
    return {
        "type": "interpretation",
        "hypothesis": outcome.hypothesis.text if outcome.hypothesis else "",
        "matched_surface": result.surface if result else None,
        "action_class": result.action_class.value if result else None,
        "distance": result.distance if result else None,
        "mode": mode,
        "no_class": result is None and not outcome.is_exit,
    }


async def _send(hub: _Hub, socket: WebSocket, message: dict) -> None:
    lock = hub.connections.get(socket)
    if lock is None:
        return
    try:
        async with lock:
            await socket.send_json(message)
    except Exception:
        hub.connections.pop(socket, None)


async def _tick_loop(hub: _Hub) -> None:
    tick = hub.sim.state.config.tick
    while True:
        while not hub.queue.empty():
            kind, payload = hub.queue.get_nowait()
            if kind == "apply":
                hub.sim.apply(payload)
            else:
                hub.sim.reset()
        hub.sim.step()
        message = hub.state_message()
        for socket in list(hub.connections):
            await _send(hub, socket, message)
        await asyncio.sleep(tick)


def create_app(
    lexicon: Lexicon | None = None,
    sim_config: SimConfig | None = None,
    config: ControllerConfig | None = None,
    start: Pose | None = None,
    log_sink: LogSink | None = None,
) -> FastAPI:
    """Build the service application (one simulator per app instance)."""
    lexicon = lexicon if lexicon is not None else default_lexicon()
    config = config if config is not None else ControllerConfig()
    check_exit_disjoint(config, lexicon)
    hub = _Hub(
        sim=Simulator(sim_config, start),
        lexicon=lexicon,
        base_config=config,
        log_sink=log_sink,
    )

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        task = asyncio.create_task(_tick_loop(hub))
        try:
            yield
        finally:
            task.cancel()
            with suppress(asyncio.CancelledError):
                await task

    app = FastAPI(lifespan=lifespan)
    app.state.hub = hub

    @app.get("/lexicon")
    def get_lexicon() -> dict:
        return {
            "name": lexicon.name,
            "version": lexicon.version,
            "entries": [
                {
                    "surface": entry.surface,
                    "language": entry.language.value,
                    "action_class": entry.action_class.value,
                }
                for entry in lexicon.entries
            ],
        }

    @app.websocket("/ws")
    async def websocket_session(socket: WebSocket) -> None:
        await socket.accept()
        hub.connections[socket] = asyncio.Lock()
        session = replace(hub.base_config)
        counter = 0
        await _send(hub, socket, hub.state_message())
        try:
            while True:
                raw = await socket.receive_text()
                try:
                    message = json.loads(raw)
                    if not isinstance(message, dict):
                        raise ValueError("message must be a JSON object")
                except ValueError:
                    await _send(hub, socket, {"type": "error", "message": "malformed JSON"})
                    continue
                kind = message.get("type")
                if kind == "command":
                    text = message.get("text")
                    if not isinstance(text, str):
                        await _send(
                            hub, socket, {"type": "error", "message": "command needs text"}
                        )
                        continue
                    counter += 1
                    hypothesis = Hypothesis(text, "console", f"ws-{counter}")
                    outcome = interpret(hypothesis, hub.lexicon, session)
                    event = interpretation_message(outcome, session.mode)
                    if hub.log_sink is not None:
                        hub.log_sink(event)
                    await _send(hub, socket, event)
                    if outcome.is_exit:
                        break
                    if outcome.result is not None:
                        hub.queue.put_nowait(("apply", outcome.result.action_class))
                elif kind == "set_mode":
                    mode = message.get("mode")
                    if mode not in ("exact", "fuzzy"):
                        await _send(hub, socket, {"type": "error", "message": f"unknown mode: {mode!r}"})
                        continue
                    session = replace(session, mode=mode)
                elif kind == "set_language":
                    label = message.get("language")
                    if label == "both":
                        session = replace(session, language_filter=None)
                    elif label in ("es", "en"):
                        session = replace(session, language_filter=Language(label))
                    else:
                        await _send(
                            hub, socket, {"type": "error", "message": f"unknown language: {label!r}"}
                        )
                        continue
                elif kind == "reset":
                    hub.queue.put_nowait(("reset", None))
                else:
                    await _send(hub, socket, {"type": "error", "message": f"unknown type: {kind!r}"})
        except WebSocketDisconnect:
            pass
        finally:
            hub.connections.pop(socket, None)
            with suppress(Exception):
                await socket.close(code=1000)

    return app


def serve(
    address: str,
    lexicon: Lexicon | None = None,
    sim_config: SimConfig | None = None,
    config: ControllerConfig | None = None,
    log_sink: LogSink | None = None,
) -> None:
    """Run the service until interrupted. Address is HOST:PORT."""
    import uvicorn

    host, _, port_text = address.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"address must be HOST:PORT, got {address!r}")
    app = create_app(lexicon, sim_config, config, log_sink=log_sink)
    uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
