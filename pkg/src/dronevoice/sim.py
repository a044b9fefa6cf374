"""Deterministic kinematic simulator for the nine drone commands.

Translations run continuously until replaced or stopped; turns are
instantaneous 90° yaw changes after which the drone hovers; descent stops
at the floor altitude. All state values are immutable snapshots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .lexicon import ActionClass

TURN_CLASSES = frozenset({ActionClass.TURN_RIGHT, ActionClass.TURN_LEFT})


@dataclass(frozen=True)
class Pose:
    """Position in meters and yaw in degrees, normalized to [0, 360)."""

    x: float = 0.0
    y: float = 0.0
    z: float = 1.0
    yaw: float = 0.0

    def __post_init__(self) -> None:
        if self.z < 0:
            raise ValueError(f"z must be non-negative, got {self.z}")
        if not 0.0 <= self.yaw < 360.0:
            yaw = self.yaw % 360.0
            if yaw == 360.0:
                yaw = 0.0
            object.__setattr__(self, "yaw", yaw)


@dataclass(frozen=True)
class SimConfig:
    linear_speed: float = 0.5
    vertical_speed: float = 0.5
    floor_altitude: float = 0.5
    tick: float = 0.05
    world_frame: bool = False

    def __post_init__(self) -> None:
        for name in ("linear_speed", "vertical_speed", "tick"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.floor_altitude < 0:
            raise ValueError("floor_altitude must be non-negative")


@dataclass(frozen=True)
class DroneState:
    """Pose plus the continuously executing action, if any.

    active_action is never a turn class; turns complete inside
    apply_command.
    """

    pose: Pose
    config: SimConfig
    active_action: ActionClass | None = None

    def __post_init__(self) -> None:
        if self.active_action in TURN_CLASSES:
            raise ValueError("turns complete instantaneously; they are never active")


def turn_clockwise(yaw: float) -> float:
    """yaw − 90° kept in [0, 360); exact for yaws on a ≥2⁻⁴⁴-degree grid."""
    return yaw - 90.0 if yaw >= 90.0 else yaw + 270.0


def turn_counterclockwise(yaw: float) -> float:
    """yaw + 90° kept in [0, 360); exact on the same grid."""
    return yaw + 90.0 if yaw < 270.0 else yaw - 270.0


def reset(config: SimConfig | None = None, start: Pose | None = None) -> DroneState:
    """Fresh hovering state; the start pose must not sit below the floor."""
    config = config if config is not None else SimConfig()
    start = start if start is not None else Pose()
    if start.z < config.floor_altitude:
        raise ValueError(
            f"start altitude {start.z} is below the floor {config.floor_altitude}"
        )
    return DroneState(pose=start, config=config)


def apply_command(state: DroneState, action: ActionClass) -> DroneState:
    """Dispatch one classified command.

    Stop clears the active action; TurnRight rotates yaw 90° clockwise and
    TurnLeft 90° counterclockwise, both instantaneous and leaving the drone
    hovering; every other class becomes the active action, replacing any
    prior one.
    """
    if action is ActionClass.STOP:
        return replace(state, active_action=None)
    if action is ActionClass.TURN_RIGHT:
        pose = replace(state.pose, yaw=turn_clockwise(state.pose.yaw))
        return replace(state, pose=pose, active_action=None)
    if action is ActionClass.TURN_LEFT:
        pose = replace(state.pose, yaw=turn_counterclockwise(state.pose.yaw))
        return replace(state, pose=pose, active_action=None)
    return replace(state, active_action=action)


def step(state: DroneState, dt: float) -> DroneState:
    """Integrate the active action over dt seconds.

    Descent clamps at the floor altitude and ceases (the action clears) on
    reaching it. Lateral and forward motion follow the current yaw heading
    unless the config selects the world frame. Hovering states are
    returned unchanged.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    action = state.active_action
    if action is None:
        return state
    config = state.config
    pose = state.pose
    if action is ActionClass.UP:
        return replace(state, pose=replace(pose, z=pose.z + config.vertical_speed * dt))
    if action is ActionClass.DOWN:
        z = pose.z - config.vertical_speed * dt
        if z <= config.floor_altitude:
            return replace(
                state, pose=replace(pose, z=config.floor_altitude), active_action=None
            )
        return replace(state, pose=replace(pose, z=z))
    theta = 0.0 if config.world_frame else math.radians(pose.yaw)
    heading = (math.cos(theta), math.sin(theta))
    if action is ActionClass.GO_FORWARD:
        direction = heading
    elif action is ActionClass.GO_BACK:
        direction = (-heading[0], -heading[1])
    elif action is ActionClass.GO_LEFT:
        direction = (-heading[1], heading[0])
    else:  # GO_RIGHT
        direction = (heading[1], -heading[0])
    distance = config.linear_speed * dt
    pose = replace(pose, x=pose.x + direction[0] * distance, y=pose.y + direction[1] * distance)
    return replace(state, pose=pose)


class Simulator:
    """Single-writer owner of a DroneState with a tick counter.

    Exactly one caller advances the simulator; snapshots handed out are
    immutable and safe to share.
    """

    def __init__(self, config: SimConfig | None = None, start: Pose | None = None):
        self._config = config if config is not None else SimConfig()
        self._start = start if start is not None else Pose()
        self.state = reset(self._config, self._start)
        self.tick_count = 0

    def apply(self, action: ActionClass) -> DroneState:
        self.state = apply_command(self.state, action)
        return self.state

    def step(self, dt: float | None = None) -> DroneState:
        self.state = step(self.state, dt if dt is not None else self._config.tick)
        self.tick_count += 1
        return self.state

    def reset(self) -> DroneState:
        self.state = reset(self._config, self._start)
        self.tick_count = 0
        return self.state
