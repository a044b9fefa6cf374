"""Interpretation loop: hypothesis → classification → simulator dispatch.

The loop consumes utterances until an exit instruction arrives, classifying
each hypothesis in exact or fuzzy mode and applying classified commands to
a single-writer simulator, advancing one tick per utterance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lexicon import Language, Lexicon
from .matching import MatchResult, match_exact, match_fuzzy, normalize
from .providers import Hypothesis, ProviderError, SpeechProvider
from .sim import DroneState, Simulator

DEFAULT_EXIT_SURFACES = frozenset({"exit", "salir"})

MODES = ("exact", "fuzzy")


@dataclass(frozen=True)
class ControllerConfig:
    """Interpretation settings for a session.

    exit_surfaces are reserved words that end the session; they must stay
    disjoint from lexicon surfaces so termination never competes with
    classification.
    """

    mode: str = "fuzzy"
    language_filter: Language | None = None
    reject_above: int | None = None
    exit_surfaces: frozenset[str] = DEFAULT_EXIT_SURFACES

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.reject_above is not None and self.reject_above < 0:
            raise ValueError("reject_above must be non-negative")
        object.__setattr__(self, "exit_surfaces", frozenset(self.exit_surfaces))
        for surface in self.exit_surfaces:
            if normalize(surface) != surface:
                raise ValueError(f"exit surface {surface!r} is not normalized")


def check_exit_disjoint(config: ControllerConfig, lexicon: Lexicon) -> None:
    """Raise if any exit surface collides with a lexicon surface."""
    collisions = config.exit_surfaces & set(lexicon.by_surface)
    if collisions:
        raise ValueError(f"exit surfaces collide with lexicon surfaces: {sorted(collisions)}")


@dataclass(frozen=True)
class InterpretationOutcome:
    """One log entry of the session loop.

    result is absent exactly when the utterance got "no class" (exact miss
    or fuzzy rejection), which coincides with dispatched being false,
    except for exit instructions and provider failures.
    """

    hypothesis: Hypothesis | None
    result: MatchResult | None = None
    dispatched: bool = False
    is_exit: bool = False
    error: str | None = None

    def __post_init__(self) -> None:
        if self.error is not None or self.is_exit:
            if self.result is not None or self.dispatched:
                raise ValueError("exit/failed outcomes carry no result and dispatch nothing")
        elif self.dispatched != (self.result is not None):
            raise ValueError("dispatched must mirror the presence of a result")


def interpret(
    hypothesis: Hypothesis, lexicon: Lexicon, config: ControllerConfig
) -> InterpretationOutcome:
    """Classify one hypothesis (pure; does not touch the simulator).

    Exit surfaces are recognized before matching. In fuzzy mode without a
    rejection threshold every non-exit hypothesis is classified.
    """
    if normalize(hypothesis.text) in config.exit_surfaces:
        return InterpretationOutcome(hypothesis, is_exit=True)
    if config.mode == "exact":
        result = match_exact(hypothesis.text, lexicon, config.language_filter)
    else:
        result = match_fuzzy(
            hypothesis.text, lexicon, config.language_filter, config.reject_above
        )
    return InterpretationOutcome(hypothesis, result=result, dispatched=result is not None)


def run_loop(
    provider: SpeechProvider,
    utterance_stream: Iterable[str],
    sim: Simulator,
    lexicon: Lexicon,
    config: ControllerConfig,
) -> list[InterpretationOutcome]:
    """Drive the session loop over a stream of utterance sources.

    Per utterance: transcribe, interpret, apply any classified command,
    then advance one tick. An exit instruction ends the loop immediately
    (no tick). Provider failures become logged failed outcomes and the
    loop continues. Returns the ordered log, one outcome per consumed
    utterance.
    """
    check_exit_disjoint(config, lexicon)
    log: list[InterpretationOutcome] = []
    for source in utterance_stream:
        try:
            hypothesis = provider.transcribe(source)
        except ProviderError as exc:
            log.append(InterpretationOutcome(None, error=str(exc)))
            sim.step()
            continue
        outcome = interpret(hypothesis, lexicon, config)
        log.append(outcome)
        if outcome.is_exit:
            break
        if outcome.result is not None:
            sim.apply(outcome.result.action_class)
        sim.step()
    return log


def replay_outcomes(log: Sequence[InterpretationOutcome], sim: Simulator) -> DroneState:
    """Re-drive a fresh simulator from a session log.

    Applies the same dispatch/tick schedule as run_loop, so the final
    DroneState matches the original session exactly.
    """
    for outcome in log:
        if outcome.is_exit:
            break
        if outcome.result is not None:
            sim.apply(outcome.result.action_class)
        sim.step()
    return sim.state
