"""Bilingual voice-command interpretation and teleoperation for a simulated
quadrotor: edit-distance classification of transcripts into nine drone
actions, a deterministic kinematic simulator, an evaluation harness, and a
live WebSocket teleop service."""

from .audio import NoiseSpec, Waveform, compute_snr, inject_noise, read_wav, write_wav
from .controller import (
    ControllerConfig,
    InterpretationOutcome,
    interpret,
    replay_outcomes,
    run_loop,
)
from .evaluation import (
    EvaluationReport,
    LabeledUtterance,
    build_surface_corpus,
    corpus_replay_provider,
    degradation_sweep,
    emit_report,
    evaluate,
    load_corpus,
    load_report,
)
from .lexicon import (
    ActionClass,
    Language,
    Lexicon,
    LexiconEntry,
    LexiconError,
    default_lexicon,
    entries_for,
    exact_lookup,
    load_lexicon,
    parse_lexicon,
    serialize_lexicon,
)
from .matching import (
    MatchResult,
    levenshtein,
    match_exact,
    match_fuzzy,
    normalize,
)
from .providers import (
    EditNoiseProvider,
    FixtureError,
    Hypothesis,
    NoisyWaveformProvider,
    ProviderError,
    ReplayProvider,
    SpeechProvider,
    UnknownUtteranceError,
)
from .sim import DroneState, Pose, SimConfig, Simulator, apply_command, reset, step

__version__ = "0.1.0"

__all__ = [
    "ActionClass",
    "ControllerConfig",
    "DroneState",
    "EditNoiseProvider",
    "EvaluationReport",
    "FixtureError",
    "Hypothesis",
    "InterpretationOutcome",
    "LabeledUtterance",
    "Language",
    "Lexicon",
    "LexiconEntry",
    "LexiconError",
    "MatchResult",
    "NoiseSpec",
    "NoisyWaveformProvider",
    "Pose",
    "ProviderError",
    "ReplayProvider",
    "SimConfig",
    "Simulator",
    "SpeechProvider",
    "UnknownUtteranceError",
    "Waveform",
    "apply_command",
    "build_surface_corpus",
    "compute_snr",
    "corpus_replay_provider",
    "default_lexicon",
    "degradation_sweep",
    "emit_report",
    "entries_for",
    "evaluate",
    "exact_lookup",
    "inject_noise",
    "interpret",
    "levenshtein",
    "load_corpus",
    "load_lexicon",
    "load_report",
    "match_exact",
    "match_fuzzy",
    "normalize",
    "parse_lexicon",
    "read_wav",
    "replay_outcomes",
    "reset",
    "run_loop",
    "serialize_lexicon",
    "step",
    "write_wav",
]
