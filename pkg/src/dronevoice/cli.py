"""Command-line entry point.

Subcommands: interpret (one-shot classification), evaluate (score a corpus),
sweep (degradation levels), serve (live teleop service), lexicon-check
(validate a lexicon file). Exit codes: 0 success, 1 input or environment
error, 2 no-class interpretation result.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .controller import ControllerConfig, check_exit_disjoint
from .evaluation import (
    EvaluationReport,
    build_surface_corpus,
    corpus_replay_provider,
    degradation_sweep,
    emit_report,
    evaluate,
    load_corpus,
    report_json,
)
from .lexicon import Language, Lexicon, LexiconError, default_lexicon, load_lexicon
from .matching import match_exact, match_fuzzy
from .providers import FixtureError
from .sim import SimConfig


def _load_lexicon(args: argparse.Namespace) -> Lexicon:
    if args.lexicon is None:
        return default_lexicon()
    return load_lexicon(args.lexicon)


def _language_filter(label: str) -> Language | None:
    return None if label == "both" else Language(label)


def _parse_levels(text: str) -> list[int | float]:
    levels: list[int | float] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            levels.append(int(token))
        except ValueError:
            levels.append(float(token))
    if not levels:
        raise ValueError("--levels is empty")
    return levels


def _print_accuracy_table(
    levels: list, reports: list[EvaluationReport], modes: list[str]
) -> None:
    # Rows are mode x language, columns are degradation levels.
    languages = sorted(set(reports[0].overall[modes[0]]) - {"both"}) + ["both"]
    header = f"{'mode':<8}{'language':<10}" + "".join(
        f"{'level ' + str(level):>12}" for level in levels
    )
    print(header)
    for mode in modes:
        for lang in languages:
            cells = "".join(
                f"{report.overall[mode][lang] * 100:>11.2f}%" for report in reports
            )
            print(f"{mode:<8}{lang:<10}{cells}")


def cmd_interpret(args: argparse.Namespace) -> int:
    lexicon = _load_lexicon(args)
    language = _language_filter(args.language)
    if args.mode == "exact":
        result = match_exact(args.text, lexicon, language)
    else:
        result = match_fuzzy(args.text, lexicon, language, args.reject_above)
    payload = {
        "hypothesis": args.text,
        "matched_surface": result.surface if result else None,
        "action_class": result.action_class.value if result else None,
        "distance": result.distance if result else None,
        "mode": args.mode,
        "no_class": result is None,
    }
    print(json.dumps(payload, sort_keys=True))
    return 0 if result is not None else 2


def _resolve_corpus(args: argparse.Namespace, lexicon: Lexicon):
    if args.corpus is None:
        corpus = build_surface_corpus(lexicon)
    else:
        corpus = load_corpus(args.corpus)
    if args.language != "both":
        wanted = Language(args.language)
        corpus = [u for u in corpus if u.language is wanted]
    if not corpus:
        raise ValueError("corpus is empty after language filtering")
    return corpus


def _modes(args: argparse.Namespace) -> list[str]:
    return ["exact", "fuzzy"] if args.mode == "both" else [args.mode]


def _write_report(report: EvaluationReport, out: Path) -> None:
    fmt = "csv" if out.suffix.lower() == ".csv" else "json"
    emit_report(report, fmt, out)


def cmd_evaluate(args: argparse.Namespace) -> int:
    lexicon = _load_lexicon(args)
    corpus = _resolve_corpus(args, lexicon)
    provider = corpus_replay_provider(corpus)
    modes = _modes(args)
    report: EvaluationReport | None = None
    for mode in modes:
        part = evaluate(corpus, lexicon, mode, provider, reject_above=args.reject_above)
        report = part if report is None else report.merge(part)
    assert report is not None
    if args.out is not None:
        _write_report(report, Path(args.out))
    else:
        sys.stdout.write(report_json(report))
    _print_accuracy_table(["raw"], [report], modes)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    lexicon = _load_lexicon(args)
    corpus = _resolve_corpus(args, lexicon)
    levels = _parse_levels(args.levels)
    modes = _modes(args)
    results = degradation_sweep(
        corpus, lexicon, levels, args.seed, modes=modes, reject_above=args.reject_above
    )
    if args.out is not None:
        out = Path(args.out)
        for level, report in results:
            target = out.with_name(f"{out.stem}-L{level}{out.suffix or '.json'}")
            _write_report(report, target)
    _print_accuracy_table([lv for lv, _ in results], [r for _, r in results], modes)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve

    lexicon = _load_lexicon(args)
    config = ControllerConfig(
        mode=args.mode, language_filter=_language_filter(args.language),
        reject_above=args.reject_above,
    )
    sim_config = SimConfig(
        linear_speed=args.linear_speed,
        vertical_speed=args.vertical_speed,
        tick=args.tick_ms / 1000.0,
    )

    def log_sink(event: dict) -> None:
        print(json.dumps(event, sort_keys=True), flush=True)

    try:
        serve(args.address, lexicon, sim_config, config, log_sink=log_sink)
    except KeyboardInterrupt:
        return 0
    except (OSError, SystemExit) as exc:
        print(f"error: could not serve on {args.address}: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_lexicon_check(args: argparse.Namespace) -> int:
    lexicon = _load_lexicon(args)
    check_exit_disjoint(ControllerConfig(), lexicon)
    classes = {entry.action_class for entry in lexicon.entries}
    languages = {entry.language for entry in lexicon.entries}
    print(
        f"ok: {len(lexicon)} entries, {len(classes)} classes, "
        f"{len(languages)} languages, version {lexicon.version}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dronevoice",
        description="Bilingual voice-command interpretation for a simulated quadrotor",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser, mode_choices=("exact", "fuzzy")) -> None:
        p.add_argument("--lexicon", metavar="PATH", default=None)
        p.add_argument("--mode", choices=mode_choices, default=mode_choices[-1])
        p.add_argument("--language", choices=("es", "en", "both"), default="both")
        p.add_argument("--reject-above", type=int, metavar="N", default=None)

    p_interpret = sub.add_parser("interpret", help="classify one utterance")
    add_common(p_interpret)
    p_interpret.add_argument("--text", required=True)
    p_interpret.set_defaults(func=cmd_interpret)

    p_evaluate = sub.add_parser("evaluate", help="score a corpus")
    add_common(p_evaluate, mode_choices=("exact", "fuzzy", "both"))
    p_evaluate.add_argument("--corpus", metavar="PATH", default=None)
    p_evaluate.add_argument("--out", metavar="PATH", default=None)
    p_evaluate.set_defaults(func=cmd_evaluate)

    p_sweep = sub.add_parser("sweep", help="evaluate under degradation levels")
    add_common(p_sweep, mode_choices=("exact", "fuzzy", "both"))
    p_sweep.add_argument("--corpus", metavar="PATH", default=None)
    p_sweep.add_argument("--levels", metavar="CSV", default="0,1,2,3")
    p_sweep.add_argument("--seed", type=int, metavar="N", default=0)
    p_sweep.add_argument("--out", metavar="PATH", default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_serve = sub.add_parser("serve", help="run the live teleop service")
    add_common(p_serve)
    p_serve.add_argument("--address", metavar="HOST:PORT", default="127.0.0.1:8765")
    p_serve.add_argument("--linear-speed", type=float, metavar="F", default=0.5)
    p_serve.add_argument("--vertical-speed", type=float, metavar="F", default=0.5)
    p_serve.add_argument("--tick-ms", type=int, metavar="N", default=50)
    p_serve.set_defaults(func=cmd_serve)

    p_check = sub.add_parser("lexicon-check", help="validate a lexicon file")
    p_check.add_argument("--lexicon", metavar="PATH", default=None)
    p_check.set_defaults(func=cmd_lexicon_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the contract reserves 2 for
        # no-class results, so usage errors map to 1.
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (OSError, LexiconError, FixtureError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
