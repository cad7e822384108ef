"""Batch CLI over all analyses plus the `serve` entry point.

Exit status: 0 success, 1 input error (bad files, bad flags, dangling
references), 2 internal invariant violation. All reports are canonically
sorted so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from pathlib import Path

from . import combine, corpusgen, dynmine, fanin, identmine, metrics, service
from .errors import InputError
from .facts import parse_facts, serialize_facts
from .fanin import INTERPRETATIONS
from .workspace import MiningConfig, Workspace


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # input errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise InputError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_config(args) -> MiningConfig:
    """Defaults, then the workspace config file, then explicit flags."""
    config = MiningConfig()
    if getattr(args, "config", None):
        try:
            data = json.loads(_read(args.config))
        except json.JSONDecodeError as exc:
            raise InputError(f"bad config file {args.config}: {exc}") from exc
        config = MiningConfig.from_json(data)
    overrides = {}
    if getattr(args, "threshold", None) is not None:
        overrides["fanin_threshold"] = args.threshold
    if getattr(args, "min_extent", None) is not None:
        overrides["min_extent"] = args.min_extent
    if getattr(args, "match_threshold", None) is not None:
        overrides["match_threshold"] = args.match_threshold
    if getattr(args, "interpretation", None) is not None:
        overrides["interpretation"] = args.interpretation
    if getattr(args, "utility_names", None) is not None:
        overrides["utility_names"] = frozenset(
            n for n in args.utility_names.split(",") if n
        )
    if getattr(args, "no_conflation", False):
        overrides["conflate"] = False
    if getattr(args, "include_tests", False):
        overrides["exclude_tests"] = False
    if getattr(args, "include_accessors", False):
        overrides["exclude_accessors"] = False
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)
    config.validate()
    return config


def _write_seeds(path: str, seeds) -> None:
    Path(path).write_text(combine.serialize_seeds(tuple(seeds)), encoding="utf-8")


def _print(lines) -> None:
    for line in lines:
        print(line)


# -- subcommands -----------------------------------------------------------


def _cmd_mine_fanin(args) -> int:
    config = _load_config(args)
    facts = parse_facts(_read(args.facts))
    result = fanin.compute_fanin(facts)
    selected = fanin.filter_candidates(
        result,
        facts,
        threshold=config.fanin_threshold,
        utility_names=config.utility_names,
        apply_filters=not args.no_filters,
    )
    _print(fanin.report_rows(result, selected, with_callers=args.callers))
    if args.seeds_out:
        seeds = fanin.fanin_seeds(selected, result, config.interpretation)
        _write_seeds(args.seeds_out, seeds)
    return 0


def _cmd_mine_ident(args) -> int:
    config = _load_config(args)
    facts = parse_facts(_read(args.facts))
    id_config = config.id_config()
    lexicon = identmine.build_lexicon(facts, id_config)
    ctx = identmine.build_id_context(facts, id_config, lexicon=lexicon)
    mined = identmine.mine_identifier_concepts(ctx, facts, min_extent=config.min_extent)
    _print(identmine.concept_report_rows(mined))
    if args.seeds_out:
        from .workspace import identifier_seeds

        _write_seeds(args.seeds_out, identifier_seeds(facts, mined))
    return 0


def _cmd_mine_dyn(args) -> int:
    facts = parse_facts(_read(args.facts))
    traces = dynmine.parse_traces(_read(args.traces), facts, strict=not args.lenient)
    report = dynmine.dynamic_seeds(facts, traces)
    _print(dynmine.report_rows(report))
    if args.seeds_out:
        seeds = []
        for verdict in report.seeds_of(args.which):
            methods = dynmine.method_labels(report.lattice, verdict.concept)
            if methods:
                seeds.append(
                    fanin.Seed(
                        id=f"dyn:{verdict.index}",
                        technique="dynamic",
                        label=f"dynamic concept {verdict.index}",
                        methods=methods,
                    )
                )
        _write_seeds(args.seeds_out, seeds)
    return 0


def _cmd_combine(args) -> int:
    config = _load_config(args)
    seeds_a = combine.parse_seeds(_read(args.seeds_a))
    seeds_b = combine.parse_seeds(_read(args.seeds_b))
    union, intersection, matches = combine.seed_union(
        seeds_a, seeds_b, config.match_threshold
    )
    for m in matches:
        print(
            "MATCH\t%s\t%s\t%d\t%s"
            % (m.seed_a, m.seed_b, m.overlap, "matched" if m.matched else "unmatched")
        )
    print(f"UNION\t{union}")
    print(f"INTERSECTION\t{intersection}")
    return 0


def _cmd_expand(args) -> int:
    config = _load_config(args)
    facts = parse_facts(_read(args.facts))
    seeds = combine.parse_seeds(_read(args.seeds), facts)
    id_config = config.id_config()
    lexicon = identmine.build_lexicon(facts, id_config)
    ctx = identmine.build_id_context(facts, id_config, lexicon=lexicon)
    mined = identmine.mine_identifier_concepts(ctx, facts, min_extent=config.min_extent)

    chosen = [s for s in seeds if s.technique in ("fanin", "dynamic")]
    if args.seed_id is not None:
        chosen = [s for s in seeds if s.id == args.seed_id]
        if not chosen:
            raise InputError(f"seed {args.seed_id!r} not in {args.seeds}")
    expanded = []
    for seed in chosen:
        exp = combine.expand_seed(facts, seed, mined, lexicon=lexicon)
        expanded.append(exp)
        print(
            "EXPAND\t%s\t%d\t%s\t%s"
            % (
                seed.id,
                exp.score,
                ";".join(str(i) for i in exp.nearest) or "-",
                ",".join(sorted(exp.added_methods)) or "-",
            )
        )
    if args.out:
        _write_seeds(args.out, [e.as_seed() for e in expanded])
    return 0


def _cmd_score(args) -> int:
    facts = parse_facts(_read(args.facts))
    seeds = combine.parse_seeds(_read(args.seeds), facts)
    truth = metrics.parse_truth(_read(args.truth), facts)
    rows = metrics.score_report(seeds, truth)
    sys.stdout.write(metrics.report_tsv(rows))
    print()
    sys.stdout.write(metrics.report_table(rows))
    return 0


def _cmd_gen(args) -> int:
    try:
        data = json.loads(_read(args.spec))
    except json.JSONDecodeError as exc:
        raise InputError(f"bad generator spec {args.spec}: {exc}") from exc
    try:
        spec = corpusgen.GenSpec.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad generator spec {args.spec}: {exc}") from exc
    facts, traces, truth = corpusgen.generate(spec)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    header = corpusgen.header_for(spec)
    written = [
        (out / "corpus.facts", serialize_facts(facts, header=header)),
        (out / "corpus.traces", dynmine.serialize_traces(traces, header=header)),
        (out / "corpus.truth", metrics.serialize_truth(truth, header=header)),
    ]
    for path, text in written:
        path.write_text(text, encoding="utf-8")
        print(f"WROTE\t{path}")
    return 0


def _cmd_serve(args) -> int:
    config = _load_config(args)
    workspace = Workspace(
        facts_path=Path(args.facts),
        traces_path=Path(args.traces) if args.traces else None,
        truth_path=Path(args.truth) if args.truth else None,
        triage_path=Path(args.triage_log) if args.triage_log else None,
        config=config,
    )
    port = args.port
    if port is None:
        port = int(os.environ.get(service.PORT_ENV_VAR, service.DEFAULT_PORT))
    ui_dir = Path(args.ui_dir) if args.ui_dir else None
    if ui_dir is not None and not ui_dir.is_dir():
        raise InputError(f"--ui-dir {ui_dir} is not a directory")
    svc = service.serve(workspace, port=port, ui_dir=ui_dir)
    print(f"serving on http://127.0.0.1:{svc.port}/", file=sys.stderr)
    try:
        svc.serve_forever()
    except KeyboardInterrupt:
        svc.shutdown()
    return 0


# -- parser -----------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="aspectminer",
        description="Crosscutting-concern mining over language-agnostic program facts",
    )
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--config", help="workspace config file (JSON); flags win")
        return p

    p = add("mine-fanin", _cmd_mine_fanin, "fan-in metric and candidate filter")
    p.add_argument("--facts", required=True)
    p.add_argument("--threshold", type=int, help="fan-in threshold (default 10)")
    p.add_argument("--no-filters", action="store_true", help="skip accessor/utility filters")
    p.add_argument("--callers", action="store_true", help="append the caller set column")
    p.add_argument("--interpretation", choices=INTERPRETATIONS)
    p.add_argument("--utility-names", help="comma list replacing the default utility names")
    p.add_argument("--seeds-out", help="write candidate seeds to this file")

    p = add("mine-ident", _cmd_mine_ident, "identifier analysis concepts")
    p.add_argument("--facts", required=True)
    p.add_argument("--min-extent", type=int, help="candidate extent threshold (default 4)")
    p.add_argument("--no-conflation", action="store_true")
    p.add_argument("--include-tests", action="store_true")
    p.add_argument("--include-accessors", action="store_true")
    p.add_argument("--seeds-out", help="write candidate-concept seeds to this file")

    p = add("mine-dyn", _cmd_mine_dyn, "dynamic analysis over execution traces")
    p.add_argument("--facts", required=True)
    p.add_argument("--traces", required=True)
    p.add_argument("--lenient", action="store_true", help="drop unknown trace methods")
    p.add_argument("--which", choices=("specific", "generic"), default="generic")
    p.add_argument("--seeds-out", help="write seed-verdict concepts to this file")

    p = add("combine", _cmd_combine, "union/intersection counts of two seed sets")
    p.add_argument("--seeds-a", required=True)
    p.add_argument("--seeds-b", required=True)
    p.add_argument("--match-threshold", type=int)

    p = add("expand", _cmd_expand, "expand seeds via nearest identifier concepts")
    p.add_argument("--facts", required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--seed-id", help="expand only this seed")
    p.add_argument("--min-extent", type=int)
    p.add_argument("--no-conflation", action="store_true")
    p.add_argument("--include-tests", action="store_true")
    p.add_argument("--include-accessors", action="store_true")
    p.add_argument("--out", help="write expanded seeds to this file")

    p = add("score", _cmd_score, "recalled/quality report against ground truth")
    p.add_argument("--facts", required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--truth", required=True)

    p = add("gen", _cmd_gen, "generate a synthetic corpus")
    p.add_argument("--spec", required=True, help="GenSpec JSON file")
    p.add_argument("--out-dir", required=True)

    p = add("serve", _cmd_serve, "HTTP service for the triage UI")
    p.add_argument("--facts", required=True)
    p.add_argument("--traces")
    p.add_argument("--truth")
    p.add_argument("--triage-log", help="append-only verdict log path")
    p.add_argument("--port", type=int, help=f"default ${service.PORT_ENV_VAR} or {service.DEFAULT_PORT}")
    p.add_argument("--ui-dir", help="static assets directory for the UI")
    p.add_argument("--threshold", type=int)
    p.add_argument("--min-extent", type=int)
    p.add_argument("--match-threshold", type=int)
    p.add_argument("--interpretation", choices=INTERPRETATIONS)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            parser.print_help()
            return 1
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
