"""Workspace loading: file paths plus mining configuration, resolved into an
immutable bundle of mined results that the CLI and the HTTP service share.

Triage verdicts are the one mutable piece; they live in an append-only log
replayed at startup, last verdict per (seed, method) wins.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from pathlib import Path

from . import combine, dynmine, fanin, fca, identmine, metrics
from .errors import InputError, UnknownSeed
from .facts import ProgramFacts, parse_facts
from .fanin import (
    CALLEE_ONLY,
    DEFAULT_FANIN_THRESHOLD,
    DEFAULT_UTILITY_NAMES,
    INTERPRETATIONS,
    Seed,
)


@dataclass(frozen=True)
class MiningConfig:
    fanin_threshold: int = DEFAULT_FANIN_THRESHOLD
    min_extent: int = identmine.DEFAULT_MIN_EXTENT
    match_threshold: int = combine.DEFAULT_MATCH_THRESHOLD
    interpretation: str = CALLEE_ONLY
    utility_names: frozenset[str] = DEFAULT_UTILITY_NAMES
    conflate: bool = True
    exclude_tests: bool = True
    exclude_accessors: bool = True

    _JSON_KEYS = {
        "faninThreshold": "fanin_threshold",
        "minExtent": "min_extent",
        "matchThreshold": "match_threshold",
        "interpretation": "interpretation",
        "utilityNames": "utility_names",
        "conflate": "conflate",
        "excludeTests": "exclude_tests",
        "excludeAccessors": "exclude_accessors",
    }

    @classmethod
    def from_json(cls, data: dict) -> "MiningConfig":
        kwargs = {}
        for key, value in data.items():
            if key not in cls._JSON_KEYS:
                raise InputError(f"unknown config key {key!r}")
            attr = cls._JSON_KEYS[key]
            if attr == "utility_names":
                value = frozenset(value)
            kwargs[attr] = value
        config = cls(**kwargs)
        config.validate()
        return config

    def validate(self) -> None:
        if self.fanin_threshold < 1:
            raise InputError("faninThreshold must be >= 1")
        if self.min_extent < 1:
            raise InputError("minExtent must be >= 1")
        if self.match_threshold < 1:
            raise InputError("matchThreshold must be >= 1")
        if self.interpretation not in INTERPRETATIONS:
            raise InputError(f"unknown interpretation {self.interpretation!r}")

    def id_config(self) -> identmine.IdContextConfig:
        return identmine.IdContextConfig(
            exclude_tests=self.exclude_tests,
            exclude_accessors=self.exclude_accessors,
            conflate=self.conflate,
        )


@dataclass(frozen=True)
class Workspace:
    facts_path: Path
    traces_path: Path | None = None
    truth_path: Path | None = None
    triage_path: Path | None = None
    config: MiningConfig = MiningConfig()

    def load(self) -> "WorkspaceState":
        return WorkspaceState(self)


class TriageStore:
    """Append-only verdict log. Callers serialize writes through the owning
    state's lock."""

    def __init__(self, path: Path | None):
        self.path = path
        self.verdicts: dict[tuple[str, str], str] = {}
        self.notes: dict[str, str] = {}
        if path is not None and path.exists():
            for sid, mid, verdict in combine.parse_triage(
                path.read_text(encoding="utf-8"), allow_unreviewed=True
            ):
                self._apply(sid, mid, verdict)
            for line in path.read_text(encoding="utf-8").splitlines():
                if line.startswith("# note\t"):
                    _, sid, text = line.split("\t", 2)
                    self.notes[sid] = text

    def _apply(self, seed_id: str, method_id: str, verdict: str) -> None:
        key = (seed_id, method_id)
        if verdict == combine.VERDICT_UNREVIEWED:
            self.verdicts.pop(key, None)
        else:
            self.verdicts[key] = verdict

    def record(self, seed_id: str, member_verdicts: dict[str, str], note: str = "") -> None:
        lines = []
        for mid in sorted(member_verdicts):
            lines.append(f"V\t{seed_id}\t{mid}\t{member_verdicts[mid]}")
        if note:
            lines.append(f"# note\t{seed_id}\t{note}")
            self.notes[seed_id] = note
        if self.path is not None:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write("\n".join(lines) + "\n")
        for mid, verdict in member_verdicts.items():
            self._apply(seed_id, mid, verdict)

    def verdict_map(self, seed_id: str, members: frozenset[str]) -> dict[str, str]:
        return {
            mid: self.verdicts.get((seed_id, mid), combine.VERDICT_UNREVIEWED)
            for mid in sorted(members)
        }

    def effective_methods(self, seed: Seed) -> frozenset[str]:
        return frozenset(
            mid
            for mid in seed.methods
            if self.verdicts.get((seed.id, mid)) != combine.VERDICT_REJECT
        )


class WorkspaceState:
    """Everything mined from one workspace. The mining outputs are immutable;
    the lock guards the seed registry and triage store only."""

    def __init__(self, workspace: Workspace):
        self.workspace = workspace
        config = workspace.config
        self.facts: ProgramFacts = parse_facts(
            workspace.facts_path.read_text(encoding="utf-8")
        )
        self.traces = (
            dynmine.parse_traces(
                workspace.traces_path.read_text(encoding="utf-8"), self.facts
            )
            if workspace.traces_path
            else None
        )
        self.truth = (
            metrics.parse_truth(
                workspace.truth_path.read_text(encoding="utf-8"), self.facts
            )
            if workspace.truth_path
            else None
        )

        self.fanin_result = fanin.compute_fanin(self.facts)
        self.fanin_candidates = fanin.filter_candidates(
            self.fanin_result,
            self.facts,
            threshold=config.fanin_threshold,
            utility_names=config.utility_names,
        )
        self.fanin_seeds = fanin.fanin_seeds(
            self.fanin_candidates, self.fanin_result, config.interpretation
        )

        id_config = config.id_config()
        self.lexicon = identmine.build_lexicon(self.facts, id_config)
        self.id_context = identmine.build_id_context(
            self.facts, id_config, lexicon=self.lexicon
        )
        self.mined_concepts = identmine.mine_identifier_concepts(
            self.id_context, self.facts, min_extent=config.min_extent
        )
        self.identifier_seeds = identifier_seeds(self.facts, self.mined_concepts)

        self.dyn_report = (
            dynmine.dynamic_seeds(self.facts, self.traces) if self.traces else None
        )
        self.dynamic_seeds = (
            dynamic_seeds_from_report(self.dyn_report) if self.dyn_report else ()
        )

        self.lock = threading.Lock()
        self.triage = TriageStore(workspace.triage_path)
        self.seeds: dict[str, Seed] = {}
        for seed in (*self.fanin_seeds, *self.identifier_seeds, *self.dynamic_seeds):
            self.seeds[seed.id] = seed
        self.expansions: dict[str, combine.ExpandedSeed] = {}

        self._ident_lattice: fca.ConceptLattice | None = None

    @property
    def ident_lattice(self) -> fca.ConceptLattice:
        if self._ident_lattice is None:
            self._ident_lattice = fca.lattice(self.id_context)
        return self._ident_lattice

    def seed(self, seed_id: str) -> Seed:
        try:
            return self.seeds[seed_id]
        except KeyError:
            raise UnknownSeed(seed_id) from None

    def expand(self, seed_id: str) -> combine.ExpandedSeed:
        """Expand a fan-in or dynamic seed via its nearest identifier
        concept and register the combined result. Idempotent per seed."""
        origin = self.seed(seed_id)
        if origin.technique not in ("fanin", "dynamic"):
            raise InputError(
                f"only fanin/dynamic seeds expand; {seed_id!r} is {origin.technique}"
            )
        expanded = combine.expand_seed(
            self.facts, origin, self.mined_concepts, lexicon=self.lexicon
        )
        with self.lock:
            self.expansions[seed_id] = expanded
            as_seed = expanded.as_seed()
            self.seeds[as_seed.id] = as_seed
        return expanded

    def effective_seed(self, seed: Seed) -> Seed:
        return replace(seed, methods=self.triage.effective_methods(seed))

    def all_seeds(self, technique: str | None = None) -> tuple[Seed, ...]:
        out = [
            s
            for s in self.seeds.values()
            if technique is None or s.technique == technique
        ]
        return tuple(sorted(out, key=lambda s: (s.technique, s.id)))

    def score_rows(self) -> tuple[metrics.SeedScore, ...]:
        if self.truth is None:
            return ()
        effective = tuple(
            self.effective_seed(s) for s in self.all_seeds() if
            self.triage.effective_methods(s)
        )
        return metrics.score_report(effective, self.truth)


def identifier_seeds(
    facts: ProgramFacts, mined: list[identmine.IdentifierConcept]
) -> tuple[Seed, ...]:
    """Candidate identifier concepts as seeds; extent classes drop out, and a
    candidate whose extent holds no methods yields no seed."""
    seeds = []
    for idx, ic in enumerate(mined):
        if not ic.candidate:
            continue
        methods = frozenset(e for e in ic.concept.extent if e in facts.methods)
        if not methods:
            continue
        seeds.append(
            Seed(
                id=f"ident:{idx}",
                technique="identifier",
                label="identifier concept {%s}" % ";".join(sorted(ic.concept.intent)),
                methods=methods,
            )
        )
    return tuple(seeds)


def dynamic_seeds_from_report(report: dynmine.DynSeedReport) -> tuple[Seed, ...]:
    """Generic-list seed concepts as seeds over their labeling methods."""
    seeds = []
    for verdict in report.seeds_of("generic"):
        methods = dynmine.method_labels(report.lattice, verdict.concept)
        if not methods:
            continue
        seeds.append(
            Seed(
                id=f"dyn:{verdict.index}",
                technique="dynamic",
                label=f"dynamic concept {verdict.index}",
                methods=methods,
            )
        )
    return tuple(seeds)
