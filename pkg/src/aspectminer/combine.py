"""Seed-set algebra across techniques and the combined technique: expand a
fan-in or dynamic seed with the members of its nearest identifier concept,
then apply analyst triage verdicts.

Concern matching between two seed sets is a mechanical stand-in for a human
judgment call: two seeds match when their method sets share at
least matchThreshold methods, assigned greedily by descending overlap with
each seed used at most once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedRecord, UnknownMember
from .facts import ProgramFacts
from .fanin import Seed
from .identmine import (
    IdContextConfig,
    IdentifierConcept,
    StemLexicon,
    build_lexicon,
)

DEFAULT_MATCH_THRESHOLD = 1

TECHNIQUES = ("fanin", "identifier", "dynamic", "combined")

VERDICT_ACCEPT = "accept"
VERDICT_REJECT = "reject"
VERDICT_UNREVIEWED = "unreviewed"


@dataclass(frozen=True)
class SeedMatch:
    seed_a: str
    seed_b: str
    overlap: int
    matched: bool


def seed_union(
    seeds_a: tuple[Seed, ...],
    seeds_b: tuple[Seed, ...],
    match_threshold: int = DEFAULT_MATCH_THRESHOLD,
) -> tuple[int, int, tuple[SeedMatch, ...]]:
    """(union count, intersection count, scored pairs).

    Union counts distinct concerns: |A| + |B| - matched pairs.
    """
    if match_threshold < 1:
        raise ValueError("match threshold must be >= 1")
    scored = []
    for a in seeds_a:
        for b in seeds_b:
            overlap = len(a.methods & b.methods)
            if overlap >= match_threshold:
                scored.append([a.id, b.id, overlap])
    scored.sort(key=lambda row: (-row[2], row[0], row[1]))
    used_a: set[str] = set()
    used_b: set[str] = set()
    matches = []
    for aid, bid, overlap in scored:
        ok = aid not in used_a and bid not in used_b
        if ok:
            used_a.add(aid)
            used_b.add(bid)
        matches.append(SeedMatch(aid, bid, overlap, ok))
    n_matched = len(used_a)
    union = len(seeds_a) + len(seeds_b) - n_matched
    return union, n_matched, tuple(matches)


def seed_identifiers(
    facts: ProgramFacts,
    seed: Seed,
    lexicon: StemLexicon | None = None,
    config: IdContextConfig = IdContextConfig(),
) -> frozenset[str]:
    """Stems occurring in the seed methods' names and their enclosing class
    simple names, using the identifier analysis splitter and stemmer."""
    if lexicon is None:
        lexicon = build_lexicon(facts, config)
    stems: set[str] = set()
    for mid in sorted(seed.methods):
        method = facts.method(mid)
        stems |= lexicon.stems_of(method.name)
        stems |= lexicon.stems_of(facts.enclosing_type(mid).simple_name)
    return frozenset(stems)


def nearest_concepts(
    stems: frozenset[str], mined: list[IdentifierConcept]
) -> tuple[tuple[int, ...], int]:
    """Indices (into the mined list) of the candidate concepts whose intents
    share the most stems with the seed; empty selection when nothing
    overlaps."""
    best = 0
    selected: list[int] = []
    for idx, ic in enumerate(mined):
        if not ic.candidate:
            continue
        score = len(stems & ic.concept.intent)
        if score > best:
            best = score
            selected = [idx]
        elif score == best and best > 0:
            selected.append(idx)
    return tuple(selected), best


@dataclass(frozen=True)
class ExpandedSeed:
    origin: Seed
    added_methods: frozenset[str]
    nearest: tuple[int, ...]  # mined-list concept indices
    score: int

    @property
    def methods(self) -> frozenset[str]:
        return self.origin.methods | self.added_methods

    def as_seed(self) -> Seed:
        return Seed(
            id=f"{self.origin.id}+ident",
            technique="combined",
            label=f"{self.origin.label} + identifier expansion",
            methods=self.methods,
        )


def expand_seed(
    facts: ProgramFacts,
    seed: Seed,
    mined: list[IdentifierConcept],
    lexicon: StemLexicon | None = None,
    config: IdContextConfig = IdContextConfig(),
) -> ExpandedSeed:
    """Add the method-typed members of the nearest identifier concept(s);
    class-typed extent members are ignored. A zero-score seed comes back
    unchanged."""
    stems = seed_identifiers(facts, seed, lexicon=lexicon, config=config)
    selected, score = nearest_concepts(stems, mined)
    added: set[str] = set()
    for idx in selected:
        for eid in mined[idx].concept.extent:
            if eid in facts.methods:
                added.add(eid)
    return ExpandedSeed(
        origin=seed,
        added_methods=frozenset(added - seed.methods),
        nearest=selected,
        score=score,
    )


@dataclass(frozen=True)
class TriageVerdict:
    seed_id: str
    member_verdicts: dict[str, str]  # method id -> accept | reject | unreviewed
    note: str = ""


def apply_triage(expanded: ExpandedSeed, verdict: TriageVerdict) -> Seed:
    """Rejected members drop out; accepted and unreviewed members stay."""
    seed = expanded.as_seed()
    members = expanded.methods
    for mid, v in verdict.member_verdicts.items():
        if mid not in members:
            raise UnknownMember(verdict.seed_id, mid)
        if v not in (VERDICT_ACCEPT, VERDICT_REJECT, VERDICT_UNREVIEWED):
            raise MalformedRecord(0, f"unknown verdict {v!r}")
    kept = frozenset(
        mid
        for mid in members
        if verdict.member_verdicts.get(mid, VERDICT_UNREVIEWED) != VERDICT_REJECT
    )
    return Seed(
        id=seed.id,
        technique=seed.technique,
        label=seed.label,
        methods=kept,
    )


# -- seed / triage file formats -------------------------------------------


def parse_seeds(text: str, facts: ProgramFacts | None = None) -> tuple[Seed, ...]:
    seeds = []
    seen: set[str] = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if fields[0] != "S" or len(fields) != 5:
            raise MalformedRecord(line_no, f"expected 'S <id> <technique> <label> <methods>', got {line!r}")
        _, sid, technique, label, methods_raw = fields
        if technique not in TECHNIQUES:
            raise MalformedRecord(line_no, f"unknown technique {technique!r}")
        if sid in seen:
            raise MalformedRecord(line_no, f"duplicate seed id {sid!r}")
        seen.add(sid)
        methods = tuple(m for m in methods_raw.split(",") if m)
        if not methods:
            raise MalformedRecord(line_no, "seed needs at least one method")
        if facts is not None:
            for m in methods:
                facts.method(m)  # raises DanglingReference
        seeds.append(Seed(id=sid, technique=technique, label=label, methods=frozenset(methods)))
    return tuple(seeds)


def serialize_seeds(seeds: tuple[Seed, ...]) -> str:
    lines = [
        "\t".join(["S", s.id, s.technique, s.label, ",".join(sorted(s.methods))])
        for s in seeds
    ]
    return "\n".join(lines) + "\n" if lines else ""


def parse_triage(text: str, allow_unreviewed: bool = False) -> list[tuple[str, str, str]]:
    """V lines as (seedId, methodId, verdict), file order preserved so the
    last verdict per (seed, method) wins downstream.

    Interchange files carry accept/reject only; the service's own log may
    also record unreviewed to clear an earlier verdict.
    """
    allowed = (VERDICT_ACCEPT, VERDICT_REJECT) + (
        (VERDICT_UNREVIEWED,) if allow_unreviewed else ()
    )
    out = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if fields[0] != "V" or len(fields) != 4:
            raise MalformedRecord(line_no, f"expected 'V <seedId> <methodId> <verdict>', got {line!r}")
        _, sid, mid, verdict = fields
        if verdict not in allowed:
            raise MalformedRecord(line_no, f"unknown verdict {verdict!r}")
        out.append((sid, mid, verdict))
    return out


def serialize_triage(rows: list[tuple[str, str, str]]) -> str:
    lines = ["\t".join(["V", sid, mid, verdict]) for sid, mid, verdict in rows]
    return "\n".join(lines) + "\n" if lines else ""
