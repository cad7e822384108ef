"""Evaluation indicators against a ground-truth concern labeling: recalled
methods and seed quality, reported per (concern, technique) the way the
completion experiments tabulate them.

Quality is kept as an exact rational and rounded half-up to a whole percent
for reports (23 of 36 reads as 64%).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DanglingReference, EmptySeed, MalformedRecord
from .facts import ProgramFacts
from .fanin import Seed


@dataclass(frozen=True)
class ConcernTruth:
    concerns: dict[str, frozenset[str]]  # concern name -> method ids


def parse_truth(text: str, facts: ProgramFacts | None = None) -> ConcernTruth:
    concerns: dict[str, set[str]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if fields[0] != "CN" or len(fields) != 3:
            raise MalformedRecord(line_no, f"expected 'CN <concern> <methodId>', got {line!r}")
        _, name, mid = fields
        if facts is not None and mid not in facts.methods:
            raise DanglingReference(mid, f"concern {name!r} line {line_no}")
        concerns.setdefault(name, set()).add(mid)
    return ConcernTruth({n: frozenset(ms) for n, ms in concerns.items()})


def serialize_truth(truth: ConcernTruth, header: str | None = None) -> str:
    lines: list[str] = []
    if header:
        lines.extend("# " + h for h in header.splitlines())
    for name in sorted(truth.concerns):
        for mid in sorted(truth.concerns[name]):
            lines.append(f"CN\t{name}\t{mid}")
    return "\n".join(lines) + "\n" if lines else ""


def recalled_methods(seed: Seed, concern: frozenset[str]) -> int:
    """Seed methods that actually belong to the concern."""
    return len(seed.methods & concern)


def quality_fraction(seed: Seed, concern: frozenset[str]) -> Fraction:
    if not seed.methods:
        raise EmptySeed(f"seed {seed.id!r} has no methods")
    return Fraction(100 * recalled_methods(seed, concern), len(seed.methods))


def round_half_up(q: Fraction) -> int:
    return int(q + Fraction(1, 2))


def seed_quality(seed: Seed, concern: frozenset[str]) -> int:
    """Recalled methods as a percentage of seed size, half-up integer."""
    return round_half_up(quality_fraction(seed, concern))


@dataclass(frozen=True)
class SeedScore:
    seed_id: str
    concern: str
    technique: str
    recalled: int
    quality: Fraction
    seed_size: int

    @property
    def quality_percent(self) -> int:
        return round_half_up(self.quality)


def assign_concern(seed: Seed, truth: ConcernTruth) -> str:
    """Max-overlap concern; ties (including the all-zero case) go to the
    first concern name in order."""
    best_name = None
    best = -1
    for name in sorted(truth.concerns):
        overlap = len(seed.methods & truth.concerns[name])
        if overlap > best:
            best = overlap
            best_name = name
    return best_name


def score_report(
    seeds: tuple[Seed, ...],
    truth: ConcernTruth,
    matching: dict[str, str] | None = None,
) -> tuple[SeedScore, ...]:
    """One row per (concern, technique): the methods of all that pairing's
    seeds pooled together, scored against the concern. Rows ordered by
    concern then technique."""
    if not truth.concerns:
        return ()
    pools: dict[tuple[str, str], set[str]] = {}
    ids: dict[tuple[str, str], list[str]] = {}
    for seed in seeds:
        concern = (matching or {}).get(seed.id) or assign_concern(seed, truth)
        key = (concern, seed.technique)
        pools.setdefault(key, set()).update(seed.methods)
        ids.setdefault(key, []).append(seed.id)
    rows = []
    for (concern, technique) in sorted(pools):
        pool = frozenset(pools[(concern, technique)])
        merged = Seed(
            id="+".join(sorted(ids[(concern, technique)])),
            technique=technique,
            label=concern,
            methods=pool,
        )
        rows.append(
            SeedScore(
                seed_id=merged.id,
                concern=concern,
                technique=technique,
                recalled=recalled_methods(merged, truth.concerns[concern]),
                quality=quality_fraction(merged, truth.concerns[concern]),
                seed_size=len(pool),
            )
        )
    return tuple(rows)


def report_tsv(rows: tuple[SeedScore, ...]) -> str:
    lines = ["concern\ttechnique\trecalled\tquality\tseedSize"]
    for r in rows:
        lines.append(
            f"{r.concern}\t{r.technique}\t{r.recalled}\t{r.quality_percent}\t{r.seed_size}"
        )
    return "\n".join(lines) + "\n"


def report_table(rows: tuple[SeedScore, ...]) -> str:
    """Aligned human-readable rendering of the same rows."""
    headers = ("Concern", "Technique", "Recalled", "Quality", "Seed size")
    table = [headers] + [
        (r.concern, r.technique, str(r.recalled), f"{r.quality_percent}%", str(r.seed_size))
        for r in rows
    ]
    widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
    out = []
    for idx, row in enumerate(table):
        out.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if idx == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"
