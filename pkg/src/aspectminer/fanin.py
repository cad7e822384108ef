"""Fan-in metric with the polymorphic contribution rule, the threshold /
accessor / utility filter pipeline, and both seed interpretations.

A virtual call contributes a caller to the callee and to every method the
callee refines or is refined by; static dispatch (super calls, constructor
calls, static and private targets) contributes to the callee alone.
Recursion never counts toward a method's own fan-in.
"""

from __future__ import annotations

from dataclasses import dataclass

from .facts import BINDING_VIRTUAL, CallEdge, ProgramFacts, is_accessor

DEFAULT_FANIN_THRESHOLD = 10
DEFAULT_UTILITY_NAMES = frozenset(
    {
        "toString",
        "hashCode",
        "equals",
        "clone",
        "add",
        "remove",
        "iterator",
        "size",
        "contains",
    }
)

CALLEE_ONLY = "calleeOnly"
CALLEE_PLUS_CALLERS = "calleePlusCallers"
INTERPRETATIONS = (CALLEE_ONLY, CALLEE_PLUS_CALLERS)


@dataclass(frozen=True)
class FaninResult:
    per_method: dict[str, int]
    callers_of: dict[str, frozenset[str]]


@dataclass(frozen=True)
class Seed:
    """A set of methods proposed as a crosscutting-concern starting point."""

    id: str
    technique: str  # fanin | identifier | dynamic | combined
    label: str
    methods: frozenset[str]
    interpretation: str | None = None  # fan-in seeds only


def _directed_closure(start: str, step: dict[str, frozenset[str]]) -> set[str]:
    out: set[str] = set()
    frontier = [start]
    while frontier:
        m = frontier.pop()
        for nxt in step[m]:
            if nxt not in out:
                out.add(nxt)
                frontier.append(nxt)
    return out


def contribution_targets(facts: ProgramFacts, edge: CallEdge) -> frozenset[str]:
    """Callee plus its refined ancestors plus its refining descendants for a
    virtual call; siblings in the override hierarchy never receive the
    contribution. Static dispatch hits the callee alone."""
    if edge.binding == BINDING_VIRTUAL:
        callee = edge.callee_id
        targets = {callee}
        targets |= _directed_closure(callee, facts.overridden_by)
        targets |= _directed_closure(callee, facts.overriders_of)
        return frozenset(targets)
    return frozenset({edge.callee_id})


def compute_fanin(facts: ProgramFacts) -> FaninResult:
    callers: dict[str, set[str]] = {mid: set() for mid in facts.methods}
    for edge in facts.calls:
        for target in contribution_targets(facts, edge):
            if target != edge.caller_id:
                callers[target].add(edge.caller_id)
    frozen = {mid: frozenset(cs) for mid, cs in callers.items()}
    return FaninResult(
        per_method={mid: len(cs) for mid, cs in frozen.items()},
        callers_of=frozen,
    )


def filter_candidates(
    result: FaninResult,
    facts: ProgramFacts,
    threshold: int = DEFAULT_FANIN_THRESHOLD,
    utility_names: frozenset[str] = DEFAULT_UTILITY_NAMES,
    apply_filters: bool = True,
) -> frozenset[str]:
    """Methods at or above the fan-in threshold that survive the accessor
    and utility filters."""
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    keep = set()
    for mid, value in result.per_method.items():
        if value < threshold:
            continue
        m = facts.method(mid)
        if apply_filters:
            if is_accessor(m):
                continue
            if "utility" in m.flags or m.name in utility_names:
                continue
        keep.add(mid)
    return frozenset(keep)


def fanin_seeds(
    candidates: frozenset[str],
    result: FaninResult,
    interpretation: str = CALLEE_ONLY,
) -> tuple[Seed, ...]:
    if interpretation not in INTERPRETATIONS:
        raise ValueError(f"unknown interpretation {interpretation!r}")
    seeds = []
    for mid in sorted(candidates):
        if interpretation == CALLEE_ONLY:
            methods = frozenset({mid})
        else:
            methods = frozenset({mid}) | result.callers_of[mid]
        seeds.append(
            Seed(
                id=f"fanin:{mid}",
                technique="fanin",
                label=f"high fan-in callee {mid}",
                methods=methods,
                interpretation=interpretation,
            )
        )
    return tuple(seeds)


def report_rows(
    result: FaninResult, selected: frozenset[str], with_callers: bool = False
) -> list[str]:
    """FANIN rows sorted by value descending then method id."""
    rows = []
    for mid in sorted(selected, key=lambda m: (-result.per_method[m], m)):
        row = f"FANIN\t{mid}\t{result.per_method[mid]}"
        if with_callers:
            row += "\t" + (",".join(sorted(result.callers_of[mid])) or "-")
        rows.append(row)
    return rows
