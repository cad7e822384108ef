"""Dynamic analysis: concept analysis over execution traces and the
scattering/tangling conditions that turn a concept into a candidate seed.

The trace context has use cases as elements and executed methods as
properties. A concept is use-case specific when a trace sparse-labels it;
the crosscutting conditions quantify over the methods sparse-labeling a
concept (those are the property labels, the only labels pref() applies to).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from . import fca
from .errors import DanglingReference, EmptyTraceSet, MalformedRecord
from .facts import ProgramFacts


@dataclass(frozen=True)
class TraceSet:
    """One method set per use case; execution order is discarded at parse
    time because incidence is binary."""

    traces: dict[str, frozenset[str]]


def parse_traces(
    text: str, facts: ProgramFacts | None = None, strict: bool = True
) -> TraceSet:
    """Read TR lines; repeated use-case names union their method sets.

    Methods missing from the facts are an error in strict mode and dropped
    with a warning otherwise.
    """
    traces: dict[str, set[str]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if fields[0] != "TR" or len(fields) != 3:
            raise MalformedRecord(line_no, f"expected 'TR <useCase> <methodId>', got {line!r}")
        _, use_case, method_id = fields
        if facts is not None and method_id not in facts.methods:
            if strict:
                raise DanglingReference(method_id, f"trace {use_case!r} line {line_no}")
            print(
                f"warning: dropping unknown method {method_id!r} from trace {use_case!r}",
                file=sys.stderr,
            )
            traces.setdefault(use_case, set())
            continue
        traces.setdefault(use_case, set()).add(method_id)
    return TraceSet({uc: frozenset(ms) for uc, ms in traces.items()})


def serialize_traces(traces: TraceSet, header: str | None = None) -> str:
    lines: list[str] = []
    if header:
        lines.extend("# " + h for h in header.splitlines())
    for uc in sorted(traces.traces):
        for mid in sorted(traces.traces[uc]):
            lines.append(f"TR\t{uc}\t{mid}")
    return "\n".join(lines) + "\n" if lines else ""


def build_trace_context(traces: TraceSet) -> fca.Context:
    if not traces.traces:
        raise EmptyTraceSet("no traces given")
    use_cases = sorted(traces.traces)
    methods = sorted(set().union(*traces.traces.values()))
    pairs = [
        (uc, mid) for uc in use_cases for mid in sorted(traces.traces[uc])
    ]
    return fca.Context.from_pairs(use_cases, methods, pairs)


def trace_labels(lat: fca.ConceptLattice, c: fca.Concept) -> frozenset[str]:
    """Use cases sparse-labeling a concept (element labels)."""
    return lat.beta(c)


def method_labels(lat: fca.ConceptLattice, c: fca.Concept) -> frozenset[str]:
    """Methods sparse-labeling a concept (property labels)."""
    return lat.alpha(c)


def classify_concepts(
    lat: fca.ConceptLattice,
) -> tuple[tuple[fca.Concept, ...], tuple[fca.Concept, ...]]:
    """(use-case specific, generic) concept lists; specific means at least
    one trace labels the concept, generic carries no constraint."""
    specific = tuple(c for c in lat.concepts if trace_labels(lat, c))
    return specific, lat.concepts


def is_scattering(facts: ProgramFacts, c: fca.Concept, lat: fca.ConceptLattice) -> bool:
    """More than one class contributes: two labeling methods with different
    enclosing classes."""
    prefs = {facts.pref(m) for m in method_labels(lat, c)}
    return len(prefs) >= 2


def is_tangling(
    facts: ProgramFacts,
    c: fca.Concept,
    lat: fca.ConceptLattice,
    omega: tuple[fca.Concept, ...],
) -> bool:
    """Some class hosting a labeling method of c also hosts a labeling
    method of a different concept in omega."""
    own = {facts.pref(m) for m in method_labels(lat, c)}
    if not own:
        return False
    for other in omega:
        if other == c:
            continue
        for m in method_labels(lat, other):
            if facts.pref(m) in own:
                return True
    return False


@dataclass(frozen=True)
class ConceptVerdict:
    concept: fca.Concept
    index: int  # canonical index in the trace lattice
    seed: bool


@dataclass(frozen=True)
class DynSeedReport:
    lattice: fca.ConceptLattice
    use_case_specific: tuple[ConceptVerdict, ...]
    generic: tuple[ConceptVerdict, ...]

    def seeds_of(self, which: str) -> tuple[ConceptVerdict, ...]:
        pool = self.use_case_specific if which == "specific" else self.generic
        return tuple(v for v in pool if v.seed)


def dynamic_seeds(facts: ProgramFacts, traces: TraceSet) -> DynSeedReport:
    lat = fca.lattice(build_trace_context(traces))
    specific, generic = classify_concepts(lat)

    def verdicts(pool, omega):
        out = []
        for c in pool:
            seed = is_scattering(facts, c, lat) and is_tangling(facts, c, lat, omega)
            out.append(ConceptVerdict(c, lat.index_of(c), seed))
        return tuple(out)

    return DynSeedReport(
        lattice=lat,
        use_case_specific=verdicts(specific, specific),
        generic=verdicts(generic, generic),
    )


def report_rows(report: DynSeedReport) -> list[str]:
    """DYN rows: one per concept per classification list."""
    rows = []
    for tag, pool in (("specific", report.use_case_specific), ("generic", report.generic)):
        for v in pool:
            methods = sorted(method_labels(report.lattice, v.concept))
            rows.append(
                "DYN\t%d\t%s\t%s\t%s"
                % (v.index, tag, "seed" if v.seed else "noseed", ";".join(methods) or "-")
            )
    return rows
