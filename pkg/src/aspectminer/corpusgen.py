"""Deterministic synthetic-corpus generator: random programs with planted
crosscutting concerns, emitted as facts/traces/ground-truth so the miners can
be exercised at desk scale.

Randomness comes from a local splitmix64 generator (the algorithm is named in
the output headers) so fixtures reproduce bit-for-bit anywhere, independent of
any runtime's RNG.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .dynmine import TraceSet
from .errors import InfeasibleSpec
from .facts import (
    BINDING_STATIC,
    BINDING_VIRTUAL,
    CallEdge,
    MethodDecl,
    ProgramFacts,
    TypeDecl,
)
from .identmine import stem
from .metrics import ConcernTruth

RNG_NAME = "splitmix64"

_FILLER_VERBS = (
    "apply", "blend", "build", "clip", "dump", "fill", "flush", "grow",
    "hook", "join", "mark", "merge", "pack", "paint", "parse", "pull",
    "push", "rank", "route", "scan", "ship", "sort", "swap", "tune",
    "walk", "warp", "weld", "wrap", "zoom", "queue",
)
_FILLER_NOUNS = (
    "anchor", "banner", "bridge", "brush", "camera", "canvas", "corner",
    "cursor", "frame", "glyph", "grid", "kernel", "ladder", "lens",
    "margin", "matrix", "mirror", "offset", "palette", "panel", "pixel",
    "plank", "prism", "raster", "ribbon", "ruler", "shadow", "slider",
    "socket", "stencil", "tile", "vector", "widget", "window",
)
_FILLER_WORDS = _FILLER_VERBS + _FILLER_NOUNS + ("base",)


class SplitMix64:
    """splitmix64 (Steele, Lea, Flood 2014); 64-bit state, 64-bit output."""

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self._MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return self.next_u64() % n

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, seq, k: int) -> list:
        pool = list(seq)
        self.shuffle(pool)
        return pool[:k]


@dataclass(frozen=True)
class PlantedConcern:
    name: str
    stem_vocabulary: tuple[str, ...]  # empty = no naming convention
    member_count: int
    scatter_across_hierarchies: bool = True
    high_fanin: bool = False
    trace_discriminable: bool = False


@dataclass(frozen=True)
class GenSpec:
    seed_value: int
    hierarchies: int
    classes_per_hierarchy: int
    methods_per_class: int
    planted: tuple[PlantedConcern, ...] = ()
    use_cases: int = 6
    high_fanin_callers: int = 12
    accessors_per_class: int = 1

    @classmethod
    def from_json(cls, data: dict) -> "GenSpec":
        concerns = tuple(
            PlantedConcern(
                name=c["name"],
                stem_vocabulary=tuple(c.get("stemVocabulary", ())),
                member_count=c["memberCount"],
                scatter_across_hierarchies=c.get("scatterAcrossHierarchies", True),
                high_fanin=c.get("highFanin", False),
                trace_discriminable=c.get("traceDiscriminable", False),
            )
            for c in data.get("plantedConcerns", ())
        )
        return cls(
            seed_value=data["seedValue"],
            hierarchies=data["hierarchies"],
            classes_per_hierarchy=data["classesPerHierarchy"],
            methods_per_class=data["methodsPerClass"],
            planted=concerns,
            use_cases=data.get("useCases", 6),
            high_fanin_callers=data.get("highFaninCallers", 12),
            accessors_per_class=data.get("accessorsPerClass", 1),
        )

    def to_json(self) -> dict:
        return {
            "seedValue": self.seed_value,
            "hierarchies": self.hierarchies,
            "classesPerHierarchy": self.classes_per_hierarchy,
            "methodsPerClass": self.methods_per_class,
            "plantedConcerns": [
                {
                    "name": c.name,
                    "stemVocabulary": list(c.stem_vocabulary),
                    "memberCount": c.member_count,
                    "scatterAcrossHierarchies": c.scatter_across_hierarchies,
                    "highFanin": c.high_fanin,
                    "traceDiscriminable": c.trace_discriminable,
                }
                for c in self.planted
            ],
            "useCases": self.use_cases,
            "highFaninCallers": self.high_fanin_callers,
            "accessorsPerClass": self.accessors_per_class,
        }


def _validate(spec: GenSpec) -> None:
    if min(spec.hierarchies, spec.classes_per_hierarchy, spec.methods_per_class) < 1:
        raise InfeasibleSpec("hierarchy/class/method counts must be positive")
    if spec.use_cases < 1:
        raise InfeasibleSpec("at least one use case is required")
    total_regular = (
        spec.hierarchies * spec.classes_per_hierarchy * spec.methods_per_class
    )
    planted_total = sum(c.member_count for c in spec.planted)
    if planted_total > total_regular:
        raise InfeasibleSpec(
            f"{planted_total} planted members exceed {total_regular} regular methods"
        )
    filler_stems = {stem(w) for w in _FILLER_WORDS}
    for c in spec.planted:
        if c.member_count < 1:
            raise InfeasibleSpec(f"concern {c.name!r} needs at least one member")
        if c.scatter_across_hierarchies and spec.hierarchies < 2:
            raise InfeasibleSpec(
                f"concern {c.name!r} wants to scatter across hierarchies but only "
                f"{spec.hierarchies} exist"
            )
        clash = {stem(w) for w in c.stem_vocabulary} & filler_stems
        if clash:
            raise InfeasibleSpec(
                f"concern {c.name!r} vocabulary collides with filler stems {sorted(clash)}"
            )
        for w in c.stem_vocabulary:
            if not w or not w.isascii() or not w.isalpha() or not w.islower():
                raise InfeasibleSpec(f"vocabulary word {w!r} must be lowercase letters")


def _camel(tokens: list[str]) -> str:
    return tokens[0] + "".join(t.capitalize() for t in tokens[1:])


def generate(spec: GenSpec) -> tuple[ProgramFacts, TraceSet, ConcernTruth]:
    """Deterministic for a given GenSpec (seedValue included)."""
    _validate(spec)
    rng = SplitMix64(spec.seed_value)

    types: list[TypeDecl] = []
    hierarchy_of: dict[str, int] = {}
    classes_in: dict[int, list[str]] = {}
    for h in range(spec.hierarchies):
        simple_root = (
            rng.choice(_FILLER_NOUNS).capitalize()
            + rng.choice(_FILLER_NOUNS).capitalize()
            + "Base"
        )
        root_id = f"T{h}_0"
        types.append(TypeDecl(id=root_id, name=f"app.h{h}.{simple_root}", kind="class"))
        hierarchy_of[root_id] = h
        classes_in[h] = [root_id]
        for c in range(1, spec.classes_per_hierarchy):
            tid = f"T{h}_{c}"
            parent = rng.choice(classes_in[h])
            simple = rng.choice(_FILLER_NOUNS).capitalize() + simple_root.removesuffix(
                "Base"
            )
            types.append(
                TypeDecl(id=tid, name=f"app.h{h}.{simple}", kind="class", super_id=parent)
            )
            hierarchy_of[tid] = h
            classes_in[h].append(tid)

    methods: list[MethodDecl] = []
    regular_ids: list[str] = []
    methods_by_class: dict[str, list[str]] = {}
    used_names: set[tuple[str, tuple[str, ...]]] = set()
    sigs = ((), ("int",), ("String",), ("int", "int"))

    def fresh_filler_name(sig: tuple[str, ...]) -> str:
        for _ in range(64):
            name = _camel([rng.choice(_FILLER_VERBS), rng.choice(_FILLER_NOUNS)])
            if (name, sig) not in used_names:
                used_names.add((name, sig))
                return name
        while True:  # two-token space exhausted, widen to three
            name = _camel(
                [
                    rng.choice(_FILLER_VERBS),
                    rng.choice(_FILLER_NOUNS),
                    rng.choice(_FILLER_NOUNS),
                ]
            )
            if (name, sig) not in used_names:
                used_names.add((name, sig))
                return name

    for t in types:
        methods_by_class[t.id] = []
        for k in range(spec.methods_per_class):
            sig = rng.choice(sigs)
            mid = f"M{t.id}_{k}"
            methods.append(
                MethodDecl(id=mid, type_id=t.id, name=fresh_filler_name(sig), param_sig=sig)
            )
            regular_ids.append(mid)
            methods_by_class[t.id].append(mid)
        for a in range(spec.accessors_per_class):
            mid = f"M{t.id}_acc{a}"
            name = "get" + rng.choice(_FILLER_NOUNS).capitalize()
            methods.append(
                MethodDecl(
                    id=mid,
                    type_id=t.id,
                    name=name,
                    param_sig=(),
                    flags=frozenset({"accessor"}),
                )
            )
    method_index = {m.id: i for i, m in enumerate(methods)}

    # plant concerns: pick regular methods, rename when a vocabulary says so
    truth: dict[str, frozenset[str]] = {}
    planted_ids: set[str] = set()
    members_of: dict[str, list[str]] = {}
    for concern in spec.planted:
        chosen: list[str] = []
        if concern.scatter_across_hierarchies:
            for i in range(concern.member_count):
                h = i % spec.hierarchies
                pool = [
                    mid
                    for tid in classes_in[h]
                    for mid in methods_by_class[tid]
                    if mid not in planted_ids and mid not in chosen
                ]
                if not pool:
                    pool = [
                        mid for mid in regular_ids
                        if mid not in planted_ids and mid not in chosen
                    ]
                if not pool:
                    raise InfeasibleSpec(
                        f"ran out of methods while planting concern {concern.name!r}"
                    )
                chosen.append(rng.choice(pool))
        else:
            h = rng.randrange(spec.hierarchies)
            pool = [
                mid
                for tid in classes_in[h]
                for mid in methods_by_class[tid]
                if mid not in planted_ids
            ]
            if len(pool) < concern.member_count:
                raise InfeasibleSpec(
                    f"hierarchy {h} has {len(pool)} free methods, concern "
                    f"{concern.name!r} needs {concern.member_count}"
                )
            chosen = rng.sample(pool, concern.member_count)
        planted_ids.update(chosen)
        members_of[concern.name] = chosen
        truth[concern.name] = frozenset(chosen)

        if concern.stem_vocabulary:
            vocab = list(concern.stem_vocabulary)
            for i, mid in enumerate(chosen):
                old = methods[method_index[mid]]
                tokens = [vocab[i % len(vocab)], vocab[(i + 1) % len(vocab)]]
                if len(vocab) == 1:
                    tokens = [vocab[0], vocab[0]]
                sig = old.param_sig
                name = _camel(tokens)
                if name.startswith(("get", "set", "is")) and len(sig) <= 1:
                    sig = ("int", "int")  # keep planted members off the accessor filter
                tries = 0
                while any(
                    m.type_id == old.type_id and m.signature == (name, sig)
                    for m in methods
                ):
                    tokens.append(vocab[(i + 2 + tries) % len(vocab)])
                    name = _camel(tokens)
                    tries += 1
                methods[method_index[mid]] = MethodDecl(
                    id=old.id, type_id=old.type_id, name=name, param_sig=sig, flags=old.flags
                )

    # background calls: sparse, capped so no filler method nears the fan-in
    # threshold by accident
    calls: list[CallEdge] = []
    background_callers: dict[str, set[str]] = {m.id: set() for m in methods}
    all_ids = [m.id for m in methods]
    for caller in all_ids:
        for _ in range(rng.randrange(3)):
            for _attempt in range(4):
                callee = rng.choice(all_ids)
                if callee != caller and len(background_callers[callee]) < 3:
                    binding = (
                        BINDING_VIRTUAL if rng.randrange(10) < 7 else BINDING_STATIC
                    )
                    calls.append(CallEdge(caller, callee, binding))
                    background_callers[callee].add(caller)
                    break

    for concern in spec.planted:
        if not concern.high_fanin:
            continue
        for mid in members_of[concern.name]:
            eligible = [
                x
                for x in all_ids
                if x != mid and x not in background_callers[mid]
            ]
            if len(eligible) < spec.high_fanin_callers:
                raise InfeasibleSpec(
                    f"not enough distinct callers for high fan-in member {mid!r}"
                )
            for caller in rng.sample(eligible, spec.high_fanin_callers):
                calls.append(CallEdge(caller, mid, BINDING_STATIC))
                background_callers[mid].add(caller)

    # traces: a couple of plumbing methods run everywhere, each background use
    # case samples fillers, each trace-discriminable concern gets dedicated
    # use cases covering overlapping member slices
    filler_pool = [mid for mid in regular_ids if mid not in planted_ids]
    plumbing = rng.sample(filler_pool, min(2, len(filler_pool)))
    traces: dict[str, set[str]] = {}
    for u in range(spec.use_cases):
        size = max(3, len(filler_pool) * (20 + rng.randrange(31)) // 100)
        traces[f"uc{u:02d}"] = set(plumbing) | set(
            rng.sample(filler_pool, min(size, len(filler_pool)))
        )
    for concern in spec.planted:
        if not concern.trace_discriminable:
            continue
        members = members_of[concern.name]
        n = len(members)
        if n >= 6:
            third = n // 3
            slices = [members[: 2 * third], members[third:]]
        else:
            slices = [members]
        for k, part in enumerate(slices):
            traces[f"uc_{concern.name}_{k}"] = set(plumbing) | set(part)

    facts = ProgramFacts.build(types, methods, calls)
    trace_set = TraceSet({uc: frozenset(ms) for uc, ms in traces.items()})
    return facts, trace_set, ConcernTruth(truth)


def header_for(spec: GenSpec) -> str:
    compact = json.dumps(spec.to_json(), sort_keys=True, separators=(",", ":"))
    return f"generated by aspectminer corpusgen rng={RNG_NAME}\nspec={compact}"
