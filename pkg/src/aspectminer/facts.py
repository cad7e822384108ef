"""Subject-program fact model, its textual interchange format, and derived
relations (override pairs, hierarchy roots).

The workbench never parses source code. A frontend (or the synthetic corpus
generator) emits a tab-separated facts file; everything downstream works on
the immutable ProgramFacts built here.

Facts file grammar (UTF-8, one record per line, fields tab-separated, lines
starting with ``#`` are comments):

    T <id> <name> <class|interface> <superId|-> <ifaceId,ifaceId,...|-> <test|->
    M <id> <typeId> <name> <paramSig-comma-list|-> <flag,flag,...|->
    C <callerId> <calleeId> <virtual|static>
    O <overriderId> <overriddenId>

Explicit O records are validated against the same constraints the deriver
uses and merged with the derived pairs (they act as frontend assertions).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    CyclicInheritance,
    DanglingReference,
    DuplicateId,
    MalformedRecord,
    UnknownType,
)

KIND_CLASS = "class"
KIND_INTERFACE = "interface"
BINDING_VIRTUAL = "virtual"
BINDING_STATIC = "static"

METHOD_FLAGS = frozenset({"accessor", "constructor", "static", "private", "utility"})

ACCESSOR_PREFIXES = ("get", "set", "is")
TEST_NAME_PATTERNS = ("Test",)  # simple name starts or ends with this


@dataclass(frozen=True)
class TypeDecl:
    id: str
    name: str  # fully scoped
    kind: str  # KIND_CLASS | KIND_INTERFACE
    super_id: str | None = None
    interface_ids: tuple[str, ...] = ()
    is_test: bool = False

    @property
    def simple_name(self) -> str:
        return self.name.rsplit(".", 1)[-1]


@dataclass(frozen=True)
class MethodDecl:
    id: str
    type_id: str
    name: str  # simple name
    param_sig: tuple[str, ...] = ()
    flags: frozenset[str] = frozenset()

    @property
    def signature(self) -> tuple[str, tuple[str, ...]]:
        return (self.name, self.param_sig)


@dataclass(frozen=True)
class CallEdge:
    caller_id: str
    callee_id: str
    binding: str  # BINDING_VIRTUAL | BINDING_STATIC


def is_accessor(method: MethodDecl) -> bool:
    """Frontend flag wins; fall back to the get*/set*/is* pattern with at
    most one parameter."""
    if "accessor" in method.flags:
        return True
    return method.name.startswith(ACCESSOR_PREFIXES) and len(method.param_sig) <= 1


def is_test_type(decl: TypeDecl) -> bool:
    if decl.is_test:
        return True
    simple = decl.simple_name
    return simple.startswith("Test") or simple.endswith("Test")


@dataclass(frozen=True)
class ProgramFacts:
    """Immutable fact database; safe for concurrent reads."""

    types: Mapping[str, TypeDecl]
    methods: Mapping[str, MethodDecl]
    calls: tuple[CallEdge, ...]  # multiset, stored in canonical order
    overrides: frozenset[tuple[str, str]] = frozenset()  # (overrider, overridden)

    @classmethod
    def build(
        cls,
        types: Iterable[TypeDecl],
        methods: Iterable[MethodDecl],
        calls: Iterable[CallEdge] = (),
        explicit_overrides: Iterable[tuple[str, str]] = (),
    ) -> "ProgramFacts":
        """Validate all invariants, derive the override relation, and return
        the finished database."""
        type_map: dict[str, TypeDecl] = {}
        method_map: dict[str, MethodDecl] = {}
        for t in types:
            if t.id in type_map:
                raise DuplicateId(t.id)
            type_map[t.id] = t
        for m in methods:
            if m.id in method_map or m.id in type_map:
                raise DuplicateId(m.id)
            method_map[m.id] = m

        for t in type_map.values():
            for ref in ([t.super_id] if t.super_id else []) + list(t.interface_ids):
                if ref not in type_map:
                    raise DanglingReference(ref, f"supertype of {t.id}")
        signatures: set[tuple[str, str, tuple[str, ...]]] = set()
        for m in method_map.values():
            if m.type_id not in type_map:
                raise DanglingReference(m.type_id, f"enclosing type of {m.id}")
            bad = m.flags - METHOD_FLAGS
            if bad:
                raise MalformedRecord(0, f"unknown method flag {sorted(bad)!r}")
            sig = (m.type_id, m.name, m.param_sig)
            if sig in signatures:
                raise DuplicateId(f"{m.type_id}.{m.name}({','.join(m.param_sig)})")
            signatures.add(sig)

        call_list = []
        for c in calls:
            for ref in (c.caller_id, c.callee_id):
                if ref not in method_map:
                    raise DanglingReference(ref, "call endpoint")
            if c.binding not in (BINDING_VIRTUAL, BINDING_STATIC):
                raise MalformedRecord(0, f"unknown call binding {c.binding!r}")
            call_list.append(c)
        call_list.sort(key=lambda c: (c.caller_id, c.callee_id, c.binding))

        _check_acyclic(type_map)

        facts = cls(
            types=type_map,
            methods=method_map,
            calls=tuple(call_list),
            overrides=frozenset(),
        )
        derived = derive_overrides(facts)
        merged = set(derived)
        for pair in explicit_overrides:
            overrider, overridden = pair
            for ref in pair:
                if ref not in method_map:
                    raise DanglingReference(ref, "override endpoint")
            if pair not in derived:
                raise MalformedRecord(
                    0,
                    f"override pair {overrider!r} -> {overridden!r} violates the "
                    "signature/subtype constraint",
                )
            merged.add(pair)
        object.__setattr__(facts, "overrides", frozenset(merged))
        return facts

    # -- lookups ---------------------------------------------------------

    def method(self, method_id: str) -> MethodDecl:
        try:
            return self.methods[method_id]
        except KeyError:
            raise DanglingReference(method_id, "method lookup") from None

    def type_decl(self, type_id: str) -> TypeDecl:
        try:
            return self.types[type_id]
        except KeyError:
            raise UnknownType(type_id) from None

    def enclosing_type(self, method_id: str) -> TypeDecl:
        return self.type_decl(self.method(method_id).type_id)

    def pref(self, method_id: str) -> str:
        """Fully scoped name of the class enclosing a method."""
        return self.enclosing_type(method_id).name

    def methods_of(self, type_id: str) -> tuple[MethodDecl, ...]:
        return tuple(
            m for _, m in sorted(self.methods.items()) if m.type_id == type_id
        )

    @cached_property
    def supertypes(self) -> dict[str, frozenset[str]]:
        """Proper supertypes (transitive, via extends and implements)."""
        memo: dict[str, frozenset[str]] = {}

        def walk(tid: str) -> frozenset[str]:
            if tid in memo:
                return memo[tid]
            decl = self.types[tid]
            direct = list(decl.interface_ids)
            if decl.super_id:
                direct.append(decl.super_id)
            acc: set[str] = set()
            for d in direct:
                acc.add(d)
                acc.update(walk(d))
            memo[tid] = frozenset(acc)
            return memo[tid]

        for tid in self.types:
            walk(tid)
        return memo

    def is_proper_subtype(self, sub_id: str, super_id: str) -> bool:
        return super_id in self.supertypes[sub_id]

    # -- override navigation --------------------------------------------

    @cached_property
    def overridden_by(self) -> dict[str, frozenset[str]]:
        """method id -> methods it overrides (its refined ancestors)."""
        out: dict[str, set[str]] = {m: set() for m in self.methods}
        for overrider, overridden in self.overrides:
            out[overrider].add(overridden)
        return {k: frozenset(v) for k, v in out.items()}

    @cached_property
    def overriders_of(self) -> dict[str, frozenset[str]]:
        """method id -> methods refining it (its overriding descendants)."""
        out: dict[str, set[str]] = {m: set() for m in self.methods}
        for overrider, overridden in self.overrides:
            out[overridden].add(overrider)
        return {k: frozenset(v) for k, v in out.items()}


def _check_acyclic(type_map: Mapping[str, TypeDecl]) -> None:
    WHITE, GREY, BLACK = 0, 1, 2
    color = {tid: WHITE for tid in type_map}

    for start in sorted(type_map):
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        path: list[str] = []
        while stack:
            tid, edge_idx = stack.pop()
            decl = type_map[tid]
            succ = list(decl.interface_ids) + ([decl.super_id] if decl.super_id else [])
            if edge_idx == 0:
                color[tid] = GREY
                path.append(tid)
            if edge_idx < len(succ):
                stack.append((tid, edge_idx + 1))
                nxt = succ[edge_idx]
                if color[nxt] == GREY:
                    cycle = path[path.index(nxt):] + [nxt]
                    raise CyclicInheritance(cycle)
                if color[nxt] == WHITE:
                    stack.append((nxt, 0))
            else:
                color[tid] = BLACK
                path.pop()


def derive_overrides(facts: ProgramFacts) -> frozenset[tuple[str, str]]:
    """All pairs (m2, m1) with equal (name, paramSig) where m2's type is a
    proper subtype of m1's type. Interfaces participate (implements edges
    count as subtyping)."""
    by_signature: dict[tuple[str, tuple[str, ...]], list[MethodDecl]] = {}
    for m in facts.methods.values():
        by_signature.setdefault(m.signature, []).append(m)
    pairs: set[tuple[str, str]] = set()
    for group in by_signature.values():
        if len(group) < 2:
            continue
        for m2 in group:
            supers = facts.supertypes[m2.type_id]
            for m1 in group:
                if m1.type_id in supers:
                    pairs.add((m2.id, m1.id))
    return frozenset(pairs)


def hierarchy_root(facts: ProgramFacts, type_id: str) -> str:
    """Topmost ancestor via the extends chain; interfaces root themselves."""
    decl = facts.type_decl(type_id)
    if decl.kind == KIND_INTERFACE:
        return decl.id
    while decl.super_id is not None:
        decl = facts.type_decl(decl.super_id)
    return decl.id


# -- interchange format ---------------------------------------------------


def _split_opt_list(raw: str) -> tuple[str, ...]:
    return () if raw == "-" else tuple(raw.split(","))


def _check_id(raw: str, line_no: int) -> str:
    if not raw or any(ch.isspace() for ch in raw):
        raise MalformedRecord(line_no, f"bad identifier {raw!r}")
    return raw


def parse_facts(text: str) -> ProgramFacts:
    types: list[TypeDecl] = []
    methods: list[MethodDecl] = []
    calls: list[CallEdge] = []
    explicit: list[tuple[str, str]] = []

    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        kind = fields[0]
        if kind == "T":
            if len(fields) != 7:
                raise MalformedRecord(line_no, f"T record needs 7 fields, got {len(fields)}")
            _, tid, name, tkind, super_raw, iface_raw, test_raw = fields
            if tkind not in (KIND_CLASS, KIND_INTERFACE):
                raise MalformedRecord(line_no, f"unknown type kind {tkind!r}")
            if test_raw not in ("test", "-"):
                raise MalformedRecord(line_no, f"test flag must be 'test' or '-', got {test_raw!r}")
            types.append(
                TypeDecl(
                    id=_check_id(tid, line_no),
                    name=name,
                    kind=tkind,
                    super_id=None if super_raw == "-" else _check_id(super_raw, line_no),
                    interface_ids=tuple(
                        _check_id(i, line_no) for i in _split_opt_list(iface_raw)
                    ),
                    is_test=test_raw == "test",
                )
            )
        elif kind == "M":
            if len(fields) != 6:
                raise MalformedRecord(line_no, f"M record needs 6 fields, got {len(fields)}")
            _, mid, tid, name, sig_raw, flags_raw = fields
            flags = frozenset(_split_opt_list(flags_raw))
            if flags - METHOD_FLAGS:
                raise MalformedRecord(line_no, f"unknown flag in {flags_raw!r}")
            methods.append(
                MethodDecl(
                    id=_check_id(mid, line_no),
                    type_id=_check_id(tid, line_no),
                    name=name,
                    param_sig=_split_opt_list(sig_raw),
                    flags=flags,
                )
            )
        elif kind == "C":
            if len(fields) != 4:
                raise MalformedRecord(line_no, f"C record needs 4 fields, got {len(fields)}")
            _, caller, callee, binding = fields
            if binding not in (BINDING_VIRTUAL, BINDING_STATIC):
                raise MalformedRecord(line_no, f"unknown binding {binding!r}")
            calls.append(
                CallEdge(_check_id(caller, line_no), _check_id(callee, line_no), binding)
            )
        elif kind == "O":
            if len(fields) != 3:
                raise MalformedRecord(line_no, f"O record needs 3 fields, got {len(fields)}")
            explicit.append((_check_id(fields[1], line_no), _check_id(fields[2], line_no)))
        else:
            raise MalformedRecord(line_no, f"unknown record kind {kind!r}")

    return ProgramFacts.build(types, methods, calls, explicit)


def serialize_facts(facts: ProgramFacts, header: str | None = None) -> str:
    """Canonical text form; parse_facts(serialize_facts(f)) == f."""
    lines: list[str] = []
    if header:
        lines.extend("# " + h for h in header.splitlines())
    for tid in sorted(facts.types):
        t = facts.types[tid]
        lines.append(
            "\t".join(
                [
                    "T",
                    t.id,
                    t.name,
                    t.kind,
                    t.super_id or "-",
                    ",".join(t.interface_ids) or "-",
                    "test" if t.is_test else "-",
                ]
            )
        )
    for mid in sorted(facts.methods):
        m = facts.methods[mid]
        lines.append(
            "\t".join(
                [
                    "M",
                    m.id,
                    m.type_id,
                    m.name,
                    ",".join(m.param_sig) or "-",
                    ",".join(sorted(m.flags)) or "-",
                ]
            )
        )
    for c in facts.calls:
        lines.append("\t".join(["C", c.caller_id, c.callee_id, c.binding]))
    return "\n".join(lines) + "\n" if lines else ""
