"""Identifier analysis: split entity names on capitals, stem the tokens with
the Porter (1980) suffix-stripping algorithm, run concept analysis over
entities x stems, and filter concepts down to crosscutting candidates.

A corpus-local conflation pass follows stemming so near-identical stems such
as the ones produced by undo/undoable collapse onto one representative; pure
suffix stripping leaves them apart.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fca
from .facts import ProgramFacts, is_accessor, is_test_type

DEFAULT_MIN_EXTENT = 4
MIN_STEM_LENGTH = 2
CONFLATION_MAX_SUFFIX = 4

_VOWELS = "aeiou"


class _Porter:
    """Porter (1980) suffix stripping, all five steps as published.

    Buffer b holds the word; k indexes its current last letter and j marks
    the stem end while a suffix is being inspected.
    """

    def __init__(self):
        self.b = ""
        self.k = 0
        self.j = 0

    def _cons(self, i: int) -> bool:
        ch = self.b[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            return i == 0 or not self._cons(i - 1)
        return True

    def _m(self) -> int:
        """Consonant-sequence measure of b[0..j]."""
        i, n = 0, 0
        while True:
            if i > self.j:
                return 0
            if not self._cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > self.j:
                    return n
                if self._cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > self.j:
                    return n
                if not self._cons(i):
                    break
                i += 1
            i += 1

    def _vowel_in_stem(self) -> bool:
        return any(not self._cons(i) for i in range(self.j + 1))

    def _double_cons(self, j: int) -> bool:
        return j > 0 and self.b[j] == self.b[j - 1] and self._cons(j)

    def _cvc(self, i: int) -> bool:
        if i < 2 or not self._cons(i) or self._cons(i - 1) or not self._cons(i - 2):
            return False
        return self.b[i] not in "wxy"

    def _ends(self, s: str) -> bool:
        length = len(s)
        if s[-1] != self.b[self.k]:
            return False
        if length > self.k + 1:
            return False
        if self.b[self.k - length + 1 : self.k + 1] != s:
            return False
        self.j = self.k - length
        return True

    def _set_to(self, s: str) -> None:
        self.b = self.b[: self.j + 1] + s
        self.k = len(self.b) - 1

    def _replace_if_m(self, s: str) -> None:
        if self._m() > 0:
            self._set_to(s)

    def _step1ab(self) -> None:
        if self.b[self.k] == "s":
            if self._ends("sses"):
                self.k -= 2
            elif self._ends("ies"):
                self._set_to("i")
            elif self.b[self.k - 1] != "s":
                self.k -= 1
        if self._ends("eed"):
            if self._m() > 0:
                self.k -= 1
        elif (self._ends("ed") or self._ends("ing")) and self._vowel_in_stem():
            self.k = self.j
            if self._ends("at"):
                self._set_to("ate")
            elif self._ends("bl"):
                self._set_to("ble")
            elif self._ends("iz"):
                self._set_to("ize")
            elif self._double_cons(self.k):
                if self.b[self.k - 1] not in "lsz":
                    self.k -= 1
            elif self._m() == 1 and self._cvc(self.k):
                self._set_to("e")

    def _step1c(self) -> None:
        if self._ends("y") and self._vowel_in_stem():
            self.b = self.b[: self.k] + "i"

    def _step2(self) -> None:
        if self.k < 1:
            return
        ch = self.b[self.k - 1]
        if ch == "a":
            if self._ends("ational"):
                self._replace_if_m("ate")
            elif self._ends("tional"):
                self._replace_if_m("tion")
        elif ch == "c":
            if self._ends("enci"):
                self._replace_if_m("ence")
            elif self._ends("anci"):
                self._replace_if_m("ance")
        elif ch == "e":
            if self._ends("izer"):
                self._replace_if_m("ize")
        elif ch == "l":
            if self._ends("ousli"):
                self._replace_if_m("ous")
            elif self._ends("entli"):
                self._replace_if_m("ent")
            elif self._ends("abli"):
                self._replace_if_m("able")
            elif self._ends("alli"):
                self._replace_if_m("al")
            elif self._ends("eli"):
                self._replace_if_m("e")
        elif ch == "o":
            if self._ends("ization"):
                self._replace_if_m("ize")
            elif self._ends("ation"):
                self._replace_if_m("ate")
            elif self._ends("ator"):
                self._replace_if_m("ate")
        elif ch == "s":
            if self._ends("iveness"):
                self._replace_if_m("ive")
            elif self._ends("fulness"):
                self._replace_if_m("ful")
            elif self._ends("ousness"):
                self._replace_if_m("ous")
            elif self._ends("alism"):
                self._replace_if_m("al")
        elif ch == "t":
            if self._ends("biliti"):
                self._replace_if_m("ble")
            elif self._ends("aliti"):
                self._replace_if_m("al")
            elif self._ends("iviti"):
                self._replace_if_m("ive")

    def _step3(self) -> None:
        ch = self.b[self.k]
        if ch == "e":
            if self._ends("icate"):
                self._replace_if_m("ic")
            elif self._ends("ative"):
                self._replace_if_m("")
            elif self._ends("alize"):
                self._replace_if_m("al")
        elif ch == "i":
            if self._ends("iciti"):
                self._replace_if_m("ic")
        elif ch == "l":
            if self._ends("ical"):
                self._replace_if_m("ic")
            elif self._ends("ful"):
                self._replace_if_m("")
        elif ch == "s":
            if self._ends("ness"):
                self._replace_if_m("")

    def _step4(self) -> None:
        if self.k < 1:
            return
        ch = self.b[self.k - 1]
        if ch == "a":
            if not self._ends("al"):
                return
        elif ch == "c":
            if not self._ends("ance") and not self._ends("ence"):
                return
        elif ch == "e":
            if not self._ends("er"):
                return
        elif ch == "i":
            if not self._ends("ic"):
                return
        elif ch == "l":
            if not self._ends("able") and not self._ends("ible"):
                return
        elif ch == "n":
            if (
                not self._ends("ement")
                and not self._ends("ment")
                and not self._ends("ent")
                and not self._ends("ant")
            ):
                return
        elif ch == "o":
            if self._ends("ion") and self.j >= 0 and self.b[self.j] in "st":
                pass
            elif not self._ends("ou"):
                return
        elif ch == "s":
            if not self._ends("ism"):
                return
        elif ch == "t":
            if not self._ends("ate") and not self._ends("iti"):
                return
        elif ch == "u":
            if not self._ends("ous"):
                return
        elif ch == "v":
            if not self._ends("ive"):
                return
        elif ch == "z":
            if not self._ends("ize"):
                return
        else:
            return
        if self._m() > 1:
            self.k = self.j

    def _step5(self) -> None:
        self.j = self.k
        if self.b[self.k] == "e":
            m = self._m()
            if m > 1 or (m == 1 and not self._cvc(self.k - 1)):
                self.k -= 1
        if self.b[self.k] == "l" and self._double_cons(self.k) and self._m() > 1:
            self.k -= 1

    def stem(self, word: str) -> str:
        if len(word) <= 2:
            # one- and two-letter words carry no strippable suffix
            return word
        self.b = word
        self.k = len(word) - 1
        self.j = self.k
        self._step1ab()
        self._step1c()
        self._step2()
        self._step3()
        self._step4()
        self._step5()
        return self.b[: self.k + 1]


def stem(token: str) -> str:
    """Porter stem of a lowercase ASCII-letter token; anything else passes
    through unchanged. Corpus conflation lives on StemLexicon."""
    if not token or not all("a" <= ch <= "z" for ch in token):
        return token
    return _Porter().stem(token)


def split_identifier(name: str) -> list[str]:
    """Tokenize a source identifier: a new token starts at every uppercase
    letter; underscores, digits and any other non-letter are separators.
    Tokens come back lowercased."""
    tokens: list[str] = []
    current: list[str] = []
    for ch in name:
        if ch.isascii() and ch.isalpha():
            if ch.isupper():
                if current:
                    tokens.append("".join(current))
                current = [ch.lower()]
            else:
                current.append(ch)
        else:
            if current:
                tokens.append("".join(current))
                current = []
    if current:
        tokens.append("".join(current))
    return tokens


@dataclass(frozen=True)
class StemLexicon:
    """Corpus-wide token -> stem mapping with the conflation pass applied.

    Conflation: a stem maps to its longest proper prefix (within the corpus
    stem set) that is at most CONFLATION_MAX_SUFFIX characters shorter,
    resolved transitively. Only stems of property length take part.
    """

    token_to_stem: dict[str, str]
    conflation_log: tuple[tuple[str, str, str], ...]  # (longer, prefix, root)

    @classmethod
    def build(cls, tokens: set[str], conflate: bool = True) -> "StemLexicon":
        raw = {t: stem(t) for t in sorted(tokens)}
        if not conflate:
            return cls(dict(raw), ())
        pool = {s for s in raw.values() if len(s) >= MIN_STEM_LENGTH}
        parent: dict[str, str] = {}
        for s in sorted(pool):
            for cut in range(1, CONFLATION_MAX_SUFFIX + 1):
                if len(s) - cut < MIN_STEM_LENGTH:
                    break
                prefix = s[: len(s) - cut]
                if prefix in pool:
                    parent[s] = prefix
                    break

        def root(s: str) -> str:
            while s in parent:
                s = parent[s]
            return s

        log = tuple(
            (longer, prefix, root(longer)) for longer, prefix in sorted(parent.items())
        )
        return cls({t: root(s) if s in pool else s for t, s in raw.items()}, log)

    def stem(self, token: str) -> str:
        got = self.token_to_stem.get(token)
        return got if got is not None else stem(token)

    def stems_of(self, name: str) -> frozenset[str]:
        """Property-grade stems of an identifier: split, stem, conflate, and
        keep only stems of at least MIN_STEM_LENGTH characters."""
        out = {self.stem(tok) for tok in split_identifier(name)}
        return frozenset(s for s in out if len(s) >= MIN_STEM_LENGTH)


@dataclass(frozen=True)
class IdContextConfig:
    exclude_tests: bool = True
    exclude_accessors: bool = True
    conflate: bool = True


def _included_entities(
    facts: ProgramFacts, config: IdContextConfig
) -> list[tuple[str, str]]:
    """(entity id, simple name) pairs for every context element, type ids
    first, all in sorted id order."""
    excluded_types = {
        t.id for t in facts.types.values() if config.exclude_tests and is_test_type(t)
    }
    out: list[tuple[str, str]] = []
    for tid in sorted(facts.types):
        if tid in excluded_types:
            continue
        out.append((tid, facts.types[tid].simple_name))
    for mid in sorted(facts.methods):
        m = facts.methods[mid]
        if m.type_id in excluded_types:
            continue
        if config.exclude_accessors and is_accessor(m):
            continue
        out.append((mid, m.name))
    return out


def build_lexicon(
    facts: ProgramFacts, config: IdContextConfig = IdContextConfig()
) -> StemLexicon:
    tokens: set[str] = set()
    for _, name in _included_entities(facts, config):
        tokens.update(split_identifier(name))
    return StemLexicon.build(tokens, conflate=config.conflate)


def build_id_context(
    facts: ProgramFacts,
    config: IdContextConfig = IdContextConfig(),
    lexicon: StemLexicon | None = None,
) -> fca.Context:
    """Context with all non-excluded classes and methods as elements and
    their name stems as properties."""
    if lexicon is None:
        lexicon = build_lexicon(facts, config)
    entities = _included_entities(facts, config)
    pairs: list[tuple[str, str]] = []
    props: dict[str, None] = {}
    for eid, name in entities:
        for s in sorted(lexicon.stems_of(name)):
            props[s] = None
            pairs.append((eid, s))
    return fca.Context.from_pairs(
        [eid for eid, _ in entities], sorted(props), pairs
    )


@dataclass(frozen=True)
class IdentifierConcept:
    concept: fca.Concept
    candidate: bool


def crosscuts_hierarchies(facts: ProgramFacts, extent: frozenset[str]) -> bool:
    """True once the extent's entities sit in at least two class hierarchies
    (entities are type or method ids; methods count via their enclosing
    type)."""
    from .facts import hierarchy_root

    roots = set()
    for eid in extent:
        tid = eid if eid in facts.types else facts.method(eid).type_id
        roots.add(hierarchy_root(facts, tid))
        if len(roots) >= 2:
            return True
    return False


def mine_identifier_concepts(
    ctx: fca.Context,
    facts: ProgramFacts,
    min_extent: int = DEFAULT_MIN_EXTENT,
) -> list[IdentifierConcept]:
    out = []
    for c in fca.concepts(ctx):
        # a group only exists where at least one stem is shared, so the
        # top concept (empty intent) never qualifies
        candidate = (
            bool(c.intent)
            and len(c.extent) >= min_extent
            and crosscuts_hierarchies(facts, c.extent)
        )
        out.append(IdentifierConcept(concept=c, candidate=candidate))
    return out


def concept_report_rows(mined: list[IdentifierConcept]) -> list[str]:
    """IDC rows, one per concept in canonical order; the degenerate empty
    concept of an empty corpus is not reported."""
    rows = []
    for idx, ic in enumerate(mined):
        c = ic.concept
        if not c.extent and not c.intent:
            continue
        rows.append(
            "IDC\t%d\t%s\t%d\t%s"
            % (
                idx,
                ";".join(sorted(c.intent)) or "-",
                len(c.extent),
                "candidate" if ic.candidate else "noise",
            )
        )
    return rows
