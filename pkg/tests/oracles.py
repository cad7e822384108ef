"""Independent reference implementations the test suite checks the package
against. Everything here is deliberately written in a different style from
the package code (rule tables, exhaustive enumeration, literal quantifiers)
so a shared bug is unlikely.
"""

from __future__ import annotations

from itertools import combinations

# -- brute-force formal concept analysis ------------------------------------


def brute_force_concepts(elements, properties, incidence):
    """Every (X, Y) pair that is closed, found by enumerating all element
    subsets. Returns a set of (frozenset, frozenset) pairs."""
    incidence = set(incidence)
    elements = list(elements)
    properties = list(properties)
    found = set()
    for r in range(len(elements) + 1):
        for comb in combinations(elements, r):
            x = frozenset(comb)
            y = frozenset(p for p in properties if all((e, p) in incidence for e in x))
            x2 = frozenset(e for e in elements if all((e, p) in incidence for p in y))
            if x == x2:
                found.add((x, y))
    return found


def literal_gamma(concept_pairs, element):
    """Eq-3 style: the infimum of all concepts whose extent contains the
    element, located by scanning for the unique lower bound."""
    holders = [c for c in concept_pairs if element in c[0]]
    for cand in holders:
        if all(cand[0] <= other[0] for other in holders):
            return cand
    raise AssertionError(f"no infimum found for element {element!r}")


def literal_mu(concept_pairs, prop):
    """Eq-4 style: the supremum of all concepts whose intent contains the
    property."""
    holders = [c for c in concept_pairs if prop in c[1]]
    for cand in holders:
        if all(other[0] <= cand[0] for other in holders):
            return cand
    raise AssertionError(f"no supremum found for property {prop!r}")


def transitive_reduction_edges(extents):
    """Cover edges of extent inclusion over a list of frozenset extents,
    computed pair-by-pair with an explicit betweenness scan."""
    n = len(extents)
    edges = set()
    for a in range(n):
        for b in range(n):
            if a == b or not extents[a] < extents[b]:
                continue
            between = any(
                extents[a] < extents[c] < extents[b]
                for c in range(n)
                if c not in (a, b)
            )
            if not between:
                edges.add((a, b))
    return edges


# -- fan-in oracle -----------------------------------------------------------


def oracle_fanin(facts):
    """Edge-by-edge restatement of the polymorphic contribution rule with its
    own subtype walk and override pairing."""

    def proper_supertypes(tid):
        out = set()
        todo = [tid]
        while todo:
            decl = facts.types[todo.pop()]
            ups = list(decl.interface_ids) + (
                [decl.super_id] if decl.super_id else []
            )
            for up in ups:
                if up not in out:
                    out.add(up)
                    todo.append(up)
        return out

    methods = list(facts.methods.values())
    above = {}  # method -> methods it refines
    below = {}  # method -> methods refining it
    for m in methods:
        above[m.id] = set()
        below[m.id] = set()
    for m2 in methods:
        supers = proper_supertypes(m2.type_id)
        for m1 in methods:
            if m1.id == m2.id:
                continue
            if (m1.name, m1.param_sig) == (m2.name, m2.param_sig) and m1.type_id in supers:
                above[m2.id].add(m1.id)
                below[m1.id].add(m2.id)
    # close the refinement chains in each direction separately
    def close(rel):
        changed = True
        while changed:
            changed = False
            for mid in rel:
                extra = set()
                for nxt in rel[mid]:
                    extra |= rel[nxt]
                if not extra <= rel[mid]:
                    rel[mid] |= extra
                    changed = True
        return rel

    above = close(above)
    below = close(below)

    callers = {m.id: set() for m in methods}
    for edge in facts.calls:
        if edge.binding == "virtual":
            targets = {edge.callee_id} | above[edge.callee_id] | below[edge.callee_id]
        else:
            targets = {edge.callee_id}
        for t in targets:
            if t != edge.caller_id:
                callers[t].add(edge.caller_id)
    return {mid: len(cs) for mid, cs in callers.items()}, callers


def oracle_override_pairs(facts):
    """Brute-force subtype walk: every same-signature pair in related types."""

    def supers(tid):
        out = set()
        todo = [tid]
        while todo:
            decl = facts.types[todo.pop()]
            for up in list(decl.interface_ids) + ([decl.super_id] if decl.super_id else []):
                if up not in out:
                    out.add(up)
                    todo.append(up)
        return out

    pairs = set()
    for m2 in facts.methods.values():
        ups = supers(m2.type_id)
        for m1 in facts.methods.values():
            if m1.id != m2.id and (m1.name, m1.param_sig) == (m2.name, m2.param_sig):
                if m1.type_id in ups:
                    pairs.add((m2.id, m1.id))
    return pairs


# -- scattering / tangling quantifier oracle ---------------------------------


def oracle_scattering(facts, method_label_sets, concept):
    labels = method_label_sets[concept]
    for p in labels:
        for p2 in labels:
            if facts.pref(p) != facts.pref(p2):
                return True
    return False


def oracle_tangling(facts, method_label_sets, concept, omega):
    for p in method_label_sets[concept]:
        for other in omega:
            if other == concept:
                continue
            for p2 in method_label_sets[other]:
                if facts.pref(p) == facts.pref(p2):
                    return True
    return False


# -- Porter (1980) reference, rule-table style --------------------------------

_VOWELS = "aeiou"


def _is_vowel(word: str, i: int) -> bool:
    c = word[i]
    if c in _VOWELS:
        return True
    if c == "y":
        return i > 0 and not _is_vowel(word, i - 1)
    return False


def _measure(stem: str) -> int:
    runs = []
    for i in range(len(stem)):
        kind = "v" if _is_vowel(stem, i) else "c"
        if not runs or runs[-1] != kind:
            runs.append(kind)
    return sum(1 for a, b in zip(runs, runs[1:]) if a == "v" and b == "c")


def _contains_vowel(stem: str) -> bool:
    return any(_is_vowel(stem, i) for i in range(len(stem)))


def _ends_double_consonant(stem: str) -> bool:
    return (
        len(stem) >= 2
        and stem[-1] == stem[-2]
        and not _is_vowel(stem, len(stem) - 1)
    )


def _ends_cvc(stem: str) -> bool:
    if len(stem) < 3:
        return False
    if _is_vowel(stem, len(stem) - 3) or not _is_vowel(stem, len(stem) - 2):
        return False
    if _is_vowel(stem, len(stem) - 1) or stem[-1] in "wxy":
        return False
    return True


def _longest_match(word: str, rules):
    best = None
    for suffix, repl, cond in rules:
        if word.endswith(suffix) and (best is None or len(suffix) > len(best[0])):
            best = (suffix, repl, cond)
    if best is None:
        return word
    suffix, repl, cond = best
    stem_part = word[: len(word) - len(suffix)]
    if cond is None or cond(stem_part):
        return stem_part + repl
    return word


_M_POS = lambda s: _measure(s) > 0  # noqa: E731
_M_GT1 = lambda s: _measure(s) > 1  # noqa: E731

_STEP1A = [("sses", "ss", None), ("ies", "i", None), ("ss", "ss", None), ("s", "", None)]

_STEP2 = [
    ("ational", "ate", _M_POS), ("tional", "tion", _M_POS),
    ("enci", "ence", _M_POS), ("anci", "ance", _M_POS),
    ("izer", "ize", _M_POS),
    ("abli", "able", _M_POS), ("alli", "al", _M_POS), ("entli", "ent", _M_POS),
    ("eli", "e", _M_POS), ("ousli", "ous", _M_POS),
    ("ization", "ize", _M_POS), ("ation", "ate", _M_POS), ("ator", "ate", _M_POS),
    ("alism", "al", _M_POS), ("iveness", "ive", _M_POS),
    ("fulness", "ful", _M_POS), ("ousness", "ous", _M_POS),
    ("aliti", "al", _M_POS), ("iviti", "ive", _M_POS), ("biliti", "ble", _M_POS),
]

_STEP3 = [
    ("icate", "ic", _M_POS), ("ative", "", _M_POS), ("alize", "al", _M_POS),
    ("iciti", "ic", _M_POS), ("ical", "ic", _M_POS), ("ful", "", _M_POS),
    ("ness", "", _M_POS),
]

_STEP4 = [
    ("al", "", _M_GT1), ("ance", "", _M_GT1), ("ence", "", _M_GT1),
    ("er", "", _M_GT1), ("ic", "", _M_GT1), ("able", "", _M_GT1),
    ("ible", "", _M_GT1), ("ant", "", _M_GT1), ("ement", "", _M_GT1),
    ("ment", "", _M_GT1), ("ent", "", _M_GT1),
    ("ion", "", lambda s: _M_GT1(s) and s[-1:] in ("s", "t")),
    ("ou", "", _M_GT1), ("ism", "", _M_GT1), ("ate", "", _M_GT1),
    ("iti", "", _M_GT1), ("ous", "", _M_GT1), ("ive", "", _M_GT1),
    ("ize", "", _M_GT1),
]


def _step1b(word: str) -> str:
    if word.endswith("eed"):
        stem_part = word[:-3]
        return stem_part + "ee" if _measure(stem_part) > 0 else word
    for suffix in ("ed", "ing"):
        if word.endswith(suffix):
            stem_part = word[: -len(suffix)]
            if not _contains_vowel(stem_part):
                return word
            if stem_part.endswith(("at", "bl", "iz")):
                return stem_part + "e"
            if _ends_double_consonant(stem_part) and stem_part[-1] not in "lsz":
                return stem_part[:-1]
            if _measure(stem_part) == 1 and _ends_cvc(stem_part):
                return stem_part + "e"
            return stem_part
    return word


def _step1c(word: str) -> str:
    if word.endswith("y") and _contains_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


def _step5(word: str) -> str:
    if word.endswith("e"):
        stem_part = word[:-1]
        m = _measure(stem_part)
        if m > 1 or (m == 1 and not _ends_cvc(stem_part)):
            word = stem_part
    if word.endswith("ll") and _measure(word) > 1:
        word = word[:-1]
    return word


def porter_reference(word: str) -> str:
    """Full published pipeline; words of one or two letters pass through."""
    if len(word) <= 2:
        return word
    word = _longest_match(word, _STEP1A)
    word = _step1b(word)
    word = _step1c(word)
    word = _longest_match(word, _STEP2)
    word = _longest_match(word, _STEP3)
    word = _longest_match(word, _STEP4)
    word = _step5(word)
    return word
