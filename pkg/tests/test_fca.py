import random

import pytest

from aspectminer import Context, concepts, extent_closure, intent_closure, lattice
from aspectminer.errors import InputError, UnknownConcept
from aspectminer.fca import Concept, dump_concepts

from oracles import (
    brute_force_concepts,
    literal_gamma,
    literal_mu,
    transitive_reduction_edges,
)


def random_context(rng: random.Random, max_e=12, max_p=12, density=None):
    n_e = rng.randint(0, max_e)
    n_p = rng.randint(0, max_p)
    if density is None:
        density = rng.uniform(0.2, 0.7)
    elements = [f"e{i}" for i in range(n_e)]
    properties = [f"p{j}" for j in range(n_p)]
    pairs = [
        (e, p) for e in elements for p in properties if rng.random() < density
    ]
    return Context.from_pairs(elements, properties, pairs)


# -- closures ----------------------------------------------------------------


def test_intent_closure_langs(langs_ctx):
    assert intent_closure(langs_ctx, {"Java", "C++"}) == {"OO", "static typing"}
    assert intent_closure(langs_ctx, set()) == set(langs_ctx.properties)
    assert intent_closure(langs_ctx, set(langs_ctx.elements)) == set()


def test_extent_closure_langs(langs_ctx):
    assert extent_closure(langs_ctx, {"OO"}) == {"Java", "Smalltalk", "C++"}
    assert extent_closure(langs_ctx, set()) == set(langs_ctx.elements)
    assert extent_closure(langs_ctx, {"OO", "functional"}) == set()


def test_closure_unknown_member(langs_ctx):
    with pytest.raises(InputError):
        intent_closure(langs_ctx, {"Pascal"})


def test_closure_idempotence():
    rng = random.Random(11)
    for _ in range(50):
        ctx = random_context(rng, 8, 8)
        props = [p for p in ctx.properties if rng.random() < 0.5]
        once = extent_closure(ctx, props)
        y1 = intent_closure(ctx, once)
        assert set(props) <= y1
        assert extent_closure(ctx, y1) == once  # applying the pair again is stable


# -- concept enumeration -------------------------------------------------------


def test_langs_concepts(langs_ctx):
    found = concepts(langs_ctx)
    assert len(found) == 8
    as_pairs = {(c.extent, c.intent) for c in found}
    assert (frozenset({"Java", "C++"}), frozenset({"static typing", "OO"})) in as_pairs
    assert (frozenset({"Smalltalk"}), frozenset({"OO", "dynamic typing"})) in as_pairs


def test_single_element_no_properties():
    ctx = Context.from_pairs(["e1"], [], [])
    found = concepts(ctx)
    assert found == (Concept(frozenset({"e1"}), frozenset()),)


def test_full_incidence_single_concept():
    elements = ["a", "b", "c"]
    properties = ["x", "y", "z"]
    ctx = Context.from_pairs(
        elements, properties, [(e, p) for e in elements for p in properties]
    )
    found = concepts(ctx)
    assert len(found) == 1
    assert found[0] == Concept(frozenset(elements), frozenset(properties))


def test_concepts_match_brute_force():
    rng = random.Random(20260810)
    for _ in range(60):
        ctx = random_context(rng)
        got = {(c.extent, c.intent) for c in concepts(ctx)}
        want = brute_force_concepts(ctx.elements, ctx.properties, ctx.incidence)
        assert got == want


def test_canonical_order_and_determinism():
    rng = random.Random(3)
    ctx = random_context(rng, 9, 9)
    first = concepts(ctx)
    assert first == concepts(ctx)
    keys = [(len(c.extent), tuple(sorted(c.extent))) for c in first]
    assert keys == sorted(keys)


def test_galois_duality():
    rng = random.Random(5)
    for _ in range(30):
        ctx = random_context(rng, 8, 8)
        found = concepts(ctx)
        for c1 in found:
            for c2 in found:
                assert (c1.extent <= c2.extent) == (c2.intent <= c1.intent)


def test_meet_property():
    rng = random.Random(6)
    for _ in range(20):
        ctx = random_context(rng, 7, 7)
        extents = {c.extent for c in concepts(ctx)}
        for x1 in extents:
            for x2 in extents:
                assert x1 & x2 in extents  # meet extent is the intersection


# -- lattice and sparse labels --------------------------------------------------


def test_language_paradigms_lattice_labels(langs_ctx):
    lat = lattice(langs_ctx)
    assert lat.gamma("Smalltalk") == Concept(
        frozenset({"Smalltalk"}), frozenset({"OO", "dynamic typing"})
    )
    assert lat.mu("OO").extent == frozenset({"Java", "Smalltalk", "C++"})
    scheme_node = Concept(
        frozenset({"Scheme"}), frozenset({"functional", "dynamic typing"})
    )
    assert lat.beta(scheme_node) == frozenset({"Scheme"})
    assert lat.alpha(lat.top) == frozenset()


def test_one_by_one_context_labels():
    ctx = Context.from_pairs(["e"], ["p"], [("e", "p")])
    lat = lattice(ctx)
    node = Concept(frozenset({"e"}), frozenset({"p"}))
    assert lat.gamma("e") == node
    assert lat.mu("p") == node


def test_labels_match_literal_inf_sup():
    rng = random.Random(42)
    for _ in range(25):
        ctx = random_context(rng, 8, 8)
        lat = lattice(ctx)
        pairs = [(c.extent, c.intent) for c in lat.concepts]
        for e in ctx.elements:
            want = literal_gamma(pairs, e)
            assert (lat.gamma(e).extent, lat.gamma(e).intent) == want
        for p in ctx.properties:
            want = literal_mu(pairs, p)
            assert (lat.mu(p).extent, lat.mu(p).intent) == want


def test_beta_partitions_elements():
    rng = random.Random(43)
    for _ in range(20):
        ctx = random_context(rng, 9, 6)
        lat = lattice(ctx)
        union = set()
        total = 0
        for c in lat.concepts:
            b = lat.beta(c)
            total += len(b)
            union |= b
        assert union == set(ctx.elements)
        assert total == len(ctx.elements)  # pairwise disjoint


def test_cover_edges_are_transitive_reduction():
    rng = random.Random(44)
    for _ in range(20):
        ctx = random_context(rng, 8, 8)
        lat = lattice(ctx)
        extents = [c.extent for c in lat.concepts]
        assert lat.cover_edges == transitive_reduction_edges(extents)


def test_reconstruction_from_sparse_labels():
    rng = random.Random(45)
    for _ in range(30):
        ctx = random_context(rng, 8, 8)
        lat = lattice(ctx)
        for c in lat.concepts:
            below = [c2 for c2 in lat.concepts if lat.leq(c2, c)]
            above = [c2 for c2 in lat.concepts if lat.leq(c, c2)]
            assert c.extent == frozenset().union(*(lat.beta(x) for x in below))
            assert c.intent == frozenset().union(*(lat.alpha(x) for x in above))


def test_alpha_unknown_concept(langs_ctx):
    lat = lattice(langs_ctx)
    with pytest.raises(UnknownConcept):
        lat.alpha(Concept(frozenset({"Java"}), frozenset({"OO"})))


def test_dump_golden(langs_ctx):
    found = concepts(langs_ctx)
    dump = dump_concepts(found)
    lines = dump.splitlines()
    assert len(lines) == 8
    assert lines[0] == "extent{} | intent{OO,dynamic typing,functional,logic,static typing}"
    assert lines[-1] == "extent{C++,Java,Prolog,Scheme,Smalltalk} | intent{}"
    assert "extent{C++,Java} | intent{OO,static typing}" in lines
