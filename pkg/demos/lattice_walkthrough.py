"""Concept-lattice walkthrough on the programming-languages context.

Five languages, five paradigm properties. Shows closures, the 8 concepts,
the cover order, and how sparse labels place each language at its most
specific node and each property at its most general one.

Run:  python demos/lattice_walkthrough.py
"""

from aspectminer import Context, concepts, extent_closure, intent_closure, lattice
from aspectminer.fca import dump_concepts

languages = ["Java", "Smalltalk", "C++", "Scheme", "Prolog"]
paradigms = ["OO", "functional", "logic", "static typing", "dynamic typing"]
marks = [
    ("Java", "OO"), ("Java", "static typing"),
    ("Smalltalk", "OO"), ("Smalltalk", "dynamic typing"),
    ("C++", "OO"), ("C++", "static typing"),
    ("Scheme", "functional"), ("Scheme", "dynamic typing"),
    ("Prolog", "logic"), ("Prolog", "dynamic typing"),
]

ctx = Context.from_pairs(languages, paradigms, marks)

print("Properties shared by {Java, C++}:", sorted(intent_closure(ctx, {"Java", "C++"})))
print("Languages having {OO}:", sorted(extent_closure(ctx, {"OO"})))

found = concepts(ctx)
print(f"\nAll {len(found)} concepts (canonical order):")
print(dump_concepts(found))

lat = lattice(ctx)
print("Cover edges (child < parent):")
for a, b in sorted(lat.cover_edges):
    child = ",".join(sorted(lat.concepts[a].extent)) or "(bottom)"
    parent = ",".join(sorted(lat.concepts[b].extent))
    print(f"  {{{child}}} < {{{parent}}}")

print("\nSparse labels per node (alpha = properties, beta = elements):")
for idx, c in enumerate(lat.concepts):
    alpha = ",".join(sorted(lat.alpha(c))) or "-"
    beta = ",".join(sorted(lat.beta(c))) or "-"
    print(f"  node {idx}: alpha={{{alpha}}} beta={{{beta}}}")

print("\ngamma(Java) sits at extent", sorted(lat.gamma("Java").extent))
print("mu(OO) sits at extent", sorted(lat.mu("OO").extent))
