import pytest

from aspectminer import Context, parse_facts

# Polymorphic-call fixture: interface A; B implements A; C1, C2 extend B
# (C2.m super-calls B.m); D holds three call sites dispatching at different
# static types.
POLY_CALLS_TEXT = (
    "\n".join(
        [
            "# polymorphic call fixture",
            "T\tA\tfig.A\tinterface\t-\t-\t-",
            "T\tB\tfig.B\tclass\t-\tA\t-",
            "T\tC1\tfig.C1\tclass\tB\t-\t-",
            "T\tC2\tfig.C2\tclass\tB\t-\t-",
            "T\tD\tfig.D\tclass\t-\t-\t-",
            "M\tA.m\tA\tm\t-\t-",
            "M\tB.m\tB\tm\t-\t-",
            "M\tC1.m\tC1\tm\t-\t-",
            "M\tC2.m\tC2\tm\t-\t-",
            "M\tD.f1\tD\tf1\tA\t-",
            "M\tD.f2\tD\tf2\tB\t-",
            "M\tD.f3\tD\tf3\tC1\t-",
            "C\tD.f1\tA.m\tvirtual",
            "C\tD.f2\tB.m\tvirtual",
            "C\tD.f3\tC1.m\tvirtual",
            "C\tC2.m\tB.m\tstatic",
        ]
    )
    + "\n"
)

LANGS_ELEMENTS = ("Java", "Smalltalk", "C++", "Scheme", "Prolog")
LANGS_PROPERTIES = ("OO", "functional", "logic", "static typing", "dynamic typing")
LANGS_MARKS = (
    ("Java", "OO"),
    ("Java", "static typing"),
    ("Smalltalk", "OO"),
    ("Smalltalk", "dynamic typing"),
    ("C++", "OO"),
    ("C++", "static typing"),
    ("Scheme", "functional"),
    ("Scheme", "dynamic typing"),
    ("Prolog", "logic"),
    ("Prolog", "dynamic typing"),
)


@pytest.fixture
def poly_facts():
    return parse_facts(POLY_CALLS_TEXT)


@pytest.fixture
def langs_ctx():
    return Context.from_pairs(LANGS_ELEMENTS, LANGS_PROPERTIES, LANGS_MARKS)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    lines = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if "test_acceptance.py" in rep.nodeid and getattr(rep, "when", "call") == "call":
                name = rep.nodeid.split("::")[-1]
                lines[name] = "PASS" if rep.passed else "FAIL"
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name in sorted(lines):
            terminalreporter.write_line(f"{lines[name]}  {name}")
