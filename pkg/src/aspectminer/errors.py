"""Exception hierarchy shared across the workbench.

Everything a user can cause through bad input derives from InputError so the
CLI can map it to exit status 1; anything else escaping to the top level is an
internal invariant violation (exit status 2).
"""

from __future__ import annotations


class AspectMinerError(Exception):
    """Base class for all workbench errors."""


class InputError(AspectMinerError):
    """Invalid user input: bad file content, bad reference, bad config."""


class MalformedRecord(InputError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DuplicateId(InputError):
    def __init__(self, entity_id: str):
        super().__init__(f"duplicate id {entity_id!r}")
        self.entity_id = entity_id


class DanglingReference(InputError):
    def __init__(self, entity_id: str, context: str = ""):
        detail = f" ({context})" if context else ""
        super().__init__(f"reference to unknown id {entity_id!r}{detail}")
        self.entity_id = entity_id


class CyclicInheritance(InputError):
    def __init__(self, type_ids):
        self.type_ids = tuple(type_ids)
        super().__init__("inheritance cycle through " + ", ".join(self.type_ids))


class UnknownType(InputError):
    def __init__(self, type_id: str):
        super().__init__(f"unknown type {type_id!r}")
        self.type_id = type_id


class UnknownConcept(InputError):
    pass


class UnknownSeed(InputError):
    def __init__(self, seed_id: str):
        super().__init__(f"unknown seed {seed_id!r}")
        self.seed_id = seed_id


class UnknownMember(InputError):
    def __init__(self, seed_id: str, method_id: str):
        super().__init__(f"method {method_id!r} is not a member of seed {seed_id!r}")
        self.seed_id = seed_id
        self.method_id = method_id


class EmptyTraceSet(InputError):
    pass


class EmptySeed(InputError):
    pass


class InfeasibleSpec(InputError):
    pass
