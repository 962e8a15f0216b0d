"""
models/errors.py

Exception types raised by the query engine.

All of them derive from ValueError so callers that already guard input
validation with ``except ValueError`` keep working.
"""

from typing import Optional


class RPQError(ValueError):
    """Base class for every engine error"""


class ParseError(RPQError):
    """Malformed line in a graph file"""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownVertex(RPQError):

    def __init__(self, name: str, line: Optional[int] = None):
        self.name = name
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}unknown vertex '{name}'")


class DuplicateVertex(RPQError):

    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        super().__init__(f"line {line}: vertex '{name}' declared twice")


class DuplicateEdgeId(RPQError):

    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        super().__init__(f"line {line}: edge '{name}' declared twice")


class InvalidCost(RPQError):
    """Edge cost missing, non-numeric or not strictly positive"""

    def __init__(self, edge: str, value: str):
        self.edge = edge
        self.value = value
        super().__init__(f"edge '{edge}': invalid cost '{value}' (must be > 0)")


class RegexSyntaxError(RPQError):

    def __init__(self, position: int, reason: str):
        self.position = position
        self.reason = reason
        super().__init__(f"position {position}: {reason}")


class NfaFormatError(RPQError):

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"nfa line {line}: {reason}")


class NoMatchingWalk(RPQError):
    """No walk from source to target matches the query"""

    def __init__(self, source: str, target: str):
        self.source = source
        self.target = target
        super().__init__(f"no matching walk from '{source}' to '{target}'")


class InvalidPrevious(RPQError):
    """The walk given to resume from is not an answer of the query"""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"invalid previous answer: {reason}")


class InstanceTooLarge(RPQError):

    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"exhaustive search exceeded {limit} walks")
