"""
Exception hierarchy shared by every package.

Each error carries the process exit code the CLI reports for it.
"""

from typing import Optional, Tuple


class ListRamseyError(Exception):
    """Base class for all errors raised by this package"""

    exit_code: int = 1


class InvalidInputError(ListRamseyError):
    """A pre-condition on the arguments does not hold"""

    exit_code = 64


class UniformityMismatchError(InvalidInputError):
    """Pattern and host have different uniformity"""


class HostMismatchError(InvalidInputError):
    """Two objects that must share a host do not"""


class ListTooShortError(InvalidInputError):
    """A list is shorter than the coloring routine requires"""


class ParameterDomainError(InvalidInputError):
    """Numeric parameters fall outside the domain of a formula"""


class MalformedInputError(InvalidInputError):
    """An input file could not be parsed"""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class CheckFailedError(ListRamseyError):
    """A verifier check did not pass"""

    exit_code = 1


class TypeReductionFailure(CheckFailedError):
    """Type reduction left an edge with no list color of its base type"""

    def __init__(self, edge: Tuple[int, ...], base_color: int):
        self.edge = edge
        self.base_color = base_color
        super().__init__(f"edge {edge} has no list color of type {base_color}")


class BudgetExhaustedError(ListRamseyError):
    """A search ran out of nodes, time or memory before reaching an answer"""

    exit_code = 2


class ScaleGuardError(BudgetExhaustedError):
    """An exhaustive routine was asked to run beyond its configured scale"""


class ConstructionFailedError(ListRamseyError):
    """A constructive search was exhausted without producing the object"""

    exit_code = 1


class InternalDefectError(ListRamseyError):
    """A step guaranteed to succeed by a theorem failed"""

    exit_code = 70
