"""
Exception hierarchy for nashcp.

Every error raised on purpose by the library derives from NashCPError so the
command-line layer can map failures onto exit codes in one place.
"""

from typing import List, Optional


class NashCPError(Exception):
    """Base class for all nashcp errors"""


class InstanceError(NashCPError, ValueError):
    """Exception raised when an instance is malformed or violates an invariant"""

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        super().__init__(message)
        self.violations = list(violations or [])


class InstanceParseError(InstanceError):
    """Exception raised when an instance file cannot be parsed"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column


class AllocationError(NashCPError, ValueError):
    """Exception raised when an allocation does not fit its instance"""


class ProfileError(NashCPError, ValueError):
    """Exception raised for an invalid value/mass profile or level"""


class GridError(NashCPError, ValueError):
    """Exception raised when a discretization grid is empty or too large"""


class LpModelError(NashCPError, ValueError):
    """Exception raised when a linear program is ill-formed"""


class SolverError(NashCPError, RuntimeError):
    """Exception raised when an LP backend fails to produce a status"""


class InfeasibleError(NashCPError):
    """Exception raised when a relaxation has no feasible point"""


class FsrError(NashCPError, ValueError):
    """Exception raised for f-SR misuse: weighted instances or infeasible spending"""


class SizeGuardError(NashCPError, ValueError):
    """Exception raised when a brute-force enumeration exceeds its size guard"""


class InvariantError(NashCPError, AssertionError):
    """Exception raised when an internal invariant fails; indicates a bug"""


class DecompositionError(InvariantError):
    """Exception raised when no covering matching exists during decomposition"""
