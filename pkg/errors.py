"""
Exception types for the quasi-Herglotz approximation toolkit
All of them are ValueErrors so callers can catch broadly, like config validation does
"""


class InvalidArgumentError(ValueError):
    """Argument outside the documented domain (bad index, order, bounds...)"""


class DivergentMomentError(ValueError):
    """Negative-power moment requested for a measure that touches the origin"""


class PoleError(ValueError):
    """Boundary evaluation requested exactly at a point-mass location"""


class DomainError(ValueError):
    """Evaluation point outside the open upper half-plane"""


class UnavailableExpansionError(ValueError):
    """Asymptotic expansion at zero requested beyond the order the measure allows"""


class AssemblyError(ValueError):
    """Scenario cannot be turned into a cone problem"""


class SolverFailedError(RuntimeError):
    """Cone solver finished without an optimal point"""

    def __init__(self, message, status=None):
        super().__init__(message)
        self.status = status


class SchemaError(ValueError):
    """Malformed scenario or representation document"""

    def __init__(self, message, field=None, line=None, column=None):
        self.field = field
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if field:
            where.append(f"field '{field}'")
        prefix = f"[{'; '.join(where)}] " if where else ""
        super().__init__(f"{prefix}{message}")
