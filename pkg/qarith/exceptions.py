"""
Exception hierarchy shared by every app of the project.
"""


class QuantumInvariantError(Exception):
    """Base class for all errors raised by the invariant toolkit"""


class DomainError(QuantumInvariantError, ValueError):
    """An argument lies outside the range a formula is defined on"""


class NumericalError(QuantumInvariantError, ArithmeticError):
    """A non-finite value came out of a numerical operation"""


class IntegrityError(QuantumInvariantError):
    """
    A verified identity failed. This means an implementation or index
    convention bug, never bad user input.
    """


class AxiomViolation(IntegrityError):
    def __init__(self, axiom, deviation, tolerance):
        self.axiom = axiom
        self.deviation = deviation
        self.tolerance = tolerance
        super().__init__(
            f"Enhancement axiom '{axiom}' violated: deviation {deviation:.3e} exceeds {tolerance:.3e}"
        )


class ScalarnessError(IntegrityError):
    def __init__(self, deviation, tolerance):
        self.deviation = deviation
        self.tolerance = tolerance
        super().__init__(
            f"Tangle endomorphism is not scalar: deviation {deviation:.3e} exceeds {tolerance:.3e}"
        )


class BraidParseError(DomainError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} (token {position} of {text!r})")


class KnotTableError(QuantumInvariantError):
    def __init__(self, path, errors):
        self.path = path
        self.errors = errors
        listing = '; '.join(f"{key}: {value}" for key, value in errors.items())
        super().__init__(f"Invalid knot table {path}: {listing}")


class FitError(QuantumInvariantError):
    """The growth series cannot support the requested fit"""


class ZeroInvariantError(QuantumInvariantError):
    def __init__(self, name, N):
        self.name = name
        self.N = N
        super().__init__(f"|J_{N}({name})| vanishes; the closure is split or the evaluation collapsed")
