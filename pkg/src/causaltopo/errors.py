"""Exception hierarchy shared by every module."""


class CausalTopoError(Exception):
    pass


class CycleError(CausalTopoError, ValueError):
    """Cover relation closes a directed cycle through distinct elements."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"cover relation has a cycle through {self.cycle!r}")


class UnknownElement(CausalTopoError, KeyError):
    def __str__(self):
        return f"unknown element: {self.args[0]!r}"


class UnknownEvent(UnknownElement):
    pass


class NoBottom(CausalTopoError, ValueError):
    pass


MissingBottom = NoBottom


class MissingJoins(CausalTopoError, ValueError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"no least upper bound for {self.pair!r}")


class CapExceeded(CausalTopoError, ValueError):
    """A size cap was hit; exhaustive searches refuse rather than truncate."""


class SizeCapExceeded(CapExceeded):
    pass


class OutOfCarrier(CausalTopoError, ValueError):
    pass


class CoverNotOpen(CausalTopoError, ValueError):
    pass


class DimensionMismatch(CausalTopoError, ValueError):
    pass


class EmptyGenerator(CausalTopoError, ValueError):
    pass


class SeparationFailure(CausalTopoError, ValueError):
    pass


class NotT1(CausalTopoError, ValueError):
    pass


class AxiomError(CausalTopoError, ValueError):
    """Raised when a causal site is requested from data that fails the axioms."""

    def __init__(self, report):
        self.report = report
        names = ", ".join(v.axiom for v in report.violations)
        super().__init__(f"causal-site axioms violated: {names}")


class SchemaError(CausalTopoError, ValueError):
    """Malformed input file; `field` names the offending schema field."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
