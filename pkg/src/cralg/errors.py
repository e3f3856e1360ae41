"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class CralgError(Exception):
    code = "Error"


class AxiomViolation(CralgError):
    code = "AxiomViolation"

    def __init__(self, kind, witness):
        self.kind = kind
        self.witness = tuple(witness)
        super().__init__(f"{kind} axiom fails at indices {self.witness}")


class UnknownPreset(CralgError):
    code = "UnknownPreset"


class InvalidParam(CralgError):
    code = "InvalidParam"


class AlgebraMismatch(CralgError):
    code = "AlgebraMismatch"


class NotInvertible(CralgError):
    code = "NotInvertible"


class TableMismatch(CralgError):
    code = "TableMismatch"


class UnboundVariable(CralgError):
    code = "UnboundVariable"


class NotReal(CralgError):
    code = "NotReal"

    def __init__(self, j):
        self.j = j
        super().__init__(f"defining function {j} is not real")


class NotHomogeneous(CralgError):
    code = "NotHomogeneous"

    def __init__(self, j, found_weights):
        self.j = j
        self.found_weights = sorted(found_weights)
        super().__init__(
            f"defining function {j} is not weighted homogeneous (weights {self.found_weights})"
        )


class BadArity(CralgError):
    code = "BadArity"


class NotThroughOrigin(CralgError):
    code = "NotThroughOrigin"


class WrongBidegree(CralgError):
    code = "WrongBidegree"


class VariableMismatch(CralgError):
    code = "VariableMismatch"


class DegenerateSurface(CralgError):
    code = "DegenerateSurface"


class NotAnAlgebraization(CralgError):
    code = "NotAnAlgebraization"


class InvariantViolation(CralgError):
    code = "InvariantViolation"


class ExprSyntaxError(CralgError):
    code = "SyntaxError"

    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class UnknownVariable(CralgError):
    code = "UnknownVariable"
