"""Exception hierarchy shared across the package."""


class FibcalcError(Exception):
    """Base class for all library errors."""


class MalformedInputError(FibcalcError, ValueError):
    """Input data violates a structural invariant (bad index, ragged matrix, ...)."""


class RankMismatchError(FibcalcError, ValueError):
    """Operands have incompatible ranks, genera, or dimensions."""


class PreconditionError(FibcalcError, ValueError):
    """A documented operation precondition does not hold."""


class InapplicableError(FibcalcError, ValueError):
    """The operation's hypotheses are not met (e.g. a bound stated only for g >= 2)."""


class UnsupportedFiberError(FibcalcError, ValueError):
    """Operation is defined only for pure handlebody fibers."""


class MissingPayloadError(FibcalcError, ValueError):
    """A pi1-level payload is required but absent."""


class BudgetExceededError(FibcalcError):
    """Enumeration would exceed the configured budget; no partial result is returned."""


class CatalogError(FibcalcError, KeyError):
    """Unknown catalog name."""


class AbelianizationError(FibcalcError, ValueError):
    """Presentation abelianization is not infinite cyclic."""


class ScriptError(FibcalcError, ValueError):
    """Surgery-script syntax or execution error."""

    def __init__(self, message, line=None, column=None, statement=None):
        self.line = line
        self.column = column
        self.statement = statement
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        elif statement is not None:
            loc = f" (statement {statement})"
        super().__init__(message + loc)


class SchemaError(FibcalcError, ValueError):
    """JSON (de)serialization error, carrying the offending path."""

    def __init__(self, message, path="$"):
        self.path = path
        super().__init__(f"{message} at {path}")
