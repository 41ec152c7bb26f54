"""Exception hierarchy shared across the package.

Every error raised by the public API derives from DeltaCompatError so callers
(and the CLI exit-code mapping) can catch one base class.
"""

from __future__ import annotations


class DeltaCompatError(Exception):
    """Base class for all package errors."""


class ContextMismatchError(DeltaCompatError):
    """Operands built over different variable contexts were mixed."""


class ExpressionParseError(DeltaCompatError):
    """An expression or input document could not be parsed.

    Carries ``line`` and ``column`` (1-based) when known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class NotCompatibleError(DeltaCompatError):
    """A certificate system failed the compatibility check.

    ``report`` holds the full CompatReport with violations.
    """

    def __init__(self, report):
        self.report = report
        super().__init__(f"certificate system is not compatible ({len(report.violations)} violation(s))")


class StructureViolationError(DeltaCompatError):
    """An internal step of the representation pipeline failed an assert.

    ``step`` names the pipeline stage that broke; this indicates either an
    input outside the theory's hypotheses or a bug, and is a presumed bug
    by default.
    """

    def __init__(self, step: str, detail: str):
        self.step = step
        super().__init__(f"structure violation at {step}: {detail}")


class MergeConflictError(DeltaCompatError):
    """Quotient targets admit no single rational solution.

    ``op`` is the operator whose target could not be matched against the
    partial solution built from the targets before it.
    """

    def __init__(self, op, detail: str = ""):
        self.op = op
        tail = f": {detail}" if detail else ""
        super().__init__(f"no common rational solution at {op.label()}{tail}")


class CapacityError(DeltaCompatError):
    """A configurable resource limit was exceeded (factor bounds, system count)."""


class EvaluationError(DeltaCompatError):
    """Proper evaluation could not find a usable point within the retry budget."""
