"""Variable contexts: named blocks of variables over one sparse polynomial ring.

A context declares four blocks:

* ``t`` continuous variables, one per derivation,
* ``x`` discrete variables, one per shift,
* ``y`` q-discrete variables, one per q-shift,
* ``q`` inert parameters, one per q-shift; ``q[k]`` is the multiplier
  attached to ``y[k]``.  Operators never touch them, so the coefficient
  field is effectively the rationals extended by the q-parameters.

All polynomials carry their context; mixing contexts is an error.  Monomials
are compared lexicographically in the storage order of the variables, which
is the block order of the context (default ``y > x > t > q``, declaration
order inside a block).  Canonical forms (leading coefficients, "monic")
therefore depend on the context's ordering, as intended.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContextMismatchError, ExpressionParseError

_BLOCKS = ("y", "x", "t", "q")
DEFAULT_ORDERING = "lex:y,x,t,q"


def _parse_ordering(spec: str) -> tuple[str, ...]:
    head, sep, tail = spec.partition(":")
    if head != "lex" or not sep:
        raise ExpressionParseError(f"unsupported ordering {spec!r}; expected 'lex:<blocks>'")
    blocks = tuple(b.strip() for b in tail.split(","))
    if sorted(blocks) != sorted(_BLOCKS):
        raise ExpressionParseError(f"ordering must permute blocks {_BLOCKS}, got {spec!r}")
    return blocks


@dataclass(frozen=True)
class VarContext:
    """Immutable variable context; the ring all polynomials live in.

    ``tvars``/``xvars``/``yvars``/``qvars`` are the block name tuples;
    ``len(yvars) == len(qvars)``.  ``ordering`` is a ``lex:<blocks>`` string.
    """

    tvars: tuple[str, ...]
    xvars: tuple[str, ...]
    yvars: tuple[str, ...]
    qvars: tuple[str, ...]
    ordering: str = DEFAULT_ORDERING
    # storage order of all variables, highest priority first
    vars: tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.yvars) != len(self.qvars):
            raise ExpressionParseError("y-block and q-block must have equal length")
        if not (self.tvars or self.xvars or self.yvars):
            raise ExpressionParseError("context needs at least one operator variable")
        order = []
        for block in _parse_ordering(self.ordering):
            order.extend(getattr(self, block + "vars"))
        if len(set(order)) != len(order):
            raise ExpressionParseError("variable names must be distinct")
        object.__setattr__(self, "vars", tuple(order))

    @classmethod
    def make(cls, t=(), x=(), y=(), q=(), ordering: str = DEFAULT_ORDERING) -> "VarContext":
        return cls(tuple(t), tuple(x), tuple(y), tuple(q), ordering)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise ExpressionParseError(f"unknown variable {name!r}") from None

    def block_of(self, name: str) -> str:
        for block in _BLOCKS:
            if name in getattr(self, block + "vars"):
                return block
        raise ExpressionParseError(f"unknown variable {name!r}")

    def block_indices(self, *blocks: str) -> frozenset[int]:
        """Storage indices of all variables in the given blocks."""
        names = []
        for block in blocks:
            names.extend(getattr(self, block + "vars"))
        return frozenset(self.vars.index(n) for n in names)

    def q_for_y(self, yname: str) -> str:
        """The inert parameter attached to a q-discrete variable."""
        return self.qvars[self.yvars.index(yname)]

    def same(self, other: "VarContext") -> None:
        if self is not other and self != other:
            raise ContextMismatchError("operands belong to different contexts")
