"""Parsing of certificate expressions and system documents.

Expressions use explicit operators: integers, declared variable names,
+ - * /, integer-exponent ^, unary minus, parentheses.  Documents open
with a ``vars`` header declaring the blocks, optionally fix the monomial
ordering, then list ``u = ...`` / ``v = ...`` / ``w = ...`` certificate
lines; ``---`` separates systems and ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .compat import CertificateSystem
from .context import DEFAULT_ORDERING, VarContext
from .errors import ExpressionParseError
from .ratfunc import RatFunc

_SYMBOLS = set("+-*/^()")


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", a symbol, or "end"
    text: str
    line: int
    column: int


def _tokenize(text: str, line: int = 1, column: int = 1) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            column = 1
            i += 1
            continue
        if ch.isspace():
            column += 1
            i += 1
            continue
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        start_col = column
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, start_col))
            column += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], line, start_col))
            column += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, line, start_col))
            column += 1
            i += 1
            continue
        raise ExpressionParseError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(_Token("end", "", line, column))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], ctx: VarContext):
        self.tokens = tokens
        self.pos = 0
        self.ctx = ctx

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise ExpressionParseError(
                f"expected {kind!r}, found {shown!r}", tok.line, tok.column)
        return self.take()

    def parse(self) -> RatFunc:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExpressionParseError(
                f"unexpected {tok.text!r} after expression", tok.line, tok.column)
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op.kind == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ExpressionParseError(
                        "division by zero", op.line, op.column)
                value = value / rhs
        return value

    def unary(self) -> RatFunc:
        if self.peek().kind == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek().kind != "^":
            return base
        caret = self.take()
        exponent = self.exponent()
        if exponent < 0 and base.is_zero():
            raise ExpressionParseError(
                "zero raised to a negative power", caret.line, caret.column)
        return base ** exponent

    def exponent(self) -> int:
        # integer literal, optionally signed or parenthesized; a further
        # caret nests right-associatively and must stay integral
        if self.peek().kind == "(":
            self.take()
            value = self.exponent()
            self.expect(")")
        else:
            negative = False
            if self.peek().kind == "-":
                self.take()
                negative = True
            tok = self.peek()
            if tok.kind != "int":
                shown = tok.text or "end of input"
                raise ExpressionParseError(
                    f"exponent must be an integer literal, found {shown!r}",
                    tok.line, tok.column)
            self.take()
            value = -int(tok.text) if negative else int(tok.text)
        if self.peek().kind == "^":
            caret = self.take()
            outer = self.exponent()
            if outer < 0:
                raise ExpressionParseError(
                    "exponent tower must stay integral", caret.line, caret.column)
            value = value ** outer
        return value

    def atom(self) -> RatFunc:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return RatFunc.const(self.ctx, int(tok.text))
        if tok.kind == "name":
            self.take()
            if tok.text not in self.ctx.vars:
                raise ExpressionParseError(
                    f"unknown variable {tok.text!r}", tok.line, tok.column)
            return RatFunc.var(self.ctx, tok.text)
        if tok.kind == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        shown = tok.text or "end of input"
        raise ExpressionParseError(
            f"expected a value, found {shown!r}", tok.line, tok.column)


def parse_expression(text: str, ctx: VarContext,
                     line: int = 1, column: int = 1) -> RatFunc:
    """Parse one rational-function expression over the context variables."""
    return _Parser(_tokenize(text, line, column), ctx).parse()


# ------------------------------------------------------------------ documents


def _parse_header(value: str, line: int) -> dict:
    blocks: dict[str, tuple] = {}
    for part in value.split(";"):
        part = part.strip()
        if not part:
            continue
        key, sep, names = part.partition(":")
        key = key.strip()
        if not sep or key not in ("t", "x", "y", "q"):
            raise ExpressionParseError(
                f"expected '<block>: names' with block t, x, y or q, got {part!r}",
                line)
        if key in blocks:
            raise ExpressionParseError(f"block {key!r} declared twice", line)
        namelist = tuple(n.strip() for n in names.split(",") if n.strip())
        if not namelist:
            raise ExpressionParseError(f"block {key!r} declares no names", line)
        blocks[key] = namelist
    if not blocks:
        raise ExpressionParseError("empty vars header", line)
    return blocks


def parse_document(text: str, ordering: str | None = None) -> list[CertificateSystem]:
    """Parse a certificate document into one system per ``---`` section.

    The ``vars`` header fixes the context for every system in the file; an
    ``ordering = lex:...`` line (or the ``ordering`` argument, which wins)
    picks the monomial order.
    """
    ctx: VarContext | None = None
    blocks: dict | None = None
    file_ordering: str | None = None
    systems: list[CertificateSystem] = []
    certs: dict[str, list] = {"u": [], "v": [], "w": []}
    saw_cert_line = False

    def finish(line: int) -> None:
        nonlocal certs, saw_cert_line
        if not saw_cert_line:
            raise ExpressionParseError("empty system section", line)
        shape = (len(ctx.tvars), len(ctx.xvars), len(ctx.yvars))
        got = (len(certs["u"]), len(certs["v"]), len(certs["w"]))
        if shape != got:
            raise ExpressionParseError(
                f"system needs {shape[0]} u, {shape[1]} v and {shape[2]} w"
                f" certificates, got {got[0]}, {got[1]} and {got[2]}", line)
        systems.append(CertificateSystem(
            ctx, tuple(certs["u"]), tuple(certs["v"]), tuple(certs["w"])))
        certs = {"u": [], "v": [], "w": []}
        saw_cert_line = False

    def ensure_context(line: int) -> None:
        nonlocal ctx
        if ctx is not None:
            return
        if blocks is None:
            raise ExpressionParseError(
                "document must open with a 'vars' header", line)
        chosen = ordering or file_ordering or DEFAULT_ORDERING
        ctx = VarContext.make(
            t=blocks.get("t", ()), x=blocks.get("x", ()),
            y=blocks.get("y", ()), q=blocks.get("q", ()), ordering=chosen)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        stripped = content.strip()
        if stripped.startswith("---"):
            ensure_context(lineno)
            finish(lineno)
            continue
        if stripped.startswith("vars") and (len(stripped) == 4 or not stripped[4].isalnum()):
            if blocks is not None:
                raise ExpressionParseError("second 'vars' header", lineno)
            if saw_cert_line or systems:
                raise ExpressionParseError(
                    "'vars' header must precede all systems", lineno)
            blocks = _parse_header(stripped[4:].lstrip(), lineno)
            continue
        key, sep, value = content.partition("=")
        lhs = key.strip()
        if not sep:
            raise ExpressionParseError(
                f"expected 'name = expression', got {stripped!r}", lineno)
        if lhs == "ordering":
            if ctx is not None:
                raise ExpressionParseError(
                    "ordering must come before the certificates", lineno)
            file_ordering = value.strip()
            continue
        if lhs not in ("u", "v", "w"):
            raise ExpressionParseError(
                f"unknown certificate family {lhs!r}", lineno)
        ensure_context(lineno)
        column = len(key) + len(sep) + 1
        certs[lhs].append(parse_expression(value, ctx, lineno, column))
        saw_cert_line = True

    lastline = text.count("\n") + 1
    if saw_cert_line:
        finish(lastline)
    if not systems:
        raise ExpressionParseError("document declares no systems", lastline)
    return systems
