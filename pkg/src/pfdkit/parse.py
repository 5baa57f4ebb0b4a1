"""Parsing and rendering of polynomial expressions and PFD problem files.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+')* power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | IDENT | '(' expr ')'

'^' binds tightest; implicit multiplication is not accepted; '/' is accepted
only when the divisor evaluates to a nonzero constant, which keeps every
expression polynomial-valued.  Rational literals are written p/q.

Problem files are line oriented:

    mode: affine | projective
    vars: x y z
    numerator: <expr>
    denominators:
      <one linear form per line>

Blank lines and '#' comments are ignored.  'allow-zero-forms: true' admits
zero denominators (decomposition-only inputs).
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .matroid import AFFINE, PROJECTIVE, Arrangement, InputError
from .orders import MonomialOrder, monomial_degree
from .poly import DEFAULT_ORDER, Polynomial
from .ratio import ONE, ZERO, qq, qq_str

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ParseError(ValueError):
    """Syntax or validation failure, carrying line/column context."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text: str, line_offset: int = 1) -> List[_Token]:
    tokens = []
    line = line_offset
    col = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and (text[j].isalpha() or text[j] == "_" or text[j] == "."):
                raise ParseError(f"bad numeric literal starting {text[i:j+1]!r}", line, col)
            tokens.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(_Token("ident", m.group(0), line, col))
            col += len(m.group(0))
            i = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token], variables: Tuple[str, ...]):
        self.tokens = tokens
        self.pos = 0
        self.vars = variables

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.line, tok.column)
        return self.take()

    def parse(self) -> Polynomial:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.unary()
        while self.peek().kind in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            if tok.kind == "*":
                value = value * rhs
            else:
                if not rhs.is_constant():
                    raise ParseError("division only by nonzero rational constants", tok.line, tok.column)
                divisor = rhs.constant_value()
                if divisor == ZERO:
                    raise ParseError("division by zero", tok.line, tok.column)
                value = value.scale(ONE / divisor)
        return value

    def unary(self) -> Polynomial:
        sign = 1
        while self.peek().kind in ("+", "-"):
            if self.take().kind == "-":
                sign = -sign
        value = self.power()
        return value if sign > 0 else -value

    def power(self) -> Polynomial:
        value = self.atom()
        if self.peek().kind == "^":
            tok = self.take()
            exp = self.peek()
            if exp.kind != "int":
                raise ParseError("exponent must be a non-negative integer", tok.line, tok.column)
            self.take()
            value = value ** int(exp.text)
        return value

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return Polynomial.constant(self.vars, qq(int(tok.text)))
        if tok.kind == "ident":
            self.take()
            if tok.text not in self.vars:
                raise ParseError(f"unknown variable {tok.text!r}", tok.line, tok.column)
            return Polynomial.variable(self.vars, tok.text)
        if tok.kind == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"expected a value, found {tok.text or 'end of input'!r}", tok.line, tok.column)


def parse_polynomial(text: str, variables: Sequence[str], line_offset: int = 1) -> Polynomial:
    """Parse an expression over the named variables; exact, total on the grammar."""
    variables = tuple(variables)
    tokens = _tokenize(text, line_offset)
    return _Parser(tokens, variables).parse()


def render_polynomial(f: Polynomial, order: MonomialOrder = DEFAULT_ORDER) -> str:
    """Canonical text rendering; parse(render(f)) == f byte-for-byte stable."""
    if f.is_zero():
        return "0"
    pieces = []
    for exps, coeff in f.sorted_terms(order):
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(f.vars, exps)
            if e
        ]
        negative = coeff < ZERO
        mag = -coeff if negative else coeff
        if not factors:
            body = qq_str(mag)
        elif mag == ONE:
            body = "*".join(factors)
        else:
            body = qq_str(mag) + "*" + "*".join(factors)
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append(("- " if negative else "+ ") + body)
    return " ".join(pieces)


@dataclass(frozen=True)
class ProblemFile:
    """Parsed PFD problem: numerator over a product of linear forms."""

    variables: Tuple[str, ...]
    numerator: Polynomial
    denominators: Tuple[Polynomial, ...]
    mode: str
    allow_zero_forms: bool = False

    def arrangement(self) -> Arrangement:
        return Arrangement(self.variables, self.denominators, self.mode)


_KEY_RE = re.compile(r"^([A-Za-z][A-Za-z0-9-]*):(.*)$")


def parse_problem(text: str) -> ProblemFile:
    """Parse a problem file; every denominator must be linear (degree 1)."""
    mode = None
    variables: Optional[Tuple[str, ...]] = None
    numerator = None
    allow_zero = False
    denominators: List[Polynomial] = []
    denominator_lines: List[Tuple[int, str]] = []
    in_denominators = False

    known_keys = ("mode", "vars", "numerator", "denominators", "allow-zero-forms")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _KEY_RE.match(line.strip())
        if m and m.group(1) in known_keys:
            key, rest = m.group(1), m.group(2).strip()
            in_denominators = False
            if key == "mode":
                if rest not in (AFFINE, PROJECTIVE):
                    raise ParseError(f"mode must be affine or projective, got {rest!r}", lineno, 1)
                mode = rest
            elif key == "vars":
                names = rest.split()
                if not names:
                    raise ParseError("vars line is empty", lineno, 1)
                for name in names:
                    if not _IDENT_RE.fullmatch(name):
                        raise ParseError(f"bad variable name {name!r}", lineno, 1)
                if len(set(names)) != len(names):
                    raise ParseError("duplicate variable names", lineno, 1)
                variables = tuple(names)
            elif key == "numerator":
                if variables is None:
                    raise ParseError("vars must come before numerator", lineno, 1)
                numerator = parse_polynomial(rest, variables, line_offset=lineno)
            elif key == "allow-zero-forms":
                if rest not in ("true", "false"):
                    raise ParseError("allow-zero-forms must be true or false", lineno, 1)
                allow_zero = rest == "true"
            elif key == "denominators":
                if variables is None:
                    raise ParseError("vars must come before denominators", lineno, 1)
                in_denominators = True
                if rest:
                    denominator_lines.append((lineno, rest))
            continue
        if in_denominators:
            denominator_lines.append((lineno, line.strip()))
            continue
        raise ParseError(f"unexpected line {line.strip()!r}", lineno, 1)

    if mode is None:
        raise ParseError("missing mode", 1, 1)
    if variables is None:
        raise ParseError("missing vars", 1, 1)
    if numerator is None:
        raise ParseError("missing numerator", 1, 1)
    if not denominator_lines:
        raise ParseError("missing denominators", 1, 1)

    for lineno, src in denominator_lines:
        form = parse_polynomial(src, variables, line_offset=lineno)
        entry = len(denominators) + 1
        deg = form.total_degree()
        if deg is None:
            if not allow_zero:
                raise ParseError(f"denominator {entry} is zero", lineno, 1)
        elif deg != 1:
            raise ParseError(f"denominator {entry} has degree {deg}, expected 1", lineno, 1)
        denominators.append(form)

    return ProblemFile(variables, numerator, tuple(denominators), mode, allow_zero)


def render_problem(problem: ProblemFile) -> str:
    lines = [f"mode: {problem.mode}", "vars: " + " ".join(problem.variables)]
    if problem.allow_zero_forms:
        lines.append("allow-zero-forms: true")
    lines.append("numerator: " + render_polynomial(problem.numerator))
    lines.append("denominators:")
    for form in problem.denominators:
        lines.append("  " + render_polynomial(form))
    return "\n".join(lines) + "\n"
