"""Expression parser and the text formats for algebras and surfaces.

Expression grammar (loosest to tightest)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'i' | NAME | ('Re' | 'Im' | 'conj') '(' expr ')' | '(' expr ')'

Only exact literals are accepted: integers, ``a/b`` and ``i``. ``Re(e)`` lowers
to ``(e + conj(e))/2`` and ``Im(e)`` to ``(e - conj(e))/(2i)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .algebra import make_algebra, preset_algebra
from .errors import ExprSyntaxError, InvalidParam, UnknownVariable
from .poly import Poly, VarTable
from .scalars import G_ONE, I, GaussianRational


@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Imag:
    pos: int


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_FUNCS = ("Re", "Im", "conj")


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    start = text.rfind("\n", 0, pos) + 1
    return line, pos - start + 1


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                line, col = _line_col(text, m.start(3))
                raise ExprSyntaxError(f"unexpected character {ch!r}", line, col)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text.rstrip()) if text.strip() else len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.open_parens = []

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, pos):
        line, col = _line_col(self.text, pos)
        raise ExprSyntaxError(msg, line, col)

    def expect(self, value):
        kind, v, pos = self.peek()
        if kind == "op" and v == value:
            return self.next()
        if kind == "end" and value == ")" and self.open_parens:
            self.error("unexpected end of input: unclosed '('", self.open_parens[-1])
        self.error(f"expected {value!r}", pos)

    def parse(self):
        node = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            self.error(f"unexpected {v!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v in "+-":
                self.next()
                node = BinOp(v, node, self.term(), pos)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v in "*/":
                self.next()
                node = BinOp(v, node, self.unary(), pos)
            else:
                return node

    def unary(self):
        kind, v, pos = self.peek()
        if kind == "op" and v == "-":
            self.next()
            return Neg(self.unary(), pos)
        if kind == "op" and v == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, v, pos = self.peek()
        if kind == "op" and v == "^":
            self.next()
            k2, v2, p2 = self.next()
            if k2 != "int":
                self.error("exponent must be a non-negative integer literal", p2)
            return Pow(base, int(v2), pos)
        return base

    def atom(self):
        kind, v, pos = self.next()
        if kind == "int":
            return Num(int(v), pos)
        if kind == "name":
            if v == "i":
                return Imag(pos)
            if v in _FUNCS:
                open_tok = self.peek()
                self.expect("(")
                self.open_parens.append(open_tok[2])
                arg = self.expr()
                self.expect(")")
                self.open_parens.pop()
                return Call(v, arg, pos)
            return Var(v, pos)
        if kind == "op" and v == "(":
            self.open_parens.append(pos)
            node = self.expr()
            self.expect(")")
            self.open_parens.pop()
            return node
        if kind == "end":
            if self.open_parens:
                self.error("unexpected end of input: unclosed '('", self.open_parens[-1])
            self.error("unexpected end of input", pos)
        self.error(f"unexpected {v!r}", pos)


def parse_ast(text: str):
    return _Parser(text).parse()


def lower(node, table: VarTable, text: str = "") -> Poly:
    """Evaluate an expression tree to a polynomial over ``table``."""
    if isinstance(node, Num):
        return Poly.const(table, node.value)
    if isinstance(node, Imag):
        return Poly.const(table, I)
    if isinstance(node, Var):
        if node.name not in table.index:
            raise UnknownVariable(f"unknown variable {node.name!r}")
        return Poly.var(table, node.name)
    if isinstance(node, Neg):
        return -lower(node.arg, table, text)
    if isinstance(node, Pow):
        return lower(node.base, table, text) ** node.exponent
    if isinstance(node, Call):
        arg = lower(node.arg, table, text)
        if node.fn == "conj":
            return arg.conjugate()
        if node.fn == "Re":
            return arg.real_part()
        return arg.imag_part()
    if isinstance(node, BinOp):
        left = lower(node.left, table, text)
        right = lower(node.right, table, text)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if right.degree() > 0 or not right.terms:
            line, col = _line_col(text, node.pos)
            raise ExprSyntaxError("division only by a nonzero constant", line, col)
        return left * (G_ONE / right.terms[table.zero_exp()])
    raise TypeError(f"unknown node {node!r}")


def parse_expression(text: str, table: VarTable) -> Poly:
    return lower(parse_ast(text), table, text)


# ---------------------------------------------------------------- algebra files

_COMMENT = re.compile(r"#.*$")


def _content_lines(text):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT.sub("", raw).strip()
        if line:
            yield n, line


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_]*)?$")


def _parse_combination(text, labels, lineno):
    """``2*n - 1/2*e3 + 1`` -> coefficient vector; bare numbers multiply the unit."""
    coeffs = [mpq(0)] * len(labels)
    s = text.replace(" ", "")
    if not s:
        raise ExprSyntaxError("empty right-hand side", lineno, 1)
    parts = re.findall(r"[+-]?[^+-]+", s)
    if "".join(parts) != s:
        raise ExprSyntaxError(f"cannot parse {text!r}", lineno, 1)
    for part in parts:
        sign = -1 if part.startswith("-") else 1
        body = part.lstrip("+-")
        m = _TERM.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ExprSyntaxError(f"cannot parse term {part!r}", lineno, 1)
        c = mpq(m.group(1)) if m.group(1) else mpq(1)
        label = m.group(2)
        if label is None:
            idx = 0
        elif label in labels:
            idx = labels.index(label)
        else:
            raise UnknownVariable(f"unknown basis label {label!r} on line {lineno}")
        coeffs[idx] += sign * c
    return coeffs


def parse_algebra_text(text: str):
    """Text format::

        algebra <name> dim=<l>
        basis 1 n            # optional; default labels 1, e2, ..., el
        n * n = 0            # one line per product; others default to 0
    """
    lines = list(_content_lines(text))
    if not lines:
        raise ExprSyntaxError("empty algebra description", 1, 1)
    lineno, head = lines[0]
    m = re.fullmatch(r"algebra\s+(\S+)\s+dim\s*=\s*(\d+)", head)
    if not m:
        raise ExprSyntaxError("expected 'algebra <name> dim=<l>'", lineno, 1)
    name, dim = m.group(1), int(m.group(2))
    if dim < 1:
        raise InvalidParam("algebra dimension must be at least 1")
    labels = ["1"] + [f"e{i}" for i in range(2, dim + 1)]
    rest = lines[1:]
    if rest and rest[0][1].startswith("basis"):
        lineno, line = rest[0]
        labels = line.split()[1:]
        if len(labels) != dim or labels[0] != "1":
            raise InvalidParam(f"line {lineno}: basis needs {dim} labels starting with 1")
        rest = rest[1:]
    c = [[[mpq(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for j in range(dim):
        c[0][j][j] = c[j][0][j] = mpq(1)
    for lineno, line in rest:
        m = re.fullmatch(r"(\S+)\s*\*\s*(\S+)\s*=\s*(.+)", line)
        if not m:
            raise ExprSyntaxError("expected '<a> * <b> = <combination>'", lineno, 1)
        a, b = m.group(1), m.group(2)
        for lab in (a, b):
            if lab not in labels:
                raise UnknownVariable(f"unknown basis label {lab!r} on line {lineno}")
        i, j = labels.index(a), labels.index(b)
        vec = _parse_combination(m.group(3), labels, lineno)
        c[i][j] = list(vec)
        c[j][i] = list(vec)
    return make_algebra(dim, labels, c, name=name)


def render_algebra_text(a) -> str:
    lines = [f"algebra {a.name or 'A'} dim={a.dim}", "basis " + " ".join(a.basis_labels)]
    for i in range(1, a.dim):
        for j in range(i, a.dim):
            terms = a.product_terms(i, j)
            if not terms:
                continue
            rhs = []
            for k, v in terms:
                lab = a.basis_labels[k]
                q = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
                mag = q.lstrip("-")
                body = mag if k == 0 else (lab if mag == "1" else f"{mag}*{lab}")
                sign = "-" if v < 0 else "+"
                rhs.append((sign, body))
            s = ("-" if rhs[0][0] == "-" else "") + rhs[0][1]
            for sign, body in rhs[1:]:
                s += f" {sign} {body}"
            lines.append(f"{a.basis_labels[i]} * {a.basis_labels[j]} = {s}")
    return "\n".join(lines) + "\n"


def resolve_algebra(spec: str):
    """A preset name (``dual``, ``truncated_poly:3``) or a path to an algebra file."""
    name, _, param = spec.partition(":")
    presets = {"reals", "complex_as_real", "dual", "split", "truncated_poly", "product_of"}
    if name in presets:
        return preset_algebra(name, int(param) if param else None)
    with open(spec) as fh:
        return parse_algebra_text(fh.read())


# ---------------------------------------------------------------- surface files


def parse_surface_text(text: str):
    """Text format::

        surface n=1 k=1
        weight z1=1 w1=2
        Imw1 = z1*zb1
    """
    from .surface import make_surface

    lines = list(_content_lines(text))
    if not lines:
        raise ExprSyntaxError("empty surface description", 1, 1)
    lineno, head = lines[0]
    m = re.fullmatch(r"surface\s+n\s*=\s*(\d+)\s+k\s*=\s*(\d+)", head)
    if not m:
        raise ExprSyntaxError("expected 'surface n=<n> k=<k>'", lineno, 1)
    n, k = int(m.group(1)), int(m.group(2))
    weights = None
    eqs = {}
    for lineno, line in lines[1:]:
        if line.startswith("weight"):
            weights = weights or {}
            for item in line.split()[1:]:
                name, _, val = item.partition("=")
                if not val.isdigit():
                    raise ExprSyntaxError(f"bad weight {item!r}", lineno, line.find(item) + 1)
                weights[name] = int(val)
            continue
        m = re.fullmatch(r"Im\s*(w\d+)\s*=\s*(.+)", line)
        if not m:
            raise ExprSyntaxError("expected 'Imw<j> = <expression>'", lineno, 1)
        if m.group(1) in eqs:
            raise ExprSyntaxError(f"{m.group(1)} defined twice", lineno, 1)
        eqs[m.group(1)] = (lineno, m.group(2), m.start(2))
    w_names = [f"w{b + 1}" for b in range(k)]
    if set(eqs) != set(w_names):
        raise InvalidParam(f"need exactly one equation for each of {w_names}")
    exprs = []
    z = [f"z{a + 1}" for a in range(n)]
    u = [f"u{b + 1}" for b in range(k)]
    table = VarTable(z + w_names, u)
    for wn in w_names:
        lineno, src, offset = eqs[wn]
        try:
            exprs.append(parse_expression(src, table))
        except ExprSyntaxError as exc:
            raise ExprSyntaxError(str(exc).rsplit(" (line", 1)[0], lineno, exc.column + offset) from None
    return make_surface(n, k, exprs, weights)


def render_surface_text(q) -> str:
    return str(q) + "\n"


def gaussian_from_text(text: str) -> GaussianRational:
    p = parse_expression(text, VarTable())
    if not p.terms:
        return GaussianRational(0, 0)
    return p.terms[()]
