"""Line-oriented text format for quivers with relations.

::

    # quaternion type
    vertices: 1
    arrow x: 1 -> 1
    arrow y: 1 -> 1
    field: Fp 32003
    relation: x^2 - y*x*y
    relation: y y - x y x
    option degree_bound: 30
    option max_period: 8

``*`` (or plain juxtaposition with whitespace) composes paths left to right,
``^`` takes a nonnegative integer power, numeric literals (``3``, ``-2/5``)
are scalars.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
import dataclasses
from dataclasses import dataclass
from fractions import Fraction

from .algebra import PresentedAlgebra, Word, build, word_key
from .field import FieldSpec
from .quiver import Quiver

OPTION_KEYS = ("degree_bound", "max_period")


class FormatError(Exception):
    """Syntax or semantic error at a given 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0, text: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.text = text
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message + (f"\n    {text}" if text else ""))


class SemanticError(FormatError):
    pass


@dataclass
class InputDocument:
    vertices: list[str]
    arrows: list[tuple[str, str, str]]                 # (name, source, target)
    field: FieldSpec | None = None
    relations: list[dict[Word, Fraction]] = dataclasses.field(default_factory=list)
    options: dict[str, int] = dataclasses.field(default_factory=dict)

    @property
    def has_relations(self) -> bool:
        return bool(self.relations)

    def quiver(self) -> Quiver:
        vid = {v: k for k, v in enumerate(self.vertices)}
        return Quiver(len(self.vertices), tuple((vid[s], vid[t]) for _, s, t in self.arrows),
                      tuple(a for a, _, _ in self.arrows), tuple(self.vertices))

    def build(self, field_spec: FieldSpec | None = None, degree_bound: int | None = None) -> PresentedAlgebra:
        spec = field_spec or self.field or FieldSpec()
        bound = degree_bound or self.options.get("degree_bound", 30)
        q = self.quiver()
        return build(q, [dict(r) for r in self.relations], spec, bound)


# ---- expressions -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*^()/]))")


class _Poly:
    """Polynomial in arrows: ``{word: coeff}``; ``ends is None`` marks a pure number."""

    def __init__(self, terms: dict[Word, Fraction], ends: tuple[int, int] | None):
        self.terms = {w: c for w, c in terms.items() if c != 0}
        self.ends = ends          # (source, target), or None for a scalar


class _ExprParser:
    def __init__(self, text: str, q: Quiver, names: dict[str, int], line: int, offset: int):
        self.text, self.q, self.names, self.line, self.offset = text, q, names, line, offset
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                self._fail("unexpected character", len(text) - len(text[pos:].lstrip()))
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.k = 0

    def _fail(self, msg: str, col: int, cls=FormatError):
        raise cls(msg, self.line, self.offset + col + 1, self.text)

    def peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.k += 1
        return tok

    def parse(self) -> _Poly:
        p = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            self._fail(f"unexpected {val!r}", col)
        return p

    def expr(self) -> _Poly:
        sign = 1
        kind, val, col = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.scale(self.term(), Fraction(sign))
        while True:
            kind, val, col = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                acc = self.add(acc, self.scale(rhs, Fraction(-1 if val == "-" else 1)), col)
            else:
                return acc

    def term(self) -> _Poly:
        acc = self.power()
        while True:
            kind, val, col = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = self.mul(acc, self.power(), col)
            elif kind in ("ident", "num") or (kind == "op" and val == "("):
                acc = self.mul(acc, self.power(), col)
            else:
                return acc

    def power(self) -> _Poly:
        base = self.atom()
        kind, val, col = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, ecol = self.take()
            if kind != "num":
                self._fail("exponent must be a nonnegative integer", ecol)
            n = int(val)
            if n == 0:
                self._fail("exponent 0 is not allowed (no vertex for the identity)", ecol)
            acc = base
            for _ in range(n - 1):
                acc = self.mul(acc, base, col)
            return acc
        return base

    def atom(self) -> _Poly:
        kind, val, col = self.take()
        if kind == "num":
            c = Fraction(int(val))
            nk, nv, ncol = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv, dcol = self.take()
                if dk != "num" or int(dv) == 0:
                    self._fail("expected a nonzero integer denominator", dcol)
                c /= int(dv)
            return _Poly({(): c}, None)
        if kind == "ident":
            if val not in self.names:
                self._fail(f"unknown arrow {val!r}", col, SemanticError)
            a = self.names[val]
            return _Poly({(a,): Fraction(1)}, self.q.arrows[a])
        if kind == "op" and val == "(":
            inner = self.expr()
            ck, cv, ccol = self.take()
            if not (ck == "op" and cv == ")"):
                self._fail("expected ')'", ccol)
            return inner
        self._fail("expected an arrow, a number or '('" if kind != "end" else "unexpected end of expression", col)

    def scale(self, p: _Poly, c: Fraction) -> _Poly:
        return _Poly({w: c * v for w, v in p.terms.items()}, p.ends)

    def add(self, x: _Poly, y: _Poly, col: int) -> _Poly:
        if x.ends is not None and y.ends is not None and x.ends != y.ends:
            self._fail("terms are not parallel paths", col, SemanticError)
        if (x.ends is None) != (y.ends is None):
            self._fail("cannot add a scalar to a path", col, SemanticError)
        out = dict(x.terms)
        for w, c in y.terms.items():
            out[w] = out.get(w, 0) + c
        return _Poly(out, x.ends or y.ends)

    def mul(self, x: _Poly, y: _Poly, col: int) -> _Poly:
        if x.ends is not None and y.ends is not None and x.ends[1] != y.ends[0]:
            q = self.q
            self._fail(f"paths do not compose (vertex {q.vertex_label(x.ends[1])} "
                       f"vs {q.vertex_label(y.ends[0])})", col, SemanticError)
        out: dict[Word, Fraction] = {}
        for wx, cx in x.terms.items():
            for wy, cy in y.terms.items():
                out[wx + wy] = out.get(wx + wy, 0) + cx * cy
        if x.ends is None:
            ends = y.ends
        elif y.ends is None:
            ends = x.ends
        else:
            ends = (x.ends[0], y.ends[1])
        return _Poly(out, ends)


# ---- documents ---------------------------------------------------------------

_VERTEX_NAME = re.compile(r"[A-Za-z0-9_']+$")
_ARROW_LINE = re.compile(r"arrow\s+(?P<name>[A-Za-z_][A-Za-z0-9_']*)\s*:\s*(?P<s>\S+)\s*->\s*(?P<t>\S+)\s*$")


def _value_column(raw: str) -> int:
    """1-based column of the first non-blank character after the first colon."""
    colon = raw.find(":")
    rest = raw[colon + 1:]
    return colon + 2 + len(rest) - len(rest.lstrip())


def parse(text: str) -> InputDocument:
    vertices: list[str] | None = None
    arrows: list[tuple[str, str, str]] = []
    field_spec: FieldSpec | None = None
    options: dict[str, int] = {}
    pending: list[tuple[int, int, str]] = []
    seen_arrow_lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        head = stripped.split(":", 1)[0].strip() if ":" in stripped else stripped
        if head == "vertices":
            if vertices is not None:
                raise FormatError("duplicate 'vertices:' line", lineno, 1, raw)
            names = stripped.split(":", 1)[1].split()
            for nm in names:
                if not _VERTEX_NAME.match(nm):
                    raise FormatError(f"bad vertex name {nm!r}", lineno, raw.find(nm) + 1, raw)
            if len(set(names)) != len(names):
                raise FormatError("duplicate vertex name", lineno, 1, raw)
            vertices = names
        elif stripped.startswith("arrow ") or stripped.startswith("arrow\t"):
            m = _ARROW_LINE.match(stripped)
            if not m:
                raise FormatError("expected 'arrow NAME: SOURCE -> TARGET'", lineno, indent + 1, raw)
            name = m.group("name")
            if name in seen_arrow_lines:
                raise FormatError(f"duplicate arrow name {name!r}", lineno, indent + 1, raw)
            seen_arrow_lines[name] = lineno
            arrows.append((name, m.group("s"), m.group("t")))
        elif head == "field":
            body = stripped.split(":", 1)[1].split()
            try:
                if body == ["Q"]:
                    field_spec = FieldSpec("Q")
                elif len(body) == 2 and body[0] == "Fp" and body[1].isdigit():
                    field_spec = FieldSpec("Fp", int(body[1]))
                else:
                    raise ValueError("expected 'field: Fp P' or 'field: Q'")
            except ValueError as exc:
                raise FormatError(str(exc), lineno, _value_column(raw), raw) from None
        elif head == "relation":
            col = raw.find(":") + 1
            pending.append((lineno, col, raw[col:]))
        elif head.startswith("option"):
            parts = head.split()
            if len(parts) != 2 or parts[1] not in OPTION_KEYS:
                raise FormatError(f"unknown option (known: {', '.join(OPTION_KEYS)})", lineno, indent + 1, raw)
            value = stripped.split(":", 1)[1].strip()
            if not value.isdigit() or int(value) < 1:
                raise FormatError("option value must be a positive integer", lineno, _value_column(raw), raw)
            options[parts[1]] = int(value)
        else:
            raise FormatError(f"unrecognized line starting with {stripped.split()[0]!r}", lineno, indent + 1, raw)

    if vertices is None:
        vertices = []
        for _, s, t in arrows:
            for v in (s, t):
                if v not in vertices:
                    vertices.append(v)
    vset = set(vertices)
    for name, s, t in arrows:
        for v in (s, t):
            if v not in vset:
                ln = seen_arrow_lines[name]
                raise SemanticError(f"arrow {name!r} uses undeclared vertex {v!r}", ln, 1,
                                    text.splitlines()[ln - 1])
    doc = InputDocument(vertices, arrows, field_spec, [], options)
    q = doc.quiver()
    names = {a: k for k, (a, _, _) in enumerate(arrows)}
    for lineno, col, body in pending:
        poly = _ExprParser(body, q, names, lineno, col).parse()
        if poly.ends is None and poly.terms:
            raise SemanticError("a relation must be a combination of paths, not a scalar", lineno, col + 1, body)
        doc.relations.append({w: c for w, c in poly.terms.items()})
    return doc


def _render_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_relation(doc: InputDocument, rel: dict[Word, Fraction]) -> str:
    if not rel:
        return "0"
    names = [a for a, _, _ in doc.arrows]
    parts = []
    for w in sorted(rel, key=word_key):
        c = Fraction(rel[w])
        path = "*".join(names[a] for a in w)
        mag = abs(c)
        body = path if mag == 1 else f"{_render_scalar(mag)}*{path}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def render(doc: InputDocument) -> str:
    lines = ["vertices: " + " ".join(doc.vertices)]
    lines += [f"arrow {a}: {s} -> {t}" for a, s, t in doc.arrows]
    if doc.field is not None:
        lines.append("field: Q" if doc.field.kind == "Q" else f"field: Fp {doc.field.p}")
    lines += ["relation: " + render_relation(doc, r) for r in doc.relations]
    lines += [f"option {k}: {doc.options[k]}" for k in OPTION_KEYS if k in doc.options]
    return "\n".join(lines) + "\n"


def render_quiver(q: Quiver) -> str:
    doc = InputDocument(list(q.vertex_names),
                        [(q.arrow_names[a], q.vertex_names[s], q.vertex_names[t]) for a, (s, t) in enumerate(q.arrows)])
    return render(doc)


def load(path) -> InputDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
