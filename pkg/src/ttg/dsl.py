"""The ``.ttg`` workbench format.

Example::

    # three points; y and z are closed, x is generic
    space S { points: x y z; order: y < x, z < x; }
    space X { points: yh zh; }
    map eta : X -> S { yh -> y, zh -> z }
    support sigma = pullback(eta)
    support suppB = balmer(S)
    object one = compact {x y z}
    object A = l(suppB, {y z}) * one

``a < b`` means ``a`` lies in the closure of ``b`` (``a`` is a specialization
of ``b``).  Orders are closed reflexively and transitively on load; chains
``d < b < a`` are accepted.  Support declarations::

    pullback(MAP) | pushforward(MAP) | balmer(SPACE)
    table S -> X { {x y z} -> {yh zh}; {y} -> {yh}; ... }

Object declarations::

    compact {set} | compact SPACE {set}
    gamma(SUPPORT, {set}) * NAME | l(SUPPORT, {set}) * NAME
    gammapt(SUPPORT, point) * NAME | sum(NAME, NAME)

Every identifier must be declared before use.  Syntax errors raise
``ParseError`` and resolution failures raise ``SemanticError``; both carry
the line and column of the offending token or declaration.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .errors import ParseError, SemanticError, TTGError
from .finspace import FinSpace, SpaceMap
from .rickard import GAMMA, LOCAL, POINT, BigObject, IdempotentSpec, direct_sum, tensor_idem
from .suppdata import SupportDatum

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<ident>[^\W\d][\w']*)
  | (?P<punct>[{}():;,<=*])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "punct", "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind in ("ident", "arrow", "punct"):
            out.append(Token("ident" if kind == "ident" else "punct", m.group(), line,
                             pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# -- syntax tree -------------------------------------------------------------------
# Positions are excluded from equality so that render/parse round-trips compare equal.

@dataclass(frozen=True)
class SpaceDecl:
    name: str
    points: tuple[str, ...]
    order: tuple[tuple[str, str], ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MapDecl:
    name: str
    source: str
    target: str
    pairs: tuple[tuple[str, str], ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SupportDecl:
    name: str
    kind: str  # pullback | pushforward | balmer | table
    arg: str = ""  # map name, or space name for balmer
    base: str = ""  # table only
    target: str = ""
    rows: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...] = ()
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ObjectDecl:
    name: str
    # ("compact", space-or-"", points) | (flavor, support, scope, operand) | ("sum", a, b)
    expr: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass
class WorkbenchFile:
    """Declarations in source order, plus the structures they resolve to."""

    decls: tuple = ()
    spaces: dict[str, FinSpace] = field(default_factory=dict, compare=False)
    maps: dict[str, SpaceMap] = field(default_factory=dict, compare=False)
    supports: dict[str, SupportDatum] = field(default_factory=dict, compare=False)
    objects: dict[str, BigObject] = field(default_factory=dict, compare=False)
    map_roles: dict[str, str] = field(default_factory=dict, compare=False)

    def space_name(self, space: FinSpace) -> str:
        for name, sp in self.spaces.items():
            if sp == space:
                return name
        return "?"

    def support(self, name: str) -> SupportDatum:
        if name not in self.supports:
            raise SemanticError(f"undefined support {name!r}")
        return self.supports[name]

    def object(self, name: str) -> BigObject:
        if name not in self.objects:
            raise SemanticError(f"undefined object {name!r}")
        return self.objects[name]


# -- parser ------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{msg}, found {found}", tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        tok = self.tok
        self.i += 1
        return tok

    def ident(self, what: str = "identifier") -> str:
        if self.tok.kind != "ident":
            self.error(f"expected {what}")
        text = self.tok.text
        self.i += 1
        return text

    def file(self) -> tuple:
        decls = []
        while self.tok.kind != "eof":
            tok = self.tok
            word = self.ident("a declaration keyword")
            if word == "space":
                decls.append(self.space(tok))
            elif word == "map":
                decls.append(self.map(tok))
            elif word == "support":
                decls.append(self.support(tok))
            elif word == "object":
                decls.append(self.object(tok))
            else:
                self.error("expected 'space', 'map', 'support' or 'object'", tok)
        return tuple(decls)

    def space(self, kw: Token) -> SpaceDecl:
        name = self.ident("space name")
        self.expect("{")
        self.expect("points")
        self.expect(":")
        points = []
        while self.tok.kind == "ident":
            points.append(self.ident())
        if not points:
            self.error("expected at least one point")
        self.expect(";")
        order = []
        if self.at("order"):
            self.i += 1
            self.expect(":")
            while self.tok.kind == "ident":
                chain = [self.ident("point")]
                while self.at("<"):
                    self.i += 1
                    chain.append(self.ident("point"))
                if len(chain) < 2:
                    self.error("expected '<'")
                order.extend(zip(chain, chain[1:]))
                if not self.at(","):
                    break
                self.i += 1
            self.expect(";")
        self.expect("}")
        return SpaceDecl(name, tuple(points), tuple(order), kw.line, kw.col)

    def map(self, kw: Token) -> MapDecl:
        name = self.ident("map name")
        self.expect(":")
        src = self.ident("source space")
        self.expect("->")
        dst = self.ident("target space")
        self.expect("{")
        pairs = []
        while self.tok.kind == "ident":
            a = self.ident()
            self.expect("->")
            pairs.append((a, self.ident("point")))
            if not self.at(","):
                break
            self.i += 1
        self.expect("}")
        return MapDecl(name, src, dst, tuple(pairs), kw.line, kw.col)

    def set_literal(self) -> tuple[str, ...]:
        self.expect("{")
        pts = []
        while self.tok.kind == "ident":
            pts.append(self.ident())
        self.expect("}")
        return tuple(pts)

    def support(self, kw: Token) -> SupportDecl:
        name = self.ident("support name")
        self.expect("=")
        kind_tok = self.tok
        kind = self.ident("support constructor")
        if kind in ("pullback", "pushforward", "balmer"):
            self.expect("(")
            arg = self.ident("map name" if kind != "balmer" else "space name")
            self.expect(")")
            return SupportDecl(name, kind, arg, line=kw.line, col=kw.col)
        if kind == "table":
            base = self.ident("base space")
            self.expect("->")
            target = self.ident("target space")
            self.expect("{")
            rows = []
            while self.at("{"):
                w = self.set_literal()
                self.expect("->")
                rows.append((w, self.set_literal()))
                if not self.at(";"):
                    break
                self.i += 1
            self.expect("}")
            return SupportDecl(name, "table", "", base, target, tuple(rows), kw.line, kw.col)
        self.error("expected pullback, pushforward, balmer or table", kind_tok)

    def object(self, kw: Token) -> ObjectDecl:
        name = self.ident("object name")
        self.expect("=")
        head_tok = self.tok
        head = self.ident("object constructor")
        if head == "compact":
            space = self.ident() if self.tok.kind == "ident" else ""
            expr = ("compact", space, self.set_literal())
        elif head in (GAMMA, LOCAL, POINT):
            self.expect("(")
            sup = self.ident("support name")
            self.expect(",")
            scope = self.ident("point") if head == POINT else self.set_literal()
            self.expect(")")
            self.expect("*")
            expr = (head, sup, scope, self.ident("object name"))
        elif head == "sum":
            self.expect("(")
            a = self.ident("object name")
            self.expect(",")
            b = self.ident("object name")
            self.expect(")")
            expr = ("sum", a, b)
        else:
            self.error("expected compact, gamma, l, gammapt or sum", head_tok)
        return ObjectDecl(name, expr, kw.line, kw.col)


# -- semantic resolution ---------------------------------------------------------

def _mask(space: FinSpace, names, decl, what: str) -> int:
    unknown = [p for p in names if p not in space.points]
    if unknown:
        raise SemanticError(f"{what}: unknown point {unknown[0]!r}", decl.line, decl.col)
    return space.mask_of(names)


def _resolve(wb: WorkbenchFile) -> None:
    seen: set[str] = set()

    def fail(decl, msg):
        raise SemanticError(msg, decl.line, decl.col)

    def lookup(table, name, what, decl):
        if name not in table:
            fail(decl, f"undefined {what} {name!r}")
        return table[name]

    for decl in wb.decls:
        if decl.name in seen:
            fail(decl, f"identifier {decl.name!r} declared twice")
        seen.add(decl.name)
        try:
            if isinstance(decl, SpaceDecl):
                wb.spaces[decl.name] = FinSpace.from_order(decl.points, decl.order)
            elif isinstance(decl, MapDecl):
                src = lookup(wb.spaces, decl.source, "space", decl)
                dst = lookup(wb.spaces, decl.target, "space", decl)
                keys = [a for a, _ in decl.pairs]
                if len(set(keys)) != len(keys):
                    fail(decl, "map assigns a point twice")
                wb.maps[decl.name] = SpaceMap.from_mapping(src, dst, dict(decl.pairs))
            elif isinstance(decl, SupportDecl):
                wb.supports[decl.name] = _resolve_support(wb, decl, lookup, fail)
            else:
                wb.objects[decl.name] = _resolve_object(wb, decl, lookup, fail)
        except SemanticError:
            raise
        except TTGError as exc:
            fail(decl, str(exc))


def _resolve_support(wb, decl, lookup, fail) -> SupportDatum:
    if decl.kind == "balmer":
        return SupportDatum.balmer(lookup(wb.spaces, decl.arg, "space", decl), name=decl.name)
    if decl.kind in ("pullback", "pushforward"):
        f = lookup(wb.maps, decl.arg, "map", decl)
        wb.map_roles.setdefault(decl.arg, decl.kind)
        if decl.kind == "pullback":
            return SupportDatum.pullback(f, name=decl.name)
        if not f.is_surjective():
            fail(decl, f"map {decl.arg!r} is not surjective")
        return SupportDatum.pushforward(f, name=decl.name)
    base = lookup(wb.spaces, decl.base, "space", decl)
    target = lookup(wb.spaces, decl.target, "space", decl)
    entries = {}
    for w, v in decl.rows:
        wm = _mask(base, w, decl, "table key")
        if wm in entries:
            fail(decl, f"table key {{{' '.join(w)}}} given twice")
        entries[wm] = _mask(target, v, decl, "table value")
    return SupportDatum.from_table(base, target, entries, name=decl.name)


def _resolve_object(wb, decl, lookup, fail) -> BigObject:
    expr = decl.expr
    head = expr[0]
    if head == "compact":
        _, space_name, pts = expr
        if space_name:
            space = lookup(wb.spaces, space_name, "space", decl)
        else:
            hosts = [s for s in wb.spaces.values() if all(p in s.points for p in pts)]
            if len(hosts) != 1:
                fail(decl, "cannot infer the space of a compact object; write 'compact SPACE {...}'")
            space = hosts[0]
        mask = _mask(space, pts, decl, "compact support")
        if not space.is_downset(mask):
            fail(decl, f"compact support {{{' '.join(pts)}}} is not closed")
        return BigObject.compact(space, mask)
    if head == "sum":
        a = lookup(wb.objects, expr[1], "object", decl)
        b = lookup(wb.objects, expr[2], "object", decl)
        return direct_sum(a, b)
    sd = lookup(wb.supports, expr[1], "support", decl)
    operand = lookup(wb.objects, expr[3], "object", decl)
    if head == POINT:
        if expr[2] not in sd.target.points:
            fail(decl, f"unknown point {expr[2]!r}")
        spec = IdempotentSpec.at_point(sd, expr[2])
    else:
        spec = IdempotentSpec(head, sd, _mask(sd.target, expr[2], decl, "idempotent scope"))
    return tensor_idem(operand, spec)


def parse(text: str) -> WorkbenchFile:
    """Parse and resolve a workbench file."""
    wb = WorkbenchFile(_Parser(text).file())
    _resolve(wb)
    return wb


def load(path) -> WorkbenchFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- rendering ---------------------------------------------------------------------

def _set(pts) -> str:
    return "{" + " ".join(pts) + "}"


def _render_decl(d) -> str:
    if isinstance(d, SpaceDecl):
        body = f"points: {' '.join(d.points)};"
        if d.order:
            body += " order: " + ", ".join(f"{a} < {b}" for a, b in d.order) + ";"
        return f"space {d.name} {{ {body} }}"
    if isinstance(d, MapDecl):
        return f"map {d.name} : {d.source} -> {d.target} {{ " + \
            ", ".join(f"{a} -> {b}" for a, b in d.pairs) + " }"
    if isinstance(d, SupportDecl):
        if d.kind == "table":
            rows = "; ".join(f"{_set(w)} -> {_set(v)}" for w, v in d.rows)
            return f"support {d.name} = table {d.base} -> {d.target} {{ {rows} }}"
        return f"support {d.name} = {d.kind}({d.arg})"
    e = d.expr
    if e[0] == "compact":
        space = f"{e[1]} " if e[1] else ""
        rhs = f"compact {space}{_set(e[2])}"
    elif e[0] == "sum":
        rhs = f"sum({e[1]}, {e[2]})"
    elif e[0] == POINT:
        rhs = f"{POINT}({e[1]}, {e[2]}) * {e[3]}"
    else:
        rhs = f"{e[0]}({e[1]}, {_set(e[2])}) * {e[3]}"
    return f"object {d.name} = {rhs}"


def render(wb: WorkbenchFile) -> str:
    """Canonical text for ``wb``; ``parse(render(wb))`` has the same declarations."""
    return "".join(_render_decl(d) + "\n" for d in wb.decls)


def iter_decls(wb: WorkbenchFile, kind) -> Iterator:
    return (d for d in wb.decls if isinstance(d, kind))
