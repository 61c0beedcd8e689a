"""
Graph family expressions such as "(2*C4)~(3*C4+K3)+5*C4" or "MC(3,10,4)"

Precedence, loosest first: '+' (disjoint union), '~' (join), 'k*' (copies),
then atoms K<w>, C<n>, co(...), MC(w,m,n) and parenthesised expressions.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from app.models.graph import Graph, MulticoneParams
from app.utils.exceptions import BaseSpectraError, FamilySyntaxError, ValidationError
from app.utils.graph6 import g6_decode
from app.utils import graph_ops

DIGITS = "0123456789"


class FamilyNode:
    def build(self) -> Graph:
        raise NotImplementedError


@dataclass(frozen=True)
class Clique(FamilyNode):
    w: int

    def build(self) -> Graph:
        return graph_ops.make_complete(self.w)

    def __str__(self) -> str:
        return f"K{self.w}"


@dataclass(frozen=True)
class Cycle(FamilyNode):
    n: int

    def build(self) -> Graph:
        return graph_ops.make_cycle(self.n)

    def __str__(self) -> str:
        return f"C{self.n}"


@dataclass(frozen=True)
class Multicone(FamilyNode):
    params: MulticoneParams

    def build(self) -> Graph:
        return graph_ops.multicone(self.params)

    def __str__(self) -> str:
        return str(self.params)


@dataclass(frozen=True)
class Complement(FamilyNode):
    inner: FamilyNode

    def build(self) -> Graph:
        return graph_ops.complement(self.inner.build())

    def __str__(self) -> str:
        return f"co({self.inner})"


@dataclass(frozen=True)
class Copies(FamilyNode):
    k: int
    inner: FamilyNode

    def build(self) -> Graph:
        return graph_ops.copies(self.k, self.inner.build())

    def __str__(self) -> str:
        inner = f"({self.inner})" if isinstance(self.inner, (DisjointUnion, Join)) else str(self.inner)
        return f"{self.k}*{inner}"


@dataclass(frozen=True)
class Join(FamilyNode):
    parts: Tuple[FamilyNode, ...]

    def build(self) -> Graph:
        graph = self.parts[0].build()
        for part in self.parts[1:]:
            graph = graph_ops.join(graph, part.build())
        return graph

    def __str__(self) -> str:
        return "~".join(f"({p})" if isinstance(p, (DisjointUnion, Join)) else str(p) for p in self.parts)


@dataclass(frozen=True)
class DisjointUnion(FamilyNode):
    parts: Tuple[FamilyNode, ...]

    def build(self) -> Graph:
        graph = self.parts[0].build()
        for part in self.parts[1:]:
            graph = graph_ops.disjoint_union(graph, part.build())
        return graph

    def __str__(self) -> str:
        return "+".join(f"({p})" if isinstance(p, DisjointUnion) else str(p) for p in self.parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, detail: str, position: Optional[int] = None) -> FamilySyntaxError:
        return FamilySyntaxError(detail, self.pos if position is None else position, self.text)

    def skip_space(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip_space()
        return self.text.startswith(token, self.pos)

    def expect(self, token: str) -> None:
        if not self.peek(token):
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected '{token}', found '{found}'")
        self.pos += len(token)

    def at_digit(self) -> bool:
        # ASCII only: str.isdigit also accepts superscripts that int() rejects
        return self.pos < len(self.text) and self.text[self.pos] in DIGITS

    def integer(self) -> int:
        self.skip_space()
        start = self.pos
        while self.at_digit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse(self) -> FamilyNode:
        node = self.union()
        self.skip_space()
        if self.pos != len(self.text):
            raise self.error(f"unexpected '{self.text[self.pos]}'")
        return node

    def union(self) -> FamilyNode:
        parts = [self.join()]
        while self.peek("+"):
            self.pos += 1
            parts.append(self.join())
        return parts[0] if len(parts) == 1 else DisjointUnion(tuple(parts))

    def join(self) -> FamilyNode:
        parts = [self.copies()]
        while self.peek("~"):
            self.pos += 1
            parts.append(self.copies())
        return parts[0] if len(parts) == 1 else Join(tuple(parts))

    def copies(self) -> FamilyNode:
        self.skip_space()
        if self.at_digit():
            k = self.integer()
            self.expect("*")
            return Copies(k, self.copies())
        return self.atom()

    def atom(self) -> FamilyNode:
        self.skip_space()
        start = self.pos
        if self.peek("MC"):
            self.pos += 2
            self.expect("(")
            w = self.integer()
            self.expect(",")
            m = self.integer()
            self.expect(",")
            n = self.integer()
            self.expect(")")
            return Multicone(MulticoneParams(w, m, n))
        if self.peek("co"):
            self.pos += 2
            self.expect("(")
            inner = self.union()
            self.expect(")")
            return Complement(inner)
        if self.peek("K"):
            self.pos += 1
            return Clique(self.integer())
        if self.peek("C"):
            self.pos += 1
            return Cycle(self.integer())
        if self.peek("("):
            self.pos += 1
            inner = self.union()
            self.expect(")")
            return inner
        if self.pos >= len(self.text):
            raise self.error("unexpected end of input", start)
        raise self.error(f"unexpected '{self.text[self.pos]}'", start)


def parse_expression(text: str) -> FamilyNode:
    """Parse a family expression into its syntax tree"""
    if not text or not text.strip():
        raise FamilySyntaxError("empty expression", 0, text or "")
    return _Parser(text).parse()


def parse_family(text: str) -> Graph:
    return parse_expression(text).build()


def print_family(node: FamilyNode) -> str:
    return str(node)


def multicone_params_of(node: FamilyNode) -> Optional[MulticoneParams]:
    """Recognise MC(w,m,n) and the spelled-out forms K<w>~C<n> and K<w>~<m>*C<n>"""
    if isinstance(node, Multicone):
        return node.params
    if isinstance(node, Join) and len(node.parts) == 2 and isinstance(node.parts[0], Clique):
        rim = node.parts[1]
        if isinstance(rim, Cycle):
            return MulticoneParams(node.parts[0].w, 1, rim.n)
        if isinstance(rim, Copies) and isinstance(rim.inner, Cycle):
            return MulticoneParams(node.parts[0].w, rim.k, rim.inner.n)
    return None


def resolve_graph(expr: Optional[str] = None, g6: Optional[str] = None) -> Tuple[Graph, Optional[MulticoneParams], str]:
    """
    Build a graph from exactly one of a family expression or a graph6 string

    Returns:
        (graph, multicone parameters when recognisable, display label)
    """
    if (expr is None) == (g6 is None):
        raise ValidationError("Provide exactly one of an expression or a graph6 string", field="graph")
    if expr is not None:
        node = parse_expression(expr)
        return node.build(), multicone_params_of(node), print_family(node)
    return g6_decode(g6.strip()), None, g6.strip()


def resolve_target(text: str) -> Tuple[Graph, Optional[MulticoneParams], str]:
    """A target given either as an expression or as graph6 (tried when the expression does not parse)"""
    try:
        return resolve_graph(expr=text)
    except FamilySyntaxError as syntax:
        try:
            return resolve_graph(g6=text)
        except BaseSpectraError:
            raise syntax from None
