"""Line-oriented graph files and inline divisor strings.

Graph file::

    # theta graph with a weighted vertex
    vertex v0 weight 1
    vertex v1
    edge v0 v1 length 2
    edge v0 v1 length 1/2

A token starting with ``#`` begins a comment, so vertex names such as
``e0#sub1`` survive a round trip. Missing weights are 0; missing lengths
read as 1 when the file is interpreted as a metric object.

Divisors: ``v0:1,v1:-2``; tropical points as ``<edge index>@<position>:<coeff>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .divisor import Divisor
from .graph import InputError, Multigraph, WeightedGraph
from .tropical import PseudoMetricGraph, TropicalCurve, TropicalDivisor

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str = "<input>"):
        self.line, self.column, self.source = line, column, source
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


@dataclass
class GraphDocument:
    vertices: list[str] = field(default_factory=list)
    weights: dict[str, int] = field(default_factory=dict)
    edges: list[tuple[str, str]] = field(default_factory=list)
    lengths: list[Fraction | None] = field(default_factory=list)
    vertex_lines: dict[str, int] = field(default_factory=dict)
    edge_lines: list[int] = field(default_factory=list)
    source: str = "<input>"

    @property
    def multigraph(self) -> Multigraph:
        return Multigraph(tuple(self.vertices), tuple(self.edges))

    @property
    def weighted_graph(self) -> WeightedGraph:
        return WeightedGraph(self.multigraph, self.weights)

    @property
    def has_lengths(self) -> bool:
        return any(x is not None for x in self.lengths)

    def _length_list(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(1) if x is None else x for x in self.lengths)

    def tropical_curve(self) -> TropicalCurve:
        for i, x in enumerate(self.lengths):
            if x is not None and x <= 0:
                raise ParseError(
                    f"edge {i} has length {x}; tropical curves need positive lengths",
                    self.edge_lines[i], None, self.source,
                )
        return TropicalCurve(self.weighted_graph, self._length_list())

    def pseudo_metric(self) -> PseudoMetricGraph:
        if any(self.weights.values()):
            raise ParseError("pseudo-metric graphs carry no vertex weights", None, None, self.source)
        return PseudoMetricGraph(self.multigraph, self._length_list())


def parse_graph(text: str, source: str = "<input>") -> GraphDocument:
    doc = GraphDocument(source=source)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = []
        for m in re.finditer(r"\S+", raw):
            if m.group().startswith("#"):
                break
            tokens.append((m.group(), m.start() + 1))
        if not tokens:
            continue

        def fail(msg, col=None):
            raise ParseError(msg, lineno, col, source)

        head, col = tokens[0]
        if head == "vertex":
            if len(tokens) not in (2, 4):
                fail("expected 'vertex <id> [weight <n>]'", col)
            name, ncol = tokens[1]
            if name in doc.vertex_lines:
                fail(f"duplicate vertex {name!r} (first declared on line {doc.vertex_lines[name]})", ncol)
            weight = 0
            if len(tokens) == 4:
                kw, kcol = tokens[2]
                if kw != "weight":
                    fail(f"unexpected {kw!r}, expected 'weight'", kcol)
                val, vcol = tokens[3]
                if not re.fullmatch(r"[+-]?\d+", val):
                    fail(f"weight must be an integer, got {val!r}", vcol)
                weight = int(val)
                if weight < 0:
                    fail(f"negative weight {weight} for vertex {name!r}", vcol)
            doc.vertices.append(name)
            doc.vertex_lines[name] = lineno
            if weight:
                doc.weights[name] = weight
        elif head == "edge":
            if len(tokens) not in (3, 5):
                fail("expected 'edge <u> <v> [length <p>/<q>]'", col)
            ends = []
            for name, ncol in tokens[1:3]:
                if name not in doc.vertex_lines:
                    fail(f"edge endpoint {name!r} is not a declared vertex", ncol)
                ends.append(name)
            length = None
            if len(tokens) == 5:
                kw, kcol = tokens[3]
                if kw != "length":
                    fail(f"unexpected {kw!r}, expected 'length'", kcol)
                val, vcol = tokens[4]
                if not _RATIONAL.match(val):
                    fail(f"length must be a rational p/q, got {val!r}", vcol)
                try:
                    length = Fraction(val)
                except ZeroDivisionError:
                    fail(f"zero denominator in {val!r}", vcol)
                if length < 0:
                    fail(f"negative length {val}", vcol)
                if length == 0 and ends[0] != ends[1]:
                    fail("length 0 is only allowed on loop-edges", vcol)
            doc.edges.append((ends[0], ends[1]))
            doc.lengths.append(length)
            doc.edge_lines.append(lineno)
        else:
            fail(f"unknown directive {head!r}", col)

    if not doc.vertices:
        raise ParseError("no vertices declared", None, None, source)
    comps = doc.multigraph.components()
    if len(comps) > 1:
        stray = comps[1]
        raise ParseError(
            "graph is disconnected; component {" + ", ".join(stray) + "} is not reachable from "
            + repr(doc.vertices[0]),
            doc.vertex_lines[stray[0]], None, source,
        )
    return doc


def _fmt_length(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def serialize_graph(obj) -> str:
    """Render a Multigraph, WeightedGraph, TropicalCurve or PseudoMetricGraph."""
    weights: dict[str, int] = {}
    lengths = None
    if isinstance(obj, TropicalCurve):
        G, weights, lengths = obj.graph, dict(obj.base.weight), obj.length
    elif isinstance(obj, PseudoMetricGraph):
        G, lengths = obj.graph, obj.length
    elif isinstance(obj, WeightedGraph):
        G, weights = obj.graph, dict(obj.weight)
    elif isinstance(obj, Multigraph):
        G = obj
    elif isinstance(obj, GraphDocument):
        G, weights = obj.multigraph, obj.weights
        lengths = obj.lengths if obj.has_lengths else None
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    lines = []
    for v in G.vertices:
        w = weights.get(v, 0)
        lines.append(f"vertex {v}" + (f" weight {w}" if w else ""))
    for i, (u, v) in enumerate(G.edges):
        line = f"edge {u} {v}"
        if lengths is not None and lengths[i] is not None:
            line += f" length {_fmt_length(lengths[i])}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def _split_items(text: str):
    text = text.strip()
    if text in ("", "0"):
        return []
    items = []
    for item in text.split(","):
        item = item.strip()
        where, sep, coeff = item.rpartition(":")
        if not sep or not where or not re.fullmatch(r"[+-]?\d+", coeff.strip()):
            raise ParseError(f"bad divisor term {item!r}; expected '<location>:<integer>'")
        items.append((where.strip(), int(coeff)))
    return items


def parse_divisor(text: str, vertices) -> Divisor:
    vertices = tuple(vertices)
    known = set(vertices)
    values: dict[str, int] = {}
    for where, c in _split_items(text):
        if where not in known:
            raise ParseError(f"divisor refers to unknown vertex {where!r}")
        values[where] = values.get(where, 0) + c
    return Divisor.from_dict(vertices, values)


def parse_tropical_divisor(text: str, vertices) -> TropicalDivisor:
    known = set(vertices)
    terms = []
    for where, c in _split_items(text):
        if where in known:
            terms.append((where, c))
            continue
        m = re.fullmatch(r"(\d+)@([+-]?\d+(?:/\d+)?)", where)
        if not m:
            raise ParseError(f"unknown location {where!r}; expected a vertex or '<edge>@<position>'")
        terms.append(((int(m.group(1)), Fraction(m.group(2))), c))
    return TropicalDivisor(terms)
