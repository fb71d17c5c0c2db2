"""Decorated graphs: the combinatorial encoding of a 2-skeleton whose
singular set has connected pieces that are circles or 8-shaped.

File format (UTF-8, line oriented)::

    # comment
    vertex <id> <KIND>
    edge <id> <vid>:<port> <vid>:<port> gleam <n>|<n>/2

Vertices and edges keep file order; serialization is canonical, so
parse(serialize(g)) == g.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .catalog import Catalog, Parity, get_catalog
from .halfint import HalfInteger


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.message = message


@dataclass(frozen=True)
class EdgeEnd:
    vertex: str
    port: int

    def __str__(self) -> str:
        return f"{self.vertex}:{self.port}"


@dataclass(frozen=True)
class Edge:
    id: str
    a: EdgeEnd
    b: EdgeEnd
    gleam: HalfInteger

    def ends(self) -> tuple[EdgeEnd, EdgeEnd]:
        return (self.a, self.b)


@dataclass
class DecoratedGraph:
    vertices: dict[str, str]  # id -> kind, insertion ordered
    edges: list[Edge]
    name: str = ""

    def kind(self, vid: str) -> str:
        return self.vertices[vid]

    def vertex_ids(self) -> list[str]:
        return list(self.vertices)

    def edges_at(self, vid: str) -> list[Edge]:
        return [e for e in self.edges if vid in (e.a.vertex, e.b.vertex)]

    def without_vertex(self, vid: str) -> "DecoratedGraph":
        """Delete a vertex and all incident edges."""
        vertices = {v: k for v, k in self.vertices.items() if v != vid}
        edges = [e for e in self.edges if vid not in (e.a.vertex, e.b.vertex)]
        return DecoratedGraph(vertices, edges, self.name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DecoratedGraph):
            return NotImplemented
        return (list(self.vertices.items()) == list(other.vertices.items())
                and self.edges == other.edges)


@dataclass(frozen=True)
class Violation:
    rule: str
    subject: str
    message: str
    indeterminate: bool = False

    def to_dict(self) -> dict:
        return {"rule": self.rule, "subject": self.subject,
                "message": self.message, "indeterminate": self.indeterminate}


def parse_graph(text: str, catalog: Optional[Catalog] = None, name: str = "") -> DecoratedGraph:
    """Parse the line format into a structurally valid graph.

    Raises ParseError (with line number) on syntax errors, unknown kinds,
    out-of-range ports, duplicate port use, or malformed gleams.
    """
    cat = catalog or get_catalog()
    vertices: dict[str, str] = {}
    edges: list[Edge] = []
    used_ports: set[tuple[str, int]] = set()
    edge_ids: set[str] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "vertex":
            if len(tokens) != 3:
                raise ParseError(line_no, "expected: vertex <id> <KIND>")
            _, vid, kind = tokens
            if vid in vertices:
                raise ParseError(line_no, f"duplicate vertex id {vid!r}")
            if kind not in cat.pieces or cat.pieces[kind].internal:
                raise ParseError(line_no, f"unknown piece kind {kind!r}")
            vertices[vid] = kind
        elif tokens[0] == "edge":
            if len(tokens) != 6 or tokens[4] != "gleam":
                raise ParseError(line_no, "expected: edge <id> <v>:<p> <v>:<p> gleam <g>")
            _, eid, ta, tb, _, g = tokens
            if eid in edge_ids:
                raise ParseError(line_no, f"duplicate edge id {eid!r}")
            ends = []
            for tok in (ta, tb):
                if ":" not in tok:
                    raise ParseError(line_no, f"malformed endpoint {tok!r}")
                vid, _, port_s = tok.partition(":")
                if vid not in vertices:
                    raise ParseError(line_no, f"unknown vertex {vid!r}")
                try:
                    port = int(port_s)
                except ValueError:
                    raise ParseError(line_no, f"malformed port {port_s!r}") from None
                entry = cat.piece(vertices[vid])
                if not 0 <= port < entry.port_count:
                    raise ParseError(line_no, f"port {port} out of range for {vertices[vid]}")
                if (vid, port) in used_ports:
                    raise ParseError(line_no, f"port {vid}:{port} used twice")
                used_ports.add((vid, port))
                ends.append(EdgeEnd(vid, port))
            try:
                gleam = HalfInteger.parse(g)
            except ValueError as exc:
                raise ParseError(line_no, str(exc)) from None
            edges.append(Edge(eid, ends[0], ends[1], gleam))
            edge_ids.add(eid)
        else:
            raise ParseError(line_no, f"unknown directive {tokens[0]!r}")

    return DecoratedGraph(vertices, edges, name)


def serialize_graph(g: DecoratedGraph) -> str:
    lines = [f"vertex {vid} {kind}" for vid, kind in g.vertices.items()]
    lines += [f"edge {e.id} {e.a} {e.b} gleam {e.gleam}" for e in g.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def edge_parity(g: DecoratedGraph, e: Edge, catalog: Optional[Catalog] = None) -> Parity:
    """Parity of a gluing circle: the xor of its two port parities."""
    cat = catalog or get_catalog()
    pa = cat.piece(g.kind(e.a.vertex)).port_parities[e.a.port]
    pb = cat.piece(g.kind(e.b.vertex)).port_parities[e.b.port]
    return pa.xor(pb)


def validate_graph(g: DecoratedGraph, catalog: Optional[Catalog] = None) -> list[Violation]:
    """Check the structural invariants; violations come back as data.

    An empty list means every invariant holds.  Edges whose parity cannot
    be resolved from the catalog are reported as indeterminate entries,
    never silently accepted.
    """
    cat = catalog or get_catalog()
    out: list[Violation] = []

    used: dict[tuple[str, int], str] = {}
    for e in g.edges:
        for end in e.ends():
            key = (end.vertex, end.port)
            if key in used:
                out.append(Violation("port-reuse", e.id, f"port {end} already used by {used[key]}"))
            used[key] = e.id

    for vid, kind in g.vertices.items():
        entry = cat.piece(kind)
        for port in range(entry.port_count):
            if (vid, port) not in used:
                out.append(Violation("unused-port", vid, f"port {vid}:{port} has no edge"))

    for e in g.edges:
        parity = edge_parity(g, e, cat)
        if parity is Parity.UNRESOLVED:
            out.append(Violation("parity-indeterminate", e.id,
                                 "port parity unresolved in catalog; integrality unchecked",
                                 indeterminate=True))
        elif (parity is Parity.EVEN) != e.gleam.is_integral:
            want = "integer" if parity is Parity.EVEN else "half-integer"
            out.append(Violation("gleam-parity", e.id,
                                 f"edge is {parity.value}, gleam {e.gleam} should be {want}"))
    return out


def graph_to_dict(g: DecoratedGraph, violations: Optional[Iterable[Violation]] = None) -> dict:
    return {
        "vertices": [{"id": vid, "kind": kind} for vid, kind in g.vertices.items()],
        "edges": [{"id": e.id, "a": str(e.a), "b": str(e.b), "gleam_twice": e.gleam.twice}
                  for e in g.edges],
        "violations": [v.to_dict() for v in (violations if violations is not None else [])],
    }
