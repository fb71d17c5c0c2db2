"""Block catalogs, closed assemblies, connected sums, doubling, and the
bounded census enumerator.

An assembly is a multiset of catalog blocks with a perfect matching on
their boundary pieces and a signed blow-up count h.  Euler characteristic
adds over blocks plus |h|; the signature equals h.  Matched pairs carry
one of four gluing classes (the identity by default).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Optional

from .catalog import Catalog, Parity, get_catalog
from .graph import DecoratedGraph, Edge, EdgeEnd, parse_graph, validate_graph
from .halfint import HalfInteger, ZERO, ONE, HALF
from .regions import reconstruct_regions

GLUING_CLASSES = ("id", "rot", "gluck", "rot+gluck")


class CatalogDataMissing(RuntimeError):
    """A catalog constant required by the operation is unresolved."""


@dataclass(frozen=True)
class Block:
    name: str
    boundary_components: int
    chi: int
    sigma: int
    mirrorable: bool
    origin: str
    alias_of: Optional[str] = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "boundary_components": self.boundary_components,
             "chi": self.chi, "sigma": self.sigma, "mirrorable": self.mirrorable,
             "origin": self.origin}
        if self.alias_of:
            d["alias_of"] = self.alias_of
        return d


def block_catalog(set_id: str, catalog: Optional[Catalog] = None) -> list[Block]:
    """The generating set S0 or S1, in catalog order (aliases included)."""
    cat = catalog or get_catalog()
    if set_id not in cat.block_sets:
        raise ValueError(f"unknown block set {set_id!r} (have {sorted(cat.block_sets)})")
    out = []
    for name in cat.block_sets[set_id]:
        e = cat.blocks[name]
        out.append(Block(e.name, e.boundary_components, e.chi, e.sigma,
                         e.mirrorable, e.origin, e.alias_of))
    return out


Pair = tuple[tuple[int, int], tuple[int, int]]  # ((block idx, slot), (block idx, slot))


@dataclass(frozen=True)
class Assembly:
    blocks: tuple[str, ...]
    matching: tuple[Pair, ...]
    gluings: tuple[str, ...]  # one class per matched pair
    h: int = 0

    def __post_init__(self):
        for cls in self.gluings:
            if cls not in GLUING_CLASSES:
                raise ValueError(f"unknown gluing class {cls!r}")
        if len(self.gluings) != len(self.matching):
            raise ValueError("one gluing class per matched pair")

    def is_closed(self, catalog: Optional[Catalog] = None) -> bool:
        cat = catalog or get_catalog()
        slots = set()
        for i, name in enumerate(self.blocks):
            for s in range(cat.resolve_block(name).boundary_components):
                slots.add((i, s))
        seen = set()
        for a, b in self.matching:
            for end in (a, b):
                if end in seen or end not in slots:
                    return False
                seen.add(end)
        return seen == slots

    def canonical_key(self, catalog: Optional[Catalog] = None) -> str:
        cat = catalog or get_catalog()
        names = sorted(cat.canonical_block_name(n) for n in self.blocks)
        glues = sorted(self.gluings)
        return f"{','.join(names)}|{','.join(glues)}|h={self.h}"


def chi_sigma(a: Assembly, catalog: Optional[Catalog] = None) -> tuple[int, int]:
    """(Euler characteristic, signature) of a closed assembly."""
    cat = catalog or get_catalog()
    if not a.is_closed(cat):
        raise ValueError("assembly is not closed: matching is not perfect")
    chi = sum(cat.resolve_block(n).chi for n in a.blocks) + abs(a.h)
    return chi, a.h


def connected_sum(a: Assembly, b: Assembly, catalog: Optional[Catalog] = None) -> Assembly:
    """Closed connected sum via a pants block, a filling block and two
    three-holed splice blocks inserted between one matched pair of each
    summand."""
    cat = catalog or get_catalog()
    if not a.is_closed(cat) or not b.is_closed(cat):
        raise ValueError("connected sum needs closed assemblies")
    if not a.matching or not b.matching:
        raise ValueError("each summand needs at least one matched pair")

    off = len(a.blocks)
    blocks = list(a.blocks) + list(b.blocks) + ["N3", "M1", "M111", "M111"]
    n3 = off + len(b.blocks)
    m1, sp1, sp2 = n3 + 1, n3 + 2, n3 + 3

    shift = lambda end: (end[0] + off, end[1])
    (pa, qa), rest_a = a.matching[0], a.matching[1:]
    (pb, qb), rest_b = b.matching[0], b.matching[1:]
    pb, qb = shift(pb), shift(qb)

    matching = list(rest_a) + [(shift(x), shift(y)) for x, y in rest_b]
    matching += [
        ((n3, 0), (m1, 0)),          # cap one pants boundary
        ((n3, 1), (sp1, 0)),
        ((n3, 2), (sp2, 0)),
        (pa, (sp1, 1)), (qa, (sp1, 2)),
        (pb, (sp2, 1)), (qb, (sp2, 2)),
    ]
    gluings = ["id"] * len(matching)
    return Assembly(tuple(blocks), tuple(matching), tuple(gluings), a.h + b.h)


def _slot_counts(names: Iterable[str], cat: Catalog) -> list[int]:
    return [cat.resolve_block(n).boundary_components for n in names]


def _matchable(slots: list[int]) -> bool:
    """Is there a perfect matching on distinct blocks making the result
    connected?  Needs an even total, max degree at most the rest, and
    enough slots for a spanning tree."""
    total = sum(slots)
    n = len(slots)
    if total % 2 != 0 or n == 0:
        return False
    if n == 1:
        return False  # a pair must join distinct blocks
    if max(slots) > total - max(slots):
        return False
    return total >= 2 * (n - 1)


def _canonical_matching(slots: list[int]) -> list[Pair]:
    """Deterministic connected matching: a greedy spanning tree (new blocks
    attach to the connected block with most free slots), then repeated
    pairing of the two largest leftovers."""
    n = len(slots)
    free = [[(i, s) for s in range(c)] for i, c in enumerate(slots)]
    pairs: list[Pair] = []
    order = sorted(range(n), key=lambda i: (-slots[i], i))
    connected = [order[0]]
    for b in order[1:]:
        host = max(connected, key=lambda i: (len(free[i]), -i))
        if not free[host]:
            raise ValueError("no connected matching for these blocks")
        pairs.append((free[host].pop(), free[b].pop()))
        connected.append(b)
    while True:
        remaining = sorted((i for i in range(n) if free[i]),
                           key=lambda i: (-len(free[i]), i))
        if not remaining:
            break
        if len(remaining) < 2:
            raise ValueError("leftover slots cannot pair across distinct blocks")
        a, b = remaining[0], remaining[1]
        pairs.append((free[a].pop(), free[b].pop()))
    return pairs


def assemble(names: Iterable[str], h: int = 0, catalog: Optional[Catalog] = None) -> Assembly:
    """Build a closed assembly with the canonical matching."""
    cat = catalog or get_catalog()
    names = tuple(names)
    slots = _slot_counts(names, cat)
    if not _matchable(slots):
        raise ValueError(f"blocks {names} cannot close up into a connected assembly")
    matching = tuple(_canonical_matching(slots))
    return Assembly(names, matching, ("id",) * len(matching), h)


def enumerate_assemblies(set_id: str, max_blocks: int, h_range: tuple[int, int],
                         catalog: Optional[Catalog] = None,
                         jobs: int = 1, job_index: int = 0) -> Iterator[Assembly]:
    """Stream closed assemblies up to the block bound, duplicate-free under
    the canonical key, in a deterministic order.

    Pairs join distinct block copies; aliases collapse to their canonical
    name.  With jobs > 1 only the slice hashed to job_index is produced;
    concatenating all slices in key order reproduces the full census.
    """
    cat = catalog or get_catalog()
    if max_blocks < 1:
        raise ValueError("max_blocks must be at least 1")
    lo, hi = h_range
    if lo > hi:
        raise ValueError("empty h range")
    names = sorted({cat.canonical_block_name(n) for n in cat.block_sets[set_id]})
    seen: set[str] = set()
    counter = 0
    for size in range(1, max_blocks + 1):
        for combo in itertools.combinations_with_replacement(names, size):
            slots = _slot_counts(combo, cat)
            if not _matchable(slots):
                continue
            counter += 1
            if jobs > 1 and (counter - 1) % jobs != job_index:
                continue
            for h in range(lo, hi + 1):
                a = assemble(combo, h, cat)
                key = a.canonical_key(cat)
                if key in seen:
                    continue
                seen.add(key)
                yield a


def assembly_record(a: Assembly, catalog: Optional[Catalog] = None) -> dict:
    cat = catalog or get_catalog()
    chi, sigma = chi_sigma(a, cat)
    return {"key": a.canonical_key(cat), "blocks": sorted(a.blocks),
            "h": a.h, "chi": chi, "sigma": sigma}


# -- assembly description files ------------------------------------------

def parse_assembly(text: str, catalog: Optional[Catalog] = None) -> Assembly:
    """Parse the block/match/h line format::

        block <id> <BlockName>
        match <id>:<slot> <id>:<slot> [class]
        h <n>
    """
    cat = catalog or get_catalog()
    ids: dict[str, int] = {}
    names: list[str] = []
    matching: list[Pair] = []
    gluings: list[str] = []
    h = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "block" and len(toks) == 3:
            if toks[1] in ids:
                raise ValueError(f"line {line_no}: duplicate block id {toks[1]!r}")
            cat.resolve_block(toks[2])
            ids[toks[1]] = len(names)
            names.append(toks[2])
        elif toks[0] == "match" and len(toks) in (3, 4):
            ends = []
            for tok in toks[1:3]:
                bid, _, slot = tok.partition(":")
                if bid not in ids:
                    raise ValueError(f"line {line_no}: unknown block id {bid!r}")
                ends.append((ids[bid], int(slot)))
            cls = toks[3] if len(toks) == 4 else "id"
            if cls not in GLUING_CLASSES:
                raise ValueError(f"line {line_no}: unknown gluing class {cls!r}")
            matching.append((ends[0], ends[1]))
            gluings.append(cls)
        elif toks[0] == "h" and len(toks) == 2:
            h = int(toks[1])
        else:
            raise ValueError(f"line {line_no}: cannot parse {raw!r}")
    return Assembly(tuple(names), tuple(matching), tuple(gluings), h)


# -- doubling a shadow -----------------------------------------------------

def _fresh(prefix: str, taken: set[str]) -> str:
    k = 0
    while f"{prefix}{k}" in taken:
        k += 1
    taken.add(f"{prefix}{k}")
    return f"{prefix}{k}"


def _bubble(g_vertices: dict, g_edges: list, edge: Edge, taken: set[str],
            cat: Catalog, disc_gleam: HalfInteger, shift: bool) -> None:
    """Split an edge through a fresh three-legged circle vertex and cap the
    third leg with a disc.  With shift=True one unit of gleam moves across
    the split (the doubling bubble); otherwise the original gleam stays on
    the a-side (the blow-up bubble).  Splits respect the port parities."""
    y = _fresh("bub", taken)
    d = _fresh("cap", taken)
    g_vertices[y] = "Y111"
    g_vertices[d] = "D"
    pb = cat.piece(g_vertices[edge.b.vertex]).port_parities[edge.b.port]
    unit = HALF if pb is Parity.ODD else ONE
    b_gleam = unit if shift else (HALF if pb is Parity.ODD else ZERO)
    a_gleam = edge.gleam - b_gleam
    g_edges.remove(edge)
    g_edges.append(Edge(_fresh("be", taken), edge.a, EdgeEnd(y, 0), a_gleam))
    g_edges.append(Edge(_fresh("be", taken), EdgeEnd(y, 1), edge.b, b_gleam))
    g_edges.append(Edge(_fresh("be", taken), EdgeEnd(y, 2), EdgeEnd(d, 0), disc_gleam))


def shadow_of_double(g: DecoratedGraph, h: int = 0,
                     catalog: Optional[Catalog] = None) -> DecoratedGraph:
    """Closed decorated graph presenting the double of the thickening,
    blown up h times: one doubling bubble per region, |h| signed blow-up
    bubbles, and a capping portion spliced over every boundary vertex.

    Refuses when the capping portion decoration is unresolved in the
    catalog.
    """
    cat = catalog or get_catalog()
    violations = [v for v in validate_graph(g, cat) if not v.indeterminate]
    if violations:
        raise ValueError(f"graph invalid: {violations[0].message}")
    has_boundary = any(k == "B" for k in g.vertices.values())
    if has_boundary and cat.x12_portion is None:
        raise CatalogDataMissing(
            "boundary capping portion decoration is unresolved in the catalog; "
            "supply one via SHADOWCALC_CATALOG to double graphs with boundary")

    vertices = dict(g.vertices)
    edges = list(g.edges)
    taken = set(vertices) | {e.id for e in edges}

    regions = reconstruct_regions(g, cat)
    for region in regions:
        live = next(e for e in edges if e.id == region.edges[0])
        _bubble(vertices, edges, live, taken, cat, disc_gleam=-ONE, shift=True)

    if h != 0:
        sign = ONE if h > 0 else -ONE
        for _ in range(abs(h)):
            # prefer an edge between even ports so the blow-up class stays
            # visible to the integral form
            def _even(e: Edge) -> bool:
                pa = cat.piece(vertices[e.a.vertex]).port_parities[e.a.port]
                pb = cat.piece(vertices[e.b.vertex]).port_parities[e.b.port]
                return pa is Parity.EVEN and pb is Parity.EVEN

            live = next((e for e in edges if _even(e)), edges[0])
            _bubble(vertices, edges, live, taken, cat, disc_gleam=sign, shift=False)

    if has_boundary:
        portion = cat.x12_portion
        for vid in [v for v, k in g.vertices.items() if k == "B"]:
            mapping = {}
            for pv in portion["vertices"]:
                nid = _fresh("x12v", taken)
                mapping[pv["id"]] = nid
                vertices[nid] = pv["kind"]
            for pe in portion["edges"]:
                a_v, a_p = pe["a"].split(":")
                b_v, b_p = pe["b"].split(":")
                edges.append(Edge(_fresh("x12e", taken),
                                  EdgeEnd(mapping[a_v], int(a_p)),
                                  EdgeEnd(mapping[b_v], int(b_p)),
                                  HalfInteger(int(pe["gleam_twice"]))))
            open_v, open_p = portion["open"].split(":")
            open_end = EdgeEnd(mapping[open_v], int(open_p))
            for i, e in enumerate(edges):
                if e.a.vertex == vid:
                    edges[i] = Edge(e.id, open_end, e.b, e.gleam)
                elif e.b.vertex == vid:
                    edges[i] = Edge(e.id, e.a, open_end, e.gleam)
            del vertices[vid]

    doubled = DecoratedGraph(vertices, edges, name=f"double({g.name})" if g.name else "double")
    bad = [v for v in validate_graph(doubled, cat) if not v.indeterminate]
    if bad:
        raise AssertionError(f"doubling produced an invalid graph: {bad[0].message}")
    return doubled
