"""Region reconstruction.

Every gluing circle (edge of the graph) joins two piece-regions into a
larger region of the polyhedron; a union-find over piece-regions recovers
the regions, their total gleams and parities.  Orientations propagate
through gluings with a sign bit: an edge identifies the two port circles
reversing orientation, and a closed chain of gluings that forces a flip
marks the region non-orientable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .catalog import Catalog, Parity, get_catalog
from .graph import DecoratedGraph, Edge
from .halfint import HalfInteger, ZERO

# Union-find node keys: ("r", vertex_id, region_index) for piece-regions,
# ("e", edge_id) for regions made of a single boundary-to-boundary edge.
_Node = tuple


@dataclass(frozen=True)
class Region:
    id: str
    members: tuple[tuple[str, int], ...]  # (vertex id, piece-region index)
    edges: tuple[str, ...]
    gleam: HalfInteger
    parity: Parity
    orientable: bool
    # Net signed incidence per global singular edge; None when the catalog
    # lacks signed traversal data for a member.
    incidence: Optional[tuple[int, ...]]
    # Unsigned traversal counts mod 2; None when splits are unresolved.
    mod2_incidence: Optional[tuple[int, ...]]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "members": [list(m) for m in self.members],
            "edges": list(self.edges),
            "gleam_twice": self.gleam.twice,
            "parity": self.parity.value,
            "orientable": self.orientable,
        }


class _SignedUnionFind:
    def __init__(self):
        self.parent: dict[_Node, _Node] = {}
        self.sign: dict[_Node, int] = {}  # sign relative to parent
        self.flipped: set[_Node] = set()  # roots with an orientation conflict

    def add(self, x: _Node) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.sign[x] = 1

    def root_and_sign(self, x: _Node) -> tuple[_Node, int]:
        path = []
        node = x
        while self.parent[node] != node:
            path.append((node, self.sign[node]))
            node = self.parent[node]
        root = node
        acc = 1
        for entry, s in reversed(path):
            acc *= s
            self.parent[entry] = root
            self.sign[entry] = acc
        return root, self.sign[x] if path else 1

    def union(self, x: _Node, y: _Node, rel: int) -> None:
        """Merge with sign constraint sign(x) * sign(y) == rel."""
        rx, sx = self.root_and_sign(x)
        ry, sy = self.root_and_sign(y)
        if rx == ry:
            if sx * sy != rel:
                self.flipped.add(rx)
            return
        # attach ry under rx; choose sign(ry) so the constraint holds
        self.parent[ry] = rx
        self.sign[ry] = rel * sx * sy
        if ry in self.flipped:
            self.flipped.discard(ry)
            self.flipped.add(rx)


def _port_node(g: DecoratedGraph, cat: Catalog, vid: str, port: int) -> Optional[_Node]:
    kind = g.kind(vid)
    if kind == "B":
        return None
    entry = cat.piece(kind)
    return ("r", vid, entry.region_of_port(port))


def reconstruct_regions(g: DecoratedGraph, catalog: Optional[Catalog] = None) -> list[Region]:
    """Partition all piece-regions into regions of the polyhedron.

    Output is sorted by region id; ids follow the file order of the
    smallest member.
    """
    cat = catalog or get_catalog()
    uf = _SignedUnionFind()

    vertex_order = {vid: i for i, vid in enumerate(g.vertices)}
    for vid, kind in g.vertices.items():
        entry = cat.piece(kind)
        for ri in range(len(entry.regions)):
            uf.add(("r", vid, ri))

    edge_home: dict[str, _Node] = {}
    for e in g.edges:
        na = _port_node(g, cat, e.a.vertex, e.a.port)
        nb = _port_node(g, cat, e.b.vertex, e.b.port)
        if na is not None and nb is not None:
            uf.union(na, nb, rel=-1)
            edge_home[e.id] = na
        elif na is not None or nb is not None:
            edge_home[e.id] = na if na is not None else nb
        else:
            node = ("e", e.id)
            uf.add(node)
            edge_home[e.id] = node

    groups: dict[_Node, dict] = {}
    for node in list(uf.parent):
        root, sign = uf.root_and_sign(node)
        grp = groups.setdefault(root, {"members": [], "edges": [], "signs": {}})
        if node[0] == "r":
            grp["members"].append((node[1], node[2]))
            grp["signs"][node] = sign

    for e in g.edges:
        root, _ = uf.root_and_sign(edge_home[e.id])
        groups[root]["edges"].append(e.id)

    # global singular edge slots, in vertex file order
    singular_slots: list[tuple[str, int]] = []
    for vid, kind in g.vertices.items():
        for k in range(cat.piece(kind).singular_edges):
            singular_slots.append((vid, k))
    slot_index = {s: i for i, s in enumerate(singular_slots)}
    edge_pos = {e.id: i for i, e in enumerate(g.edges)}

    def member_key(m: tuple[str, int]):
        return (vertex_order[m[0]], m[1])

    regions: list[Region] = []
    order = []
    for root, grp in groups.items():
        members = sorted(grp["members"], key=member_key)
        if members:
            key = (0, member_key(members[0]))
        else:  # boundary-to-boundary edge
            key = (1, (min(edge_pos[eid] for eid in grp["edges"]), 0))
        order.append((key, root, grp, members))
    order.sort(key=lambda t: t[0])

    for idx, (_, root, grp, members) in enumerate(order):
        gleam = ZERO
        for eid in grp["edges"]:
            gleam = gleam + next(e.gleam for e in g.edges if e.id == eid)
        parity = Parity.EVEN
        orientable = root not in uf.flipped
        incidence: Optional[list[int]] = [0] * len(singular_slots)
        mod2: Optional[list[int]] = [0] * len(singular_slots)
        for vid, ri in members:
            spec = cat.piece(g.kind(vid)).regions[ri]
            parity = parity.xor(spec.parity)
            if not spec.orientable:
                orientable = False
            sign = grp["signs"][("r", vid, ri)]
            for k in range(cat.piece(g.kind(vid)).singular_edges):
                slot = slot_index[(vid, k)]
                if spec.traversals is None:
                    mod2 = None
                elif mod2 is not None:
                    mod2[slot] = (mod2[slot] + spec.traversals[k]) % 2
                if spec.signed is None:
                    incidence = None
                elif incidence is not None:
                    incidence[slot] += sign * spec.signed[k]
        if not orientable:
            incidence = None
        regions.append(
            Region(
                id=f"r{idx}",
                members=tuple(members),
                edges=tuple(sorted(grp["edges"], key=lambda eid: edge_pos[eid])),
                gleam=gleam,
                parity=parity,
                orientable=orientable,
                incidence=None if incidence is None else tuple(incidence),
                mod2_incidence=None if mod2 is None else tuple(mod2),
            )
        )
    return regions


def singular_edge_slots(g: DecoratedGraph, catalog: Optional[Catalog] = None) -> list[tuple[str, int]]:
    cat = catalog or get_catalog()
    slots = []
    for vid, kind in g.vertices.items():
        for k in range(cat.piece(kind).singular_edges):
            slots.append((vid, k))
    return slots


def connected_complexity(g: DecoratedGraph) -> int:
    """Most true vertices in one connected piece of the singular set.

    Circles contribute none and each 8-shaped piece exactly one, so the
    answer is 1 precisely when an X vertex is present.
    """
    return 1 if any(k.startswith("X") for k in g.vertices.values()) else 0
