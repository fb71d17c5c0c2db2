"""The 3-manifold boundary calculus: per-piece fiber manifolds, decorated
trees with levels, branch torsion via meridian transport, and plumbing
extraction through the contribution table.

The transport model: curve classes on the torus between consecutive
chain pieces are integer pairs (a, b) = a*section + b*fiber.  Crossing a
framed sphere piece swaps section and fiber and adds the framing twist,
so a hanging chain (e1,...,ek) pushes the leaf meridian to the base as a
continued-fraction pair; the branch is attached along a section exactly
when the section coefficient is +-1, which equals the determinant of the
zero-extended line (0, e1, ..., ek).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .catalog import Catalog, FiberManifold, Hyperbolic, SeifertDescriptor, SolidTorus, get_catalog
from .graph import DecoratedGraph
from .halfint import HalfInteger, ZERO
from .plumbing import PlumbingLine, plumbing_det


def fiber_pieces(g: DecoratedGraph, catalog: Optional[Catalog] = None
                 ) -> list[tuple[str, FiberManifold]]:
    """Per-vertex 3-manifold sitting above each piece; boundary vertices
    contribute vertical solid tori."""
    cat = catalog or get_catalog()
    out: list[tuple[str, FiberManifold]] = []
    for vid, kind in g.vertices.items():
        if kind == "B":
            out.append((vid, SolidTorus()))
        else:
            out.append((vid, cat.piece(kind).fiber_manifold))
    return out


# -- decorated trees with levels -------------------------------------------

TREE_KIND_VALENCE = {
    "B": 1,       # boundary: vertical solid torus
    "D": 1,       # disc: solid torus
    "Y111": 3,    # pants times circle
    "Y12": 2,     # annular piece with one order-2 fiber
    "X10D": 2,    # 8-shape piece 10 with its half-gleamed disc: (A,3)
    "X11D": 3,    # 8-shape piece 11 with one zero-gleamed disc
}


@dataclass
class TreeWithLevels:
    vertices: dict[str, str]                 # id -> kind
    edges: list[tuple[str, str, HalfInteger]]
    levels: dict[str, int]
    solid_torus_assumption: bool = True      # condition on branch fillings,
                                             # recorded, not checked globally

    def neighbours(self, v: str) -> list[str]:
        out = []
        for a, b, _ in self.edges:
            if a == v:
                out.append(b)
            if b == v:
                out.append(a)
        return out

    def valence(self, v: str) -> int:
        return len(self.neighbours(v))


def validate_tree(tree: TreeWithLevels) -> list[str]:
    """Check the level-structure conditions; problems come back as strings.

    (1) at least two level-zero vertices forming a path, (2) every vertex
    of valence two or three has exactly one strictly higher neighbour,
    (3) each bounded-level portion is a connected subtree.  The solid
    torus condition on branches is an assumption flag, checked only where
    branch shapes are supported.
    """
    problems: list[str] = []
    for v, kind in tree.vertices.items():
        if kind not in TREE_KIND_VALENCE:
            problems.append(f"{v}: unsupported tree kind {kind}")
        elif tree.valence(v) != TREE_KIND_VALENCE[kind]:
            problems.append(f"{v}: kind {kind} needs valence {TREE_KIND_VALENCE[kind]}")
        if v not in tree.levels or tree.levels[v] < 0:
            problems.append(f"{v}: missing or negative level")
    if problems:
        return problems

    root = [v for v in tree.vertices if tree.levels[v] == 0]
    if len(root) < 2:
        problems.append("root needs at least two level-zero vertices")
    else:
        degree_in_root = {v: sum(1 for u in tree.neighbours(v) if u in root) for v in root}
        if sorted(degree_in_root.values()) != [1, 1] + [2] * (len(root) - 2):
            problems.append("level-zero vertices do not form a path")

    for v in tree.vertices:
        if tree.valence(v) in (2, 3):
            higher = [u for u in tree.neighbours(v) if tree.levels[u] > tree.levels[v]]
            if len(higher) != 1:
                problems.append(f"{v}: needs exactly one strictly higher neighbour, has {len(higher)}")

    max_level = max(tree.levels.values(), default=0)
    for bound in range(max_level + 1):
        sub = {v for v in tree.vertices if tree.levels[v] <= bound}
        sub_edges = [(a, b) for a, b, _ in tree.edges if a in sub and b in sub]
        if len(sub_edges) != len(sub) - 1 or not _connected(sub, sub_edges):
            problems.append(f"vertices of level <= {bound} are not a subtree")
    return problems


def _connected(vertices: set[str], edges: list[tuple[str, str]]) -> bool:
    if not vertices:
        return True
    seen = set()
    stack = [next(iter(vertices))]
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj[v])
    return seen == vertices


# -- branch torsion ----------------------------------------------------------

class BranchError(ValueError):
    pass


@dataclass(frozen=True)
class BranchTorsion:
    q: int
    trace: tuple[str, ...]
    vertical_disc: bool  # q == 0: the branch gives a vertical compressing disc

    def to_dict(self) -> dict:
        return {"q": self.q, "trace": list(self.trace), "vertical_disc": self.vertical_disc}


def meridian_transport(line: Sequence[int]) -> tuple[int, int]:
    """Push the leaf meridian of the hanging chain (e1,...,ek) to the base
    torus: returns (section, fiber) coefficients.

    The section coefficient equals +-det(0, e1, ..., ek)."""
    entries = list(line)
    if not entries:
        raise BranchError("empty branch line has no leaf")
    a, b = 1, entries[-1]  # leaf solid torus: section + e_k * fiber
    for e in reversed(entries[:-1]):
        a, b = b, a + e * b  # swap across the plumbing, then twist
    return a, b


def branch_torsion_line(line: Union[PlumbingLine, Sequence[int]]) -> BranchTorsion:
    """Torsion of a hanging plumbing chain: the fiber coefficient of the
    transported meridian, once the section coefficient is normalized to 1.

    Raises BranchError when the meridian is not a section (the chain does
    not satisfy the solid-torus attachment condition)."""
    entries = list(line.entries) if isinstance(line, PlumbingLine) else list(line)
    a, b = meridian_transport(entries)
    trace = (f"transport{tuple(entries)}->({a},{b})",)
    if abs(a) != 1:
        raise BranchError(
            f"branch meridian wraps the base fiber {abs(a)} times; not a section "
            f"(|det(0,{','.join(map(str, entries))})| = {abs(a)})")
    if a == -1:
        a, b = 1, -b
    return BranchTorsion(q=b, trace=trace, vertical_disc=(b == 0))


def branch_torsion(tree: TreeWithLevels, base: str) -> BranchTorsion:
    """Torsion of the branch hanging above `base` in a leveled tree.

    Supported shapes: a single disc leaf, or a chain of three-valent
    vertices carrying disc leaves that ends in a disc (the tree form of a
    hanging plumbing line).  Gleams along the chain must be integral."""
    if base not in tree.vertices:
        raise BranchError(f"no vertex {base!r}")
    higher = [u for u in tree.neighbours(base) if tree.levels[u] > tree.levels[base]]
    if len(higher) != 1:
        raise BranchError(f"{base} is not the base of a branch")

    def gleam_between(a: str, b: str) -> HalfInteger:
        for x, y, g in tree.edges:
            if {x, y} == {a, b}:
                return g
        raise BranchError(f"no edge {a}-{b}")

    line: list[int] = []
    prev, cur = base, higher[0]
    while True:
        g = gleam_between(prev, cur)
        if not g.is_integral:
            raise BranchError(f"edge {prev}-{cur}: branch gleam {g} is not integral")
        kind = tree.vertices[cur]
        if kind == "D":
            line.append(g.as_int())
            break
        if kind == "Y111":
            nxt = [u for u in tree.neighbours(cur)
                   if u != prev and tree.levels[u] > tree.levels[cur]]
            leaves = [u for u in tree.neighbours(cur)
                      if u != prev and tree.vertices[u] == "D" and u not in nxt]
            if len(nxt) != 1 or len(leaves) != 1:
                # a chain vertex carries exactly one leaf and one continuation
                leaves_all = [u for u in tree.neighbours(cur) if u != prev and tree.vertices[u] == "D"]
                if len(leaves_all) == 2 and not nxt:
                    # chain ends: one leaf continues the line, the other caps it
                    l1, l2 = sorted(leaves_all)
                    g1 = gleam_between(cur, l1)
                    g2 = gleam_between(cur, l2)
                    if not (g1.is_integral and g2.is_integral):
                        raise BranchError("branch gleams must be integral")
                    line.append(g.as_int())
                    line.append(g1.as_int())
                    line.append(g2.as_int())
                    break
                raise BranchError(f"{cur}: unsupported branch shape")
            leaf_g = gleam_between(cur, leaves[0])
            if not leaf_g.is_integral:
                raise BranchError("branch gleams must be integral")
            line.append(g.as_int())
            line.append(leaf_g.as_int())
            prev, cur = cur, nxt[0]
            continue
        raise BranchError(f"{cur}: unsupported branch vertex kind {kind}")
    return branch_torsion_line(line)


# -- plumbing extraction -----------------------------------------------------

class UnsupportedPortion(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    """One lettered sub-portion of an H-shaped region of the tree.

    Tags with a torsion parameter: d, f, j, j+, l, l+, E, Er.
    Trivial tags (no contribution): e, a, b.
    """

    tag: str
    q: Optional[int] = None


# contribution of each tag to the plumbing line, with Q a placeholder
_CONTRIB: dict[str, tuple] = {
    "e": (), "a": (), "b": (),
    "c": (2,), "g": (2,), "h": (2,),
    "i": (-3,), "i+": (3,),
    "k": (2,),
    "d": (2, "Q-", -2),
    "f": (-2, "Q-", 2),
    "j": (3, "Q-", -3),
    "j+": (-3, "Q-", 3),
    "l": (-3, "Q-", 3),
    "l+": (3, "Q+", -3),
    "F": (4,), "F-": (-4,),
    "D": (2,), "D-": (-2,),
    "E": (2, "Q-", -2), "Er": (-2, "Q-", 2),
    "J1": (4, -2), "J1-": (-4, 2),
    "J2": (-2, 4), "J2-": (2, -4),
}

_NEEDS_Q = {"d", "f", "j", "j+", "l", "l+", "E", "Er"}

# joining-gleam offsets for adjacent tags, transcribed case by case
_OFFSETS: dict[tuple[str, str], HalfInteger] = {}


def _off(left: str, right: str, twice: int) -> None:
    _OFFSETS[(left, right)] = HalfInteger(twice)


for _l, _r, _t in [
    ("g", "e", 1), ("h", "e", 1), ("i", "e", -1), ("j", "e", -1),
    ("g", "f", 0), ("h", "f", 0), ("i", "f", -2), ("j", "f", -2),
    ("c", "k", 2), ("g", "k", 2), ("h", "k", 2), ("i", "k", 0), ("j", "k", 0),
    ("b", "l", -1), ("c", "l", 0), ("g", "l", 0), ("i", "l", -2), ("j", "l", -2),
    ("i", "l+", 0), ("j", "l+", 0),
    ("g", "F", 1), ("h", "F", 1), ("i", "F", -1), ("i+", "F", 1), ("j", "F", -1), ("j+", "F", 1),
    ("a", "D", 2), ("b", "D", 2), ("c", "D", 3), ("d", "D", 1),
    ("g", "D", 3), ("h", "D", 3), ("i", "D", 1), ("j", "D", 1),
    ("a", "E", 1), ("b", "E", 1), ("c", "E", 2), ("d", "E", 0),
    ("g", "E", 2), ("h", "E", 2), ("i", "E", 0), ("j", "E", 0),
    ("a", "J1", 0), ("b", "J1", 0), ("c", "J1", 1), ("d", "J1", -1),
    ("g", "J1", 1), ("h", "J1", 1), ("i", "J1", -1), ("i+", "J1", 1),
    ("j", "J1", -1), ("j+", "J1", 1),
    ("a", "J2", -1), ("b", "J2", -1), ("c", "J2", 0), ("d", "J2", 0),
    ("g", "J2", 0), ("h", "J2", 0), ("i", "J2", -2), ("i+", "J2", 0),
    ("j", "J2", -2), ("j+", "J2", 0),
    ("D", "F", 2), ("D", "D", 4),
    ("E", "F", -1), ("E", "D", 1), ("E", "Er", -2),
    ("J1", "D", 1), ("J1", "E", 0), ("J1", "F", -1), ("J1", "F-", -1),
    ("J1", "J1", -1), ("J1", "J1-", -1), ("J1", "J2-", 0), ("J1", "J2", -2),
    ("J2", "F", 0), ("J2", "F-", 0), ("J2", "D", 2), ("J2", "E", 1),
    ("J2", "J1-", 0), ("J2", "J1", 0),
]:
    _off(_l, _r, _t)


def _contribution(seg: Segment) -> tuple[int, ...]:
    if seg.tag not in _CONTRIB:
        raise UnsupportedPortion(f"unknown portion tag {seg.tag!r}")
    if seg.tag in _NEEDS_Q:
        if seg.q is None:
            raise UnsupportedPortion(f"portion {seg.tag!r} needs a torsion value")
    out = []
    for x in _CONTRIB[seg.tag]:
        if x == "Q-":
            out.append(-seg.q)  # type: ignore[operator]
        elif x == "Q+":
            out.append(seg.q)  # type: ignore[operator]
        else:
            out.append(x)
    return tuple(out)


def extract_plumbing(segments: Sequence[Segment],
                     joining_gleams: Sequence[HalfInteger],
                     open_end: bool = False) -> PlumbingLine:
    """Concatenate per-portion contributions with offset-adjusted joining
    gleams in between.

    len(joining_gleams) == len(segments) - 1.  Each adjusted gleam must be
    an integer; non-integral values or missing tag adjacencies raise
    UnsupportedPortion.  With open_end=True the result is the prefix of a
    longer line (the trailing portion is elsewhere).
    """
    if len(joining_gleams) != len(segments) - 1:
        raise ValueError("need one joining gleam between consecutive portions")
    line: list[int] = []
    for i, seg in enumerate(segments):
        if i > 0:
            left, right = segments[i - 1].tag, seg.tag
            if (left, right) not in _OFFSETS:
                raise UnsupportedPortion(
                    f"adjacency {left!r}-{right!r} is outside the supported vocabulary")
            adjusted = joining_gleams[i - 1] + _OFFSETS[(left, right)]
            if not adjusted.is_integral:
                raise UnsupportedPortion(
                    f"joining gleam {joining_gleams[i - 1]} + offset is not an integer; "
                    "the portion cannot describe a sphere line")
            line.append(adjusted.as_int())
        line.extend(_contribution(seg))
    return PlumbingLine(tuple(line))
