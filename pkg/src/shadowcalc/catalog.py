"""Piece and block catalog: the closed vocabulary of vertex kinds, their
port data, and the generating block sets.

The catalog is loaded from a YAML data file (see data/catalog.yaml); the
environment variable SHADOWCALC_CATALOG overrides the path.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Optional, Union

import yaml


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    UNRESOLVED = "unresolved"

    def xor(self, other: "Parity") -> "Parity":
        if Parity.UNRESOLVED in (self, other):
            return Parity.UNRESOLVED
        return Parity.ODD if (self is Parity.ODD) != (other is Parity.ODD) else Parity.EVEN


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class SeifertDescriptor:
    base: str  # D, A, P or T
    fibers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.base not in ("D", "A", "P", "T"):
            raise CatalogError(f"bad Seifert base {self.base!r}")
        for mult, _ in self.fibers:
            if mult < 2:
                raise CatalogError("Seifert multiplicities must be >= 2")

    def __str__(self) -> str:
        if not self.fibers:
            return f"{self.base}xS1"
        inner = ",".join(f"({m},{w})" for m, w in self.fibers)
        return f"({self.base},{inner})"


@dataclass(frozen=True)
class Hyperbolic:
    index: int  # 1..11

    def __str__(self) -> str:
        return f"W{self.index}"


@dataclass(frozen=True)
class SolidTorus:
    def __str__(self) -> str:
        return "solid torus"


FiberManifold = Union[SeifertDescriptor, Hyperbolic, SolidTorus, None]


@dataclass(frozen=True)
class PieceRegionSpec:
    """One region of a catalog piece.

    traversals: per singular edge of the piece, how many times the region
    runs over it (None when the split is not pinned down).  signed: the
    net signed count for an orientation of the region, None when unknown.
    """

    ports: tuple[int, ...]
    parity: Parity
    orientable: bool
    traversals: Optional[tuple[int, ...]]
    signed: Optional[tuple[int, ...]]


@dataclass(frozen=True)
class PieceCatalogEntry:
    kind: str
    port_count: int
    port_lengths: tuple[int, ...]
    port_parities: tuple[Parity, ...]
    vertex_count: int
    singular_edges: int
    regions: tuple[PieceRegionSpec, ...]
    fiber_manifold: FiberManifold
    block: Optional[str]
    internal: bool = False

    def region_of_port(self, port: int) -> int:
        for i, spec in enumerate(self.regions):
            if port in spec.ports:
                return i
        raise CatalogError(f"{self.kind} has no region for port {port}")


@dataclass(frozen=True)
class BlockEntry:
    name: str
    boundary_components: int
    chi: int
    sigma: int
    mirrorable: bool
    origin: str
    alias_of: Optional[str] = None


@dataclass
class Catalog:
    pieces: dict[str, PieceCatalogEntry]
    blocks: dict[str, BlockEntry]
    block_sets: dict[str, tuple[str, ...]]
    x12_portion: Optional[dict] = None
    source: str = "<builtin>"

    def piece(self, kind: str) -> PieceCatalogEntry:
        try:
            return self.pieces[kind]
        except KeyError:
            raise CatalogError(f"unknown piece kind {kind!r}") from None

    def vertex_kinds(self) -> tuple[str, ...]:
        return tuple(k for k, p in self.pieces.items() if not p.internal)

    def resolve_block(self, name: str) -> BlockEntry:
        entry = self.blocks.get(name)
        if entry is None:
            raise CatalogError(f"unknown block {name!r}")
        return entry

    def canonical_block_name(self, name: str) -> str:
        entry = self.resolve_block(name)
        return entry.alias_of or name


def _parse_fiber(raw) -> FiberManifold:
    if raw is None:
        return None
    if raw == "solid_torus":
        return SolidTorus()
    if isinstance(raw, dict) and "seifert" in raw:
        s = raw["seifert"]
        return SeifertDescriptor(s["base"], tuple((int(a), int(b)) for a, b in s.get("fibers", [])))
    if isinstance(raw, dict) and "hyperbolic" in raw:
        return Hyperbolic(int(raw["hyperbolic"]))
    raise CatalogError(f"bad fiber descriptor {raw!r}")


def _parse_piece(kind: str, raw: dict) -> PieceCatalogEntry:
    ports = int(raw["ports"])
    lengths = tuple(int(x) for x in raw["lengths"])
    regions = []
    for r in raw.get("regions", []):
        regions.append(
            PieceRegionSpec(
                ports=tuple(int(p) for p in r["ports"]),
                parity=Parity(r["parity"]),
                orientable=bool(r["orientable"]),
                traversals=None if r.get("traversals") is None else tuple(int(t) for t in r["traversals"]),
                signed=None if r.get("signed") is None else tuple(int(t) for t in r["signed"]),
            )
        )
    entry = PieceCatalogEntry(
        kind=kind,
        port_count=ports,
        port_lengths=lengths,
        port_parities=tuple(
            next((r.parity for r in regions if p in r.ports), Parity.EVEN) for p in range(ports)
        ),
        vertex_count=int(raw["vertex_count"]),
        singular_edges=int(raw["singular_edges"]),
        regions=tuple(regions),
        fiber_manifold=_parse_fiber(raw.get("fiber")),
        block=raw.get("block"),
        internal=bool(raw.get("internal", False)),
    )
    _check_piece(entry)
    return entry


def _check_piece(p: PieceCatalogEntry) -> None:
    if p.internal:
        return
    if len(p.port_lengths) != p.port_count:
        raise CatalogError(f"{p.kind}: length list does not match port count")
    if p.kind.startswith("X"):
        if not 1 <= p.port_count <= 4:
            raise CatalogError(f"{p.kind}: 8-shape pieces carry 1 to 4 ports")
        if sum(p.port_lengths) != 6:
            raise CatalogError(f"{p.kind}: port lengths must sum to 6")
        if p.vertex_count != 1:
            raise CatalogError(f"{p.kind}: 8-shape pieces have one true vertex")
    elif p.vertex_count != 0:
        raise CatalogError(f"{p.kind}: unexpected true vertex")
    seen: set[int] = set()
    for spec in p.regions:
        for port in spec.ports:
            if port in seen or not 0 <= port < p.port_count:
                raise CatalogError(f"{p.kind}: bad region port layout")
            seen.add(port)
        if spec.traversals is not None:
            if len(spec.traversals) != p.singular_edges:
                raise CatalogError(f"{p.kind}: traversal arity mismatch")
            if (p.singular_edges and len(spec.ports) == 1
                    and sum(spec.traversals) != p.port_lengths[spec.ports[0]]):
                raise CatalogError(f"{p.kind}: traversals contradict port length")
        if spec.signed is not None and spec.traversals is None:
            raise CatalogError(f"{p.kind}: signed data without traversal data")
    if p.kind != "B" and seen != set(range(p.port_count)):
        raise CatalogError(f"{p.kind}: every port needs a region")


def load_catalog(path: Optional[str] = None) -> Catalog:
    """Load the catalog from `path`, SHADOWCALC_CATALOG, or the built-in data."""
    if path is None:
        path = os.environ.get("SHADOWCALC_CATALOG")
    if path is None:
        with resources.files("shadowcalc.data").joinpath("catalog.yaml").open("r") as fh:
            raw = yaml.safe_load(fh)
        source = "<builtin>"
    else:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
        source = path

    pieces = {kind: _parse_piece(kind, spec) for kind, spec in raw["pieces"].items()}
    blocks = {}
    for name, spec in raw["blocks"].items():
        blocks[name] = BlockEntry(
            name=name,
            boundary_components=int(spec["boundaries"]),
            chi=int(spec["chi"]),
            sigma=int(spec["sigma"]),
            mirrorable=bool(spec["mirrorable"]),
            origin=str(spec.get("origin", "")),
            alias_of=spec.get("alias_of"),
        )
    block_sets = {k: tuple(v) for k, v in raw["block_sets"].items()}
    for set_name, names in block_sets.items():
        for n in names:
            if n not in blocks:
                raise CatalogError(f"block set {set_name} references unknown block {n}")
    for b in blocks.values():
        if b.sigma != 0:
            raise CatalogError(f"{b.name}: catalog blocks have vanishing signature")
        if b.alias_of is not None:
            tgt = blocks.get(b.alias_of)
            if tgt is None or tgt.boundary_components != b.boundary_components or tgt.chi != b.chi:
                raise CatalogError(f"{b.name}: inconsistent alias")
    return Catalog(pieces=pieces, blocks=blocks, block_sets=block_sets,
                   x12_portion=raw.get("x12_portion"), source=source)


_default: Optional[Catalog] = None


def get_catalog() -> Catalog:
    global _default
    if _default is None:
        _default = load_catalog()
    return _default


def set_catalog(catalog: Optional[Catalog]) -> None:
    """Install `catalog` as the process default (None restores the built-in)."""
    global _default
    _default = catalog
