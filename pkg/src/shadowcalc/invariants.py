"""Homological invariants of the 4-dimensional thickening of a decorated
graph: second-homology lattice, intersection form, and spin detection.

Integral cycles are integer region weights that cancel along every
singular edge; weights of odd or non-orientable regions are forced to
zero.  The mod-2 cycle space keeps all regions.
"""
from __future__ import annotations

from typing import Optional

from .catalog import Catalog, Parity, get_catalog
from .graph import DecoratedGraph
from .linalg import IntMatrix, form_summary, kernel_basis, QuadraticFormSummary
from .regions import Region, reconstruct_regions, singular_edge_slots


class UnresolvedDataError(ValueError):
    """Catalog data needed for this computation is not resolved."""


def h2_lattice(g: DecoratedGraph, regions: Optional[list[Region]] = None,
               catalog: Optional[Catalog] = None) -> tuple[IntMatrix, list[Region]]:
    """Basis of the integral cycle lattice as region-weight row vectors.

    Returns (basis matrix, region list in column order).  Raises
    UnresolvedDataError when a region parity or a signed traversal count
    is missing from the catalog.
    """
    cat = catalog or get_catalog()
    regs = regions if regions is not None else reconstruct_regions(g, cat)
    slots = singular_edge_slots(g, cat)

    incidence = [[0] * len(regs) for _ in range(len(slots))]
    forced: list[list[int]] = []
    for k, r in enumerate(regs):
        if r.parity is Parity.UNRESOLVED:
            raise UnresolvedDataError(f"region {r.id}: parity unresolved in catalog")
        if r.parity is Parity.ODD or not r.orientable:
            unit = [0] * len(regs)
            unit[k] = 1
            forced.append(unit)  # weight forced to zero
            continue
        if r.incidence is None:
            raise UnresolvedDataError(
                f"region {r.id}: signed traversal data unresolved in catalog")
        for j in range(len(slots)):
            incidence[j][k] = r.incidence[j]

    constraints = incidence + forced
    if not constraints:
        basis = [tuple(1 if i == j else 0 for j in range(len(regs))) for i in range(len(regs))]
    else:
        basis = kernel_basis(IntMatrix.from_rows(constraints))
    return (IntMatrix.from_rows(basis) if basis else IntMatrix.zero(0, len(regs))), regs


def intersection_form(g: DecoratedGraph, lattice: Optional[IntMatrix] = None,
                      regions: Optional[list[Region]] = None,
                      catalog: Optional[Catalog] = None) -> QuadraticFormSummary:
    """Symmetric pairing on the cycle lattice: sum of a_k b_k gl(f_k).

    Requires every region carrying a nonzero basis weight to have an
    integral gleam.
    """
    cat = catalog or get_catalog()
    if lattice is None:
        lattice, regions = h2_lattice(g, regions, cat)
    assert regions is not None
    gleams = []
    for k, r in enumerate(regions):
        used = any(lattice.data[i][k] for i in range(lattice.rows))
        if used and not r.gleam.is_integral:
            raise ValueError(f"region {r.id} has non-integral gleam {r.gleam}; "
                             "parity data is inconsistent")
        gleams.append(r.gleam.as_int() if r.gleam.is_integral else 0)
    n = lattice.rows
    gram = [[sum(lattice.data[i][k] * lattice.data[j][k] * gleams[k]
                 for k in range(lattice.cols)) for j in range(n)] for i in range(n)]
    return form_summary(IntMatrix.from_rows(gram) if n else IntMatrix.zero(0, 0))


def is_spin(g: DecoratedGraph, regions: Optional[list[Region]] = None,
            catalog: Optional[Catalog] = None) -> str:
    """'spin', 'not_spin', or 'indeterminate'.

    Evaluates the gleam functional on a basis of the mod-2 cycle space;
    the thickening is spin exactly when every value is even.
    """
    cat = catalog or get_catalog()
    regs = regions if regions is not None else reconstruct_regions(g, cat)
    slots = singular_edge_slots(g, cat)

    for r in regs:
        if r.mod2_incidence is None:
            return "indeterminate"

    # mod-2 kernel of the edge-by-region incidence matrix
    mat = [[r.mod2_incidence[j] % 2 for r in regs] for j in range(len(slots))]
    basis = _gf2_kernel(mat, len(regs))

    for cycle in basis:
        support = [regs[k] for k in range(len(regs)) if cycle[k]]
        if any(r.parity is Parity.UNRESOLVED for r in support):
            return "indeterminate"
        twice = sum(r.gleam.twice for r in support)
        if twice % 2 != 0:
            raise ValueError("gleam sum over a closed surface is not an integer; "
                             "decoration violates the parity rule")
        if (twice // 2) % 2 != 0:
            return "not_spin"
    return "spin"


def _gf2_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    m = [row[:] for row in rows]
    pivots: dict[int, int] = {}
    r = 0
    for j in range(ncols):
        sel = next((i for i in range(r, len(m)) if m[i][j]), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        for i in range(len(m)):
            if i != r and m[i][j]:
                m[i] = [(x + y) % 2 for x, y in zip(m[i], m[r])]
        pivots[j] = r
        r += 1
    basis = []
    free = [j for j in range(ncols) if j not in pivots]
    for j in free:
        vec = [0] * ncols
        vec[j] = 1
        for pj, pi in pivots.items():
            if m[pi][j]:
                vec[pj] = 1
        basis.append(vec)
    return basis


def invariants_report(g: DecoratedGraph, catalog: Optional[Catalog] = None) -> dict:
    """Rank, torsion, signature, form parity and spin status in one dict."""
    cat = catalog or get_catalog()
    regs = reconstruct_regions(g, cat)
    lattice, _ = h2_lattice(g, regs, cat)
    form = intersection_form(g, lattice, regs, cat)
    return {
        "rank": lattice.rows,
        "torsion": [],
        "signature": form.signature,
        "parity": form.parity,
        "spin": is_spin(g, regs, cat),
        "matrix": form.matrix.to_lists(),
    }
