"""Maximal-cusp cross sections and short-slope enumeration.

The flat torus above a boundary curve of length q has vertical generator
(0,2) and horizontal generator (q,0) when the adjacent annulus is even,
(q,1) when odd.  Slopes are classes m*u + n*v up to sign, written n/m so
the vertical fiber is infinity and sections are integers.  All length
comparisons happen on squared values in exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Optional, Union

from .catalog import Parity
from .dehn import Slope


@dataclass(frozen=True)
class CuspLattice:
    u: tuple[Fraction, Fraction]  # horizontal generator
    v: tuple[Fraction, Fraction]  # vertical generator, always (0, 2)

    def vector(self, m: int, n: int) -> tuple[Fraction, Fraction]:
        return (m * self.u[0] + n * self.v[0], m * self.u[1] + n * self.v[1])

    def length_squared(self, m: int, n: int) -> Fraction:
        x, y = self.vector(m, n)
        return x * x + y * y

    def to_dict(self) -> dict:
        return {"u": [str(self.u[0]), str(self.u[1])], "v": [str(self.v[0]), str(self.v[1])]}


def cusp_lattice(length: int, parity: Parity | str) -> CuspLattice:
    """Cusp cross-section lattice for a boundary curve of the given length."""
    if isinstance(parity, str):
        parity = Parity(parity)
    if length < 1:
        raise ValueError("length must be positive")
    if parity is Parity.UNRESOLVED:
        raise ValueError("cusp shape needs a resolved parity")
    if parity is Parity.EVEN:
        u = (Fraction(length), Fraction(0))
    else:
        u = (Fraction(length), Fraction(1))
    return CuspLattice(u=u, v=(Fraction(0), Fraction(2)))


def _slope_of_class(m: int, n: int) -> Slope:
    # vertical fiber (m=0) is infinity; sections (m=+-1) are integers
    return Slope.make(n, m)


@dataclass(frozen=True)
class ShortSlope:
    slope: Slope
    coefficients: tuple[int, int]  # (m, n) with m >= 0
    length_squared: Fraction

    def to_dict(self) -> dict:
        ls = self.length_squared
        return {
            "slope": str(self.slope),
            "class": list(self.coefficients),
            "length_squared": f"{ls.numerator}/{ls.denominator}" if ls.denominator != 1 else str(ls.numerator),
            "length": f"{float(ls) ** 0.5:.6f}",
        }


def short_slopes(lattice: CuspLattice, bound: Union[int, float, Fraction] = 6,
                 bound_squared: Optional[Fraction] = None) -> list[ShortSlope]:
    """All primitive classes of Euclidean length <= bound, one per sign pair.

    Results are sorted by squared length, then by class.  The comparison
    is exact: pass bound_squared for irrational bounds.
    """
    if bound_squared is None:
        b = Fraction(bound)
        if b <= 0:
            raise ValueError("bound must be positive")
        bound_squared = b * b
    out: list[ShortSlope] = []
    # |m * u + n * v|^2 >= (m * u_x)^2, so m is bounded; for each m the
    # vertical component is m*u_y + 2n, bounding n.
    ux, uy = lattice.u
    m_max = isqrt(int(bound_squared // (ux * ux))) + 1
    for m in range(0, m_max + 1):
        if m * m * ux * ux > bound_squared:
            continue
        rest = bound_squared - m * m * ux * ux
        # |m*uy + 2n| <= sqrt(rest)
        lim = isqrt(int(rest)) + 2
        center = -m * uy / 2
        n_lo = int(center) - lim - 1
        n_hi = int(center) + lim + 1
        for n in range(n_lo, n_hi + 1):
            if m == 0 and n != 1:
                continue  # (0,1) represents the vertical class; skip duplicates
            if m > 0 and gcd(m, abs(n)) not in (0, 1):
                continue
            ls = lattice.length_squared(m, n)
            if ls <= bound_squared:
                out.append(ShortSlope(_slope_of_class(m, n), (m, n), ls))
    out.sort(key=lambda s: (s.length_squared, s.coefficients))
    return out


def shortest_levels(lattice: CuspLattice, levels: int = 2,
                    search_bound_squared: Fraction = Fraction(100)) -> list[list[ShortSlope]]:
    """Group the primitive classes by increasing length; return the first levels."""
    found = short_slopes(lattice, bound_squared=search_bound_squared)
    grouped: list[list[ShortSlope]] = []
    for s in found:
        if grouped and grouped[-1][0].length_squared == s.length_squared:
            grouped[-1].append(s)
        elif len(grouped) < levels:
            grouped.append([s])
        else:
            break
    return grouped


def square_cusp_slope_sets(lattice: CuspLattice) -> tuple[list[Slope], list[Slope]]:
    """Shortest and second-shortest slope sets of a square cusp section,
    written in the normalized basis (mu, lambda) = (a shortest class, the
    other shortest class minus mu).

    The cross-section must be a square torus: exactly two shortest and two
    second-shortest classes, the latter the diagonals of the former.
    """
    lv = shortest_levels(lattice, levels=2)
    if len(lv) < 2 or len(lv[0]) != 2 or len(lv[1]) != 2:
        raise ValueError("cusp section is not square")
    if lv[1][0].length_squared != 2 * lv[0][0].length_squared:
        raise ValueError("cusp section is not square")
    e1 = lv[0][0].coefficients
    e2 = lv[0][1].coefficients
    mu = e1
    lam = (e2[0] - e1[0], e2[1] - e1[1])
    det = mu[0] * lam[1] - mu[1] * lam[0]
    if abs(det) != 1:
        raise ValueError("shortest classes do not span the lattice")

    def in_basis(cls: tuple[int, int]) -> Slope:
        # write cls = p*mu + q*lam; slope is p/q
        p = (cls[0] * lam[1] - cls[1] * lam[0]) // det
        q = (mu[0] * cls[1] - mu[1] * cls[0]) // det
        return Slope.make(p, q)

    shortest = [in_basis(s.coefficients) for s in lv[0]]
    second = [in_basis(s.coefficients) for s in lv[1]]
    return shortest, second
