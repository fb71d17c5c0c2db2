"""Linear plumbing lines and their boundary 3-manifolds.

A line (e1,...,en) of framed spheres bounds a lens-type 3-manifold whose
first-homology order is the determinant of the tridiagonal matrix with
diagonal e1..en and off-diagonal 1.  Four length-decreasing moves (zero
absorption, end zero drop, interior and end blow-down, each in both
signs, ends symmetric under reversal) preserve that determinant up to
sign; the reducer applies them greedily.  A stuck nonempty line other
than (0) has all entries of absolute value >= 2 and therefore determinant
of absolute value >= 2, so the verdict map is exact:

    empty line -> S3, single (0) -> S2xS1, anything stuck -> Other.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional


class InvariantBreach(AssertionError):
    """A reduction reached a state contradicting the determinant oracle."""


@dataclass(frozen=True)
class PlumbingLine:
    entries: tuple[int, ...]

    @classmethod
    def of(cls, *entries: int) -> "PlumbingLine":
        return cls(tuple(int(e) for e in entries))

    @classmethod
    def parse(cls, text: str) -> "PlumbingLine":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(tok) for tok in text.replace(",", " ").split()))

    def __len__(self) -> int:
        return len(self.entries)

    def reversed(self) -> "PlumbingLine":
        return PlumbingLine(self.entries[::-1])

    def negated(self) -> "PlumbingLine":
        return PlumbingLine(tuple(-e for e in self.entries))

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"


def plumbing_det(line: PlumbingLine | Iterable[int]) -> int:
    """Determinant of the tridiagonal matrix diag(e1..en), off-diagonal 1.

    Empty line gives 1.  The absolute value is the first-homology order
    of the plumbed boundary (0 meaning infinite).
    """
    entries = line.entries if isinstance(line, PlumbingLine) else tuple(line)
    prev2, prev1 = 0, 1  # D_{-1}, D_0
    for e in entries:
        prev2, prev1 = prev1, e * prev1 - prev2
    return prev1


@dataclass(frozen=True)
class Move:
    kind: str  # absorb0 | drop0 | blowdown | blowdown_end
    site: int

    def __str__(self) -> str:
        return f"{self.kind}@{self.site}"


def applicable_moves(line: PlumbingLine) -> list[Move]:
    """All applicable (move, site) pairs, end moves first, then leftmost."""
    e = line.entries
    n = len(e)
    moves: list[Move] = []
    if n >= 2 and e[0] == 0:
        moves.append(Move("drop0", 0))
    if n >= 2 and e[-1] == 0:
        moves.append(Move("drop0", n - 1))
    if n >= 1 and abs(e[0]) == 1:
        moves.append(Move("blowdown_end", 0))
    if n >= 2 and abs(e[-1]) == 1:
        moves.append(Move("blowdown_end", n - 1))
    for i in range(1, n - 1):
        if e[i] == 0:
            moves.append(Move("absorb0", i))
    for i in range(1, n - 1):
        if abs(e[i]) == 1:
            moves.append(Move("blowdown", i))
    return moves


def apply_plumbing_move(line: PlumbingLine, site: int, kind: str) -> PlumbingLine:
    """Apply one move at a site; raises ValueError when inapplicable."""
    e = list(line.entries)
    n = len(e)
    if kind == "absorb0":
        if not (1 <= site <= n - 2) or e[site] != 0:
            raise ValueError(f"absorb0 inapplicable at {site} in {line}")
        merged = e[site - 1] + e[site + 1]
        return PlumbingLine(tuple(e[: site - 1] + [merged] + e[site + 2:]))
    if kind == "drop0":
        if site == 0 and n >= 2 and e[0] == 0:
            return PlumbingLine(tuple(e[2:]))
        if site == n - 1 and n >= 2 and e[-1] == 0:
            return PlumbingLine(tuple(e[:-2]))
        raise ValueError(f"drop0 inapplicable at {site} in {line}")
    if kind == "blowdown_end":
        if site == 0 and n >= 1 and abs(e[0]) == 1:
            rest = e[1:]
            if rest:
                rest[0] -= e[0]
            return PlumbingLine(tuple(rest))
        if site == n - 1 and n >= 2 and abs(e[-1]) == 1:
            rest = e[:-1]
            rest[-1] -= e[-1]
            return PlumbingLine(tuple(rest))
        raise ValueError(f"blowdown_end inapplicable at {site} in {line}")
    if kind == "blowdown":
        if not (1 <= site <= n - 2) or abs(e[site]) != 1:
            raise ValueError(f"blowdown inapplicable at {site} in {line}")
        s = e[site]
        return PlumbingLine(tuple(e[: site - 1] + [e[site - 1] - s, e[site + 1] - s] + e[site + 2:]))
    raise ValueError(f"unknown move {kind!r}")


@dataclass(frozen=True)
class BoundaryVerdict:
    tag: str  # S3 | S2xS1 | Other
    det: int
    trace: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"verdict": self.tag, "det": self.det, "trace": list(self.trace)}


def reduce_plumbing(line: PlumbingLine) -> BoundaryVerdict:
    """Greedy full reduction with a deterministic move order.

    The verdict is cross-checked against the determinant; disagreement
    raises InvariantBreach.
    """
    det0 = plumbing_det(line)
    current = line
    trace: list[str] = []
    while True:
        e = current.entries
        if len(e) == 0 or (len(e) == 1 and e[0] == 0):
            break
        moves = applicable_moves(current)
        if not moves:
            break
        mv = moves[0]
        current = apply_plumbing_move(current, mv.site, mv.kind)
        trace.append(f"{mv.kind}@{mv.site}->{current}")

    e = current.entries
    if len(e) == 0:
        tag = "S3"
    elif len(e) == 1 and e[0] == 0:
        tag = "S2xS1"
    else:
        tag = "Other"

    if tag == "S3" and abs(det0) != 1:
        raise InvariantBreach(f"{line} reduced to S3 but det={det0}")
    if tag == "S2xS1" and det0 != 0:
        raise InvariantBreach(f"{line} reduced to S2xS1 but det={det0}")
    if tag == "Other" and abs(det0) <= 1:
        raise InvariantBreach(f"{line} stuck at {current} with det={det0}")
    return BoundaryVerdict(tag, det0, tuple(trace))


@dataclass(frozen=True)
class LemmaMatch:
    case: int  # 1..5
    symmetry: str  # identity | negate | reverse | reverse+negate
    site: int

    def to_dict(self) -> dict:
        return {"case": self.case, "symmetry": self.symmetry, "site": self.site}


_SYMMETRIES = (
    ("identity", lambda l: l),
    ("negate", lambda l: l.negated()),
    ("reverse", lambda l: l.reversed()),
    ("reverse+negate", lambda l: l.reversed().negated()),
)


def _case_of(e: tuple[int, ...]) -> Optional[tuple[int, int]]:
    n = len(e)
    if n == 0:
        return None
    if e[0] == 0:
        return (1, 0)
    if e[0] == 1 and n == 1:
        return (2, 0)
    if e[0] == 1 and n >= 2 and e[1] in (0, 1, 2, 3):
        return (3, 0)
    for i in range(1, n - 1):
        if e[i] == 0 and e[i - 1] * e[i + 1] <= 0:
            return (4, i)
    for i in range(1, n - 1):
        if e[i] == 1 and e[i - 1] in (0, 1, 2, 3) and e[i + 1] >= 0:
            return (5, i)
    return None


def lemma_case(line: PlumbingLine) -> Optional[LemmaMatch]:
    """First matching closure case, trying the four line symmetries in order."""
    for name, transform in _SYMMETRIES:
        hit = _case_of(transform(line).entries)
        if hit is not None:
            return LemmaMatch(hit[0], name, hit[1])
    return None
