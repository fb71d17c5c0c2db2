"""Dehn fillings of the eleven cusped hyperbolic pieces.

First homology of fillings comes from explicit presentation matrices
(pieces 3-7 and 9); the question of when a filling is a connected sum of
copies of S2 x S1 is answered by per-piece slope predicates.  For pieces
1-8 the predicates are exact; for 9-11 only the forward direction is
known, so a positive answer means "not excluded".

Slopes are unoriented: p/q with gcd(p,q)=1 and q >= 0, infinity = 1/0.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .linalg import H1Group, IntMatrix, cokernel

CUSP_COUNT = {1: 1, 2: 1, 3: 2, 4: 2, 5: 2, 6: 2, 7: 2, 8: 3, 9: 3, 10: 3, 11: 4}

# Boundary-curve lengths of the fibering piece under each cusp, in the
# order slopes are passed.
CUSP_LENGTHS = {1: (6,), 2: (6,), 3: (1, 5), 4: (1, 5), 5: (1, 5), 6: (2, 4),
                7: (3, 3), 8: (1, 1, 4), 9: (1, 1, 4), 10: (1, 2, 3), 11: (1, 1, 2, 2)}


@dataclass(frozen=True)
class Slope:
    p: int
    q: int

    def __post_init__(self):
        if self.q < 0 or (self.q == 0 and self.p != 1) or gcd(self.p, self.q) != 1:
            raise ValueError(f"slope ({self.p},{self.q}) is not normalized")

    @classmethod
    def make(cls, p: int, q: int) -> "Slope":
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0:
            p, q = -p, -q
        if q == 0:
            p = 1
        return cls(p, q)

    @classmethod
    def infinity(cls) -> "Slope":
        return cls(1, 0)

    @classmethod
    def integer(cls, n: int) -> "Slope":
        return cls(n, 1)

    @classmethod
    def parse(cls, token: str) -> "Slope":
        token = token.strip()
        if token in ("inf", "infty", "infinity", "1/0"):
            return cls.infinity()
        if "/" in token:
            ps, qs = token.split("/", 1)
            return cls.make(int(ps), int(qs))
        return cls.integer(int(token))

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    @property
    def is_integer(self) -> bool:
        return self.q == 1

    @property
    def is_one_over_integer(self) -> bool:
        """Slopes 1/m including m=0 (infinity)."""
        return abs(self.p) == 1

    def __str__(self) -> str:
        if self.is_infinity:
            return "inf"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"

    def negated_reciprocal(self) -> "Slope":
        """-1/s, the slam-dunk change of coefficient."""
        return Slope.make(-self.q, self.p)


def parse_slopes(text: str) -> list[Slope]:
    return [Slope.parse(tok) for tok in text.split(",") if tok.strip()]


def _check_arity(w: int, slopes: Sequence[Slope]) -> None:
    if w not in CUSP_COUNT:
        raise ValueError(f"piece index {w} out of range 1..11")
    if len(slopes) != CUSP_COUNT[w]:
        raise ValueError(f"W{w} has {CUSP_COUNT[w]} cusps, got {len(slopes)} slopes")


def presentation_matrix(w: int, slopes: Sequence[Slope]) -> IntMatrix:
    """Integer presentation matrix of H1 of the filling (pieces 3-7, 9)."""
    _check_arity(w, slopes)
    if w in (3, 4):
        (_, q1), (_, q2) = ((s.p, s.q) for s in slopes)
        return IntMatrix.from_rows([[q1, 0], [0, q2]])
    if w == 5:
        (p1, q1), (p2, q2) = ((s.p, s.q) for s in slopes)
        return IntMatrix.from_rows([
            [p1, 0, 1, 0],
            [0, p2, 0, 3],
            [q1, 0, 0, 0],
            [0, 3 * q2, 0, 0],
        ])
    if w == 6:
        (p1, q1), (p2, q2) = ((s.p, s.q) for s in slopes)
        return IntMatrix.from_rows([
            [p1, 0, -1, 1],
            [0, p2, 2, 2],
            [-q1, 2 * q2, 0, 0],
            [q1, 2 * q2, 0, 0],
        ])
    if w == 7:
        (p1, q1), (p2, q2) = ((s.p, s.q) for s in slopes)
        return IntMatrix.from_rows([
            [p1, -q2, 1, 2],
            [-q1, p2, 2, -1],
            [q1, 2 * q2, 0, 0],
            [2 * q1, -q2, 0, 0],
        ])
    if w == 9:
        (p1, q1), (q2,), (p3, q3) = (slopes[0].p, slopes[0].q), (slopes[1].q,), (slopes[2].p, slopes[2].q)
        return IntMatrix.from_rows([
            [q1, 0, 2 * q3],
            [0, q2, 0],
            [-2 * p1, 0, p3],
        ])
    raise ValueError(f"no homology presentation matrix for W{w}")


def h1_filling(w: int, slopes: Sequence[Slope]) -> H1Group:
    """First homology of the filling, in Smith normal form."""
    return cokernel(presentation_matrix(w, slopes))


@dataclass(frozen=True)
class FillingVerdict:
    yields: bool
    h: Optional[int]
    rule: str
    definitive: bool  # False for pieces where only necessity is known

    def __post_init__(self):
        if not self.yields and self.h is not None:
            raise ValueError("h only accompanies a positive verdict")

    def to_dict(self) -> dict:
        return {"yields": self.yields, "h": self.h, "rule": self.rule,
                "definitive": self.definitive}


def _no(rule: str, definitive: bool = True) -> FillingVerdict:
    return FillingVerdict(False, None, rule, definitive)


def _yes(rule: str, h: Optional[int], definitive: bool = True) -> FillingVerdict:
    return FillingVerdict(True, h, rule, definitive)


def filling_yields(w: int, slopes: Sequence[Slope]) -> FillingVerdict:
    """Does the filling give a connected sum of h copies of S2 x S1?

    Exact for w in 1..8; for w in 9..11 a negative answer is definitive
    while a positive one only means the necessary conditions hold.
    """
    _check_arity(w, slopes)
    if w in (1, 2):
        (a,) = slopes
        if a.is_infinity:
            return _yes(f"w{w}.1", 2)
        return _no(f"w{w}.none")
    if w in (3, 4):
        a, b = slopes
        if a.is_infinity and b.is_infinity:
            return _yes(f"w{w}.1", 2)
        if a.is_integer and b.is_infinity:
            return _yes(f"w{w}.2", 1)
        if a == Slope.integer(0) and b.is_integer:
            return _yes(f"w{w}.3", 0)
        return _no(f"w{w}.none")
    if w in (5, 6):
        a, b = slopes
        if a.is_infinity and b.is_infinity:
            return _yes(f"w{w}.1", 2)
        if a.is_integer and b.is_infinity:
            return _yes(f"w{w}.2", 1)
        return _no(f"w{w}.none")
    if w == 7:
        a, b = slopes
        if a.is_infinity and b.is_infinity:
            return _yes("w7.1", 2)
        if a.is_integer and b.is_infinity:
            return _yes("w7.2", 1)
        if a.is_infinity and b.is_integer:
            return _yes("w7.3", 1)
        return _no("w7.none")
    if w == 8:
        a, b, c = slopes
        zero = Slope.integer(0)
        for x, y, tag in ((a, b, ""), (b, a, "~swap")):
            if x.is_infinity and y.is_infinity and c.is_infinity:
                return _yes("w8.1" + tag, 2)
            if x == zero and y.is_infinity and c == zero:
                return _yes("w8.2" + tag, 2)
            if x == zero and y.is_integer and c == zero:
                return _yes("w8.3" + tag, 1)
            if x == zero and y.is_infinity and c.is_one_over_integer and not c.is_infinity:
                return _yes("w8.4" + tag, 1)
            if x.is_integer and y.is_infinity and c.is_infinity:
                return _yes("w8.5" + tag, 1)
            if x == zero and y.is_integer and c.is_one_over_integer and not c.is_infinity:
                return _yes("w8.6" + tag, 0)
            if x.is_integer and y.is_integer and c.is_infinity:
                return _yes("w8.7" + tag, 0)
        return _no("w8.none")
    if w == 9:
        a, b, c = slopes
        zero = Slope.integer(0)
        if a == zero and b.is_integer and c == zero:
            return _yes("w9.1", 1, definitive=False)
        if a.is_infinity and b.is_integer and c.is_infinity:
            return _yes("w9.2", 1, definitive=False)
        if a == zero and b.is_integer and c.is_one_over_integer and not c.is_infinity:
            return _yes("w9.3", 0, definitive=False)
        if a.is_integer and b.is_integer and c.is_infinity:
            return _yes("w9.4", 0, definitive=False)
        if b.is_infinity:
            return _yes("w9.5", None, definitive=False)
        return _no("w9.none")
    if w == 10:
        a, b, c = slopes
        inf = Slope.infinity()
        cond = (a in (inf, Slope.integer(0), Slope.make(1, 2), Slope.integer(1))
                or b in (inf, Slope.integer(-1), Slope.integer(0))
                or c in (inf, Slope.integer(-3), Slope.integer(-2)))
        if not cond:
            return _no("w10.none")
        if a.is_infinity:
            ok = (b.is_infinity and c.is_integer) or (b.is_integer and c.is_infinity)
            if not ok:
                return _no("w10.alpha-inf")
        if b.is_infinity:
            ok = (a.is_infinity and c.is_integer) or (a.is_integer and c.is_infinity)
            if not ok:
                return _no("w10.beta-inf")
        return _yes("w10.necessary", None, definitive=False)
    if w == 11:
        a, b, c, d = slopes
        inf = Slope.infinity()
        small = (inf, Slope.integer(-1), Slope.make(-1, 2), Slope.integer(0))
        big = (inf, Slope.integer(0), Slope.integer(1), Slope.integer(2))
        cond = a in small or b in small or c in big or d in big
        if not cond:
            return _no("w11.none")
        if a.is_infinity:
            ok = (c.is_integer or d.is_integer
                  or b in (Slope.integer(-1), Slope.integer(0))
                  or (c.is_infinity and d.is_infinity))
            if not ok:
                return _no("w11.alpha-inf")
        if c.is_infinity:
            ok = (a.is_integer or a.is_infinity or b.is_integer or b.is_infinity
                  or d.is_integer or d.is_infinity)
            if not ok:
                return _no("w11.gamma-inf")
        return _yes("w11.necessary", None, definitive=False)
    raise ValueError(f"piece index {w} out of range")


def borromean_surgery_yields(slopes: Sequence[Slope]) -> FillingVerdict:
    """Surgery on the three-component Borromean link, full symmetry.

    The three positive families are (inf,0,0) with h=2, (inf,1/m,0) with
    h=1, and (inf,1/m,1/n) with h=0; everything else is excluded.
    """
    if len(slopes) != 3:
        raise ValueError("three surgery coefficients required")
    zero = Slope.integer(0)
    from itertools import permutations

    for perm in permutations(slopes):
        a, b, c = perm
        if a.is_infinity and b == zero and c == zero:
            return _yes("borromean.1", 2)
    for perm in permutations(slopes):
        a, b, c = perm
        if a.is_infinity and b.is_one_over_integer and c == zero:
            return _yes("borromean.2", 1)
    for perm in permutations(slopes):
        a, b, c = perm
        if a.is_infinity and b.is_one_over_integer and c.is_one_over_integer:
            return _yes("borromean.3", 0)
    return _no("borromean.none")


def filling_report(w: int, slopes: Sequence[Slope]) -> dict:
    verdict = filling_yields(w, slopes)
    out = {"w": w, "slopes": [str(s) for s in slopes], "verdict": verdict.to_dict()}
    if w in (3, 4, 5, 6, 7, 9):
        out["h1"] = h1_filling(w, slopes).to_dict()
    else:
        out["h1"] = None
    return out
