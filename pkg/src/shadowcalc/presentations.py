"""Finite group presentations: deficiency, stabilization, the standard
two-generator families, and the syntactic low-complexity recognizer.

Words are tuples of nonzero signed generator indices (1-based) and are
freely reduced on construction.  Family recognition is purely syntactic
up to generator renaming and destabilization; `unknown` is an honest
answer, not a failure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

Word = tuple[int, ...]


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("generator indices are nonzero")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        for w in self.relators:
            for x in w:
                if not 1 <= abs(x) <= self.generator_count:
                    raise ValueError(f"generator index {x} out of range")

    @classmethod
    def make(cls, generators: int, relators: Sequence[Sequence[int]]) -> "Presentation":
        return cls(generators, tuple(free_reduce(w) for w in relators))

    def to_dict(self) -> dict:
        return {"generators": self.generator_count, "relators": [list(w) for w in self.relators]}


def deficiency(p: Presentation) -> int:
    return p.generator_count - len(p.relators)


def stabilize(p: Presentation, times: int = 1) -> Presentation:
    """Add a new generator g and the two relators g, g; repeatable."""
    g = p.generator_count
    rel = list(p.relators)
    for k in range(times):
        g += 1
        rel += [(g,), (g,)]
    return Presentation(g, tuple(rel))


def _power(letter: int, n: int) -> Word:
    return tuple([letter] * n)


def _alt(a: int, b: int, n: int) -> Word:
    return tuple([a, b] * n)


def family(kind: str, *params: int) -> Presentation:
    """cyclic n | dihedral m (m = 2n even) | von_dyck l m n | coxeter l m n k."""
    if kind == "cyclic":
        (n,) = params
        if n < 1:
            raise ValueError("cyclic parameter must be >= 1")
        return Presentation.make(1, [_power(1, n)])
    if kind == "dihedral":
        (m,) = params
        if m < 2 or m % 2:
            raise ValueError("dihedral parameter is the group order 2n")
        return Presentation.make(2, [_power(1, 2), _power(2, 2), _alt(1, 2, m // 2)])
    if kind in ("von_dyck", "dyck"):
        l, m, n = params
        if min(l, m, n) < 1:
            raise ValueError("parameters must be >= 1")
        return Presentation.make(2, [_power(1, l), _power(2, m), _alt(1, 2, n)])
    if kind == "coxeter":
        l, m, n, k = params
        if min(l, m, n, k) < 1:
            raise ValueError("parameters must be >= 1")
        return Presentation.make(2, [_power(1, l), _power(2, m), _alt(1, 2, n), _alt(1, -2, k)])
    raise ValueError(f"unknown family {kind!r}")


def is_3_smooth(n: int) -> bool:
    """n = 2^a 3^b, by repeated division."""
    if n < 1:
        return False
    while n % 2 == 0:
        n //= 2
    while n % 3 == 0:
        n //= 3
    return n == 1


def _destabilize(p: Presentation) -> Presentation:
    """Strip generators that occur only as a doubled length-1 relator."""
    while True:
        counts: dict[int, list[int]] = {}
        for i, w in enumerate(p.relators):
            for x in w:
                counts.setdefault(abs(x), []).append(i)
        victim = None
        for g in range(1, p.generator_count + 1):
            occ = counts.get(g, [])
            if len(occ) == 2 and all(p.relators[i] in ((g,), (-g,)) for i in occ):
                victim = g
                break
        if victim is None:
            return p
        rel = []
        for w in p.relators:
            if w in ((victim,), (-victim,)):
                continue
            rel.append(tuple(x - (1 if x > victim else 0) if x > 0 else x + (1 if -x > victim else 0)
                             for x in w))
        p = Presentation(p.generator_count - 1, tuple(rel))


def _match_powers(p: Presentation) -> Optional[dict]:
    """Classify the relator shapes of a two-generator candidate.

    Returns {'a': l, 'b': m, 'ab': n, 'ab-': k} exponents (missing keys
    for absent relators) or None when some relator has another shape.
    """
    shape: dict[str, int] = {}

    def classify(w: Word) -> Optional[tuple[str, int]]:
        letters = {abs(x) for x in w}
        if len(letters) == 1:
            g = letters.pop()
            if all(x == w[0] for x in w):
                return (f"g{g}", len(w))
            return None
        if letters == {1, 2} and len(w) % 2 == 0:
            n = len(w) // 2
            if w == _alt(w[0], w[1], n) and abs(w[0]) != abs(w[1]):
                a, b = w[0], w[1]
                if a == 1 and b == 2:
                    return ("ab", n)
                if a == 1 and b == -2:
                    return ("ab-", n)
                if a == 2 and b == 1:
                    return ("ba", n)
                if a == 2 and b == -1:
                    return ("ba-", n)
            return None
        return None

    for w in p.relators:
        c = classify(w)
        if c is None:
            return None
        key, n = c
        if key in shape:
            return None
        shape[key] = n
    return shape


def cstar_upper_bound(p: Presentation) -> str:
    """'0', '1', or 'unknown': a syntactic complexity bound for the
    presentation, invariant under stabilization.

    Zero needs a cyclic 2^k or 3*2^k presentation or a dihedral one of
    2-power order; one needs the cyclic, five-times-cyclic, dihedral,
    triangle or (l,m|n,k) shapes with parameters of the form 2^a 3^b.
    """
    q = _destabilize(p)

    if q.generator_count == 1:
        shapes = _match_powers(q)
        if shapes is None or set(shapes) != {"g1"}:
            return "unknown"
        n = shapes["g1"]
        k = n
        while k % 2 == 0:
            k //= 2
        if k in (1, 3):
            return "0"
        if is_3_smooth(n) or (n % 5 == 0 and is_3_smooth(n // 5)):
            return "1"
        return "unknown"

    if q.generator_count == 2:
        for swap in (False, True):
            cand = _swap_generators(q) if swap else q
            shapes = _match_powers(cand)
            if shapes is None:
                continue
            # normalize (ba)^n to (ab)^n: they are conjugate shapes
            if "ba" in shapes and "ab" not in shapes:
                shapes["ab"] = shapes.pop("ba")
            if "ba-" in shapes and "ab-" not in shapes:
                shapes["ab-"] = shapes.pop("ba-")
            keys = set(shapes)
            if keys == {"g1", "g2", "ab"}:
                l, m, n = shapes["g1"], shapes["g2"], shapes["ab"]
                if {l, m} == {2, 2}:
                    # dihedral of order 2n
                    k = n
                    while k % 2 == 0:
                        k //= 2
                    if k == 1:
                        return "0"
                if all(is_3_smooth(x) for x in (l, m, n)):
                    return "1"
            if keys == {"g1", "g2", "ab", "ab-"}:
                vals = (shapes["g1"], shapes["g2"], shapes["ab"], shapes["ab-"])
                if all(is_3_smooth(x) for x in vals):
                    return "1"
        return "unknown"

    if q.generator_count == 0 and not q.relators:
        return "0"  # trivial presentation: fully stabilized away
    return "unknown"


def _swap_generators(p: Presentation) -> Presentation:
    def sw(x: int) -> int:
        return {1: 2, 2: 1, -1: -2, -2: -1}[x]

    return Presentation(2, tuple(tuple(sw(x) for x in w) for w in p.relators))


def chi_of_boundary_thickening(p: Presentation) -> int:
    """Euler characteristic of the boundary of a 5-dimensional thickening
    of the presentation complex: twice (1 - deficiency)."""
    return 2 * (1 - p.generator_count + len(p.relators))


def presentation_report(p: Presentation) -> dict:
    return {
        "generators": p.generator_count,
        "relators": [list(w) for w in p.relators],
        "deficiency": deficiency(p),
        "chi_boundary": chi_of_boundary_thickening(p),
        "cstar_bound": cstar_upper_bound(p),
    }
