"""Exact integer matrices, Smith normal form, and quadratic-form data.

Everything runs over Python integers and Fractions; no floating point.
Setting VERIFY_TRANSFORMS = True re-multiplies the Smith transforms on
every call (test mode).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

VERIFY_TRANSFORMS = False


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(data)
        m = len(data[0]) if data else 0
        if any(len(r) != m for r in data):
            raise ValueError("ragged matrix")
        return cls(n, m, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.data[ij[0]][ij[1]]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def transpose(self) -> "IntMatrix":
        if not self.rows:
            return IntMatrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return IntMatrix.from_rows(list(zip(*self.data)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = list(zip(*other.data)) if other.data else [()] * other.cols
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.data]
        )

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == self.data[j][i] for i in range(self.rows) for j in range(i)
        )

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]


def det_exact(m: IntMatrix) -> int:
    """Fraction-free Bareiss determinant."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(r) for r in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def det_bruteforce(m: IntMatrix) -> int:
    """Permutation-expansion determinant; independent oracle for small sizes."""
    if m.rows != m.cols:
        raise ValueError("square only")
    n = m.rows
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j, cycle = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                cycle += 1
            if cycle % 2 == 0:
                sign = -sign
        prod = 1
        for i in range(n):
            prod *= m.data[i][perm[i]]
        total += sign * prod
    return total


@dataclass(frozen=True)
class H1Group:
    """Finitely generated abelian group in Smith form."""

    rank: int
    torsion: tuple[int, ...]  # each >= 2, each dividing the next

    def __post_init__(self):
        for i, t in enumerate(self.torsion):
            if t < 2:
                raise ValueError("torsion orders are >= 2")
            if i and self.torsion[i] % self.torsion[i - 1] != 0:
                raise ValueError("torsion must form a divisibility chain")

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class SmithResult:
    d: IntMatrix
    u: IntMatrix  # row transform, u @ m @ v == d
    v: IntMatrix
    diagonal: tuple[int, ...]

    def cokernel(self) -> H1Group:
        rank = self.d.rows - sum(1 for x in self.diagonal if x != 0)
        torsion = tuple(x for x in self.diagonal if x not in (0, 1))
        return H1Group(rank, torsion)

    def kernel_basis(self) -> list[tuple[int, ...]]:
        """Integer basis (columns of v past the nonzero diagonal) of ker(m)."""
        r = sum(1 for x in self.diagonal if x != 0)
        vt = self.v.transpose()
        return [vt.row(j) for j in range(r, self.d.cols)]


def smith_normal_form(m: IntMatrix, verify: bool | None = None) -> SmithResult:
    """Diagonalize over Z with unimodular row/column transforms.

    Pivot choice: smallest nonzero absolute value, scanning rows then
    columns, so runs are reproducible.
    """
    a = [list(r) for r in m.data]
    n, c = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def diagonalize() -> int:
        t = 0
        while t < min(n, c):
            pivot = None
            best = None
            for i in range(t, n):
                for j in range(t, c):
                    x = abs(a[i][j])
                    if x and (best is None or x < best):
                        best, pivot = x, (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            while True:
                done = True
                for i in range(t + 1, n):
                    if a[i][t]:
                        q = a[i][t] // a[t][t]
                        addmul_row(i, t, -q)
                        if a[i][t]:
                            swap_rows(t, i)
                            done = False
                for j in range(t + 1, c):
                    if a[t][j]:
                        q = a[t][j] // a[t][t]
                        addmul_col(j, t, -q)
                        if a[t][j]:
                            swap_cols(t, j)
                            done = False
                if done:
                    break
            if a[t][t] < 0:
                negate_row(t)
            t += 1
        return t

    rank = diagonalize()
    for _ in range(64 * (n + c + 1)):
        bad = next((i for i in range(rank - 1) if a[i + 1][i + 1] % a[i][i] != 0), None)
        if bad is None:
            break
        addmul_col(bad, bad + 1, 1)
        rank = diagonalize()
    else:
        raise AssertionError("divisibility chain failed to stabilize")

    dm = IntMatrix.from_rows(a)
    um = IntMatrix.from_rows(u)
    vm = IntMatrix.from_rows(v)
    diag = tuple(a[i][i] for i in range(min(n, c)))
    result = SmithResult(dm, um, vm, diag)

    if verify is None:
        verify = VERIFY_TRANSFORMS
    if verify:
        prod = um @ m @ vm
        if prod != dm:
            raise AssertionError("smith transforms do not reproduce the diagonal form")
        if abs(det_exact(um)) != 1 or abs(det_exact(vm)) != 1:
            raise AssertionError("smith transforms are not unimodular")
        for i in range(1, len(diag)):
            if diag[i - 1] and diag[i] % diag[i - 1] != 0:
                raise AssertionError("diagonal is not a divisibility chain")
            if diag[i - 1] == 0 and diag[i] != 0:
                raise AssertionError("zero diagonal entries must come last")
    return result


def cokernel(m: IntMatrix) -> H1Group:
    """The abelian group Z^rows / (column span of m)."""
    return smith_normal_form(m).cokernel()


def kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Saturated integer basis of {x : m x = 0}."""
    return smith_normal_form(m).kernel_basis()


@dataclass(frozen=True)
class QuadraticFormSummary:
    matrix: IntMatrix
    signature: int
    parity: str  # "even" | "odd"
    rank: int

    def to_dict(self) -> dict:
        return {"matrix": self.matrix.to_lists(), "signature": self.signature,
                "parity": self.parity, "rank": self.rank}


def signature_exact(m: IntMatrix) -> int:
    """Signature of a symmetric integer matrix via rational congruence.

    Zero diagonal with a nonzero off-diagonal entry is handled by a
    congruence row/column addition before pivoting.
    """
    if not m.is_symmetric():
        raise ValueError("signature needs a symmetric matrix")
    n = m.rows
    a = [[Fraction(x) for x in row] for row in m.data]
    pos = neg = 0
    live = list(range(n))
    while live:
        pivot = next((i for i in live if a[i][i] != 0), None)
        if pivot is None:
            found = None
            for i in live:
                for j in live:
                    if i != j and a[i][j] != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                break  # remaining block is zero
            i, j = found
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            pivot = i
        p = a[pivot][pivot]
        if p > 0:
            pos += 1
        else:
            neg += 1
        live.remove(pivot)
        for i in live:
            if a[i][pivot] != 0:
                coef = a[i][pivot] / p
                for k in range(n):
                    a[i][k] -= coef * a[pivot][k]
                for k in range(n):
                    a[k][i] -= coef * a[k][pivot]
    return pos - neg


def form_summary(m: IntMatrix) -> QuadraticFormSummary:
    if not m.is_symmetric():
        raise ValueError("need a symmetric matrix")
    sig = signature_exact(m)
    parity = "even" if all(m.data[i][i] % 2 == 0 for i in range(m.rows)) else "odd"
    rank = m.rows - len(kernel_basis(m))
    if abs(sig) > rank:
        raise AssertionError("signature exceeds rank")
    return QuadraticFormSummary(matrix=m, signature=sig, parity=parity, rank=rank)
