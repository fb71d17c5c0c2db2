"""Exact half-integer arithmetic.

Gleams live in (1/2)Z.  Values are stored as twice their value so that
everything stays in plain integer arithmetic; denominators other than 1
or 2 never occur.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN = re.compile(r"^([+-]?\d+)(/2)?$")


@dataclass(frozen=True, order=True)
class HalfInteger:
    twice: int

    @classmethod
    def from_int(cls, n: int) -> "HalfInteger":
        return cls(2 * n)

    @classmethod
    def parse(cls, token: str) -> "HalfInteger":
        """Parse 'n' or 'n/2' with an optional sign."""
        m = _TOKEN.match(token.strip())
        if not m:
            raise ValueError(f"malformed half-integer token {token!r}")
        n = int(m.group(1))
        return cls(n if m.group(2) else 2 * n)

    @property
    def is_integral(self) -> bool:
        return self.twice % 2 == 0

    def as_int(self) -> int:
        if not self.is_integral:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other: "HalfInteger") -> "HalfInteger":
        return HalfInteger(self.twice + other.twice)

    def __sub__(self, other: "HalfInteger") -> "HalfInteger":
        return HalfInteger(self.twice - other.twice)

    def __neg__(self) -> "HalfInteger":
        return HalfInteger(-self.twice)

    def __mul__(self, k: int) -> "HalfInteger":
        return HalfInteger(self.twice * k)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.twice != 0

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    __repr__ = __str__


ZERO = HalfInteger(0)
HALF = HalfInteger(1)
ONE = HalfInteger(2)
