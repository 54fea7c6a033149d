"""Monomials of N_n = Λ(x_1..x_n) ⊗ F2[y_1..y_n] and per-degree bases."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

__all__ = [
    "InvalidArgs",
    "ArityMismatch",
    "Monomial",
    "WeightProfile",
    "DegreeBasis",
    "unit",
    "degree",
    "weight_profile",
    "enumerate_component",
    "enumerate_degree",
    "component_basis",
    "multiply",
    "compositions",
]


class InvalidArgs(ValueError):
    pass


class ArityMismatch(ValueError):
    pass


@dataclass(frozen=True, order=False)
class Monomial:
    """``x_S · y^e``; ``xmask`` has bit ``i-1`` set when ``x_i`` divides."""

    n: int
    xmask: int
    yexp: tuple[int, ...]

    def __post_init__(self):
        if len(self.yexp) != self.n:
            raise InvalidArgs(f"yexp has length {len(self.yexp)}, expected {self.n}")
        if self.xmask < 0 or self.xmask >> self.n:
            raise InvalidArgs("xmask outside {1..n}")
        if any(e < 0 for e in self.yexp):
            raise InvalidArgs("negative exponent")

    @classmethod
    def make(cls, n: int, xs: Sequence[int] = (), ys: Sequence[int] | None = None) -> "Monomial":
        """Build from 1-based exterior indices and an exponent list."""
        mask = 0
        for i in xs:
            if not 1 <= i <= n:
                raise InvalidArgs(f"x_{i} not in 1..{n}")
            if mask >> (i - 1) & 1:
                raise InvalidArgs(f"x_{i} repeated")
            mask |= 1 << (i - 1)
        return cls(n, mask, tuple(ys) if ys is not None else (0,) * n)

    @property
    def xset(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.xmask >> i & 1)

    @property
    def exterior_degree(self) -> int:
        return self.xmask.bit_count()

    @property
    def ydegree(self) -> int:
        """Sum of the y-exponents."""
        return sum(self.yexp)

    @property
    def degree(self) -> int:
        return self.xmask.bit_count() + 2 * sum(self.yexp)

    @property
    def weight(self) -> int:
        return self.xmask.bit_count() + sum(self.yexp)

    def columns(self) -> tuple[int, ...]:
        """The numbers ε_i + 2 e_i, one per variable."""
        m = self.xmask
        return tuple((m >> i & 1) + 2 * e for i, e in enumerate(self.yexp))

    def permute(self, perm: Sequence[int]) -> "Monomial":
        """Apply the variable substitution ``v_i -> v_perm[i]`` (0-based)."""
        mask = 0
        yexp = [0] * self.n
        for i in range(self.n):
            j = perm[i]
            if self.xmask >> i & 1:
                mask |= 1 << j
            yexp[j] = self.yexp[i]
        return Monomial(self.n, mask, tuple(yexp))

    def __str__(self) -> str:
        if not self.xmask and not any(self.yexp):
            return "1"
        parts = []
        if self.xmask:
            parts.append("x{" + ",".join(map(str, self.xset)) + "}")
        if any(self.yexp):
            parts.append("y[" + ",".join(map(str, self.yexp)) + "]")
        return " ".join(parts)

    _TEXT = re.compile(r"^\s*(?:x\{([\d,\s]*)\})?\s*(?:y\[([\d,\s]*)\])?\s*$")

    @classmethod
    def parse(cls, text: str, n: int) -> "Monomial":
        """Inverse of ``str``: ``"x{1,2} y[1,2,3]"``, ``"1"`` for the unit."""
        if text.strip() == "1":
            return unit(n)
        m = cls._TEXT.match(text)
        if not m or not text.strip():
            raise InvalidArgs(f"cannot parse monomial {text!r}")
        xs = [int(t) for t in m.group(1).split(",") if t.strip()] if m.group(1) else []
        ys = [int(t) for t in m.group(2).split(",") if t.strip()] if m.group(2) else [0] * n
        if len(ys) != n:
            raise InvalidArgs(f"expected {n} exponents in {text!r}")
        return cls.make(n, xs, ys)


def unit(n: int) -> Monomial:
    return Monomial(n, 0, (0,) * n)


def degree(m: Monomial) -> int:
    return m.degree


@dataclass(frozen=True)
class WeightProfile:
    alpha: tuple[int, ...]
    omega: tuple[int, ...]


def weight_profile(m: Monomial) -> WeightProfile:
    cols = m.columns()
    alpha = tuple(c.bit_count() for c in cols)
    top = max(cols).bit_length() if cols else 0
    omega = tuple(sum(c >> j & 1 for c in cols) for j in range(top))
    return WeightProfile(alpha, omega)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` parts, lexicographically ascending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _masks_of_size(n: int, a: int) -> list[int]:
    return [m for m in range(1 << n) if m.bit_count() == a]


def enumerate_component(n: int, a: int, b: int) -> list[Monomial]:
    """All ``x_S y^e`` with ``|S| = a`` and ``sum(e) = b`` in canonical order."""
    if a < 0 or b < 0 or n < 0:
        raise InvalidArgs("negative argument")
    if a > n:
        raise InvalidArgs(f"exterior degree {a} exceeds n={n}")
    ys = list(compositions(b, n))
    return [Monomial(n, mask, e) for mask in _masks_of_size(n, a) for e in ys]


class DegreeBasis:
    """Canonically ordered monomial basis of one topological degree.

    With ``exterior`` set, only the ``Λ^exterior`` component is included.
    """

    def __init__(self, n: int, d: int, exterior: int | None = None):
        self.n = n
        self.d = d
        self.exterior = exterior
        items: list[Monomial] = []
        self.ranges: dict[int, range] = {}
        for a in range(d % 2, min(n, d) + 1, 2):
            if exterior is not None and a != exterior:
                continue
            start = len(items)
            items.extend(enumerate_component(n, a, (d - a) // 2))
            self.ranges[a] = range(start, len(items))
        self.items: tuple[Monomial, ...] = tuple(items)
        self.index: dict[Monomial, int] = {m: i for i, m in enumerate(self.items)}

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i: int) -> Monomial:
        return self.items[i]

    def __repr__(self) -> str:
        extra = "" if self.exterior is None else f", exterior={self.exterior}"
        return f"DegreeBasis(n={self.n}, d={self.d}{extra}, size={len(self)})"

    def vector(self, monomials) -> int:
        """Bit-packed F2-sum of the given monomials."""
        v = 0
        index = self.index
        for m in monomials:
            v ^= 1 << index[m]
        return v

    def component_mask(self, a: int) -> int:
        r = self.ranges.get(a)
        if r is None:
            return 0
        return ((1 << len(r)) - 1) << r.start


@lru_cache(maxsize=64)
def enumerate_degree(n: int, d: int) -> DegreeBasis:
    if n < 0 or d < 0:
        raise InvalidArgs("negative argument")
    return DegreeBasis(n, d)


@lru_cache(maxsize=64)
def component_basis(n: int, d: int, a: int) -> DegreeBasis:
    if a > n or a < 0 or (d - a) % 2 or a > d:
        raise InvalidArgs(f"no Λ^{a} component in degree {d} for n={n}")
    return DegreeBasis(n, d, exterior=a)


def component_size(n: int, a: int, b: int) -> int:
    return comb(n, a) * comb(b + n - 1, n - 1) if n else int(a == 0 and b == 0)


def multiply(m1: Monomial, m2: Monomial) -> Monomial | None:
    if m1.n != m2.n:
        raise ArityMismatch(f"{m1.n} != {m2.n}")
    if m1.xmask & m2.xmask:
        return None
    return Monomial(m1.n, m1.xmask | m2.xmask, tuple(a + b for a, b in zip(m1.yexp, m2.yexp)))
