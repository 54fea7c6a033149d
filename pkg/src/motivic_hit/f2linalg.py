"""Dense linear algebra over GF(2) on bit-packed rows.

Rows are Python ints: column ``j`` is bit ``j``.  CPython stores ints as
arrays of machine digits, so XOR of two rows is a word-parallel loop in C.
The pivot of a row is its lowest set column.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "LengthMismatch",
    "BitVector",
    "Subspace",
    "EchelonBuilder",
    "echelonize",
    "member",
    "solve_preimage",
    "subspace_equal",
    "even_parity_subspace",
]


class LengthMismatch(ValueError):
    """Vectors or subspaces of different lengths were combined."""


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class BitVector:
    """A fixed-length vector over GF(2)."""

    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside [0, length)")

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(0, length)

    @classmethod
    def unit(cls, i: int, length: int) -> "BitVector":
        if not 0 <= i < length:
            raise IndexError(i)
        return cls(1 << i, length)

    @classmethod
    def from_indices(cls, indices: Iterable[int], length: int) -> "BitVector":
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise IndexError(i)
            bits ^= 1 << i
        return cls(bits, length)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        """Parse ``"0110"``; the leftmost character is column 0."""
        s = s.replace(" ", "").replace("_", "")
        if set(s) - {"0", "1"}:
            raise ValueError(f"not a bit string: {s!r}")
        return cls(sum(1 << i for i, ch in enumerate(s) if ch == "1"), len(s))

    def __str__(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.length))

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return self.bits >> i & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        _check_len(self.length, other.length)
        return BitVector(self.bits ^ other.bits, self.length)

    __add__ = __xor__

    def __bool__(self) -> bool:
        return self.bits != 0

    def popcount(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return list(iter_bits(self.bits))


def _check_len(a: int, b: int) -> None:
    if a != b:
        raise LengthMismatch(f"length {a} != {b}")


def _as_int(v, ncols: int) -> int:
    if isinstance(v, BitVector):
        _check_len(v.length, ncols)
        return v.bits
    if v < 0 or v >> ncols:
        raise LengthMismatch(f"row does not fit in {ncols} columns")
    return v


class EchelonBuilder:
    """Incremental Gaussian elimination.

    Rows are kept in (not necessarily reduced) echelon form, keyed by
    pivot.  Each row may carry a *tag*, an int that is XORed along with
    the row; tags record provenance (which inputs were combined) or the
    image of the row under some linear map.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, int] = {}
        self._tags: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        """Reduce ``v`` until its lowest bit is not a pivot; return (residue, tag)."""
        rows, tags = self._rows, self._tags
        while v:
            p = (v & -v).bit_length() - 1
            r = rows.get(p)
            if r is None:
                break
            v ^= r
            tag ^= tags[p]
        return v, tag

    def reduce_fully(self, v: int, tag: int = 0) -> tuple[int, int]:
        """Clear every pivot column of ``v``; the residue lives on free columns."""
        rows, tags = self._rows, self._tags
        out = 0
        while v:
            low = v & -v
            p = low.bit_length() - 1
            r = rows.get(p)
            if r is None:
                out |= low
                v ^= low
            else:
                v ^= r
                tag ^= tags[p]
        return out, tag

    def add(self, v, tag: int = 0) -> bool:
        """Insert a row; return True if it raised the rank."""
        v = _as_int(v, self.ncols)
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        p = (v & -v).bit_length() - 1
        self._rows[p] = v
        self._tags[p] = tag
        return True

    def contains(self, v) -> bool:
        return self.reduce(_as_int(v, self.ncols))[0] == 0

    def coordinates(self, v) -> int | None:
        """Tag of a combination of stored rows summing to ``v``, or None."""
        v, tag = self.reduce(_as_int(v, self.ncols))
        return None if v else tag

    def reduced(self) -> tuple[list[int], list[int], list[int]]:
        """Return (pivots, rows, tags) of the reduced echelon form, by pivot."""
        pivots = sorted(self._rows)
        pivmask = 0
        for p in pivots:
            pivmask |= 1 << p
        rows, tags = self._rows, self._tags
        for p in reversed(pivots):
            r, t = rows[p], tags[p]
            extra = (r & pivmask) ^ (1 << p)
            while extra:
                low = extra & -extra
                q = low.bit_length() - 1
                r ^= rows[q]
                t ^= tags[q]
                extra ^= low
            rows[p], tags[p] = r, t
        return pivots, [rows[p] for p in pivots], [tags[p] for p in pivots]

    def to_subspace(self) -> "Subspace":
        pivots, rows, _ = self.reduced()
        return Subspace._from_reduced(self.ncols, rows, pivots)


class Subspace:
    """Span of GF(2) rows held in reduced row-echelon form.

    Immutable.  Two subspaces with the same ``ncols`` are equal iff their
    reduced row lists coincide.
    """

    __slots__ = ("ncols", "_rows", "pivots", "_lookup")

    def __init__(self, *args, **kwargs):
        raise TypeError("use echelonize() or Subspace.from_text()")

    @classmethod
    def _from_reduced(cls, ncols: int, rows: Sequence[int], pivots: Sequence[int]) -> "Subspace":
        self = object.__new__(cls)
        self.ncols = ncols
        self._rows = tuple(rows)
        self.pivots = tuple(pivots)
        self._lookup = dict(zip(self.pivots, self._rows))
        return self

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[BitVector, ...]:
        return tuple(BitVector(r, self.ncols) for r in self._rows)

    @property
    def int_rows(self) -> tuple[int, ...]:
        return self._rows

    def reduce(self, v) -> int:
        """Residue of ``v`` after clearing all pivot columns."""
        v = _as_int(v, self.ncols)
        lookup = self._lookup
        out = 0
        while v:
            low = v & -v
            r = lookup.get(low.bit_length() - 1)
            if r is None:
                out |= low
                v ^= low
            else:
                v ^= r
        return out

    def __contains__(self, v) -> bool:
        v = _as_int(v, self.ncols)
        lookup = self._lookup
        while v:
            r = lookup.get((v & -v).bit_length() - 1)
            if r is None:
                return False
            v ^= r
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ncols == other.ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.ncols, self._rows))

    def __repr__(self) -> str:
        return f"Subspace(ncols={self.ncols}, rank={self.rank})"

    # -- cache file format -------------------------------------------------

    def to_text(self) -> str:
        width = -(-self.ncols // 4)
        lines = [f"F2SUBSPACE v1 cols={self.ncols} rank={self.rank}"]
        lines += [format(r, "x").zfill(width) if width else "" for r in self._rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Subspace":
        lines = text.splitlines()
        head = lines[0].split() if lines else []
        if len(head) != 4 or head[:2] != ["F2SUBSPACE", "v1"]:
            raise ValueError("not an F2SUBSPACE v1 file")
        ncols = int(head[2].removeprefix("cols="))
        rank = int(head[3].removeprefix("rank="))
        rows = [int(line, 16) if line else 0 for line in lines[1 : rank + 1]]
        if len(rows) != rank:
            raise ValueError(f"expected {rank} rows, found {len(rows)}")
        sub = echelonize(rows, ncols=ncols)
        if sub.rank != rank or list(sub._rows) != rows:
            raise ValueError("rows are not in reduced echelon form")
        return sub

    def save(self, path: str | os.PathLike) -> None:
        tmp = f"{path}.tmp{os.getpid()}"
        with open(tmp, "w") as fh:
            fh.write(self.to_text())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "Subspace":
        with open(path) as fh:
            return cls.from_text(fh.read())


def echelonize(rows: Iterable, ncols: int | None = None) -> Subspace:
    """Reduced row-echelon basis of the span of ``rows``.

    ``rows`` are BitVectors, or plain ints when ``ncols`` is given.
    """
    rows = list(rows)
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty row list")
        first = rows[0]
        if not isinstance(first, BitVector):
            raise ValueError("ncols is required for int rows")
        ncols = first.length
    builder = EchelonBuilder(ncols)
    for r in rows:
        builder.add(r)
    return builder.to_subspace()


def member(s: Subspace, v) -> bool:
    return v in s


def solve_preimage(generators: Sequence[BitVector], target: BitVector) -> BitVector | None:
    """Indicator vector ``c`` with ``sum(generators[i] for c_i = 1) == target``.

    Returns None when ``target`` is outside the span of the generators.
    """
    ncols = target.length
    builder = EchelonBuilder(ncols)
    for i, g in enumerate(generators):
        _check_len(g.length, ncols)
        builder.add(g.bits, 1 << i)
    coeffs = builder.coordinates(target.bits)
    if coeffs is None:
        return None
    total = 0
    for i in iter_bits(coeffs):
        total ^= generators[i].bits
    if total != target.bits:
        raise AssertionError("preimage does not re-sum to the target")
    return BitVector(coeffs, len(generators))


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _check_len(a.ncols, b.ncols)
    return a == b


def even_parity_subspace(N: int) -> Subspace:
    """Span of ``e_0 + e_i`` for ``1 <= i < N``: the even-weight hyperplane."""
    if N < 1:
        raise ValueError("N must be positive")
    return echelonize([1 | 1 << i for i in range(1, N)], ncols=N)
