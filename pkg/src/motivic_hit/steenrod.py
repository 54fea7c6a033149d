"""Action of Q_0 and the reduced powers P^a on N_n, and hit subspaces.

Q_0 is a derivation with Q_0(x_i) = y_i and Q_0(y_i) = 0.  P^a kills the
exterior generators and acts on y-monomials by the Cartan formula
``P^a(y^e) = sum_{|c| = a} prod_i C(e_i, c_i) y^(e + c)``.

The positive part of the algebra is generated by Q_0 and the P^a, so in a
fixed degree the hit subspace is spanned by single generator images.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

from .f2linalg import BitVector, EchelonBuilder, Subspace
from .monomial import (
    DegreeBasis,
    InvalidArgs,
    Monomial,
    component_basis,
    compositions,
    enumerate_component,
    enumerate_degree,
)

__all__ = [
    "ResourceLimit",
    "Limits",
    "DEFAULT_LIMITS",
    "ElementVector",
    "binom_mod2",
    "q0_terms",
    "pa_terms",
    "q0",
    "pa",
    "hit_generator_rows",
    "hit_subspace",
    "hit_component_subspace",
    "is_hit",
    "y_hit_subspace",
    "classical_hit_quotient_dim",
]

log = logging.getLogger(__name__)


class ResourceLimit(RuntimeError):
    """A computation would exceed the configured size bounds."""


@dataclass(frozen=True)
class Limits:
    max_cols: int = 1 << 22
    max_rows: int = 1 << 24

    def __post_init__(self):
        if self.max_cols <= 0 or self.max_rows <= 0:
            raise ValueError("limits must be positive")

    def check_cols(self, ncols: int) -> None:
        if ncols > self.max_cols:
            raise ResourceLimit(f"basis of size {ncols} exceeds max_cols={self.max_cols}")

    def check_rows(self, nrows: int) -> None:
        if nrows > self.max_rows:
            raise ResourceLimit(f"{nrows} generator rows exceed max_rows={self.max_rows}")


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class ElementVector:
    """An F2-sum of monomials of one degree, as coordinates in ``basis``."""

    basis: DegreeBasis
    coeffs: BitVector

    def __post_init__(self):
        if self.coeffs.length != len(self.basis):
            raise ValueError("coefficient length does not match basis")

    @classmethod
    def from_monomials(cls, basis: DegreeBasis, monomials: Iterable[Monomial]) -> "ElementVector":
        return cls(basis, BitVector(basis.vector(monomials), len(basis)))

    @classmethod
    def zero(cls, basis: DegreeBasis) -> "ElementVector":
        return cls(basis, BitVector.zeros(len(basis)))

    def monomials(self) -> list[Monomial]:
        return [self.basis.items[i] for i in self.coeffs.support()]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "ElementVector") -> "ElementVector":
        if other.basis is not self.basis and (other.basis.n, other.basis.d) != (self.basis.n, self.basis.d):
            raise ValueError("elements of different degrees")
        return ElementVector(self.basis, self.coeffs ^ other.coeffs)

    def __str__(self) -> str:
        ms = self.monomials()
        return " + ".join(map(str, ms)) if ms else "0"


def binom_mod2(e: int, c: int) -> int:
    """C(e, c) mod 2, by Lucas: odd iff the bits of c are a subset of those of e."""
    if c < 0 or c > e:
        return 0
    return int(c & (e - c) == 0)


def q0_terms(m: Monomial) -> list[Monomial]:
    """Monomials of Q_0(m); distinct, so no cancellation occurs."""
    out = []
    mask, yexp, n = m.xmask, m.yexp, m.n
    for i in range(n):
        if mask >> i & 1:
            e = list(yexp)
            e[i] += 1
            out.append(Monomial(n, mask ^ (1 << i), tuple(e)))
    return out


def _submask_lists(yexp: tuple[int, ...]) -> list[list[int]]:
    out = []
    for e in yexp:
        subs = []
        s = e
        while True:
            subs.append(s)
            if s == 0:
                break
            s = (s - 1) & e
        subs.reverse()
        out.append(subs)
    return out


def _pa_exponents(a: int, yexp: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Exponent vectors c with |c| = a and every C(e_i, c_i) odd."""
    n = len(yexp)
    subs = _submask_lists(yexp)
    tail = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        tail[i] = tail[i + 1] + yexp[i]
    c = [0] * n

    def rec(i: int, rem: int):
        if i == n - 1:
            e = yexp[i]
            if rem <= e and rem & (e - rem) == 0:
                c[i] = rem
                yield tuple(c)
            return
        rest = tail[i + 1]
        for s in subs[i]:
            if s > rem:
                break
            if rem - s > rest:
                continue
            c[i] = s
            yield from rec(i + 1, rem - s)

    if n == 0 or a > tail[0]:
        return
    yield from rec(0, a)


def pa_terms(a: int, m: Monomial) -> list[Monomial]:
    """Monomials of P^a(m); distinct, so no cancellation occurs."""
    if a < 1:
        raise InvalidArgs("P^a needs a >= 1")
    yexp = m.yexp
    return [
        Monomial(m.n, m.xmask, tuple(e + ci for e, ci in zip(yexp, c)))
        for c in _pa_exponents(a, yexp)
    ]


def q0(m: Monomial) -> ElementVector:
    return ElementVector.from_monomials(enumerate_degree(m.n, m.degree + 1), q0_terms(m))


def pa(a: int, m: Monomial) -> ElementVector:
    return ElementVector.from_monomials(enumerate_degree(m.n, m.degree + 2 * a), pa_terms(a, m))


def hit_generator_rows(
    target: DegreeBasis, limits: Limits = DEFAULT_LIMITS
) -> Iterator[tuple[str, int, Monomial, int]]:
    """Generator images landing in ``target``, as ``(op, a, source, row)``.

    ``op`` is ``"Q0"`` (with ``a = 0``) or ``"P"``.  Q_0 rows come first,
    then P^a rows by increasing ``a``; sources run in canonical order.  If
    ``target`` is a single exterior component only the sources mapping
    into it are used: Q_0 lowers exterior degree by one and P^a keeps it.
    """
    n, d = target.n, target.d
    limits.check_cols(len(target))
    ext = sorted(target.ranges)
    index = target.index
    count = 0

    def sources(deg: int, exterior: list[int]) -> Iterator[Monomial]:
        for a in exterior:
            if 0 <= a <= n and a <= deg and (deg - a) % 2 == 0:
                yield from enumerate_component(n, a, (deg - a) // 2)

    if d >= 1:
        for m in sources(d - 1, [a + 1 for a in ext]):
            terms = q0_terms(m)
            if not terms:
                continue
            row = 0
            for t in terms:
                row ^= 1 << index[t]
            count += 1
            limits.check_rows(count)
            yield "Q0", 0, m, row
    for a in range(1, d // 2 + 1):
        for m in sources(d - 2 * a, ext):
            if a > m.ydegree:
                continue
            terms = pa_terms(a, m)
            if not terms:
                continue
            row = 0
            for t in terms:
                row ^= 1 << index[t]
            count += 1
            limits.check_rows(count)
            yield "P", a, m, row


def _cache_path(cache_dir, n: int, d: int, a: int | None = None) -> Path | None:
    if cache_dir is None:
        return None
    name = f"hit_n{n}_d{d}" + (f"_a{a}" if a is not None else "") + ".f2s"
    return Path(cache_dir) / name


def _span(target: DegreeBasis, limits: Limits, cache: Path | None) -> Subspace:
    if cache is not None and cache.exists():
        sub = Subspace.load(cache)
        if sub.ncols == len(target):
            return sub
        log.warning("ignoring cache %s with %d columns", cache, sub.ncols)
    builder = EchelonBuilder(len(target))
    for _, _, _, row in hit_generator_rows(target, limits):
        builder.add(row)
    sub = builder.to_subspace()
    if cache is not None:
        os.makedirs(cache.parent, exist_ok=True)
        sub.save(cache)
    return sub


@lru_cache(maxsize=32)
def hit_subspace(n: int, d: int, limits: Limits = DEFAULT_LIMITS, cache_dir=None) -> Subspace:
    """Hit elements of degree ``d``, over ``enumerate_degree(n, d)``."""
    basis = enumerate_degree(n, d)
    limits.check_cols(len(basis))
    return _span(basis, limits, _cache_path(cache_dir, n, d))


@lru_cache(maxsize=32)
def hit_component_subspace(
    n: int, d: int, a: int, limits: Limits = DEFAULT_LIMITS, cache_dir=None
) -> Subspace:
    """Hit elements in the ``Λ^a ⊗ Y`` block of degree ``d``, over ``component_basis(n, d, a)``."""
    if a > n or a < 0:
        raise InvalidArgs(f"exterior degree {a} not in 0..{n}")
    if (d - a) % 2 or a > d:
        raise InvalidArgs(f"a={a} and d={d} have different parity")
    basis = component_basis(n, d, a)
    limits.check_cols(len(basis))
    return _span(basis, limits, _cache_path(cache_dir, n, d, a))


def is_hit(n: int, d: int, u: ElementVector, limits: Limits = DEFAULT_LIMITS, cache_dir=None) -> bool:
    basis = u.basis
    if (basis.n, basis.d) != (n, d):
        raise InvalidArgs("element is not of degree d")
    v = u.coeffs.bits
    if not v:
        return True
    if basis.exterior is not None:
        return v in hit_component_subspace(n, d, basis.exterior, limits, cache_dir)
    touched = [a for a in basis.ranges if v & basis.component_mask(a)]
    if len(touched) == 1:
        a = touched[0]
        return (v >> basis.ranges[a].start) in hit_component_subspace(n, d, a, limits, cache_dir)
    return v in hit_subspace(n, d, limits, cache_dir)


def y_basis(n: int, D: int) -> DegreeBasis:
    """Pure-y monomials of topological degree ``D``."""
    if D % 2:
        raise InvalidArgs("pure-y degrees are even")
    return component_basis(n, D, 0)


def y_hit_subspace(n: int, D: int, limits: Limits = DEFAULT_LIMITS) -> Subspace:
    """Span of ``P^a`` images among pure-y monomials of degree ``D``."""
    basis = y_basis(n, D)
    limits.check_cols(len(basis))
    builder = EchelonBuilder(len(basis))
    count = 0
    for a in range(1, D // 2 + 1):
        for e in compositions(D // 2 - a, n):
            m = Monomial(n, 0, e)
            row = basis.vector(pa_terms(a, m))
            if row:
                count += 1
                limits.check_rows(count)
                builder.add(row)
    return builder.to_subspace()


def classical_hit_quotient_dim(n: int, d: int, limits: Limits = DEFAULT_LIMITS) -> int:
    """dim QP_n^d, via ``y_i -> x_i`` which carries P^a to Sq^a."""
    basis = y_basis(n, 2 * d)
    return len(basis) - y_hit_subspace(n, 2 * d, limits).rank
