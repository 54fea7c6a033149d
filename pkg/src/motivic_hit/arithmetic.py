"""Binary arithmetic for α, β and the degree formulas, and the family scanners."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

from .monomial import InvalidArgs

__all__ = [
    "BitNat",
    "FamilyRecord",
    "alpha_of",
    "beta_of",
    "beta_by_compositions",
    "beta_exceeds",
    "zk_degree",
    "d1_of",
    "identity_check",
    "scan_family_nm4",
    "check_family_nm3",
    "records_to_json",
    "records_to_csv",
]


class BitNat(int):
    """A natural number of any size.

    Backed by Python's int; this subclass only pins non-negativity, keeps
    the type through add/sub/shift, and adds the binary views used here.
    """

    def __new__(cls, value=0):
        if isinstance(value, str):
            value = int(value.strip().replace("_", ""), 10)
        v = int.__new__(cls, value)
        if v < 0:
            raise ValueError(f"BitNat must be non-negative, got {value}")
        return v

    @classmethod
    def from_bits(cls, bits) -> "BitNat":
        """Least significant bit first."""
        return cls(sum(1 << i for i, b in enumerate(bits) if b))

    @property
    def bits(self) -> tuple[int, ...]:
        """Binary digits, least significant first, no trailing zeros."""
        return tuple(self >> i & 1 for i in range(self.bit_length()))

    def alpha(self) -> int:
        return self.bit_count()

    def __add__(self, other):
        return BitNat(int(self) + int(other))

    __radd__ = __add__

    def __sub__(self, other):
        return BitNat(int(self) - int(other))

    def __rsub__(self, other):
        return BitNat(int(other) - int(self))

    def __lshift__(self, s):
        return BitNat(int(self) << s)

    def __rshift__(self, s):
        return BitNat(int(self) >> s)

    def __repr__(self) -> str:
        return f"BitNat({self.shorthand()})"

    def decimal(self) -> str:
        return int.__repr__(self)

    def shorthand(self) -> str:
        """``2^a - b`` (or ``2^a``) when ``b`` is small, else the decimal digits."""
        v = int(self)
        if v < 1 << 20:
            return str(v)
        a = v.bit_length()
        if v & (v - 1) == 0:
            return f"2^{a - 1}"
        b = (1 << a) - v
        if b < 1 << 32:
            return f"2^{a} - {b}"
        return str(v)


def alpha_of(t: int) -> int:
    """Number of ones in the binary expansion."""
    if t < 0:
        raise ValueError("alpha is defined on naturals")
    return int(t).bit_count()


def beta_of(d: int) -> int:
    """Least s >= 1 with α(d + s) <= s: the fewest numbers 2^i - 1 summing to d."""
    if d < 1:
        raise InvalidArgs("beta needs d >= 1")
    s = 1
    while alpha_of(d + s) > s:
        s += 1
    return s


def beta_by_compositions(limit: int) -> list[int]:
    """β(d) for 0 <= d <= limit by dynamic programming over parts 2^i - 1.

    Independent of α: a change-making table over {1, 3, 7, 15, ...}.
    Entry 0 is 0.
    """
    parts = []
    p = 1
    while p <= limit:
        parts.append(p)
        p = 2 * p + 1
    inf = limit + 1
    best = [0] + [inf] * limit
    for d in range(1, limit + 1):
        best[d] = min((best[d - q] + 1 for q in parts if q <= d), default=inf)
    return best


def beta_exceeds(d: int, n: int) -> bool:
    return alpha_of(d + n) > n


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k < n:
        raise InvalidArgs(f"need 1 <= k < n, got n={n}, k={k}")


def zk_degree(n: int, k: int) -> BitNat:
    """(n - 1)(2^(k+1) - 2) + k."""
    _check_nk(n, k)
    return BitNat((n - 1) * ((1 << (k + 1)) - 2) + k)


def d1_of(n: int, k: int) -> BitNat:
    _check_nk(n, k)
    return BitNat((n - 1) * ((1 << k) - 1))


def identity_check(n: int, k: int) -> bool:
    return zk_degree(n, k) == k + 2 * d1_of(n, k)


@dataclass(frozen=True)
class FamilyRecord:
    family: str
    r: int | None
    n: int
    k: int
    d: BitNat
    alpha_d_plus_n: int
    beta_exceeds_n: bool
    kameko_condition: bool
    closed_form_ok: bool

    @property
    def contradiction(self) -> bool:
        """True when the theorem's hypothesis holds but its conclusion fails."""
        return (self.kameko_condition and not self.beta_exceeds_n) or not self.closed_form_ok

    def to_dict(self) -> dict:
        out = asdict(self)
        out["d"] = BitNat(self.d).shorthand()
        return out


def scan_family_nm4(rmin: int, rmax: int) -> list[FamilyRecord]:
    """n = 2^r + 1, k = n - 4.  Here d + n = 2^(r+n-3) - 2 and α(d + n) = r + n - 4."""
    if rmin < 1:
        raise InvalidArgs("r starts at 1")
    out = []
    for r in range(rmin, rmax + 1):
        n = (1 << r) + 1
        k = n - 4
        if k < 1:
            out.append(FamilyRecord("nm4", r, n, k, BitNat(0), 0, False, False, True))
            continue
        d = zk_degree(n, k)
        total = d + n
        closed = total == (1 << (r + n - 3)) - 2
        a = alpha_of(total)
        closed &= a == r + n - 4
        out.append(FamilyRecord("nm4", r, n, k, d, a, a > n, r >= 5, closed))
    return out


def check_family_nm3(n: int) -> FamilyRecord:
    """k = n - 3; when α(n - 2) >= 3 the degree satisfies β(d) > n."""
    if n < 4:
        raise InvalidArgs("the k = n - 3 family needs n >= 4")
    k = n - 3
    d = zk_degree(n, k)
    closed = d == k + 2 * d1_of(n, k)
    a = alpha_of(d + n)
    return FamilyRecord("nm3", None, n, k, d, a, a > n, alpha_of(n - 2) >= 3, closed)


_FIELDS = ["family", "r", "n", "k", "d", "alpha_d_plus_n", "beta_exceeds_n", "kameko_condition", "closed_form_ok"]


def records_to_json(records) -> str:
    return json.dumps([r.to_dict() for r in records], sort_keys=True, indent=2)


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.to_dict())
    return buf.getvalue()
