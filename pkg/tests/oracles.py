"""Slow, independent reference computations used to freeze expected values.

Nothing here imports the bit-packed elimination or the Lucas-based P^a
expansion from the package.
"""

from __future__ import annotations

import itertools
from collections import Counter

# A polynomial is a frozenset of terms; a term is (xs: frozenset[int], ys: tuple[int, ...]).


def term(n, xs=(), ys=None):
    return (frozenset(xs), tuple(ys) if ys is not None else (0,) * n)


def poly_add(*ps):
    c = Counter()
    for p in ps:
        for t in p:
            c[t] += 1
    return frozenset(t for t, v in c.items() if v % 2)


def poly_mul(p, q):
    out = Counter()
    for (xa, ya), (xb, yb) in itertools.product(p, q):
        if xa & xb:
            continue
        out[(xa | xb, tuple(a + b for a, b in zip(ya, yb)))] += 1
    return frozenset(t for t, v in out.items() if v % 2)


def factors(t, n):
    """Split a term into its generator factors x_i and y_i (with multiplicity)."""
    xs, ys = t
    out = [("x", i) for i in sorted(xs)]
    for i, e in enumerate(ys):
        out += [("y", i)] * e
    return out


def gen_poly(n, kind, i):
    if kind == "x":
        return frozenset({term(n, [i])})
    ys = [0] * n
    ys[i] = 1
    return frozenset({term(n, (), ys)})


def q0_naive(t, n):
    """Q_0 as a derivation on the product of generators."""
    fs = factors(t, n)
    total = frozenset()
    for pos, (kind, i) in enumerate(fs):
        if kind != "x":
            continue
        ys = [0] * n
        ys[i] = 1
        prod = frozenset({term(n)})
        for j, (k2, i2) in enumerate(fs):
            prod = poly_mul(prod, frozenset({term(n, (), ys)}) if j == pos else gen_poly(n, k2, i2))
        total = poly_add(total, prod)
    return total


def total_power_naive(t, n):
    """Coefficients of t^a in P_t(m) = prod over y-factors of (y + y^2 t); x-factors fixed.

    Returns a dict a -> polynomial.
    """
    fs = factors(t, n)
    # Polynomials in t: dict a -> poly
    cur = {0: frozenset({term(n)})}
    for kind, i in fs:
        g = gen_poly(n, kind, i)
        if kind == "x":
            cur = {a: poly_mul(p, g) for a, p in cur.items()}
            continue
        ys = [0] * n
        ys[i] = 2
        sq = frozenset({term(n, (), ys)})
        nxt = {}
        for a, p in cur.items():
            nxt[a] = poly_add(nxt.get(a, frozenset()), poly_mul(p, g))
            nxt[a + 1] = poly_add(nxt.get(a + 1, frozenset()), poly_mul(p, sq))
        cur = nxt
    return {a: p for a, p in cur.items() if p}


def pa_naive(a, t, n):
    return total_power_naive(t, n).get(a, frozenset())


def monomials_of_degree(n, d):
    out = []
    for xs_size in range(0, n + 1):
        if (d - xs_size) % 2 or xs_size > d:
            continue
        b = (d - xs_size) // 2
        for xs in itertools.combinations(range(n), xs_size):
            for ys in itertools.product(range(b + 1), repeat=n):
                if sum(ys) == b:
                    out.append(term(n, xs, ys))
    return out


def rank_gf2(vectors, ncols):
    """Column-by-column elimination on 0/1 lists."""
    rows = [list(v) for v in vectors]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def to_vec(p, basis_index, ncols):
    v = [0] * ncols
    for t in p:
        v[basis_index[t]] ^= 1
    return v


def naive_hit_rank(n, d, word_length=1):
    """Rank of the span of all words of up to ``word_length`` generators applied to monomials."""
    basis = monomials_of_degree(n, d)
    index = {t: i for i, t in enumerate(basis)}
    vecs = []

    def apply(ops, p):
        for op in reversed(ops):
            nxt = frozenset()
            for t in p:
                img = q0_naive(t, n) if op == 0 else pa_naive(op, t, n)
                nxt = poly_add(nxt, img)
            p = nxt
            if not p:
                break
        return p

    ops_all = [0] + list(range(1, d // 2 + 1))

    def op_degree(op):
        return 1 if op == 0 else 2 * op

    for length in range(1, word_length + 1):
        for ops in itertools.product(ops_all, repeat=length):
            deg = sum(op_degree(o) for o in ops)
            if deg > d:
                continue
            for t in monomials_of_degree(n, d - deg):
                p = apply(ops, frozenset({t}))
                if p:
                    vecs.append(to_vec(p, index, len(basis)))
    return rank_gf2(vecs, len(basis)), len(basis)


def beta_dp(limit):
    """min number of parts from {2^i - 1 : i >= 1} summing to each d <= limit."""
    parts = [2 ** i - 1 for i in range(1, limit.bit_length() + 2) if 2 ** i - 1 <= limit]
    best = [0] + [None] * limit
    for d in range(1, limit + 1):
        cands = [best[d - p] for p in parts if p <= d and best[d - p] is not None]
        best[d] = min(cands) + 1 if cands else None
    return best


def beta_by_search(d):
    """Definitional search: smallest s with some multiset of s parts 2^i - 1 summing to d."""
    parts = [2 ** i - 1 for i in range(1, d.bit_length() + 2) if 2 ** i - 1 <= d]
    s = 1
    while True:
        for combo in itertools.combinations_with_replacement(parts, s):
            if sum(combo) == d:
                return s
        s += 1
