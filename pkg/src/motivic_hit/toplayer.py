"""Kameko's local top layer in degree d = k + 2 d_1, d_1 = (n-1)(2^k - 1).

The component ``Λ^k ⊗ Y^{2 d_1}`` is cut down by ``G_n`` (tensored over
all exterior masks), then split as ``U_0 ⊕ V`` where ``V`` is spanned by
the translates ``σ(z_k)`` and ``U_0`` by the monomials having some
``α_i < k``.  ``theta`` is the resulting projection onto ``V``, read in
the basis of translates, and ``epsilon`` is the coordinate parity.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import networkx as nx

from .f2linalg import (
    BitVector,
    EchelonBuilder,
    LengthMismatch,
    Subspace,
    echelonize,
    even_parity_subspace,
    iter_bits,
    solve_preimage,
)
from .monomial import (
    DegreeBasis,
    InvalidArgs,
    Monomial,
    component_basis,
    enumerate_component,
    enumerate_degree,
    weight_profile,
)
from .steenrod import (
    DEFAULT_LIMITS,
    ElementVector,
    Limits,
    hit_component_subspace,
    hit_generator_rows,
    pa_terms,
    q0_terms,
    y_basis,
    y_hit_subspace,
)

__all__ = [
    "DecompositionFailure",
    "DegreeMismatch",
    "MonotoneInjection",
    "TopLayerContext",
    "VerificationReport",
    "zk",
    "mono_injections",
    "translate_zk",
    "gn_subspace",
    "build_context",
    "theta",
    "epsilon",
    "theta_hit_image",
    "verify_parity_theorem",
    "verify_q0_edge_structure",
    "verify_reduced_power_vanishing",
    "johnson_orbit_check",
    "s_n_equivariance_check",
    "odd_parity_nonhit_check",
]


class DecompositionFailure(RuntimeError):
    """The candidate complement M_0 does not split off the translates."""


class DegreeMismatch(ValueError):
    pass


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k < n:
        raise InvalidArgs(f"need 1 <= k < n, got n={n}, k={k}")


@dataclass(frozen=True)
class MonotoneInjection:
    """A monotone map {1..k} -> {1..n}, stored as its image."""

    n: int
    k: int
    image: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise InvalidArgs(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        im = self.image
        if len(im) != self.k or any(a >= b for a, b in zip(im, im[1:])):
            raise InvalidArgs(f"image {im} is not a strictly increasing {self.k}-tuple")
        if im[0] < 1 or im[-1] > self.n:
            raise InvalidArgs(f"image {im} not inside 1..{self.n}")

    @classmethod
    def identity(cls, n: int, k: int) -> "MonotoneInjection":
        return cls(n, k, tuple(range(1, k + 1)))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.image)) + "}"


def mono_injections(n: int, k: int) -> list[MonotoneInjection]:
    """All k-subsets of {1..n}, lexicographic on sorted tuples."""
    if not 1 <= k <= n:
        raise InvalidArgs(f"need 1 <= k <= n, got n={n}, k={k}")
    return [MonotoneInjection(n, k, c) for c in itertools.combinations(range(1, n + 1), k)]


def translate_zk(n: int, k: int, sigma: MonotoneInjection) -> Monomial:
    """σ(z_k): x on im σ, y_{σ(j)}^(2^k - 2^(k-j) - 1), other y_i^(2^k - 1)."""
    _check_nk(n, k)
    if (sigma.n, sigma.k) != (n, k):
        raise InvalidArgs("injection does not match (n, k)")
    full = (1 << k) - 1
    yexp = [full] * n
    mask = 0
    for j, i in enumerate(sigma.image, start=1):
        yexp[i - 1] = full - (1 << (k - j))
        mask |= 1 << (i - 1)
    return Monomial(n, mask, tuple(yexp))


def zk(n: int, k: int) -> Monomial:
    _check_nk(n, k)
    return translate_zk(n, k, MonotoneInjection.identity(n, k))


def _omega_slice(m: Monomial, k: int) -> tuple[int, ...]:
    """(ω_1, ..., ω_k) of a monomial."""
    cols = m.columns()
    return tuple(sum(c >> j & 1 for c in cols) for j in range(1, k + 1))


def gn_subspace(n: int, k: int, D: int, limits: Limits = DEFAULT_LIMITS) -> Subspace:
    """G_n in pure-y degree ``D``, over ``y_basis(n, D)``.

    Spanned by the P^a images and by the monomials whose (ω_1..ω_k) is
    lexicographically below (n-1, ..., n-1).
    """
    basis = y_basis(n, D)
    builder = EchelonBuilder(len(basis))
    for r in y_hit_subspace(n, D, limits).int_rows:
        builder.add(r)
    bound = (n - 1,) * k
    for i, m in enumerate(basis.items):
        if _omega_slice(m, k) < bound:
            builder.add(1 << i)
    return builder.to_subspace()


@dataclass
class TopLayerContext:
    """Everything fixed by a choice of (n, k).  Treat as read-only."""

    n: int
    k: int
    d1: int
    d: int
    component: DegreeBasis
    ybasis: DegreeBasis
    gn: Subspace
    injections: list[MonotoneInjection]
    m1: list[int]
    m0: list[int]
    theta_rows: list[int]
    quotient_dim: int
    limits: Limits = DEFAULT_LIMITS
    cache_dir: object = None

    @property
    def N(self) -> int:
        return len(self.injections)

    @property
    def full_basis(self) -> DegreeBasis:
        return enumerate_degree(self.n, self.d)

    def subset_index(self, image: Iterable[int]) -> int:
        return self._subset_pos[tuple(sorted(image))]

    def __post_init__(self):
        self._subset_pos = {s.image: i for i, s in enumerate(self.injections)}

    def theta_bits(self, v: int) -> int:
        """theta on a bit-packed vector over the component basis."""
        out = 0
        for i, row in enumerate(self.theta_rows):
            if (v & row).bit_count() & 1:
                out |= 1 << i
        return out

    def component_bits(self, u: ElementVector) -> int:
        """pr_k of ``u`` as component coordinates."""
        b = u.basis
        if (b.n, b.d) != (self.n, self.d):
            raise DegreeMismatch(f"element of degree {b.d} (n={b.n}); expected {self.d} (n={self.n})")
        v = u.coeffs.bits
        if b.exterior is not None:
            return v if b.exterior == self.k else 0
        r = b.ranges.get(self.k)
        return (v >> r.start) & ((1 << len(r)) - 1)

    def translate(self, i: int) -> Monomial:
        return self.component.items[self.m1[i]]

    def u_s(self, S: Iterable[MonotoneInjection]) -> ElementVector:
        """Sum of the translates σ(z_k) for σ in S, over the component basis."""
        idx = {self.subset_index(s.image) for s in S}
        return ElementVector.from_monomials(self.component, (self.translate(i) for i in idx))

    def permute_subsets(self, perm: Sequence[int], v: int) -> int:
        """Action of a 0-based permutation of {1..n} on vectors indexed by k-subsets."""
        out = 0
        for i in iter_bits(v):
            image = tuple(perm[j - 1] + 1 for j in self.injections[i].image)
            out |= 1 << self.subset_index(image)
        return out


def build_context(n: int, k: int, limits: Limits = DEFAULT_LIMITS, cache_dir=None) -> TopLayerContext:
    _check_nk(n, k)
    d1 = (n - 1) * ((1 << k) - 1)
    d = k + 2 * d1
    comp = component_basis(n, d, k)
    limits.check_cols(len(comp))
    yb = y_basis(n, 2 * d1)
    ny = len(yb)
    gn = gn_subspace(n, k, 2 * d1, limits)
    nmasks = comb(n, k)
    assert len(comp) == nmasks * ny

    # Component index = mask position * ny + y index.
    builder = EchelonBuilder(len(comp))
    for p in range(nmasks):
        for r in gn.int_rows:
            builder.add(r << (p * ny))
    g_rank = builder.rank
    quotient_dim = len(comp) - g_rank

    injections = mono_injections(n, k)
    m1 = [comp.index[translate_zk(n, k, s)] for s in injections]

    only_m1 = EchelonBuilder(len(comp))
    for r in gn.int_rows:
        for p in range(nmasks):
            only_m1.add(r << (p * ny))
    for i in m1:
        if not only_m1.add(1 << i):
            raise DecompositionFailure(f"translates are dependent modulo G_n at (n,k)=({n},{k})")

    m1_set = set(m1)
    m0 = []
    for i, m in enumerate(comp.items):
        if i in m1_set:
            continue
        if min(weight_profile(m).alpha) < k and builder.add(1 << i):
            m0.append(i)
    for t, i in enumerate(m1):
        if not builder.add(1 << i, 1 << t):
            raise DecompositionFailure(f"U_0 meets V at (n,k)=({n},{k})")
    if builder.rank != len(comp):
        raise DecompositionFailure(
            f"U_0 + V has dimension {builder.rank - g_rank}, quotient has {quotient_dim}"
            f" at (n,k)=({n},{k})"
        )

    # Full rank: the reduced form is the identity and tags are theta of unit vectors.
    _, _, tags = builder.reduced()
    theta_rows = [0] * len(injections)
    for j, t in enumerate(tags):
        for i in iter_bits(t):
            theta_rows[i] |= 1 << j

    return TopLayerContext(
        n=n, k=k, d1=d1, d=d, component=comp, ybasis=yb, gn=gn,
        injections=injections, m1=m1, m0=m0, theta_rows=theta_rows,
        quotient_dim=quotient_dim, limits=limits, cache_dir=cache_dir,
    )


def theta(ctx: TopLayerContext, u: ElementVector) -> BitVector:
    return BitVector(ctx.theta_bits(ctx.component_bits(u)), ctx.N)


def epsilon(v: BitVector, N: int | None = None) -> int:
    if N is not None and v.length != N:
        raise LengthMismatch(f"length {v.length} != {N}")
    return v.popcount() & 1


def _hit_rows(ctx: TopLayerContext):
    """Hit generator rows landing in the Λ^k component: (op, a, source, row)."""
    return hit_generator_rows(ctx.component, ctx.limits)


def theta_hit_image(ctx: TopLayerContext) -> Subspace:
    return echelonize((ctx.theta_bits(row) for *_, row in _hit_rows(ctx)), ncols=ctx.N)


@dataclass
class VerificationReport:
    """Outcome of one verifier: boolean checks plus exact data."""

    name: str
    n: int
    k: int
    checks: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self, timings: bool = False) -> dict:
        out = {"name": self.name, "n": self.n, "k": self.k, "passed": self.passed,
               "checks": dict(self.checks), "data": self.data}
        if timings:
            out["timings"] = {key: round(v * 1000) for key, v in self.timings.items()}
        return out

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2)


class _Timer:
    def __init__(self, report: VerificationReport, key: str):
        self.report, self.key = report, key

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.key] = time.perf_counter() - self.t0


def _random_odd_subsets(rng: random.Random, injections, count: int) -> list[list[MonotoneInjection]]:
    N = len(injections)
    out = []
    for _ in range(count):
        size = rng.randrange(1, N + 1, 2)
        out.append(sorted(rng.sample(injections, size), key=lambda s: s.image))
    return out


def verify_parity_theorem(
    n: int, k: int, ctx: TopLayerContext | None = None, seed: int = 0, random_subsets: int = 3
) -> VerificationReport:
    """Image of hit elements under theta equals ker(epsilon), with witnesses."""
    rep = VerificationReport("parity_theorem", n, k)
    with _Timer(rep, "context"):
        ctx = ctx or build_context(n, k)
    N = ctx.N
    even = even_parity_subspace(N)

    with _Timer(rep, "hit_image"):
        gens = []
        images = []
        for op, a, m, row in _hit_rows(ctx):
            gens.append(row)
            images.append(BitVector(ctx.theta_bits(row), N))
        image = echelonize(images, ncols=N) if images else echelonize([], ncols=N)
    rep.checks["image_equals_ker_epsilon"] = image == even
    rep.data.update(N=N, d=ctx.d, image_rank=image.rank, expected_rank=N - 1,
                    component_dim=len(ctx.component), generators=len(gens))

    with _Timer(rep, "odd_witnesses"):
        rng = random.Random(seed)
        subsets = [[MonotoneInjection.identity(n, k)]] + _random_odd_subsets(rng, ctx.injections, random_subsets)
        odd = []
        for S in subsets:
            hit = odd_parity_nonhit_check(ctx, S)
            odd.append({"S": [str(s) for s in S], "hit": hit})
        rep.data["odd_witnesses"] = odd
        rep.checks["odd_sums_not_hit"] = not any(w["hit"] for w in odd)

    with _Timer(rep, "even_realization"):
        realized = []
        ok = True
        for v in even.int_rows:
            c = solve_preimage(images, BitVector(v, N))
            if c is None:
                ok = False
                realized.append({"target": str(BitVector(v, N)), "generators_used": None})
                continue
            h = 0
            for i in iter_bits(c.bits):
                h ^= gens[i]
            ok &= ctx.theta_bits(h) == v
            realized.append({"target": str(BitVector(v, N)), "generators_used": c.popcount()})
        rep.data["even_realization"] = realized
        rep.checks["even_vectors_realized"] = ok
    return rep


def verify_q0_edge_structure(ctx: TopLayerContext) -> VerificationReport:
    """theta(Q_0 z) over sources with ω_0 = k + 1, plus the explicit edge witness."""
    n, k, N = ctx.n, ctx.k, ctx.N
    rep = VerificationReport("q0_edge_structure", n, k)
    index = ctx.component.index
    sigma1 = ctx.subset_index((1,) + tuple(range(3, k + 2)))
    sigma2 = ctx.subset_index(tuple(range(2, k + 2)))
    edge = 1 << sigma1 | 1 << sigma2

    with _Timer(rep, "q0_images"):
        builder = EchelonBuilder(N)
        odd_parity = []
        witness = None
        candidates = 0
        for z in enumerate_component(n, k + 1, (ctx.d - 1 - (k + 1)) // 2):
            row = 0
            for t in q0_terms(z):
                row ^= 1 << index[t]
            v = ctx.theta_bits(row)
            if v.bit_count() & 1:
                odd_parity.append(str(z))
            builder.add(v)
            if witness is None:
                prof = weight_profile(z)
                if (prof.omega + (0, 0))[:2] == (k + 1, n - 2) and all(a == k for a in prof.alpha):
                    candidates += 1
                    if v == edge:
                        witness = str(z)
        span = builder.to_subspace()

    # Sources with ω_0 != k + 1 land outside Λ^k.
    with _Timer(rep, "other_sources"):
        stray = 0
        dm1 = ctx.d - 1
        for a in range(dm1 % 2, min(n, dm1) + 1, 2):
            if a == k + 1:
                continue
            for z in enumerate_component(n, a, (dm1 - a) // 2):
                stray += any(t.exterior_degree == k for t in q0_terms(z))

    rep.checks["all_even_parity"] = not odd_parity
    rep.checks["span_equals_ker_epsilon"] = span == even_parity_subspace(N)
    rep.checks["other_sources_vanish"] = stray == 0
    rep.data.update(
        span_rank=span.rank,
        odd_parity_sources=odd_parity[:10],
        edge=[str(ctx.injections[sigma1]), str(ctx.injections[sigma2])],
        edge_witness=witness,
        edge_witness_candidates_scanned=candidates,
    )
    return rep


def verify_reduced_power_vanishing(ctx: TopLayerContext) -> VerificationReport:
    """theta(P^a u) = 0 for every a >= 1 and every source u of degree d - 2a."""
    n, k, d = ctx.n, ctx.k, ctx.d
    rep = VerificationReport("reduced_power_vanishing", n, k)
    index = ctx.component.index
    failures = []
    checked = 0
    with _Timer(rep, "scan"):
        for a in range(1, d // 2 + 1):
            src = d - 2 * a
            for e in range(src % 2, min(n, src) + 1, 2):
                for u in enumerate_component(n, e, (src - e) // 2):
                    if a > u.ydegree:
                        checked += 1
                        continue
                    terms = pa_terms(a, u)
                    checked += 1
                    if e != k:
                        continue  # pr_k kills other exterior degrees
                    row = 0
                    for t in terms:
                        row ^= 1 << index[t]
                    if ctx.theta_bits(row):
                        failures.append(f"P^{a}({u})")
    rep.checks["all_vanish"] = not failures
    rep.data.update(sources_checked=checked, failures=failures[:10], failure_count=len(failures))
    return rep


def johnson_orbit_check(n: int, k: int) -> VerificationReport:
    """The S_n-orbit of the explicit edge is the edge set of J(n, k), which is connected."""
    _check_nk(n, k)
    rep = VerificationReport("johnson_orbit", n, k)
    s1 = frozenset((1,) + tuple(range(3, k + 2)))
    s2 = frozenset(range(2, k + 2))
    start = frozenset((s1, s2))

    def swap(edge, i):
        t = {i: i + 1, i + 1: i}
        return frozenset(frozenset(t.get(x, x) for x in s) for s in edge)

    orbit = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(1, n):
                f = swap(e, i)
                if f not in orbit:
                    orbit.add(f)
                    nxt.append(f)
        frontier = nxt

    vertices = [frozenset(c) for c in itertools.combinations(range(1, n + 1), k)]
    edges = {frozenset((a, b)) for a, b in itertools.combinations(vertices, 2) if len(a & b) == k - 1}
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(tuple(e) for e in edges)
    rep.checks["orbit_equals_edges"] = orbit == edges
    rep.checks["connected"] = nx.is_connected(g)
    rep.data.update(vertices=len(vertices), edges=len(edges), orbit_size=len(orbit))
    return rep


def s_n_equivariance_check(ctx: TopLayerContext, trials: int = 100, seed: int = 0) -> VerificationReport:
    """theta(τ·u) = τ·theta(u) for random permutations τ and random u of degree d."""
    n = ctx.n
    rep = VerificationReport("s_n_equivariance", n, ctx.k)
    basis = ctx.full_basis
    rng = random.Random(seed)
    failures = 0
    with _Timer(rep, "trials"):
        for t in range(trials):
            perm = list(range(n))
            if t:
                rng.shuffle(perm)
            u = rng.getrandbits(len(basis))
            tu = 0
            for i in iter_bits(u):
                tu |= 1 << basis.index[basis.items[i].permute(perm)]
            lhs = theta(ctx, ElementVector(basis, BitVector(tu, len(basis)))).bits
            rhs = ctx.permute_subsets(perm, theta(ctx, ElementVector(basis, BitVector(u, len(basis)))).bits)
            failures += lhs != rhs
    rep.checks["equivariant"] = failures == 0
    rep.data.update(trials=trials, failures=failures, seed=seed)
    return rep


def odd_parity_nonhit_check(ctx: TopLayerContext, S: Iterable[MonotoneInjection]) -> bool:
    """Whether u_S is hit; for |S| odd the answer must be False."""
    S = list(S)
    if not S:
        raise InvalidArgs("S must be non-empty")
    u = ctx.u_s(S)
    sub = hit_component_subspace(ctx.n, ctx.d, ctx.k, ctx.limits, ctx.cache_dir)
    return u.coeffs.bits in sub
