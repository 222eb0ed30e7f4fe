"""Explicit example families.

Every builder checks its output with the factorization engine before
returning it; a construction that misses its target raises
:class:`VerificationFailed` (or :class:`GroupTooSmall` when no variant
applies to the group at hand).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import factor
from .budget import Budget, default_budget
from .conductor import IdealExtensionMonoid
from .errors import BadParameters, GroupTooSmall, InsufficientRank, VerificationFailed
from .group import FiniteAbelianGroup, GroupElement
from .zerosum import FIotaMonoid, GSequence, ZeroSumContext, minimal_zero_sum_sequences


def deep_hole_monoid(s: int, alpha: int, unit_group: FiniteAbelianGroup | None = None) -> IdealExtensionMonoid:
    """N_{>=alpha}^s together with the identity."""
    if s < 1 or alpha < 1:
        raise BadParameters(f"need s >= 1 and alpha >= 1, got s={s}, alpha={alpha}")
    return IdealExtensionMonoid([(alpha,) * s], unit_group=unit_group)


def power_primary_monoid(alphas: Sequence[int], unit_group: FiniteAbelianGroup | None = None) -> IdealExtensionMonoid:
    """The ideal generated by one vector, plus the units."""
    alphas = tuple(int(a) for a in alphas)
    if not alphas or any(a < 1 for a in alphas):
        raise BadParameters(f"every exponent must be >= 1, got {alphas}")
    return IdealExtensionMonoid([alphas], unit_group=unit_group)


def cycle_monoid(m: int) -> IdealExtensionMonoid:
    """Ideal generated by e_i + e_{i+1} (indices mod 2m) in N_0^{2m}."""
    if m < 3:
        raise BadParameters(f"cycle monoid needs m >= 3, got {m}")
    s = 2 * m
    gens = []
    for i in range(s):
        v = [0] * s
        v[i] += 1
        v[(i + 1) % s] += 1
        gens.append(tuple(v))
    return IdealExtensionMonoid(gens)


def all_ones(s: int) -> tuple:
    return (1,) * s


# ------------------------------------------------------------------------------
# interval length sets [k, l] inside F_iota(G)


@dataclass
class IntervalWitness:
    case: str
    sequence: GSequence
    lengths: list
    attempts: list = field(default_factory=list)  # (case, reason) for every case skipped


def _seq(G: FiniteAbelianGroup, *parts) -> GSequence:
    """Build a sequence from (element, multiplicity) pairs."""
    counts: dict[GroupElement, int] = {}
    for g, m in parts:
        counts[g] = counts.get(g, 0) + m
    return GSequence.of(G, counts)


def _case1(G, k, ell, budget):
    if k != 2:
        return None, "needs k = 2"
    full = ZeroSumContext.full(G)
    atoms = [U for U in minimal_zero_sum_sequences(full, ell, budget) if len(U) == ell]
    if not atoms:
        return None, f"B({G}) has no atom of length {ell}"
    U = atoms[0]
    return U.negated() * U, None


def _case2(G, k, ell, budget):
    if ell != k + 1:
        return None, "needs l = k + 1"
    nonzero = [g for g in G.enumerate_elements(budget.element_cap) if not g.is_zero()]
    if not nonzero:
        return None, "group is trivial"
    g = nonzero[0]
    return _seq(G, (G.zero, k), (-g, 1), (g, 1)), None


def _case31(G, k, ell, budget):
    n = ell - k - 1
    if n < 1:
        return None, "needs l > k + 1"
    big = [g for g in G.enumerate_elements(budget.element_cap) if g.order() > 2 * n]
    if not big:
        return None, f"no element of order > {2 * n}"
    g = big[0]
    return _seq(G, (G.zero, k), (g, n), (-(g * n), 1), (-g, n), (g * n, 1)), None


def _is_elementary_2_group(G: FiniteAbelianGroup) -> bool:
    return all(q == 2 for q in G.cyclic_orders)


def _case32_special(G, k, ell, budget):
    if not (_is_elementary_2_group(G) and (k, ell) == (3, 5)):
        return None, "needs an elementary 2-group and [k, l] = [3, 5]"
    try:
        e1, e2 = G.independent_elements(2, 2)
    except InsufficientRank:
        return None, "rank < 2"
    return _seq(G, (G.zero, 2), (e1, 2), (e2, 2), (e1 + e2, 2)), None


def _case32(G, k, ell, budget):
    n = ell - k - 1
    if n < 1:
        return None, "needs l > k + 1"
    if _is_elementary_2_group(G) and k < 4 and n < 2:
        return None, "excluded for elementary 2-groups with k < 4 and n = 1"
    if G.rank < n:
        return None, f"rank {G.rank} < {n}"
    # summands by decreasing order, so e_1 has the largest order available
    idx = sorted(range(G.rank), key=lambda i: -G.cyclic_orders[i])[:n]
    es = [G.generator(i) for i in idx]
    if any(e.is_zero() for e in es):
        return None, "trivial summand"
    e0 = -sum(es[1:], es[0])
    A = _seq(G, (e0, 1), *((e, 1) for e in es))
    return _seq(G, (G.zero, k)) * A * A.negated(), None


_INTERVAL_CASES = (
    ("CASE 1", _case1),
    ("CASE 2", _case2),
    ("CASE 3.1", _case31),
    ("CASE 3.2 special", _case32_special),
    ("CASE 3.2", _case32),
)


def thm55_interval_witness(G: FiniteAbelianGroup, k: int, ell: int, budget: Budget | None = None) -> IntervalWitness:
    """A sequence S in F_iota(G) with min L(S) = k and max L(S) = ell.

    Cases are tried in a fixed order; each candidate is kept only if the
    engine confirms both ends of its length set. Raises GroupTooSmall when
    every case is inapplicable or misses in this group.
    """
    if not 2 <= k < ell:
        raise BadParameters(f"need 2 <= k < l, got k={k}, l={ell}")
    budget = budget or default_budget()
    attempts = []
    for name, build in _INTERVAL_CASES:
        S, reason = build(G, k, ell, budget)
        if S is None:
            attempts.append((name, reason))
            continue
        H = FIotaMonoid(ZeroSumContext(G, S.support), budget)
        L = factor.length_set(H, S)
        if min(L) == k and max(L) == ell:
            return IntervalWitness(name, S, L, attempts)
        attempts.append((name, f"{S} has length set {L}"))
    detail = "; ".join(f"{c}: {r}" for c, r in attempts)
    raise GroupTooSmall(f"no construction realizes [{k},{ell}] in {G} ({detail})")


def thm55_interval_sequence(G: FiniteAbelianGroup, k: int, ell: int, budget: Budget | None = None) -> GSequence:
    return thm55_interval_witness(G, k, ell, budget).sequence


# ------------------------------------------------------------------------------
# elements with exactly two factorizations of length n+1


@dataclass
class EqualCatenaryInstance:
    context: ZeroSumContext
    element: GSequence
    z: list  # atoms of the first factorization
    z_prime: list
    layer_size: int  # number of factorizations of length n+1 found by the engine
    distance: int
    c_eq: int


def _verify_two(ctx: ZeroSumContext, a: GSequence, z: list, z2: list, n: int, budget: Budget) -> EqualCatenaryInstance:
    H = FIotaMonoid(ctx, budget)
    prod = H.identity
    for u in z:
        prod = prod * u
    prod2 = H.identity
    for u in z2:
        prod2 = prod2 * u
    if prod != a or prod2 != a:
        raise VerificationFailed("the two products do not agree with the element")
    ef = factor.analyze(H, a, budget)
    layer = [f for f in ef.factorizations() if len(f) == n + 1]
    expected = {factor.Factorization(tuple(z)), factor.Factorization(tuple(z2))}
    if set(layer) != expected:
        raise VerificationFailed(f"{a} has {len(layer)} factorizations of length {n + 1}, expected exactly the two built")
    d = factor.distance(*layer)
    if d != n + 1:
        raise VerificationFailed(f"the two factorizations are at distance {d}, expected {n + 1}")
    return EqualCatenaryInstance(ctx, a, sorted(z), sorted(z2), len(layer), d, ef.catenary_eq())


def _small_prime_between(lo: int, hi: int) -> int:
    for p in range(max(lo, 2), hi + 1):
        if all(p % q for q in range(2, int(p**0.5) + 1)):
            return p
    raise BadParameters(f"no prime in [{lo}, {hi}]")


def equal_catenary_large_order(n: int, order: int | None = None, budget: Budget | None = None) -> EqualCatenaryInstance:
    """The A_0 A^n = B_0 ... B_n instance in a cyclic group.

    ``order`` defaults to n(2n^2)^n + 1; smaller orders are accepted and the
    two-factorization property is then checked rather than assumed.
    """
    if n < 2:
        raise BadParameters("n must be >= 2")
    budget = budget or default_budget()
    if order is None:
        order = n * (2 * n * n) ** n + 1
    p = _small_prime_between(n * n, 2 * n * n)
    G = FiniteAbelianGroup((order,))
    g = G.element((1,))
    pw = [g * (p**i) for i in range(n)]
    s = sum(pw[1:], pw[0])
    A = _seq(G, (-s, 1), *((x, 1) for x in pw))
    A0 = _seq(G, (s * n, 1), *((-(x * n), 1) for x in pw))
    Bn = _seq(G, (s * n, 1), (-s, n))
    Bs = [_seq(G, (-(x * n), 1), (x, n)) for x in pw]
    a = A0
    for _ in range(n):
        a = a * A
    ctx = ZeroSumContext(G, a.support)
    return _verify_two(ctx, a, [A0] + [A] * n, Bs + [Bn], n, budget)


def equal_catenary_bounded_exponent(n: int, p: int = 2, budget: Budget | None = None) -> EqualCatenaryInstance:
    """Rows and columns of an n x n grid of independent order-p elements.

    U_0 and V_0 carry the total, U_i the i-th row, V_j the j-th column; the
    element U_0 V_1 ... V_n equals V_0 U_1 ... U_n.
    """
    if n < 2:
        raise BadParameters("n must be >= 2")
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise BadParameters(f"p must be prime, got {p}")
    budget = budget or default_budget()
    G = FiniteAbelianGroup((p,) * (n * n))
    e = G.independent_elements(n * n, p)
    E = [[e[i * n + j] for j in range(n)] for i in range(n)]
    zero = G.zero
    e0 = sum((x for row in E for x in row), zero)
    f = [-sum(E[i], zero) for i in range(n)]
    gcol = [-sum((E[i][j] for i in range(n)), zero) for j in range(n)]
    U0 = _seq(G, (e0, 1), *((x, 1) for x in f))
    V0 = _seq(G, (e0, 1), *((x, 1) for x in gcol))
    U = [_seq(G, (f[i], 1), *((E[i][j], 1) for j in range(n))) for i in range(n)]
    V = [_seq(G, (gcol[j], 1), *((E[i][j], 1) for i in range(n))) for j in range(n)]
    a = U0
    for x in V:
        a = a * x
    ctx = ZeroSumContext(G, a.support)
    return _verify_two(ctx, a, [U0] + V, [V0] + U, n, budget)


def thm55_equal_catenary_instance(n: int, mode: str = "bounded_exponent", budget: Budget | None = None, **params) -> EqualCatenaryInstance:
    if n < 2:
        raise BadParameters("n must be >= 2")
    if mode == "large_order":
        return equal_catenary_large_order(n, params.get("order"), budget)
    if mode == "bounded_exponent":
        return equal_catenary_bounded_exponent(n, params.get("p", 2), budget)
    raise BadParameters(f"unknown mode {mode!r}")


def non_half_factorial_witness(ctx: ZeroSumContext, budget: Budget | None = None) -> GSequence | None:
    """An element of F_iota(G0) with lengths 2 and 3.

    With 0 in G0 this is 0^2 V for an atom V of B(G0) of length >= 2; without
    it, U^2 V for atoms U, V of B(G0) with |UV| minimal. ``None`` if B(G0)
    has no atom of length >= 2.
    """
    budget = budget or default_budget()
    from .zerosum import davenport

    atoms = [U for U in minimal_zero_sum_sequences(ctx, davenport(ctx, budget), budget) if len(U) >= 2]
    if not atoms:
        return None
    G = ctx.group
    if G.zero in ctx.support:
        return _seq(G, (G.zero, 2)) * atoms[0]
    best = min(itertools.product(atoms, repeat=2), key=lambda uv: (len(uv[0]) + len(uv[1]), uv))
    U, V = best
    return U * U * V


# ------------------------------------------------------------------------------
# recipes (the CLI ``construct`` family names)

FAMILIES = ("deep_hole", "power_primary", "cycle", "thm55_interval", "thm55_equal_catenary")
