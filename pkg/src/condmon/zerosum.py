"""Sequences over a subset G0 of a finite abelian group.

A sequence is a finite multiset of group elements, written multiplicatively:
``0^2 * (1) * (2)^3``. Around it live three monoids:

* B(G0), the zero-sum sequences;
* F_iota(G0), the sequences that are *not* zero-sum free, plus the empty one;
* F_phi, multisets over a finite labeled prime set P whose image under the
  labeling lies in F_iota(G0).

Zero-sum freeness is decided by growing the set of reachable subsums, which
never holds more than |G| elements.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import factor, kernels
from . import freemonoid as fm
from .budget import Budget, default_budget
from .conductor import VectorSubmonoid
from .errors import BoundAttained, BudgetExceeded, GroupMismatch, NotAMember, SpecError, UnknownPrime
from .group import FiniteAbelianGroup, GroupElement


# ------------------------------------------------------------------------------
# sequences


@dataclass(frozen=True)
class GSequence:
    """A multiset of elements of ``group``; ``items`` is sorted and has positive counts."""

    group: FiniteAbelianGroup
    items: tuple  # ((GroupElement, multiplicity), ...)

    @classmethod
    def of(cls, group: FiniteAbelianGroup, elements: Iterable[GroupElement] | Mapping[GroupElement, int] = ()) -> GSequence:
        counts: dict[GroupElement, int] = defaultdict(int)
        pairs = elements.items() if isinstance(elements, Mapping) else ((g, 1) for g in elements)
        for g, m in pairs:
            if not isinstance(g, GroupElement) or g.group != group:
                raise GroupMismatch(f"{g!r} is not an element of {group}")
            if m < 0:
                raise ValueError("multiplicities are non-negative")
            if m:
                counts[g] += m
        return cls(group, tuple(sorted(counts.items())))

    @classmethod
    def empty(cls, group: FiniteAbelianGroup) -> GSequence:
        return cls(group, ())

    @classmethod
    def parse(cls, group: FiniteAbelianGroup, text: str) -> GSequence:
        """Parse ``"0^2 * (1)^1 * g^3"``; ``"[]"`` or ``""`` is the empty sequence."""
        t = text.strip()
        if t in ("", "[]"):
            return cls.empty(group)
        counts: dict[GroupElement, int] = defaultdict(int)
        for factor_txt in t.split("*"):
            f = factor_txt.strip()
            if not f:
                raise SpecError(f"bad sequence literal {text!r}")
            base, _, exp = f.partition("^")
            try:
                mult = int(exp) if exp else 1
            except ValueError as exc:
                raise SpecError(f"bad multiplicity in {f!r}") from exc
            if mult < 0:
                raise SpecError(f"negative multiplicity in {f!r}")
            counts[group.parse_element(base)] += mult
        return cls.of(group, counts)

    # views
    def __len__(self) -> int:
        return sum(m for _, m in self.items)

    def __iter__(self) -> Iterator[GroupElement]:
        for g, m in self.items:
            for _ in range(m):
                yield g

    def multiplicity(self, g: GroupElement) -> int:
        return dict(self.items).get(g, 0)

    @property
    def support(self) -> tuple:
        return tuple(g for g, _ in self.items)

    @cached_property
    def _key(self) -> tuple:
        return tuple(g.residues for g in self)

    def __lt__(self, other: GSequence) -> bool:
        return (len(self), self._key) < (len(other), other._key)

    def __le__(self, other: GSequence) -> bool:
        return self == other or self < other

    def __gt__(self, other: GSequence) -> bool:
        return other < self

    def __ge__(self, other: GSequence) -> bool:
        return other <= self

    def __str__(self) -> str:
        if not self.items:
            return "[]"
        parts = []
        for g, m in self.items:
            base = "0" if g.is_zero() else str(g)
            parts.append(base if m == 1 else f"{base}^{m}")
        return " * ".join(parts)

    def __repr__(self) -> str:
        return f"GSequence({self.group}, {self})"

    # arithmetic
    def _same(self, other: GSequence):
        if other.group != self.group:
            raise GroupMismatch(f"sequences over {self.group} and {other.group}")

    def __mul__(self, other: GSequence) -> GSequence:
        self._same(other)
        counts = dict(self.items)
        for g, m in other.items:
            counts[g] = counts.get(g, 0) + m
        return GSequence(self.group, tuple(sorted(counts.items())))

    def divides(self, other: GSequence) -> bool:
        self._same(other)
        mine = dict(other.items)
        return all(mine.get(g, 0) >= m for g, m in self.items)

    def checked_divide(self, other: GSequence) -> GSequence | None:
        """self / other as multisets, or ``None`` if other does not divide self."""
        self._same(other)
        counts = dict(self.items)
        for g, m in other.items:
            left = counts.get(g, 0) - m
            if left < 0:
                return None
            if left:
                counts[g] = left
            else:
                del counts[g]
        return GSequence(self.group, tuple(sorted(counts.items())))

    def negated(self) -> GSequence:
        return GSequence.of(self.group, {-g: m for g, m in self.items})

    def sub_sequences(self) -> Iterator[GSequence]:
        """All divisors, as multisets."""
        elems = [g for g, _ in self.items]
        for mults in itertools.product(*(range(m + 1) for _, m in self.items)):
            yield GSequence(self.group, tuple((g, k) for g, k in zip(elems, mults) if k))


def sequence(group: FiniteAbelianGroup, elements: Iterable[GroupElement] | Mapping[GroupElement, int] = ()) -> GSequence:
    return GSequence.of(group, elements)


def sigma(S: GSequence) -> GroupElement:
    total = S.group.zero
    for g, m in S.items:
        total = total + g * m
    return total


def reachable_subsums(S: GSequence, stop_at_zero: bool = False) -> set:
    """Sums of all nonempty subsequences."""
    reach: set = set()
    zero = S.group.zero
    for g in S:
        reach |= {r + g for r in reach}
        reach.add(g)
        if stop_at_zero and zero in reach:
            break
    return reach


def is_zero_sum_free(S: GSequence, budget: Budget | None = None) -> bool:
    budget = budget or default_budget()
    if len(S) > budget.sequence_cap:
        raise BudgetExceeded(f"|S| = {len(S)} exceeds sequence cap {budget.sequence_cap}", length=len(S))
    if any(g.is_zero() for g in S.support):
        return False
    return S.group.zero not in reachable_subsums(S, stop_at_zero=True)


def in_F_iota(S: GSequence, budget: Budget | None = None) -> bool:
    return len(S) == 0 or not is_zero_sum_free(S, budget)


def is_zero_sum(S: GSequence) -> bool:
    return sigma(S).is_zero()


def is_minimal_zero_sum(S: GSequence) -> bool:
    """Brute force: S is zero-sum and no proper nonempty divisor is."""
    if len(S) == 0 or not is_zero_sum(S):
        return False
    for T in S.sub_sequences():
        if 0 < len(T) < len(S) and is_zero_sum(T):
            return False
    return True


# ------------------------------------------------------------------------------
# contexts


@dataclass(frozen=True)
class ZeroSumContext:
    group: FiniteAbelianGroup
    support: tuple  # sorted GroupElements, the set G0

    def __post_init__(self):
        sup = tuple(sorted(set(self.support)))
        if not sup:
            raise SpecError("support G0 must be nonempty")
        for g in sup:
            if not isinstance(g, GroupElement) or g.group != self.group:
                raise GroupMismatch(f"{g!r} is not an element of {self.group}")
        object.__setattr__(self, "support", sup)

    @classmethod
    def full(cls, group: FiniteAbelianGroup) -> ZeroSumContext:
        return cls(group, tuple(group.enumerate_elements()))

    def __str__(self):
        if len(self.support) == self.group.cardinality:
            return f"{self.group}"
        return f"{self.group}[{','.join(map(str, self.support))}]"

    def check(self, S: GSequence) -> GSequence:
        if S.group != self.group:
            raise GroupMismatch(f"sequence over {S.group}, context over {self.group}")
        extra = set(S.support) - set(self.support)
        if extra:
            raise NotAMember(f"{S} uses {sorted(extra)[0]} outside G0")
        return S

    def parse(self, text: str) -> GSequence:
        return self.check(GSequence.parse(self.group, text))

    def to_vector(self, S: GSequence) -> tuple:
        counts = dict(self.check(S).items)
        return tuple(counts.get(g, 0) for g in self.support)

    def from_vector(self, v: Sequence[int]) -> GSequence:
        return GSequence(self.group, tuple((g, int(m)) for g, m in zip(self.support, v) if m))

    def sequences(self, max_len: int, min_len: int = 0) -> Iterator[GSequence]:
        """Every sequence over G0 with min_len <= |S| <= max_len, shortest first."""
        for n in range(min_len, max_len + 1):
            for combo in itertools.combinations_with_replacement(self.support, n):
                yield GSequence.of(self.group, combo)


@dataclass
class _ZSFSearch:
    longest_zsf: int
    atoms: list


def _zsf_dfs(ctx: ZeroSumContext, max_atom_len: int | None, budget: Budget) -> _ZSFSearch:
    """DFS over non-decreasing zero-sum-free sequences T over G0.

    Each minimal zero-sum sequence A with |A| >= 1 is T * h where h is its
    largest element and T = A / h is zero-sum free; it is emitted exactly once,
    when the DFS stands at T and h = -sigma(T) is admissible.
    """
    sup = ctx.support
    pos = {g: i for i, g in enumerate(sup)}
    zero = ctx.group.zero
    atoms: list = []
    longest = 0
    nodes = 0

    def visit(T: list, reach: frozenset, total: GroupElement, lo: int):
        nonlocal longest, nodes
        nodes += 1
        if nodes > budget.element_cap:
            raise BudgetExceeded("zero-sum-free search exceeded element cap", nodes=nodes, longest=longest)
        longest = max(longest, len(T))
        h = -total
        if h in pos and pos[h] >= lo and (max_atom_len is None or len(T) + 1 <= max_atom_len):
            atoms.append(GSequence.of(ctx.group, T + [h]))
        if max_atom_len is not None and len(T) + 2 > max_atom_len:
            return
        for j in range(lo, len(sup)):
            g = sup[j]
            if g == zero:
                continue
            grown = reach | {r + g for r in reach} | {g}
            if zero in grown:
                continue
            visit(T + [g], frozenset(grown), total + g, j)

    visit([], frozenset(), zero, 0)
    atoms.sort()
    return _ZSFSearch(longest, atoms)


def minimal_zero_sum_sequences(ctx: ZeroSumContext, max_len: int, budget: Budget | None = None) -> list[GSequence]:
    """Atoms of B(G0) of length <= max_len, sorted."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    return _zsf_dfs(ctx, max_len, budget or default_budget()).atoms


def davenport(ctx: ZeroSumContext, budget: Budget | None = None) -> int:
    """Largest length of a minimal zero-sum sequence over G0 (DFS over zero-sum-free prefixes)."""
    atoms = _zsf_dfs(ctx, None, budget or default_budget()).atoms
    return max(len(A) for A in atoms)


def max_zero_sum_free_length(ctx: ZeroSumContext, budget: Budget | None = None) -> int:
    return _zsf_dfs(ctx, None, budget or default_budget()).longest_zsf


def davenport_brute_force(ctx: ZeroSumContext, max_len: int | None = None) -> int:
    """Check every multiset over G0 up to length |G| for minimal zero-sum-ness.

    No pruning and no use of zero-sum freeness; an independent route to D(G0).
    """
    n = ctx.group.cardinality if max_len is None else max_len
    best = 0
    for S in ctx.sequences(n, 1):
        if len(S) > best and is_minimal_zero_sum(S):
            best = len(S)
    return best


# ------------------------------------------------------------------------------
# F_iota


class FIotaMonoid:
    """F_iota(G0) as an atomic oracle whose elements are GSequences."""

    def __init__(self, ctx: ZeroSumContext, budget: Budget | None = None):
        self.ctx = ctx
        self.budget = budget or default_budget()
        self._vec = VectorSubmonoid(
            len(ctx.support), lambda v: in_F_iota(ctx.from_vector(v), self.budget), name=f"F_iota({ctx})", budget=self.budget
        )

    def __repr__(self):
        return f"F_iota({self.ctx})"

    @property
    def identity(self) -> GSequence:
        return GSequence.empty(self.ctx.group)

    def element(self, x) -> GSequence:
        if isinstance(x, str):
            return self.ctx.parse(x)
        return self.ctx.check(x)

    def format(self, S: GSequence) -> str:
        return str(S)

    unit_moduli = ()

    def encode(self, S: GSequence) -> tuple:
        return self.ctx.to_vector(S)

    def contains(self, S) -> bool:
        S = self.element(S)
        return self._vec.contains(self.ctx.to_vector(S))

    def is_identity(self, S) -> bool:
        return len(S) == 0

    def combine(self, a: GSequence, b: GSequence) -> GSequence:
        return a * b

    def checked_divide(self, a: GSequence, b: GSequence) -> GSequence | None:
        return a.checked_divide(b)

    def divides_in_monoid(self, u, a) -> bool:
        rest = a.checked_divide(u)
        return rest is not None and self.contains(rest)

    def is_atom(self, S) -> bool:
        return self._vec.is_atom(self.ctx.to_vector(self.element(S)))

    def atoms_dividing(self, a) -> list[GSequence]:
        a = self.element(a)
        if not self.contains(a):
            raise NotAMember(f"{a} is not in {self!r}")
        return sorted(self.ctx.from_vector(v) for v in self._vec.atoms_dividing(self.ctx.to_vector(a)))

    def f_divisors(self, S: GSequence) -> Iterator[GSequence]:
        return S.sub_sequences()

    def domain(self, max_len: int) -> list[GSequence]:
        return [S for S in self.ctx.sequences(max_len) if self.contains(S)]


def atoms_of_F_iota(ctx: ZeroSumContext, a: GSequence, budget: Budget | None = None) -> list[GSequence]:
    return FIotaMonoid(ctx, budget).atoms_dividing(a)


@dataclass(frozen=True)
class GlobalAtoms:
    atoms: list
    length_bound: int  # D(G0) + d(G0); no atom is longer
    davenport: int
    max_zero_sum_free: int


def global_atoms_F_iota(ctx: ZeroSumContext, budget: Budget | None = None) -> GlobalAtoms:
    """All atoms of F_iota(G0).

    An atom S contains a minimal zero-sum B (|B| <= D) and S / B must be zero-sum
    free (else S splits), so |S| <= D + d with d the largest zero-sum-free
    length over G0. The scan covers lengths up to that bound and one more;
    an atom at bound + 1 raises BoundAttained.
    """
    budget = budget or default_budget()
    search = _zsf_dfs(ctx, None, budget)
    D = max(len(A) for A in search.atoms)
    d = search.longest_zsf
    bound = D + d
    H = FIotaMonoid(ctx, budget)
    found = []
    for S in ctx.sequences(bound + 1, 1):
        if H.contains(S) and H.is_atom(S):
            if len(S) > bound:
                raise BoundAttained(f"{S} is an atom of length {len(S)} > D + d = {bound}")
            found.append(S)
    return GlobalAtoms(sorted(found), bound, D, d)


# ------------------------------------------------------------------------------
# labeled primes and F_phi


class LabeledPrimes:
    """A finite prime set P with a class map P -> G0."""

    def __init__(self, group: FiniteAbelianGroup, labels: Mapping[str, GroupElement], support: Iterable[GroupElement] | None = None):
        if not labels:
            raise SpecError("at least one prime is required")
        for name, g in labels.items():
            if not isinstance(g, GroupElement) or g.group != group:
                raise GroupMismatch(f"label of {name!r} is not an element of {group}")
        self.group = group
        self.primes = tuple(sorted(labels))
        self.labels = {p: labels[p] for p in self.primes}
        sup = tuple(support) if support is not None else tuple(self.labels.values())
        self.ctx = ZeroSumContext(group, sup)
        outside = [p for p in self.primes if self.labels[p] not in self.ctx.support]
        if outside:
            raise SpecError(f"prime {outside[0]!r} is labeled outside G0")

    def __repr__(self):
        inner = ", ".join(f"{p}:{self.labels[p]}" for p in self.primes)
        return f"LabeledPrimes({self.group}; {inner})"

    def vector(self, a) -> tuple:
        """Coerce a literal, a mapping, an iterable of names or a vector."""
        if isinstance(a, str):
            return self.parse(a)
        if isinstance(a, Mapping):
            unknown = set(a) - set(self.primes)
            if unknown:
                raise UnknownPrime(f"unknown prime {sorted(unknown)[0]!r}")
            return tuple(int(a.get(p, 0)) for p in self.primes)
        a = tuple(a)
        if all(isinstance(x, str) for x in a) and a:
            counts: dict[str, int] = defaultdict(int)
            for x in a:
                counts[x] += 1
            return self.vector(counts)
        v = fm.vector(a)
        if len(v) != len(self.primes):
            raise UnknownPrime(f"vector {v} does not match {len(self.primes)} primes")
        return v

    def parse(self, text: str) -> tuple:
        t = text.strip()
        if t in ("", "[]"):
            return (0,) * len(self.primes)
        counts: dict[str, int] = defaultdict(int)
        for f in t.split("*"):
            name, _, exp = f.strip().partition("^")
            name = name.strip()
            if name not in self.labels:
                raise UnknownPrime(f"unknown prime {name!r}")
            try:
                counts[name] += int(exp) if exp else 1
            except ValueError as exc:
                raise SpecError(f"bad multiplicity in {f!r}") from exc
        return self.vector(counts)

    def format(self, v: Sequence[int]) -> str:
        parts = [p if m == 1 else f"{p}^{m}" for p, m in zip(self.primes, v) if m]
        return " * ".join(parts) or "[]"


def beta_tilde(lp: LabeledPrimes, a) -> GSequence:
    v = lp.vector(a)
    counts: dict[GroupElement, int] = defaultdict(int)
    for p, m in zip(lp.primes, v):
        if m:
            counts[lp.labels[p]] += m
    return GSequence.of(lp.group, counts)


def in_F_phi(lp: LabeledPrimes, a, budget: Budget | None = None) -> bool:
    return in_F_iota(beta_tilde(lp, a), budget)


class FPhiMonoid(VectorSubmonoid):
    """F_phi as a submonoid of N_0^|P| (coordinates follow ``lp.primes``)."""

    def __init__(self, lp: LabeledPrimes, budget: Budget | None = None):
        budget = budget or default_budget()
        super().__init__(len(lp.primes), lambda v: in_F_phi(lp, v, budget), name=f"F_phi({lp!r})", budget=budget)
        self.lp = lp

    def element(self, x) -> tuple:
        return self.lp.vector(x)

    def format(self, v) -> str:
        return self.lp.format(v)

    def f_divisors(self, v) -> Iterator[tuple]:
        return fm.divisor_enumeration(v)


@dataclass
class TransferReport:
    ok: bool
    t1_ok: bool
    t2_ok: bool
    sequences_checked: int
    elements_checked: int
    splits_checked: int
    witness: str | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "T1": self.t1_ok,
            "T2": self.t2_ok,
            "sequences_checked": self.sequences_checked,
            "elements_checked": self.elements_checked,
            "splits_checked": self.splits_checked,
            "witness": self.witness,
        }


def transfer_check(lp: LabeledPrimes, window_len: int, budget: Budget | None = None) -> TransferReport:
    """Check (T1) and (T2) for beta* : F_phi -> F_iota(G0) on all elements of length <= window_len."""
    budget = budget or default_budget()
    if window_len > budget.sequence_length * 4:
        raise BudgetExceeded(f"window length {window_len} is above the cap", window_len=window_len)
    ctx = lp.ctx
    first_prime = {}
    for p in lp.primes:
        first_prime.setdefault(lp.labels[p], p)

    # (T1): surjectivity onto F_iota up to units (the only unit is the empty sequence on both sides)
    t1_ok, witness, n_seq = True, None, 0
    for S in ctx.sequences(window_len):
        if not in_F_iota(S, budget):
            continue
        n_seq += 1
        if any(g not in first_prime for g in S.support):
            t1_ok, witness = False, f"T1: {S} has no preimage"
            break
        pre = {first_prime[g]: m for g, m in S.items}
        if beta_tilde(lp, pre) != S or not in_F_phi(lp, pre, budget):
            t1_ok, witness = False, f"T1: {S} has no preimage in F_phi"
            break

    # (T2): every split of beta*(a) in F_iota lifts to a split of a in F_phi
    t2_ok, n_el, n_split = True, 0, 0
    for combo in itertools.chain.from_iterable(
        itertools.combinations_with_replacement(range(len(lp.primes)), n) for n in range(window_len + 1)
    ):
        v = [0] * len(lp.primes)
        for i in combo:
            v[i] += 1
        a = tuple(v)
        if not in_F_phi(lp, a, budget):
            continue
        n_el += 1
        image = beta_tilde(lp, a)
        lifts: dict[GSequence, list] = defaultdict(list)
        for d in fm.divisor_enumeration(a):
            lifts[beta_tilde(lp, d)].append(d)
        for B in image.sub_sequences():
            C = image.checked_divide(B)
            if not (in_F_iota(B, budget) and in_F_iota(C, budget)):
                continue
            n_split += 1
            ok = any(
                in_F_phi(lp, d, budget) and in_F_phi(lp, tuple(x - y for x, y in zip(a, d)), budget)
                for d in lifts.get(B, ())
            )
            if not ok:
                t2_ok = False
                if witness is None:
                    witness = f"T2: {lp.format(a)} with split {B} | {C}"
                break
        if not t2_ok:
            break
    return TransferReport(t1_ok and t2_ok, t1_ok, t2_ok, n_seq, n_el, n_split, witness)


def fiber_catenary_check(lp: LabeledPrimes, a, budget: Budget | None = None) -> int:
    """Largest bottleneck inside a fibre of Z(a) -> Z(beta*(a))."""
    H = FPhiMonoid(lp, budget)
    ef = factor.analyze(H, lp.vector(a), budget)
    if len(ef) <= 1:
        return 0
    image_of_atom = [beta_tilde(lp, u) for u in ef.atoms]
    fibres: dict[tuple, list[int]] = defaultdict(list)
    for i, row in enumerate(ef.rows):
        fibres[tuple(sorted(image_of_atom[j] for j in row))].append(i)
    worst = 0
    for idx in fibres.values():
        if len(idx) < 2:
            continue
        fact, lens = ef.packed(idx)
        worst = max(worst, kernels.bottleneck(kernels.distance_matrix(fact, lens)))
    return worst
