"""Factorization engine over any atomic monoid oracle.

An oracle is any object with

* ``identity`` and ``is_identity(x)``
* ``contains(x)``
* ``atoms_dividing(a)`` -- every atom u with u | a in the ambient free monoid
* ``combine(x, y)`` and ``checked_divide(x, y)`` (quotient in the ambient
  free monoid, or ``None``)

Elements must be hashable and totally ordered; that order is the canonical
atom order, so enumeration is reproducible.

Factorizations of one element are enumerated by recursive descent that picks
atoms in non-decreasing canonical order, which visits every multiset once.
Catenary-type invariants are bottleneck problems on the complete distance
graph and go through :mod:`condmon.kernels`.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Any, Iterable, Protocol, Sequence

import numpy as np

from . import kernels
from .budget import Budget, default_budget
from .errors import BudgetExceeded, NotAMember


class AtomicOracle(Protocol):
    identity: Any

    def contains(self, x) -> bool: ...

    def is_identity(self, x) -> bool: ...

    def atoms_dividing(self, a) -> list: ...

    def combine(self, x, y): ...

    def checked_divide(self, x, y): ...


@dataclass(frozen=True)
class Factorization:
    """A multiset of atoms, stored sorted."""

    atoms: tuple

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(sorted(self.atoms)))

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __str__(self):
        return " * ".join(f"[{u}]" for u in self.atoms) or "1"


def distance(z: Factorization | Sequence, z2: Factorization | Sequence) -> int:
    """max(|z / gcd|, |z' / gcd|) with gcd the multiset intersection."""
    c1, c2 = Counter(z), Counter(z2)
    common = sum((c1 & c2).values())
    return max(sum(c1.values()) - common, sum(c2.values()) - common)


class _GenericDescent:
    """Recursion arithmetic through the oracle's own divide; candidates are tuples."""

    def __init__(self, oracle, atoms):
        self.oracle, self.atoms = oracle, atoms

    def root(self, a):
        return a, self.restrict(a, tuple(range(len(self.atoms))))

    def is_one(self, key) -> bool:
        return self.oracle.is_identity(key)

    def step(self, rem, j):
        return self.oracle.checked_divide(rem, self.atoms[j])

    def restrict(self, rest, cands):
        o = self.oracle
        return tuple(i for i in cands if o.checked_divide(rest, self.atoms[i]) is not None)

    @staticmethod
    def indices(cands) -> tuple:
        return cands

    @staticmethod
    def first(cands):
        return cands[0] if cands else None

    def children(self, rem, cands):
        for pos, j in enumerate(cands):
            rest = self.step(rem, j)
            yield j, rest, self.restrict(rest, cands[pos:])


class _EncodedDescent:
    """Recursion on integer encodings: exponent vector, then unit residues.

    Ambient divisibility is componentwise <= on the vector part; unit
    residues are subtracted modulo their orders and never block a division.
    Candidate sets are int bitsets over atom indices, and ``below[c][v]`` is
    the set of atoms whose c-th coordinate is at most v.
    """

    def __init__(self, oracle, atoms):
        self.oracle, self.atoms = oracle, atoms
        self.mod = tuple(oracle.unit_moduli)
        self.enc = [tuple(oracle.encode(u)) for u in atoms]
        self.s = len(oracle.encode(oracle.identity)) - len(self.mod)
        self.all = (1 << len(atoms)) - 1
        self.below = []
        for c in range(self.s):
            top = max((e[c] for e in self.enc), default=0)
            table = []
            for v in range(top + 1):
                table.append(sum(1 << j for j, e in enumerate(self.enc) if e[c] <= v))
            self.below.append(table)

    def _divides(self, vec, cands: int) -> int:
        for c, v in enumerate(vec):
            table = self.below[c]
            if v < len(table) - 1:
                cands &= table[v]
                if not cands:
                    return 0
        return cands

    def root(self, a):
        key = tuple(self.oracle.encode(a))
        return key, self._divides(key[: self.s], self.all)

    def is_one(self, key) -> bool:
        return not any(key)

    def step(self, rem, j):
        s, u = self.s, self.enc[j]
        vec = tuple(x - y for x, y in zip(rem[:s], u[:s]))
        if self.mod:
            return vec + tuple((x - y) % n for x, y, n in zip(rem[s:], u[s:], self.mod))
        return vec

    def restrict(self, rest, cands: int) -> int:
        return self._divides(rest[: self.s], cands)

    @staticmethod
    def indices(cands: int) -> list:
        out = []
        while cands:
            low = cands & -cands
            out.append(low.bit_length() - 1)
            cands ^= low
        return out

    @staticmethod
    def first(cands: int):
        return (cands & -cands).bit_length() - 1 if cands else None

    def children(self, rem, cands: int):
        m = cands
        while m:
            low = m & -m
            j = low.bit_length() - 1
            rest = self.step(rem, j)
            yield j, rest, self._divides(rest[: self.s], m)
            m ^= low


def _descent(oracle, atoms):
    if hasattr(oracle, "encode") and hasattr(oracle, "unit_moduli"):
        return _EncodedDescent(oracle, atoms)
    return _GenericDescent(oracle, atoms)


class ElementFactorizations:
    """All factorizations of one element, held as rows of atom indices.

    ``rows[i]`` is a non-decreasing tuple of indices into ``atoms``.
    """

    def __init__(self, oracle, a, budget: Budget | None = None, engine: FactorizationEngine | None = None):
        self.oracle = oracle
        self.budget = budget or getattr(oracle, "budget", None) or default_budget()
        if hasattr(oracle, "element"):
            a = oracle.element(a)
        if not oracle.contains(a):
            raise NotAMember(f"{a} is not a member of {oracle!r}")
        self.element = a
        if oracle.is_identity(a):
            self.atoms: list = [] if engine is None else engine.atoms
            self.rows: list[tuple] = [()]
            self.count = 1
            return
        if engine is None:
            self.atoms = sorted(oracle.atoms_dividing(a))
            self._d = _descent(oracle, self.atoms)
            count_memo: dict = {}
            list_memo: dict = {}
        else:
            # indices refer to the engine's window-wide atom list, so memo entries are shareable
            self.atoms = engine.atoms
            self._d = engine.descent
            count_memo, list_memo = engine.count_memo, engine.list_memo
        key, root = self._d.root(a)
        total = self._count(key, root, count_memo)
        self.count = total
        if total > self.budget.factorization_cap:
            raise BudgetExceeded(
                f"{a} has {total} factorizations, cap is {self.budget.factorization_cap}",
                element=str(a),
                Z_count=total,
                atoms=len(self._d.indices(root)),
            )
        self.rows = self._list(key, root, list_memo)
        del self._d

    # recursion helpers ------------------------------------------------------
    # The candidate list of a subproblem is every atom index >= its first
    # entry that divides the remainder, so (remainder, first index) is a key.

    def _count(self, rem, cands, memo) -> int:
        if self._d.is_one(rem):
            return 1
        first = self._d.first(cands)
        if first is None:
            return 0
        key = (rem, first)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        for j, rest, sub in self._d.children(rem, cands):
            total += self._count(rest, sub, memo)
        memo[key] = total
        return total

    def _list(self, rem, cands, memo) -> list[tuple]:
        if self._d.is_one(rem):
            return [()]
        first = self._d.first(cands)
        if first is None:
            return []
        key = (rem, first)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out = []
        for j, rest, sub in self._d.children(rem, cands):
            out.extend((j,) + t for t in self._list(rest, sub, memo))
        memo[key] = out
        return out

    # views ------------------------------------------------------------------

    def __len__(self):
        return len(self.rows)

    def factorizations(self) -> list[Factorization]:
        return [Factorization(tuple(self.atoms[i] for i in r)) for r in self.rows]

    @property
    def lengths(self) -> np.ndarray:
        return np.array([len(r) for r in self.rows], dtype=np.int32)

    def length_set(self) -> list[int]:
        return sorted({len(r) for r in self.rows})

    def packed(self, idx: Sequence[int] | None = None):
        """(fact, lens) int32 arrays for the kernels."""
        rows = self.rows if idx is None else [self.rows[i] for i in idx]
        m = max((len(r) for r in rows), default=0)
        fact = np.full((len(rows), max(m, 1)), -1, dtype=np.int32)
        for i, r in enumerate(rows):
            fact[i, : len(r)] = r
        lens = np.array([len(r) for r in rows], dtype=np.int32)
        return fact, lens

    def distance_matrix(self) -> np.ndarray:
        fact, lens = self.packed()
        return kernels.distance_matrix(fact, lens)

    @property
    def dense(self) -> bool:
        return len(self.rows) <= self.budget.dense_limit

    def _matrix(self):
        if not hasattr(self, "_D"):
            self._D = self.distance_matrix()
        return self._D

    def _layers(self) -> dict[int, list[int]]:
        layers = defaultdict(list)
        for i, r in enumerate(self.rows):
            layers[len(r)].append(i)
        return dict(sorted(layers.items()))

    # invariants -------------------------------------------------------------

    def catenary(self) -> int:
        n = len(self.rows)
        if n <= 1:
            return 0
        if self.dense:
            return kernels.bottleneck(self._matrix())
        fact, lens = self.packed()
        return _threshold_search(fact, lens)

    def catenary_unionfind(self) -> int:
        """Second route: raise the threshold until union-find joins everything."""
        n = len(self.rows)
        if n <= 1:
            return 0
        D = self._matrix()
        iu, ju = np.triu_indices(n, 1)
        w = D[iu, ju]
        order = np.argsort(w, kind="stable")
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = n
        for e in order:
            ri, rj = find(int(iu[e])), find(int(ju[e]))
            if ri != rj:
                parent[ri] = rj
                comps -= 1
                if comps == 1:
                    return int(w[e])
        raise AssertionError("complete graph failed to connect")

    def catenary_eq(self) -> int:
        worst = 0
        for idx in self._layers().values():
            if len(idx) < 2:
                continue
            if self.dense:
                sub = np.ascontiguousarray(self._matrix()[np.ix_(idx, idx)])
                worst = max(worst, kernels.bottleneck(sub))
            else:
                fact, lens = self.packed(idx)
                worst = max(worst, _threshold_search(fact, lens))
        return worst

    def catenary_adj(self) -> int:
        layers = self._layers()
        ks = list(layers)
        worst = 0
        for k, l in zip(ks, ks[1:]):
            worst = max(worst, self._set_distance(layers[k], layers[l]))
        return worst

    def _set_distance(self, X, Y) -> int:
        if self.dense:
            return int(self._matrix()[np.ix_(X, Y)].min())
        fact, lens = self.packed(list(X) + list(Y))
        best = None
        for i in range(len(X)):
            row = kernels.distance_row(fact, lens, i)[len(X):]
            m = int(row.min())
            best = m if best is None else min(best, m)
        return best

    def catenary_mon(self) -> int:
        return max(self.catenary_eq(), self.catenary_adj())


class FactorizationEngine:
    """Shared state for many elements below one top element.

    The atoms dividing ``top`` are computed once; counting, listing and
    length-set memos are then reused across every element that divides ``top``.
    """

    def __init__(self, oracle, top, budget: Budget | None = None):
        self.oracle = oracle
        self.budget = budget or getattr(oracle, "budget", None) or default_budget()
        if hasattr(oracle, "element"):
            top = oracle.element(top)
        self.top = top
        self.atoms = sorted(oracle.atoms_dividing(top))
        self.descent = _descent(oracle, self.atoms)
        self.count_memo: dict = {}
        self.list_memo: dict = {}
        self._length_memo: dict = {}

    def analyze(self, a) -> ElementFactorizations:
        o = self.oracle
        if hasattr(o, "element"):
            a = o.element(a)
        if o.checked_divide(self.top, a) is None:
            raise NotAMember(f"{a} does not divide the engine's top element {self.top}")
        return ElementFactorizations(o, a, self.budget, engine=self)

    def length_set(self, a) -> list[int]:
        o = self.oracle
        if hasattr(o, "element"):
            a = o.element(a)
        if not o.contains(a):
            raise NotAMember(f"{a} is not a member of {o!r}")
        key, root = self.descent.root(a)
        mask = _length_mask(self.descent, key, root, self._length_memo)
        return [k for k in range(mask.bit_length()) if mask >> k & 1]


def _length_mask(d, rem, cands, memo) -> int:
    """Bit k set iff rem has a factorization of length k.

    Order does not matter here, so the memo key is the remainder alone.
    """
    if d.is_one(rem):
        return 1
    hit = memo.get(rem)
    if hit is not None:
        return hit
    mask = 0
    for j in d.indices(cands):
        rest = d.step(rem, j)
        mask |= _length_mask(d, rest, d.restrict(rest, cands), memo) << 1
    memo[rem] = mask
    return mask


def _threshold_search(fact, lens) -> int:
    """Least N with {d <= N} connected, by binary search on N (no matrix)."""
    lo, hi = 0, int(lens.max())  # d(z, z') <= max length
    while lo < hi:
        mid = (lo + hi) // 2
        if kernels.components_at(fact, lens, mid) == 1:
            hi = mid
        else:
            lo = mid + 1
    return lo


# ------------------------------------------------------------------------------
# public operations


def analyze(oracle, a, budget: Budget | None = None) -> ElementFactorizations:
    if isinstance(oracle, FactorizationEngine):
        return oracle.analyze(a)
    return ElementFactorizations(oracle, a, budget)


def factorizations(oracle, a, budget: Budget | None = None) -> list[Factorization]:
    return analyze(oracle, a, budget).factorizations()


def count_factorizations(oracle, a, budget: Budget | None = None) -> int:
    return len(analyze(oracle, a, budget))


def catenary(oracle, a, budget: Budget | None = None) -> int:
    return analyze(oracle, a, budget).catenary()


def catenary_eq(oracle, a, budget: Budget | None = None) -> int:
    return analyze(oracle, a, budget).catenary_eq()


def catenary_adj(oracle, a, budget: Budget | None = None) -> int:
    return analyze(oracle, a, budget).catenary_adj()


def catenary_mon(oracle, a, budget: Budget | None = None) -> int:
    ef = analyze(oracle, a, budget)
    c, cm = ef.catenary(), ef.catenary_mon()
    assert c <= cm, f"c(a) = {c} exceeds c_mon(a) = {cm} at {a}"
    return cm


def length_set(oracle, a) -> list[int]:
    """L(a) by dynamic programming over remainders; no factorization list is built."""
    if hasattr(oracle, "element"):
        a = oracle.element(a)
    if not oracle.contains(a):
        raise NotAMember(f"{a} is not a member of {oracle!r}")
    if oracle.is_identity(a):
        return [0]
    atoms = sorted(oracle.atoms_dividing(a))
    d = _descent(oracle, atoms)
    key, root = d.root(a)
    mask = _length_mask(d, key, root, {})
    return [k for k in range(mask.bit_length()) if mask >> k & 1]


def factorizations_naive(oracle, a) -> set[tuple]:
    """Reference enumeration: unordered descent with duplicates, deduplicated
    by sorting each result. Memoised on the remainder only.

    Oracles with ``encode`` are walked on plain integer tuples (vector part,
    then unit residues); the others through ``checked_divide``.
    """
    if hasattr(oracle, "element"):
        a = oracle.element(a)
    if oracle.is_identity(a):
        return {()}
    atoms = oracle.atoms_dividing(a)
    if hasattr(oracle, "encode"):
        return _naive_encoded(oracle, a, atoms)
    memo: dict = {}

    def rec(rem) -> set[tuple]:
        if oracle.is_identity(rem):
            return {()}
        if rem in memo:
            return memo[rem]
        out = set()
        for u in atoms:
            rest = oracle.checked_divide(rem, u)
            if rest is None:
                continue
            for t in rec(rest):
                out.add(tuple(sorted(t + (u,))))
        memo[rem] = out
        return out

    return rec(a)


def _naive_encoded(oracle, a, atoms) -> set[tuple]:
    mods = np.array(oracle.unit_moduli, dtype=np.int64)
    codes = np.array([oracle.encode(u) for u in atoms], dtype=np.int64)
    nv = codes.shape[1] - len(mods)
    memo: dict = {}

    def rec(rem) -> set[tuple]:
        if not any(rem):
            return {()}
        if rem in memo:
            return memo[rem]
        diff = np.array(rem, dtype=np.int64) - codes
        ok = (diff[:, :nv] >= 0).all(axis=1)
        if len(mods):
            diff[:, nv:] %= mods
        out = set()
        for i in np.flatnonzero(ok).tolist():
            for t in rec(tuple(diff[i].tolist())):
                out.add(tuple(sorted(t + (i,))))
        memo[rem] = out
        return out

    return {tuple(sorted(atoms[i] for i in t)) for t in rec(tuple(oracle.encode(a)))}


@dataclass
class InvariantReport:
    element: str
    Z_count: int
    L: list
    c: int
    c_eq: int
    c_adj: int
    c_mon: int
    flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "element": self.element,
            "Z_count": self.Z_count,
            "L": list(self.L),
            "c": self.c,
            "c_eq": self.c_eq,
            "c_adj": self.c_adj,
            "c_mon": self.c_mon,
        }
        if self.flags:
            out["flags"] = list(self.flags)
        return out


def is_interval(L: Sequence[int]) -> bool:
    return not L or list(L) == list(range(min(L), max(L) + 1))


def invariant_report(oracle, a, budget: Budget | None = None, cross_check: bool = False) -> InvariantReport:
    ef = analyze(oracle, a, budget)
    L = ef.length_set()
    c = ef.catenary()
    c_eq, c_adj = ef.catenary_eq(), ef.catenary_adj()
    c_mon = max(c_eq, c_adj)
    flags = []
    if is_interval(L):
        flags.append("interval")
    if cross_check and ef.dense:
        assert ef.catenary_unionfind() == c, f"catenary routes disagree at {a}"
    assert len(ef) < 2 or c <= c_mon
    base = oracle.oracle if isinstance(oracle, FactorizationEngine) else oracle
    fmt = getattr(base, "format", str)
    return InvariantReport(fmt(ef.element), len(ef), L, c, c_eq, c_adj, c_mon, flags)


@dataclass(frozen=True)
class LengthUnion:
    k: int
    lengths: list
    complete: bool  # True only if the domain provably covers the monoid


def union_of_lengths(oracle, domain: Iterable, k: int, exhaustive: bool = False) -> LengthUnion:
    """Union of L(a) over the domain elements whose length set contains k.

    The result is a certified subset of U_k(H); ``complete`` echoes the
    caller's claim that the domain is exhaustive.
    """
    out: set[int] = set()
    for a in domain:
        if not oracle.contains(a):
            continue
        L = length_set(oracle, a)
        if k in L:
            out.update(L)
    return LengthUnion(k=k, lengths=sorted(out), complete=exhaustive)


def is_half_factorial_within(oracle, domain: Iterable) -> tuple[bool, Any]:
    for a in domain:
        if not oracle.contains(a):
            continue
        if len(length_set(oracle, a)) != 1:
            return False, a
    return True, None


def _divides_in_monoid(oracle, u, a) -> bool:
    rest = oracle.checked_divide(a, u)
    return rest is not None and oracle.contains(rest)


def primality_witness(oracle, u, domain: Iterable):
    """Elements (a, b) with u | ab, u not dividing a nor b; ``None`` if the domain has none.

    The descent u | u*u*v = (u*x)(u*(v/x)) over atoms v and proper ambient
    divisors x of v is tried first; then every pair of domain elements.
    """
    domain = [d for d in domain if oracle.contains(d)]
    f_divisors = getattr(oracle, "f_divisors", None)
    if f_divisors is not None:
        candidates = [u] + [v for v in domain if v != u and oracle.is_atom(v)]
        for v in candidates:
            for x in f_divisors(v):
                if oracle.is_identity(x) or x == v:
                    continue
                y = oracle.checked_divide(v, x)
                a, b = oracle.combine(u, x), oracle.combine(u, y)
                if not (oracle.contains(a) and oracle.contains(b)):
                    continue
                if _divides_in_monoid(oracle, u, a) or _divides_in_monoid(oracle, u, b):
                    continue
                return a, b
    for i, a in enumerate(domain):
        if _divides_in_monoid(oracle, u, a):
            continue
        for b in domain[i:]:
            if _divides_in_monoid(oracle, u, b):
                continue
            if _divides_in_monoid(oracle, u, oracle.combine(a, b)):
                return a, b
    return None
