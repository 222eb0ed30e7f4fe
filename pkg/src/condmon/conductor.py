"""Conductor submonoids of F = E x N_0^s presented as ideal extensions.

An :class:`IdealExtensionMonoid` is H = {identity} together with every
(e, v) whose vector part lies in the s-ideal generated by an antichain of
nonzero vectors. :class:`VectorSubmonoid` covers arbitrary submonoids of
N_0^s given by a membership predicate; it exists so the gap-absorption
checker and the factorization engine can be pointed at monoids that are
*not* conductor submonoids.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from . import freemonoid as fm
from .budget import Budget, default_budget
from .errors import BadParameters, BudgetExceeded, DimensionMismatch, NotAMember, SpecError
from .group import FiniteAbelianGroup, GroupElement

TRIVIAL_GROUP = FiniteAbelianGroup((1,))


class MonoidElement(NamedTuple):
    """An element of F = E x N_0^s. Tuple order is the canonical atom order."""

    unit: GroupElement
    vector: tuple

    def __str__(self):
        v = fm.format_vector(self.vector)
        if self.unit.group == TRIVIAL_GROUP:
            return v
        return f"{self.unit}@{v}"


@dataclass(frozen=True)
class GapSet:
    gaps: list
    complete: bool


@dataclass(frozen=True)
class GapAbsorption:
    ok: bool
    checked: int
    witness: tuple | None = None  # (gap, atom, gap + atom)


@dataclass(frozen=True)
class ClassSemigroup:
    cap: int
    representatives: list  # one capped vector per class, first in lex order
    table: list  # table[i][j] = index of [rep_i + rep_j]

    @property
    def size(self) -> int:
        return len(self.representatives)


# --------------------------------------------------------------------------
# window-level helpers shared by both monoid classes


def _window_members(member: Callable[[tuple], bool], window: fm.Box, cap: int) -> np.ndarray:
    return fm.member_array(window, member, cap)


def _sumset(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Points of the box that are x + y with a[x] and b[y]."""
    out = np.zeros(a.shape, dtype=bool)
    for v in zip(*np.nonzero(a)):
        src = tuple(slice(0, n - int(x)) for n, x in zip(a.shape, v))
        dst = tuple(slice(int(x), n) for n, x in zip(a.shape, v))
        out[dst] |= b[src]
    return out


def gap_absorption_in_window(member: Callable[[tuple], bool], window: fm.Box, cap: int = fm.DEFAULT_BOX_CAP) -> GapAbsorption:
    """Check G(H) + A(H) within A(H) or A(H) + A(H) on one window.

    Only pairs whose sum stays inside the window are tested; atom-ness of the
    sum is exact because every divisor of a window point is in the window.
    """
    M = _window_members(member, window, cap)
    A = fm.atom_mask(M)
    AA = _sumset(A, A)
    good = A | AA
    gaps = ~M
    checked = 0
    witness = None
    for u in fm.vectors_of(A):
        src = tuple(slice(0, n - x) for n, x in zip(M.shape, u))
        dst = tuple(slice(x, n) for n, x in zip(M.shape, u))
        g_shift = gaps[src]
        checked += int(g_shift.sum())
        bad = g_shift & ~good[dst]
        if bad.any():
            g = fm.vectors_of(bad)[0]
            w = fm.add(g, u)
            cand = (g, u, w)
            if witness is None or (cand[0], cand[1]) < (witness[0], witness[1]):
                witness = cand
    return GapAbsorption(ok=witness is None, checked=checked, witness=witness)


def ideal_condition(member: Callable[[tuple], bool], window: fm.Box) -> bool:
    """(H minus identity) + F stays inside H minus identity, tested on a window."""
    M = _window_members(member, window, fm.DEFAULT_BOX_CAP)
    origin = (0,) * M.ndim
    for h in fm.vectors_of(M):
        if h == origin:
            continue
        dst = tuple(slice(x, n) for n, x in zip(M.shape, h))
        region = M[dst].copy()
        if not region.all():
            return False
    return True


def conductor_condition(member: Callable[[tuple], bool], window: fm.Box) -> bool:
    """Every non-identity member lies in the conductor (H : F), on a window.

    The conductor mask is computed as a reverse cumulative AND of the
    membership array along every axis.
    """
    M = _window_members(member, window, fm.DEFAULT_BOX_CAP)
    C = M.copy()
    for axis in range(M.ndim):
        C = np.flip(np.logical_and.accumulate(np.flip(C, axis), axis=axis), axis)
    nz = M.copy()
    nz[(0,) * M.ndim] = False
    return bool((C | ~nz).all())


# --------------------------------------------------------------------------


class IdealExtensionMonoid:
    """H = {identity} plus everything whose vector part lies in the ideal.

    Parameters
    ----------
    generators:
        Pairwise incomparable nonzero vectors generating the s-ideal.
    unit_group:
        Finite group E standing in for F^x / H^x. ``None`` means trivial.
    """

    def __init__(self, generators: Iterable[Sequence[int]], unit_group: FiniteAbelianGroup | None = None, s: int | None = None, budget: Budget | None = None):
        gens = [fm.vector(g) for g in generators]
        if not gens:
            raise SpecError("generators must be nonempty")
        if s is None:
            s = len(gens[0])
        fm.validate_same_dim(gens, s)
        if s < 1:
            raise SpecError("s must be >= 1")
        for g in gens:
            if not any(g):
                raise SpecError("generators must be nonzero")
        if len(set(gens)) != len(gens):
            raise SpecError("duplicate generators")
        minimal = fm.dickson_min(gens)
        dominated = sorted(set(gens) - minimal)
        if dominated:
            d = dominated[0]
            below = min(m for m in minimal if fm.divides(m, d))
            raise SpecError(
                f"generators are not an antichain: {fm.format_vector(d)} is dominated by {fm.format_vector(below)}"
            )
        self.s = s
        self.generators = tuple(sorted(gens))
        self.unit_group = unit_group
        self._E = unit_group if unit_group is not None else TRIVIAL_GROUP
        self.budget = budget or default_budget()
        self._atom_upper: tuple | None = None
        self._atom_table: np.ndarray | None = None
        self._gen_arr = np.array(self.generators, dtype=np.int64)

    def __repr__(self):
        gens = ",".join(fm.format_vector(g) for g in self.generators)
        extra = f", unit_group={self.unit_group}" if self.unit_group is not None else ""
        return f"IdealExtensionMonoid({{{gens}}}{extra})"

    # -- elements -----------------------------------------------------------

    @property
    def identity(self) -> MonoidElement:
        return MonoidElement(self._E.zero, (0,) * self.s)

    def element(self, x) -> MonoidElement:
        """Coerce a vector, a (unit, vector) pair or a MonoidElement."""
        if isinstance(x, MonoidElement):
            unit, vec = x
        elif len(x) == 2 and isinstance(x[0], GroupElement):
            unit, vec = x
        else:
            unit, vec = self._E.zero, x
        vec = fm.vector(vec)
        if len(vec) != self.s:
            raise DimensionMismatch(f"element {fm.format_vector(vec)} is not in dimension {self.s}")
        if unit.group != self._E:
            raise DimensionMismatch(f"unit part lives in {unit.group}, expected {self._E}")
        return MonoidElement(unit, vec)

    def parse_element(self, text: str) -> MonoidElement:
        """``"(3,3)"`` or ``"(1)@(3,3)"`` (unit residues @ vector)."""
        if "@" in text:
            u, v = text.split("@", 1)
            return self.element((self._E.parse_element(u), fm.parse_vector(v)))
        return self.element(fm.parse_vector(text))

    def in_ideal(self, v) -> bool:
        if len(v) != self.s:
            raise DimensionMismatch(f"vector {fm.format_vector(v)} is not in dimension {self.s}")
        return any(all(g <= x for g, x in zip(gen, v)) for gen in self.generators)

    def member_vector(self, v) -> bool:
        """Membership of (identity unit, v)."""
        return not any(v) or self.in_ideal(v)

    def contains(self, x) -> bool:
        x = self.element(x)
        if x == self.identity:
            return True
        return self.in_ideal(x.vector)

    def is_identity(self, x) -> bool:
        return self.element(x) == self.identity

    def combine(self, a: MonoidElement, b: MonoidElement) -> MonoidElement:
        unit = a.unit if self.unit_group is None else a.unit + b.unit
        return MonoidElement(unit, tuple(x + y for x, y in zip(a.vector, b.vector)))

    def checked_divide(self, a: MonoidElement, b: MonoidElement) -> MonoidElement | None:
        """a - b if it stays in F (membership in H is not required)."""
        vec = fm.checked_subtract(a.vector, b.vector)
        if vec is None:
            return None
        unit = a.unit if self.unit_group is None else a.unit - b.unit
        return MonoidElement(unit, vec)

    def divides_in_monoid(self, u: MonoidElement, a: MonoidElement) -> bool:
        rest = self.checked_divide(a, u)
        return rest is not None and self.contains(rest)

    # -- atoms --------------------------------------------------------------

    @property
    def unit_moduli(self) -> tuple:
        return self.unit_group.cyclic_orders if self.unit_group is not None else ()

    def encode(self, x: MonoidElement) -> tuple:
        """Vector part followed by unit residues (used by the factorization engine)."""
        if self.unit_group is None:
            return x.vector
        return x.vector + x.unit.residues

    def f_divisors(self, x) -> Iterator[MonoidElement]:
        """Divisors of x in F with trivial unit part."""
        x = self.element(x)
        for d in fm.divisor_enumeration(x.vector):
            yield MonoidElement(self._E.zero, d)

    def is_atom(self, x) -> bool:
        """Exact split search over the divisors of the vector part."""
        x = self.element(x)
        if x == self.identity or not self.in_ideal(x.vector):
            return False
        v = x.vector
        if sum(v) > self.budget.atom_length_cap:
            raise BudgetExceeded(f"|v| = {sum(v)} exceeds atom length cap {self.budget.atom_length_cap}")
        for d in fm.divisor_enumeration(v):
            if not any(d) or d == v:
                continue
            if self.in_ideal(d) and self.in_ideal(tuple(a - b for a, b in zip(v, d))):
                return False
        return True

    def prepare(self, upper: Sequence[int]) -> None:
        """Tabulate the atoms in the box [0, upper] (covers later queries below it)."""
        upper = fm.vector(upper)
        if self._atom_upper is not None:
            if fm.divides(upper, self._atom_upper):
                return
            upper = tuple(max(a, b) for a, b in zip(upper, self._atom_upper))
        box = fm.Box(upper)
        box.check(self.budget.element_cap)
        M = self._ideal_array(box)
        M[(0,) * self.s] = True
        A = fm.atom_mask(M)
        self._atom_table = np.array(fm.vectors_of(A), dtype=np.int64).reshape(-1, self.s)
        self._atom_upper = upper

    def _ideal_array(self, box: fm.Box) -> np.ndarray:
        M = np.zeros(box.shape, dtype=bool)
        for g in self.generators:
            if all(gi <= ui for gi, ui in zip(g, box.upper)):
                M[tuple(slice(gi, None) for gi in g)] = True
        return M

    def atom_vectors_dividing(self, v) -> list[tuple]:
        self.prepare(v)
        tab = self._atom_table
        mask = (tab <= np.asarray(v, dtype=np.int64)).all(axis=1)
        return [tuple(int(c) for c in row) for row in tab[mask]]

    def atoms_dividing(self, a) -> list[MonoidElement]:
        a = self.element(a)
        if not self.contains(a):
            raise NotAMember(f"{a} is not in {self!r}")
        vecs = self.atom_vectors_dividing(a.vector)
        units = list(self._E.enumerate_elements())
        return sorted(MonoidElement(e, v) for e in units for v in vecs)

    def minimal_elements(self) -> set[tuple]:
        mins = set(self.generators)
        for m in mins:
            assert self.is_atom(m), f"minimal element {m} is not an atom"
        return mins

    # -- gaps -----------------------------------------------------------------

    def gap_set_is_finite(self) -> bool:
        return all(self._axis_bound(i) is not None for i in range(self.s))

    def _axis_bound(self, i: int) -> int | None:
        """Smallest m with m * e_i in the ideal, if any."""
        pure = [g[i] for g in self.generators if all(c == 0 for j, c in enumerate(g) if j != i)]
        return min(pure) if pure else None

    def gap_set(self, window: fm.Box | Sequence[int]) -> GapSet:
        if not isinstance(window, fm.Box):
            window = fm.Box(window)
        if window.dim != self.s:
            raise DimensionMismatch("window dimension differs from s")
        window.check(self.budget.element_cap)
        M = self._ideal_array(window)
        M[(0,) * self.s] = True
        gaps = fm.vectors_of(~M)
        complete = False
        if self.gap_set_is_finite():
            # every gap has coordinate i below the axis bound m_i
            complete = all(window.upper[i] >= self._axis_bound(i) - 1 for i in range(self.s))
        return GapSet(gaps=gaps, complete=complete)

    def is_gap_absorbing(self, window: fm.Box | Sequence[int]) -> GapAbsorption:
        """Gap absorption on a window.

        Unit parts are irrelevant: a gap with zero vector part is a unit of F
        and shifts atoms to atoms, and otherwise membership and atom-ness
        only look at vector parts, so the vector-level check decides.
        """
        if not isinstance(window, fm.Box):
            window = fm.Box(window)
        return gap_absorption_in_window(self.member_vector, window, self.budget.element_cap)

    # -- C-monoid data --------------------------------------------------------

    def cmonoid_alpha(self) -> int:
        return max(max(g) for g in self.generators)

    def cmonoid_criterion(self, alpha: int | None = None) -> tuple[bool, int]:
        """Check a in H iff alpha*e_j + a in H for all a with a_j >= alpha in a 2*alpha box.

        Returns (holds, number of checks).
        """
        alpha = self.cmonoid_alpha() if alpha is None else alpha
        box = fm.Box((2 * alpha,) * self.s)
        box.check(self.budget.element_cap)
        checks = 0
        for a in box:
            for j in range(self.s):
                if a[j] < alpha:
                    continue
                shifted = a[:j] + (a[j] + alpha,) + a[j + 1:]
                checks += 1
                if self.member_vector(a) != self.member_vector(shifted):
                    return False, checks
        return True, checks

    def class_semigroup(self, cap: int | None = None) -> ClassSemigroup:
        """(H, F)-classes of the capped cube [0, cap]^s and their product table."""
        if self.unit_group is not None:
            raise BadParameters("class_semigroup is only defined here for the reduced case (no unit group)")
        alpha = self.cmonoid_alpha()
        cap = alpha if cap is None else cap
        if cap < alpha:
            raise BadParameters(f"cap {cap} is below alpha = {alpha}")
        reps, index_of = _residual_classes(self.member_vector, self.s, cap, cap, self.budget.element_cap)
        table = []
        for y in reps:
            row = []
            for y2 in reps:
                prod = tuple(min(a + b, cap) for a, b in zip(y, y2))
                row.append(index_of[prod])
            table.append(row)
        return ClassSemigroup(cap=cap, representatives=reps, table=table)

    def class_count_uncapped(self, window: int | None = None) -> int:
        """Independent class count: compare residuals of all y in [0, window]^s
        over test points x in [0, window]^s without any capping argument."""
        window = 3 * self.cmonoid_alpha() if window is None else window
        reps, _ = _residual_classes(self.member_vector, self.s, window, window, self.budget.element_cap)
        return len(reps)


def _residual_classes(member, s: int, y_max: int, x_max: int, cap: int):
    """Group y in [0, y_max]^s by the membership pattern of x + y, x in [0, x_max]^s."""
    big = fm.Box((y_max + x_max,) * s)
    big.check(cap)
    M = fm.member_array(big, member, cap)
    reps: list[tuple] = []
    seen: dict[bytes, int] = {}
    index_of: dict[tuple, int] = {}
    for y in itertools.product(range(y_max + 1), repeat=s):
        sig = M[tuple(slice(c, c + x_max + 1) for c in y)].tobytes()
        k = seen.get(sig)
        if k is None:
            k = len(reps)
            seen[sig] = k
            reps.append(y)
        index_of[y] = k
    return reps, index_of


class VectorSubmonoid:
    """A reduced submonoid of N_0^s given by a membership predicate.

    The predicate must describe a submonoid containing the zero vector; it is
    the caller's job to make that true. Used for membership overrides and as
    the carrier for zero-sum and labeled-prime monoids.
    """

    def __init__(self, s: int, member: Callable[[tuple], bool], name: str = "", budget: Budget | None = None):
        self.s = s
        self._member = lru_cache(maxsize=None)(member)
        self.name = name or "VectorSubmonoid"
        self.budget = budget or default_budget()

    def __repr__(self):
        return f"{self.name}(s={self.s})"

    @classmethod
    def generated_by(cls, generators: Iterable[Sequence[int]], name: str = "") -> VectorSubmonoid:
        """The monoid (not ideal) generated by finitely many vectors."""
        gens = tuple(fm.vector(g) for g in generators)
        s = len(gens[0])

        @lru_cache(maxsize=None)
        def member(v):
            if not any(v):
                return True
            for g in gens:
                rest = fm.checked_subtract(v, g)
                if rest is not None and member(rest):
                    return True
            return False

        gens_txt = ",".join(fm.format_vector(g) for g in gens)
        return cls(s, member, name=name or f"<{gens_txt}>")

    @property
    def identity(self) -> tuple:
        return (0,) * self.s

    def element(self, x) -> tuple:
        v = fm.vector(x)
        if len(v) != self.s:
            raise DimensionMismatch(f"element {fm.format_vector(v)} is not in dimension {self.s}")
        return v

    def contains(self, x) -> bool:
        return bool(self._member(self.element(x)))

    member_vector = contains

    def is_identity(self, x) -> bool:
        return not any(x)

    def combine(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def checked_divide(self, a, b):
        return fm.checked_subtract(a, b)

    def divides_in_monoid(self, u, a) -> bool:
        rest = fm.checked_subtract(a, u)
        return rest is not None and self.contains(rest)

    unit_moduli = ()

    def encode(self, x) -> tuple:
        return tuple(x)

    def f_divisors(self, x) -> Iterator[tuple]:
        return fm.divisor_enumeration(self.element(x))

    def is_atom(self, x) -> bool:
        v = self.element(x)
        if not any(v) or not self.contains(v):
            return False
        if sum(v) > self.budget.atom_length_cap:
            raise BudgetExceeded(f"|v| = {sum(v)} exceeds atom length cap {self.budget.atom_length_cap}")
        for d in fm.divisor_enumeration(v):
            if not any(d) or d == v:
                continue
            if self.contains(d) and self.contains(tuple(a - b for a, b in zip(v, d))):
                return False
        return True

    def atoms_dividing(self, a) -> list[tuple]:
        a = self.element(a)
        if not self.contains(a):
            raise NotAMember(f"{fm.format_vector(a)} is not in {self!r}")
        box = fm.Box(a)
        M = fm.member_array(box, self.contains, self.budget.element_cap)
        return fm.vectors_of(fm.atom_mask(M))

    def is_gap_absorbing(self, window: fm.Box | Sequence[int]) -> GapAbsorption:
        if not isinstance(window, fm.Box):
            window = fm.Box(window)
        return gap_absorption_in_window(self.contains, window, self.budget.element_cap)


def diagonal_monoid(s: int = 2) -> VectorSubmonoid:
    """{(t, ..., t)}: generated as a monoid by the all-ones vector; not a conductor submonoid."""
    return VectorSubmonoid(s, lambda v: len(set(v)) == 1, name="diagonal")


# module-level spellings of the operations --------------------------------------


def contains(H, x) -> bool:
    return H.contains(x)


def is_atom(H, x) -> bool:
    return H.is_atom(x)


def atoms_dividing(H, a):
    return H.atoms_dividing(a)


def minimal_elements(H: IdealExtensionMonoid) -> set:
    return H.minimal_elements()


def gap_set(H: IdealExtensionMonoid, window) -> GapSet:
    return H.gap_set(window)


def gap_set_is_finite(H: IdealExtensionMonoid) -> bool:
    return H.gap_set_is_finite()


def is_gap_absorbing(H, window) -> GapAbsorption:
    return H.is_gap_absorbing(window)


def cmonoid_alpha(H: IdealExtensionMonoid) -> int:
    return H.cmonoid_alpha()


def class_semigroup(H: IdealExtensionMonoid, cap: int | None = None) -> ClassSemigroup:
    return H.class_semigroup(cap)
