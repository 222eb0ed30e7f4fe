"""Finite abelian groups presented as direct sums of cyclic groups.

>>> G = FiniteAbelianGroup.parse("C2xC4")
>>> G.element((1, 1)).order()
4
>>> str(G.element((1, 3)) + G.element((1, 2)))
'(0,1)'
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import GroupMismatch, InsufficientRank, SpecError, WindowTooLarge

DEFAULT_ENUMERATION_CAP = 10**6

_GROUP_TOKEN = re.compile(r"^c(\d+)$")


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """The group C_{n_1} + ... + C_{n_r}.

    No divisibility chain is required between the ``cyclic_orders``; the
    presentation is used exactly as given.
    """

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.cyclic_orders)
        if not orders:
            raise ValueError("a group needs at least one cyclic summand (use C1 for the trivial group)")
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic orders must be >= 1, got {orders}")
        object.__setattr__(self, "cyclic_orders", orders)

    @classmethod
    def parse(cls, text: str) -> FiniteAbelianGroup:
        """Parse ``"C2xC2xC4"`` (case-insensitive, 'x'-separated)."""
        parts = [p.strip() for p in text.strip().lower().split("x")]
        orders = []
        for part in parts:
            m = _GROUP_TOKEN.match(part)
            if m is None:
                raise SpecError(f"bad group literal {text!r}: token {part!r} is not of the form C<n>")
            orders.append(int(m.group(1)))
        try:
            return cls(tuple(orders))
        except ValueError as exc:
            raise SpecError(str(exc)) from exc

    def __str__(self):
        return "x".join(f"C{n}" for n in self.cyclic_orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @cached_property
    def cardinality(self) -> int:
        return math.prod(self.cyclic_orders)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.cyclic_orders)

    def element(self, residues: Sequence[int]) -> GroupElement:
        residues = tuple(residues)
        if len(residues) != self.rank:
            raise GroupMismatch(
                f"element {residues} has {len(residues)} coordinates, group {self} has {self.rank}"
            )
        return GroupElement(self, tuple(r % n for r, n in zip(residues, self.cyclic_orders)))

    def parse_element(self, text: str) -> GroupElement:
        """Parse ``"(1,0,3)"``; ``"0"`` is the zero element and ``"g"``/``"-g"``
        name the standard generator of a cyclic group."""
        t = text.strip().replace(" ", "")
        if t in ("(g)", "(-g)"):
            t = t[1:-1]
        if t == "0":
            return self.zero
        if t in ("g", "-g"):
            if self.rank != 1:
                raise SpecError(f"'g' is only defined for cyclic groups, not {self}")
            return self.element((1 if t == "g" else -1,))
        if t.startswith("(") and t.endswith(")"):
            t = t[1:-1]
        try:
            residues = tuple(int(x) for x in t.split(","))
        except ValueError as exc:
            raise SpecError(f"bad group element literal {text!r}") from exc
        if len(residues) != self.rank:
            raise SpecError(f"element {text!r} does not have {self.rank} coordinates")
        return self.element(residues)

    @cached_property
    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def generator(self, i: int) -> GroupElement:
        """Standard generator of the i-th summand."""
        res = [0] * self.rank
        res[i] = 1
        return self.element(res)

    def enumerate_elements(self, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[GroupElement]:
        """All elements in lexicographic order of residues."""
        if self.cardinality > cap:
            raise WindowTooLarge(f"group {self} has {self.cardinality} elements, cap is {cap}")
        for res in itertools.product(*(range(n) for n in self.cyclic_orders)):
            yield GroupElement(self, res)

    def independent_elements(self, count: int, order: int) -> list[GroupElement]:
        """``count`` independent elements of exact order ``order``.

        The i-th element is supported on its own cyclic summand, so an integer
        combination vanishes only when every coefficient is divisible by
        ``order``.
        """
        if count < 0 or order < 1:
            raise ValueError("count must be >= 0 and order >= 1")
        usable = [i for i, n in enumerate(self.cyclic_orders) if n % order == 0]
        if len(usable) < count:
            raise InsufficientRank(
                f"{self} has {len(usable)} summands with order divisible by {order}, need {count}"
            )
        out = []
        for i in usable[:count]:
            res = [0] * self.rank
            res[i] = self.cyclic_orders[i] // order
            out.append(self.element(res))
        return out


@dataclass(frozen=True, order=False)
class GroupElement:
    group: FiniteAbelianGroup
    residues: tuple[int, ...]

    def _check(self, other: GroupElement):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group != self.group:
            raise GroupMismatch(f"cannot combine elements of {self.group} and {other.group}")
        return None

    def __add__(self, other: GroupElement) -> GroupElement:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return GroupElement(
            self.group,
            tuple((a + b) % n for a, b, n in zip(self.residues, other.residues, self.group.cyclic_orders)),
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, tuple((-a) % n for a, n in zip(self.residues, self.group.cyclic_orders)))

    def __sub__(self, other: GroupElement) -> GroupElement:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> GroupElement:
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.group, tuple((a * k) % n for a, n in zip(self.residues, self.group.cyclic_orders)))

    __rmul__ = __mul__

    # Canonical total order: lexicographic on residues.
    def __lt__(self, other: GroupElement) -> bool:
        self._check(other)
        return self.residues < other.residues

    def __le__(self, other: GroupElement) -> bool:
        self._check(other)
        return self.residues <= other.residues

    def __gt__(self, other: GroupElement) -> bool:
        return other < self

    def __ge__(self, other: GroupElement) -> bool:
        return other <= self

    def is_zero(self) -> bool:
        return not any(self.residues)

    def order(self) -> int:
        return math.lcm(*(n // math.gcd(a, n) for a, n in zip(self.residues, self.group.cyclic_orders)))

    def index(self) -> int:
        """Mixed-radix position in :meth:`FiniteAbelianGroup.enumerate_elements`."""
        idx = 0
        for a, n in zip(self.residues, self.group.cyclic_orders):
            idx = idx * n + a
        return idx

    def __str__(self):
        return "(" + ",".join(map(str, self.residues)) + ")"

    def __repr__(self):
        return f"GroupElement({self.group}, {self})"


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def neg(a: GroupElement) -> GroupElement:
    return -a


def scalar_mul(k: int, a: GroupElement) -> GroupElement:
    return a * k


def order_of(a: GroupElement) -> int:
    return a.order()


def zero(G: FiniteAbelianGroup) -> GroupElement:
    return G.zero


def exponent(G: FiniteAbelianGroup) -> int:
    return G.exponent


def enumerate_elements(G: FiniteAbelianGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> list[GroupElement]:
    return list(G.enumerate_elements(cap))


def independent_elements(G: FiniteAbelianGroup, count: int, order: int) -> list[GroupElement]:
    return G.independent_elements(count, order)
