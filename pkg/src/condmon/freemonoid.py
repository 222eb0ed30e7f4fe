"""The reduced free abelian monoid N_0^s.

Exponent vectors are plain tuples of non-negative ints. Functions here
refuse to mix dimensions instead of broadcasting.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, SpecError, WindowTooLarge

ExponentVector = tuple  # tuple[int, ...], every entry >= 0

DEFAULT_BOX_CAP = 10**6


def vector(coords: Iterable[int]) -> ExponentVector:
    v = tuple(int(c) for c in coords)
    if any(c < 0 for c in v):
        raise ValueError(f"exponent vectors are non-negative, got {v}")
    return v


def parse_vector(text: str) -> ExponentVector:
    """Parse ``"(a1,...,as)"``; a bare ``"3"`` is the 1-dimensional vector (3,)."""
    t = text.strip().replace(" ", "")
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    if not re.fullmatch(r"\d+(,\d+)*", t):
        raise SpecError(f"bad vector literal {text!r}")
    return tuple(int(x) for x in t.split(","))


def format_vector(v: ExponentVector) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def _same_dim(a, b):
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension mismatch: {len(a)} vs {len(b)}")


def divides(a: ExponentVector, b: ExponentVector) -> bool:
    _same_dim(a, b)
    return all(x <= y for x, y in zip(a, b))


def length(a: ExponentVector) -> int:
    return sum(a)


def add(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    _same_dim(a, b)
    return tuple(x + y for x, y in zip(a, b))


def checked_subtract(b: ExponentVector, a: ExponentVector) -> ExponentVector | None:
    """``b - a`` if it stays in N_0^s, else ``None``."""
    _same_dim(a, b)
    out = tuple(y - x for x, y in zip(a, b))
    if any(c < 0 for c in out):
        return None
    return out


def meet(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    """Componentwise minimum (the gcd in N_0^s)."""
    _same_dim(a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


def dickson_min(vectors: Iterable[ExponentVector]) -> set[ExponentVector]:
    """Componentwise-minimal elements of a finite set."""
    pts = sorted(set(vectors), key=lambda v: (sum(v), v))
    if pts:
        s = len(pts[0])
        for v in pts:
            if len(v) != s:
                raise DimensionMismatch("dickson_min over vectors of mixed dimension")
    kept: list[ExponentVector] = []
    for v in pts:
        # anything that could dominate-from-below has strictly smaller sum and was seen first
        if not any(all(x <= y for x, y in zip(u, v)) for u in kept):
            kept.append(v)
    return set(kept)


@dataclass(frozen=True)
class Box:
    """The finite window {v : 0 <= v <= upper}."""

    upper: ExponentVector

    def __post_init__(self):
        object.__setattr__(self, "upper", vector(self.upper))

    @property
    def dim(self) -> int:
        return len(self.upper)

    @property
    def size(self) -> int:
        return math.prod(u + 1 for u in self.upper)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(u + 1 for u in self.upper)

    def check(self, cap: int = DEFAULT_BOX_CAP) -> None:
        if self.size > cap:
            raise WindowTooLarge(f"box {format_vector(self.upper)} has {self.size} points, cap is {cap}")

    def __contains__(self, v) -> bool:
        return len(v) == self.dim and all(0 <= x <= u for x, u in zip(v, self.upper))

    def __iter__(self) -> Iterator[ExponentVector]:
        return box_enumeration(self)


def box_enumeration(box: Box, cap: int = DEFAULT_BOX_CAP) -> Iterator[ExponentVector]:
    """All points of the box in lexicographic order."""
    box.check(cap)
    return itertools.product(*(range(u + 1) for u in box.upper))


def divisor_enumeration(a: ExponentVector, cap: int = DEFAULT_BOX_CAP) -> Iterator[ExponentVector]:
    """All v <= a in lexicographic order (exactly prod(a_i + 1) of them)."""
    return box_enumeration(Box(a), cap)


def member_array(box: Box, member: Callable[[ExponentVector], bool], cap: int = DEFAULT_BOX_CAP) -> np.ndarray:
    box.check(cap)
    arr = np.zeros(box.shape, dtype=bool)
    for v in itertools.product(*(range(n) for n in box.shape)):
        if member(v):
            arr[v] = True
    return arr


def atom_mask(member: np.ndarray) -> np.ndarray:
    """Atoms of a submonoid of N_0^s restricted to a box.

    ``member[v]`` says whether v lies in the monoid. A nonzero member is an
    atom iff it is not a sum of two nonzero members; since any summand of a
    box point lies in the same box, the answer is exact for every point.
    """
    nz = member.copy()
    nz[(0,) * member.ndim] = False
    shape = member.shape
    dec = np.zeros(shape, dtype=bool)
    for v in zip(*np.nonzero(nz)):
        src = tuple(slice(0, n - int(x)) for n, x in zip(shape, v))
        dst = tuple(slice(int(x), n) for n, x in zip(shape, v))
        dec[dst] |= nz[src]
    return nz & ~dec


def vectors_of(mask: np.ndarray) -> list[ExponentVector]:
    """Points of a boolean box array, in lexicographic order."""
    return [tuple(int(x) for x in v) for v in zip(*np.nonzero(mask))]


def validate_same_dim(vectors: Sequence[ExponentVector], s: int) -> None:
    for v in vectors:
        if len(v) != s:
            raise DimensionMismatch(f"vector {format_vector(v)} is not in dimension {s}")
